//! Brute-force positive-root enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use symspec::rootsys::{RationalVec, RootSystem};

fn combo(rs: &RootSystem, c: &[i64]) -> RationalVec {
    let mut v = RationalVec::zeros(rs.ambient_dim());
    for (k, a) in c.iter().zip(&rs.simple_roots) {
        v = &v + &a.scale(&BigRational::from_integer(BigInt::from(*k)));
    }
    v
}

/// A nonnegative combination `c` of simple roots is a positive root iff it
/// is simple, or some simple reflection with positive pairing lowers it to a
/// positive root.
fn is_positive_root(rs: &RootSystem, c: &[i64]) -> bool {
    if c.iter().all(|&x| x == 0) || c.iter().any(|&x| x < 0) {
        return false;
    }
    if c.iter().sum::<i64>() == 1 {
        return true;
    }
    let v = combo(rs, c);
    for (i, a) in rs.simple_roots.iter().enumerate() {
        let p = v.dot(a);
        if p.is_positive() {
            let n = BigRational::from_integer(2.into()) * p / a.norm_sq();
            if !n.is_integer() {
                return false;
            }
            let mut lowered = c.to_vec();
            lowered[i] -= n.to_integer().try_into().unwrap_or(i64::MAX / 2);
            return is_positive_root(rs, &lowered);
        }
    }
    false
}

/// All positive roots with simple-root coefficients at most `max_coeff`.
pub fn enumerate_positive_roots(rs: &RootSystem, max_coeff: i64) -> Vec<RationalVec> {
    let r = rs.rank;
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        if is_positive_root(rs, &c) {
            out.push(combo(rs, &c));
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            c[i] += 1;
            if c[i] > max_coeff {
                c[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}
