//! Freudenthal's multiplicity formula, used to check Weyl dimensions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use symspec::rootsys::{RationalVec, RootSystem, Weight};

/// Weight multiplicities of the irreducible module with highest weight `lam`,
/// keyed by simple-root depth vectors (lam - mu in the simple-root basis).
pub fn multiplicities(rs: &RootSystem, lam: &Weight) -> HashMap<Vec<i64>, BigRational> {
    let rho = symspec::rootsys::rho(rs);
    let two = BigRational::from_integer(BigInt::from(2));
    let bound = lam.ambient.norm_sq();
    let top = (&lam.ambient + &rho).norm_sq();
    let simple = &rs.simple_roots;
    let heights: Vec<(RationalVec, Vec<i64>)> = rs
        .positive_roots
        .iter()
        .map(|a| {
            let c = rs
                .simple_root_coordinates(a)
                .iter()
                .map(|x| x.to_integer().to_i64().unwrap())
                .collect();
            (a.clone(), c)
        })
        .collect();

    let ambient_of = |depth: &[i64]| {
        let mut v = lam.ambient.clone();
        for (c, a) in depth.iter().zip(simple) {
            v = &v - &a.scale(&BigRational::from_integer(BigInt::from(*c)));
        }
        v
    };

    let mut mult: HashMap<Vec<i64>, BigRational> = HashMap::new();
    mult.insert(vec![0; rs.rank], BigRational::from_integer(1.into()));
    let mut level = vec![vec![0i64; rs.rank]];
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for d in &level {
            for i in 0..rs.rank {
                let mut e = d.clone();
                e[i] += 1;
                if next.contains(&e) {
                    continue;
                }
                if ambient_of(&e).norm_sq() <= bound {
                    next.push(e);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        for d in &next {
            let mu = ambient_of(d);
            let denom = &top - (&mu + &rho).norm_sq();
            let mut sum = BigRational::zero();
            for (a, ac) in &heights {
                let mut j = 1i64;
                loop {
                    let up: Vec<i64> = d.iter().zip(ac).map(|(x, y)| x - j * y).collect();
                    if up.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(m) = mult.get(&up) {
                        let w = &mu + &a.scale(&BigRational::from_integer(j.into()));
                        sum += m * w.dot(a);
                    }
                    j += 1;
                }
            }
            let m = if denom.is_positive() {
                &two * sum / denom
            } else {
                assert!(sum.is_zero(), "Freudenthal: nonzero sum on the outer sphere");
                BigRational::zero()
            };
            if !m.is_zero() {
                mult.insert(d.clone(), m);
            }
        }
        level = next;
    }
    mult
}

/// Dimension as the sum of all weight multiplicities.
pub fn dimension(rs: &RootSystem, lam: &Weight) -> u64 {
    let total: BigRational = multiplicities(rs, lam).values().cloned().sum();
    assert!(total.is_integer());
    total.to_integer().to_u64().unwrap()
}
