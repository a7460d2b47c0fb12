//! Rank of coefficient matrices by plain Gaussian elimination over Q(i).

use std::collections::BTreeMap;

use num_traits::Zero;
use symspec::polyalg::{GaussianRational, Polynomial};

/// Rank of the matrix whose rows are the coefficient vectors of `polys`.
pub fn coefficient_rank(polys: &[Polynomial]) -> usize {
    let mut columns: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m.exponents().to_vec()).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<GaussianRational>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![GaussianRational::zero(); columns.len()];
            for (m, c) in p.terms() {
                r[columns[m.exponents()]] = c.clone();
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().unwrap();
        let pivot_row: Vec<GaussianRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

const P: u64 = 998_244_353;

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    a %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % P;
        }
        a = a * a % P;
        e >>= 1;
    }
    r
}

fn rational_mod(r: &symspec::rootsys::Rational) -> u64 {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let p = BigInt::from(P);
    let n = r.numer().mod_floor(&p).to_u64().unwrap();
    let d = r.denom().mod_floor(&p).to_u64().unwrap();
    assert!(d != 0, "denominator divisible by the modulus");
    n * pow_mod(d, P - 2) % P
}

/// Rank of the coefficient matrix over Z/p, p = 998244353 = 1 mod 4, with i
/// sent to a square root of -1. A lower bound for the rank over Q(i).
pub fn coefficient_rank_mod_p(polys: &[Polynomial]) -> usize {
    let iota = (2..)
        .map(|c| pow_mod(c, (P - 1) / 4))
        .find(|&i| i * i % P == P - 1)
        .unwrap();
    let mut columns: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m.exponents().to_vec()).or_insert(next);
        }
    }
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for p in polys {
        let mut r = vec![0u64; columns.len()];
        for (m, c) in p.terms() {
            r[columns[m.exponents()]] = (rational_mod(&c.re) + iota * rational_mod(&c.im)) % P;
        }
        for (piv, b) in &basis {
            let f = r[*piv];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        if let Some(piv) = r.iter().position(|&x| x != 0) {
            let inv = pow_mod(r[piv], P - 2);
            let r = r.iter().map(|x| x * inv % P).collect();
            basis.push((piv, r));
        }
    }
    basis.len()
}
