//! Root systems of types A, B, C, D, F4 (and the non-reduced BC used for
//! restricted roots) in their standard Euclidean realizations.
//!
//! All arithmetic is exact. The inner product is the ambient dot product;
//! every quantity computed here (Weyl dimensions, coroot pairings) is
//! invariant under rescaling it.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest f64 to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators/denominators before dividing
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Vector of exact rationals in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVec(pub Vec<Rational>);

impl RationalVec {
    pub fn zeros(len: usize) -> Self {
        RationalVec(vec![Rational::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVec(v.iter().map(|&x| rat(x)).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        RationalVec(v.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVec) -> Rational {
        assert_eq!(self.len(), other.len(), "ambient dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rational) -> RationalVec {
        RationalVec(self.0.iter().map(|x| x * s).collect())
    }

    /// Reflection in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, alpha: &RationalVec) -> RationalVec {
        let c = rat(2) * self.dot(alpha) / alpha.norm_sq();
        self - &alpha.scale(&c)
    }
}

impl Add for &RationalVec {
    type Output = RationalVec;
    fn add(self, rhs: &RationalVec) -> RationalVec {
        assert_eq!(self.len(), rhs.len(), "ambient dimension mismatch");
        RationalVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVec {
    type Output = RationalVec;
    fn sub(self, rhs: &RationalVec) -> RationalVec {
        assert_eq!(self.len(), rhs.len(), "ambient dimension mismatch");
        RationalVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVec {
    type Output = RationalVec;
    fn neg(self) -> RationalVec {
        RationalVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    F4,
    /// Non-reduced type, only used for restricted root systems.
    BC,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::F4 => "F",
            Family::BC => "BC",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            "F" | "F4" => Some(Family::F4),
            "BC" => Some(Family::BC),
            _ => None,
        }
    }

    /// Number of positive roots of the rank-`r` system.
    pub fn positive_root_count(self, r: usize) -> usize {
        match self {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::F4 => 24,
            Family::BC => r * r + r,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<RationalVec>,
    pub positive_roots: Vec<RationalVec>,
    fundamental: Vec<RationalVec>,
    rho: RationalVec,
}

/// A weight stored both in the fundamental-weight basis and in ambient
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coeffs: Vec<i64>,
    pub ambient: RationalVec,
}

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

fn simple_roots(family: Family, r: usize) -> Vec<RationalVec> {
    let unit = |dim: usize, i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let diff = |dim: usize, i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[i + 1] = -1;
        RationalVec::from_ints(&v)
    };
    match family {
        Family::A => (0..r).map(|i| diff(r + 1, i)).collect(),
        Family::B | Family::BC => {
            let mut s: Vec<_> = (0..r - 1).map(|i| diff(r, i)).collect();
            s.push(RationalVec::from_ints(&unit(r, r - 1)));
            s
        }
        Family::C => {
            let mut s: Vec<_> = (0..r - 1).map(|i| diff(r, i)).collect();
            let mut last = vec![0i64; r];
            last[r - 1] = 2;
            s.push(RationalVec::from_ints(&last));
            s
        }
        Family::D => {
            let mut s: Vec<_> = (0..r - 1).map(|i| diff(r, i)).collect();
            let mut last = vec![0i64; r];
            last[r - 2] = 1;
            last[r - 1] = 1;
            s.push(RationalVec::from_ints(&last));
            s
        }
        Family::F4 => vec![
            RationalVec::from_ints(&[0, 1, -1, 0]),
            RationalVec::from_ints(&[0, 0, 1, -1]),
            RationalVec::from_ints(&[0, 0, 0, 1]),
            RationalVec::from_ratios(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)]),
        ],
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RootSystem {
    /// Coefficients of an ambient vector in the simple-root basis, assuming
    /// it lies in their span.
    pub fn simple_root_coordinates(&self, v: &RationalVec) -> Vec<Rational> {
        self.simple_roots
            .iter()
            .zip(&self.fundamental)
            .map(|(a, w)| rat(2) * v.dot(w) / a.norm_sq())
            .collect()
    }

    /// Coroot pairings 2<v, a_i>/<a_i, a_i> with the simple roots.
    pub fn dynkin_labels(&self, v: &RationalVec) -> Vec<Rational> {
        self.simple_roots
            .iter()
            .map(|a| rat(2) * v.dot(a) / a.norm_sq())
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    /// The weight with the given fundamental-weight coefficients.
    pub fn weight(&self, coeffs: &[i64]) -> Result<Weight> {
        if coeffs.len() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "{}{} weights need {} coefficients, got {}",
                self.family,
                self.rank,
                self.rank,
                coeffs.len()
            )));
        }
        let mut ambient = RationalVec::zeros(self.ambient_dim());
        for (c, w) in coeffs.iter().zip(&self.fundamental) {
            ambient = &ambient + &w.scale(&rat(*c));
        }
        Ok(Weight {
            coeffs: coeffs.to_vec(),
            ambient,
        })
    }

    /// Recovers a weight from ambient coordinates; fails if a coroot pairing
    /// is not an integer. Components orthogonal to the root span are
    /// discarded (relevant for type A).
    pub fn weight_from_ambient(&self, v: &RationalVec) -> Result<Weight> {
        let labels = self.dynkin_labels(v);
        let mut coeffs = Vec::with_capacity(labels.len());
        for l in labels {
            if !l.is_integer() {
                return Err(Error::NotIntegral {
                    family: self.family.to_string(),
                    rank: self.rank,
                });
            }
            coeffs.push(l.to_integer().to_i64().ok_or_else(|| Error::NotIntegral {
                family: self.family.to_string(),
                rank: self.rank,
            })?);
        }
        self.weight(&coeffs)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

/// Builds the root system of the given family and rank.
///
/// D is accepted from rank 2 (D2 = A1 x A1 is needed for SO(4)).
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let unsupported = |reason: &str| Error::UnsupportedRootSystem {
        family: family.to_string(),
        rank,
        reason: reason.to_string(),
    };
    match family {
        _ if rank == 0 => return Err(unsupported("rank must be at least 1")),
        Family::F4 if rank != 4 => return Err(unsupported("F4 has rank 4")),
        Family::D if rank < 2 => return Err(unsupported("D needs rank at least 2")),
        _ => {}
    }
    if rank > 64 {
        return Err(unsupported("rank above 64 is not supported"));
    }

    let simple = simple_roots(family, rank);
    let cartan: Vec<Vec<Rational>> = simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| rat(2) * aj.dot(ai) / ai.norm_sq())
                .collect()
        })
        .collect();
    // w_j = sum_k M[j][k] alpha_k with M = (A^T)^{-1}
    let transposed: Vec<Vec<Rational>> = (0..rank)
        .map(|i| (0..rank).map(|j| cartan[j][i].clone()).collect())
        .collect();
    let m = invert(&transposed).ok_or_else(|| unsupported("singular Cartan matrix"))?;
    let fundamental: Vec<RationalVec> = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(&simple)
                .fold(RationalVec::zeros(simple[0].len()), |acc, (c, a)| {
                    &acc + &a.scale(c)
                })
        })
        .collect();

    // Orbit of the simple roots under the simple reflections.
    let mut roots: BTreeSet<RationalVec> = simple.iter().cloned().collect();
    let mut frontier: Vec<RationalVec> = simple.clone();
    while let Some(v) = frontier.pop() {
        for a in &simple {
            let r = v.reflect(a);
            if roots.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    if family == Family::BC {
        let doubled: Vec<RationalVec> = roots
            .iter()
            .filter(|r| r.norm_sq() == rat(1))
            .map(|r| r.scale(&rat(2)))
            .collect();
        roots.extend(doubled);
    }

    let mut rs = RootSystem {
        family,
        rank,
        simple_roots: simple,
        positive_roots: Vec::new(),
        fundamental,
        rho: RationalVec::zeros(0),
    };
    let mut positive: Vec<RationalVec> = roots
        .into_iter()
        .filter(|r| {
            rs.simple_root_coordinates(r)
                .iter()
                .all(|c| !c.is_negative())
        })
        .collect();
    positive.sort_by_key(|r| {
        let h: Rational = rs.simple_root_coordinates(r).into_iter().sum();
        h
    });
    if positive.len() != family.positive_root_count(rank) {
        return Err(unsupported("positive root count differs from classical value"));
    }
    let sum = positive
        .iter()
        .fold(RationalVec::zeros(rs.ambient_dim()), |acc, r| &acc + r);
    rs.rho = sum.scale(&ratio(1, 2));
    rs.positive_roots = positive;
    Ok(rs)
}

/// Half the sum of the positive roots.
pub fn rho(rs: &RootSystem) -> RationalVec {
    rs.rho.clone()
}

/// Fundamental weights w_i with 2<w_i, a_j>/<a_j, a_j> = delta_ij, lying in
/// the span of the roots.
pub fn fundamental_weights(rs: &RootSystem) -> Vec<RationalVec> {
    rs.fundamental.clone()
}

/// Weyl dimension formula, exact.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<BigUint> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant {
            coeffs: lam.coeffs.clone(),
        });
    }
    let shifted = &lam.ambient + &rs.rho;
    let mut prod = Rational::one();
    for a in &rs.positive_roots {
        prod *= shifted.dot(a) / rs.rho.dot(a);
    }
    debug_assert!(prod.is_integer());
    prod.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NotDominant {
            coeffs: lam.coeffs.clone(),
        })
}

/// The spherical ("even") weight test: <lam, a>/<a, a> is a nonnegative
/// integer for every positive root `a` of the restricted system.
pub fn cartan_helgason_even(rs_restricted: &RootSystem, lam: &Weight) -> bool {
    rs_restricted.positive_roots.iter().all(|a| {
        let r = lam.ambient.dot(a) / a.norm_sq();
        r.is_integer() && !r.is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(rs: &RootSystem, c: &[i64]) -> u64 {
        weyl_dim(rs, &rs.weight(c).unwrap()).unwrap().to_u64().unwrap()
    }

    #[test]
    fn a2_simple_roots_and_rho() {
        let rs = build_root_system(Family::A, 2).unwrap();
        assert_eq!(rs.simple_roots[0], RationalVec::from_ints(&[1, -1, 0]));
        assert_eq!(rs.simple_roots[1], RationalVec::from_ints(&[0, 1, -1]));
        assert_eq!(rho(&rs), RationalVec::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn a1_has_one_positive_root() {
        let rs = build_root_system(Family::A, 1).unwrap();
        assert_eq!(rs.positive_roots.len(), 1);
        assert_eq!(rho(&rs), rs.positive_roots[0].scale(&ratio(1, 2)));
    }

    #[test]
    fn classical_counts() {
        for r in 1..=6 {
            for fam in [Family::A, Family::B, Family::C, Family::BC] {
                let rs = build_root_system(fam, r).unwrap();
                assert_eq!(rs.positive_roots.len(), fam.positive_root_count(r));
            }
        }
        for r in 2..=6 {
            assert_eq!(
                build_root_system(Family::D, r).unwrap().positive_roots.len(),
                r * (r - 1)
            );
        }
        assert_eq!(build_root_system(Family::F4, 4).unwrap().positive_roots.len(), 24);
    }

    #[test]
    fn unsupported_combinations() {
        assert!(build_root_system(Family::F4, 3).is_err());
        assert!(build_root_system(Family::D, 1).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn c2_rho_by_summation() {
        let rs = build_root_system(Family::C, 2).unwrap();
        // e1-e2, e1+e2, 2e1, 2e2 sum to (4, 2)
        assert_eq!(rho(&rs), RationalVec::from_ints(&[2, 1]));
    }

    #[test]
    fn fundamental_weight_duality() {
        for (fam, r) in [(Family::A, 2), (Family::C, 2), (Family::F4, 4), (Family::D, 4)] {
            let rs = build_root_system(fam, r).unwrap();
            let w = fundamental_weights(&rs);
            for (i, wi) in w.iter().enumerate() {
                for (j, aj) in rs.simple_roots.iter().enumerate() {
                    let p = rat(2) * wi.dot(aj) / aj.norm_sq();
                    assert_eq!(p, rat((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        // values computed with the Freudenthal oracle in tests/rootsys_oracles.rs
        assert_eq!(dim(&a2, &[1, 0]), 3);
        assert_eq!(dim(&a2, &[0, 0]), 1);
        assert_eq!(dim(&a2, &[2, 2]), 27);
        let f4 = build_root_system(Family::F4, 4).unwrap();
        assert_eq!(dim(&f4, &[0, 0, 0, 1]), 26);
        assert_eq!(dim(&f4, &[1, 0, 0, 0]), 52);
        assert!(weyl_dim(&a2, &a2.weight(&[-1, 0]).unwrap()).is_err());
    }

    #[test]
    fn helgason_condition() {
        let a2 = build_root_system(Family::A, 2).unwrap();
        assert!(cartan_helgason_even(&a2, &a2.weight(&[2, 2]).unwrap()));
        assert!(cartan_helgason_even(&a2, &a2.weight(&[0, 0]).unwrap()));
        assert!(!cartan_helgason_even(&a2, &a2.weight(&[1, 0]).unwrap()));
    }

    #[test]
    fn weight_round_trip() {
        let f4 = build_root_system(Family::F4, 4).unwrap();
        let w = f4.weight(&[1, 2, 0, 3]).unwrap();
        assert_eq!(f4.weight_from_ambient(&w.ambient).unwrap(), w);
        assert_eq!(
            f4.weight(&[0, 0, 0, 1]).unwrap().ambient,
            RationalVec::from_ints(&[1, 0, 0, 0])
        );
    }
}
