//! Energy levels, Laplace eigenvalues and multiplicities of the catalog
//! spaces, plus the SU(3)/SO(3) eigenvalue form and its Diophantine
//! splitting counter.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::SymmetricSpaceDescriptor;
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, weyl_dim, Family, Rational, Weight};

fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn require_rank_one(space: &SymmetricSpaceDescriptor) -> Result<()> {
    if space.is_rank_one() {
        Ok(())
    } else {
        Err(Error::WrongRank(format!(
            "{} has rank {}; use the su3 operations (su3_eigenvalue, su3_family_eigenvalue) instead",
            space.display_name(),
            space.restricted_rank
        )))
    }
}

/// c_k = (N_M + 2k)^2 / 2.
pub fn energy_level(space: &SymmetricSpaceDescriptor, k: u32) -> Result<Rational> {
    require_rank_one(space)?;
    let s = i64::from(space.n_m) + 2 * i64::from(k);
    Ok(BigRational::new(BigInt::from(s * s), BigInt::from(2)))
}

/// (N_M + 2k)^2 - N_M^2 = 2 c_k - N_M^2, before the metric correction.
pub fn quantized_eigenvalue(space: &SymmetricSpaceDescriptor, k: u32) -> Result<Rational> {
    let n = int(i64::from(space.n_m));
    Ok(energy_level(space, k)? * int(2) - &n * &n)
}

/// Laplace eigenvalue for the unit metric: ((N_M+2k)^2 - N_M^2) / sigma.
pub fn laplace_eigenvalue(space: &SymmetricSpaceDescriptor, k: u32) -> Result<Rational> {
    Ok(quantized_eigenvalue(space, k)? / &space.sigma)
}

fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Closed-form multiplicities for S^n, CP^n and HP^n.
pub fn multiplicity_closed(space: &SymmetricSpaceDescriptor, k: u32) -> Result<BigUint> {
    let k = i64::from(k);
    let n = space.n.unwrap_or(0) as i64;
    match space.id.as_str() {
        "S^n" => Ok(binom(n + k, k) - binom(n + k - 2, k - 2)),
        "CP^n" => {
            let a = binom(n + k, k);
            let b = binom(n + k - 1, k - 1);
            Ok(&a * &a - &b * &b)
        }
        "HP^n" => {
            let num = BigRational::from_integer(BigInt::from(2 * n + 2 * k + 1));
            let den = BigRational::from_integer(BigInt::from((k + 1) * (2 * n + 1)));
            let m = num / den
                * BigRational::from_integer(binom(2 * n + k, k).into())
                * BigRational::from_integer(binom(2 * n + k - 1, k).into());
            debug_assert!(m.is_integer());
            Ok(m.to_integer().to_biguint().expect("nonnegative"))
        }
        _ => Err(Error::NoClosedForm(format!(
            "{} has no closed-form multiplicity; use multiplicity_weyl",
            space.display_name()
        ))),
    }
}

/// Weyl dimension of the highest weight attached to level `k` (rank one).
pub fn multiplicity_weyl(space: &SymmetricSpaceDescriptor, k: u32) -> Result<BigUint> {
    require_rank_one(space)?;
    multiplicity_weyl_at(space, &[k])
}

/// Weyl dimension of the highest weight attached to the level indices.
pub fn multiplicity_weyl_at(space: &SymmetricSpaceDescriptor, levels: &[u32]) -> Result<BigUint> {
    let w = space.highest_weight_at(levels)?;
    weyl_dim(&space.group_root_system()?, &w)
}

/// One row of a spectrum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralLine {
    pub k: Vec<u32>,
    /// Energy c_k; `None` for spaces of higher rank.
    pub energy: Option<Rational>,
    /// Unit-metric Laplace eigenvalue.
    pub eigenvalue: Rational,
    pub multiplicity_closed: Option<BigUint>,
    pub multiplicity_weyl: BigUint,
    pub weight: Weight,
}

impl SpectralLine {
    pub fn multiplicity(&self) -> &BigUint {
        &self.multiplicity_weyl
    }
}

/// Spectrum row at level `k` of a rank-one space.
pub fn spectral_line(space: &SymmetricSpaceDescriptor, k: u32) -> Result<SpectralLine> {
    require_rank_one(space)?;
    let closed = match multiplicity_closed(space, k) {
        Ok(m) => Some(m),
        Err(Error::NoClosedForm(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SpectralLine {
        k: vec![k],
        energy: Some(energy_level(space, k)?),
        eigenvalue: laplace_eigenvalue(space, k)?,
        multiplicity_closed: closed,
        multiplicity_weyl: multiplicity_weyl(space, k)?,
        weight: space.highest_weight_at(&[k])?,
    })
}

/// Rows k = 0..=k_max. For SU(3)/SO(3) the rows are the level pairs
/// (p, q) with p + q <= k_max, ordered by total degree.
pub fn spectrum(space: &SymmetricSpaceDescriptor, k_max: u32) -> Result<Vec<SpectralLine>> {
    if space.is_rank_one() {
        return (0..=k_max).map(|k| spectral_line(space, k)).collect();
    }
    if space.id != "SU3/SO3" {
        return Err(Error::WrongRank(format!(
            "no spectrum rule for {} of rank {}",
            space.display_name(),
            space.restricted_rank
        )));
    }
    let mut rows = Vec::new();
    for total in 0..=k_max {
        for p in (0..=total).rev() {
            let q = total - p;
            rows.push(SpectralLine {
                k: vec![p, q],
                energy: None,
                eigenvalue: su3_family_eigenvalue(p, q) / &space.sigma,
                multiplicity_closed: None,
                multiplicity_weyl: multiplicity_weyl_at(space, &[p, q])?,
                weight: space.highest_weight_at(&[p, q])?,
            });
        }
    }
    Ok(rows)
}

/// Value of the SU(3) form and the derived eigenvalue at an integer point
/// k1*alpha1 + k2*alpha2 of the root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su3Eigen {
    pub norm_value: BigInt,
    pub eigenvalue: Rational,
    /// Strict dominance k1 < 2 k2 < 4 k1.
    pub dominant: bool,
}

/// 6[(k1+1)^2 - (k1+1)(k2+1) + (k2+1)^2] and that value minus 6.
pub fn su3_eigenvalue(k1: i64, k2: i64) -> Su3Eigen {
    let (norm, eig) = su3_eigenvalue_rational(&int(k1), &int(k2));
    Su3Eigen {
        norm_value: norm.to_integer(),
        eigenvalue: eig,
        dominant: k1 < 2 * k2 && 2 * k2 < 4 * k1,
    }
}

/// The same form at rational root coordinates.
pub fn su3_eigenvalue_rational(k1: &Rational, k2: &Rational) -> (Rational, Rational) {
    let x = k1 + int(1);
    let y = k2 + int(1);
    let norm = int(6) * (&x * &x - &x * &y + &y * &y);
    let eig = &norm - int(6);
    (norm, eig)
}

/// Root coordinates (k1, k2) of m1*Lambda1 + m2*Lambda2 in A2.
pub fn su3_root_coordinates(m1: i64, m2: i64) -> (Rational, Rational) {
    (
        BigRational::new(BigInt::from(2 * m1 + m2), BigInt::from(3)),
        BigRational::new(BigInt::from(m1 + 2 * m2), BigInt::from(3)),
    )
}

/// su3 eigenvalue of the family phi_a^p phi~_b^q, whose highest weight is
/// 2q Lambda1 + 2p Lambda2.
pub fn su3_family_eigenvalue(p: u32, q: u32) -> Rational {
    let (k1, k2) = su3_root_coordinates(2 * i64::from(q), 2 * i64::from(p));
    su3_eigenvalue_rational(&k1, &k2).1
}

/// Weyl dimension of the A2 module with highest weight k1*alpha1 + k2*alpha2.
pub fn su3_pair_dimension(k1: i64, k2: i64) -> Result<BigUint> {
    let a2 = build_root_system(Family::A, 2)?;
    weyl_dim(&a2, &a2.weight(&[2 * k1 - k2, 2 * k2 - k1])?)
}

/// Solutions of x^2 - xy + y^2 = Q under strict dominance, as (k1, k2) =
/// (x-1, y-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingSolution {
    pub q: u64,
    /// All ordered pairs, sorted lexicographically; closed under swapping.
    pub pairs: Vec<(u64, u64)>,
}

impl SplittingSolution {
    /// Classes of pairs under (k1, k2) <-> (k2, k1). A pair and its swap are
    /// dual modules whose sum is one real irreducible module.
    pub fn real_module_classes(&self) -> Vec<(u64, u64)> {
        self.pairs.iter().copied().filter(|(a, b)| a <= b).collect()
    }

    pub fn real_module_count(&self) -> usize {
        self.real_module_classes().len()
    }

    /// Weyl dimensions of the pairs, in order.
    pub fn dimensions(&self) -> Result<Vec<BigUint>> {
        self.pairs
            .iter()
            .map(|&(a, b)| su3_pair_dimension(a as i64, b as i64))
            .collect()
    }

    /// Sum of the Weyl dimensions over all ordered pairs.
    pub fn total_dimension(&self) -> Result<BigUint> {
        Ok(self.dimensions()?.into_iter().sum())
    }
}

/// Enumerates all pairs with 1 < x, y <= ceil(2 sqrt Q) and
/// x - 1 < 2(y - 1) < 4(x - 1). For each x the equation is solved for y.
pub fn splitting_count(q: u64) -> SplittingSolution {
    let bound = {
        let r = (4 * q).sqrt();
        if r * r == 4 * q {
            r
        } else {
            r + 1
        }
    };
    let mut pairs = Vec::new();
    for x in 2..=bound {
        // y = (x +- sqrt(4Q - 3x^2)) / 2
        let disc = 4 * q as i128 - 3 * (x as i128) * (x as i128);
        if disc < 0 {
            continue;
        }
        let s = (disc as u128).sqrt() as i128;
        if s * s != disc {
            continue;
        }
        let mut ys = vec![x as i128 + s, x as i128 - s];
        ys.dedup();
        for twice_y in ys {
            if twice_y % 2 != 0 {
                continue;
            }
            let y = twice_y / 2;
            if y < 2 || y > bound as i128 {
                continue;
            }
            let (k1, k2) = (x as i128 - 1, y - 1);
            if k1 < 2 * k2 && 2 * k2 < 4 * k1 {
                pairs.push((k1 as u64, k2 as u64));
            }
        }
    }
    pairs.sort_unstable();
    SplittingSolution { q, pairs }
}
