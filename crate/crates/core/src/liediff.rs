//! Lie derivatives, the Casimir operator and the carré du champ on SU(n),
//! acting on polynomials in the matrix entries `z[i,j]` and their
//! conjugates `zbar[i,j]`.
//!
//! A function f(z, zbar) restricted to the group is moved along the right
//! action z -> z exp(tX). The Casimir is Δ = -Σ L_Y^2 / g(Y, Y) over a
//! g-orthogonal basis of su(n), with g(Z, W) = Re Tr(Z W̄ᵀ); dividing by the
//! squared norms makes it equal to the sum over the orthonormal basis while
//! staying in exact Gaussian-rational arithmetic. Identities that only hold
//! on the group are checked numerically at special-unitary samples.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::polyalg::{random_gaussian, GaussianRational, Polynomial, VarSpace};
use crate::rootsys::{rational_to_f64, Rational};

/// Tolerance for on-group identities.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;

/// Ratio between the Casimir eigenvalue on SU(3) and the su3 eigenvalue
/// form of [`crate::spectrum::su3_eigenvalue`], fixed by the (p,q) = (1,0)
/// family.
pub fn su3_normalization() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// Traceless skew-Hermitian matrices.
    Su,
    /// Real skew-symmetric matrices.
    So,
}

/// Element of su(n) or so(n) stored as a row-major n x n matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraElement {
    pub n: usize,
    pub entries: Vec<GaussianRational>,
}

impl LieAlgebraElement {
    /// Checks skew-Hermitian and traceless.
    pub fn new(n: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let x = LieAlgebraElement { n, entries };
        let mut trace = GaussianRational::zero();
        for i in 0..n {
            trace = &trace + x.get(i, i);
            for j in 0..n {
                if !(x.get(i, j) + &x.get(j, i).conj()).is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) breaks skew-Hermitian symmetry"
                    )));
                }
            }
        }
        if !trace.is_zero() {
            return Err(Error::InvalidArgument(format!("trace {trace} is not zero")));
        }
        Ok(x)
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_real)
    }

    /// g(Z, W) = Re Tr(Z W̄ᵀ).
    pub fn inner(&self, other: &LieAlgebraElement) -> Rational {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a * &b.conj()).re)
            .fold(Rational::zero(), |s, x| s + x)
    }

    fn scaled_sub(&self, other: &LieAlgebraElement, c: &Rational) -> LieAlgebraElement {
        let c = GaussianRational::real(c.clone());
        LieAlgebraElement {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - &(&c * b))
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_c64())
    }
}

/// A g-orthogonal basis together with the exact squared norms g(Y, Y).
///
/// Orthonormal bases of su(n) need square roots, so the normalization is
/// carried by `norms_sq` instead of the elements.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    pub n: usize,
    pub algebra: Algebra,
    pub elements: Vec<LieAlgebraElement>,
    pub norms_sq: Vec<Rational>,
}

fn unit(n: usize, entries: &[(usize, usize, GaussianRational)]) -> LieAlgebraElement {
    let mut m = vec![GaussianRational::zero(); n * n];
    for (i, j, c) in entries {
        m[i * n + j] = c.clone();
    }
    LieAlgebraElement { n, entries: m }
}

impl OrthonormalBasis {
    fn from_elements(n: usize, algebra: Algebra, elements: Vec<LieAlgebraElement>) -> Self {
        let norms_sq = elements.iter().map(|e| e.inner(e)).collect();
        OrthonormalBasis {
            n,
            algebra,
            elements,
            norms_sq,
        }
    }

    /// E_ij - E_ji, i(E_ij + E_ji) for i < j and the diagonal elements
    /// i diag(1, ..., 1, -k, 0, ..., 0).
    pub fn su(n: usize) -> Self {
        let one = GaussianRational::one();
        let i = GaussianRational::i();
        let mut els = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                els.push(unit(n, &[(a, b, one.clone()), (b, a, -&one)]));
                els.push(unit(n, &[(a, b, i.clone()), (b, a, i.clone())]));
            }
        }
        for k in 1..n {
            let mut d: Vec<_> = (0..k).map(|a| (a, a, i.clone())).collect();
            d.push((k, k, &i * &GaussianRational::from_ints(-(k as i64), 0)));
            els.push(unit(n, &d));
        }
        OrthonormalBasis::from_elements(n, Algebra::Su, els)
    }

    /// E_ij - E_ji for i < j.
    pub fn so(n: usize) -> Self {
        let one = GaussianRational::one();
        let mut els = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                els.push(unit(n, &[(a, b, one.clone()), (b, a, -&one)]));
            }
        }
        OrthonormalBasis::from_elements(n, Algebra::So, els)
    }

    /// Gram-Schmidt (without normalization) applied to pseudo-random
    /// rational combinations of the standard su(n) basis.
    pub fn su_random(n: usize, seed: u64) -> Self {
        let standard = OrthonormalBasis::su(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut out: Vec<LieAlgebraElement> = Vec::new();
            for _ in 0..standard.elements.len() {
                let mut v = LieAlgebraElement {
                    n,
                    entries: vec![GaussianRational::zero(); n * n],
                };
                for e in &standard.elements {
                    let c = random_gaussian(&mut rng, 9).re;
                    v = v.scaled_sub(e, &-c);
                }
                for u in &out {
                    let c = v.inner(u) / u.inner(u);
                    v = v.scaled_sub(u, &c);
                }
                out.push(v);
            }
            if out.iter().all(|v| !v.inner(v).is_zero()) {
                return OrthonormalBasis::from_elements(n, Algebra::Su, out);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Variable space with families `z` and `zbar` of shape [n, n].
pub fn su_space(n: usize) -> Arc<VarSpace> {
    VarSpace::new(&[("z", &[n, n]), ("zbar", &[n, n])]).expect("fixed family names")
}

fn matrix_offsets(space: &VarSpace, n: usize) -> Result<(usize, usize)> {
    let fam = |name: &str| match space.family(name) {
        Some((off, shape)) if shape == [n, n] => Ok(off),
        _ => Err(Error::Arity(format!(
            "expected a family `{name}` of shape [{n}, {n}]"
        ))),
    };
    Ok((fam("z")?, fam("zbar")?))
}

/// L_X f = Σ (zX)_ij ∂f/∂z_ij + (z̄X̄)_ij ∂f/∂zbar_ij.
pub fn lie_derivative(x: &LieAlgebraElement, f: &Polynomial) -> Result<Polynomial> {
    let n = x.n;
    let (z, zb) = matrix_offsets(f.space(), n)?;
    let mut field = vec![Vec::new(); f.space().num_vars()];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = x.get(k, j);
                if c.is_zero() {
                    continue;
                }
                field[z + i * n + j].push((z + i * n + k, c.clone()));
                field[zb + i * n + j].push((zb + i * n + k, c.conj()));
            }
        }
    }
    Ok(f.apply_linear_field(&field))
}

/// Δ f with the standard su(n) basis.
pub fn casimir(f: &Polynomial, n: usize) -> Result<Polynomial> {
    casimir_with(&OrthonormalBasis::su(n), f)
}

/// Δ f = -Σ L_Y(L_Y f) / g(Y, Y) over the given basis.
pub fn casimir_with(basis: &OrthonormalBasis, f: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(f.space());
    for (y, nsq) in basis.elements.iter().zip(&basis.norms_sq) {
        let second = lie_derivative(y, &lie_derivative(y, f)?)?;
        acc = &acc + &second.scale(&GaussianRational::real(-(Rational::one() / nsq)));
    }
    Ok(acc)
}

/// k(f, g) = ½[Δ(fg) - fΔg - gΔf], the gradient pairing of f and g.
pub fn carre_du_champ(f: &Polynomial, g: &Polynomial, n: usize) -> Result<Polynomial> {
    let fg = f.checked_mul(g)?;
    let defect = &(&casimir(&fg, n)? - &(f * &casimir(g, n)?)) - &(g * &casimir(f, n)?);
    Ok(defect.scale(&GaussianRational::real(Rational::new(
        BigInt::from(1),
        BigInt::from(2),
    ))))
}

/// True iff L_X f vanishes identically for every X in so(n).
pub fn so_invariance(f: &Polynomial, n: usize) -> Result<bool> {
    for x in &OrthonormalBasis::so(n).elements {
        if !lie_derivative(x, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic special-unitary matrices; sample 0 is the identity.
///
/// Each further sample is the Q factor of a complex Gaussian matrix with
/// the phases of R's diagonal moved into Q, then scaled by det^{-1/n}.
pub fn unitary_samples(n: usize, count: usize, seed: u64) -> Vec<DMatrix<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(DMatrix::identity(n, n));
    while out.len() < count {
        let m = DMatrix::from_fn(n, n, |_, _| {
            Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let qr = m.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..n {
            let d = r[(j, j)];
            if d.norm() > 0.0 {
                let phase = d / d.norm();
                for i in 0..n {
                    q[(i, j)] *= phase;
                }
            }
        }
        let det = q.determinant();
        let fix = Complex64::from_polar(1.0, -det.arg() / n as f64);
        out.push(q * fix);
    }
    out
}

/// max |U U^* - I| and |det U - 1|.
pub fn unitarity_defect(u: &DMatrix<Complex64>) -> (f64, f64) {
    let n = u.nrows();
    let prod = u * u.adjoint();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    (worst, (u.determinant() - Complex64::new(1.0, 0.0)).norm())
}

/// Evaluation point for a polynomial over `space` at the group element u
/// (z = u, zbar = conj u; other variables 0).
pub fn group_point(space: &VarSpace, u: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = u.nrows();
    let (z, zb) = matrix_offsets(space, n)?;
    let mut p = vec![Complex64::new(0.0, 0.0); space.num_vars()];
    for i in 0..n {
        for j in 0..n {
            p[z + i * n + j] = u[(i, j)];
            p[zb + i * n + j] = u[(i, j)].conj();
        }
    }
    Ok(p)
}

/// Largest |f(u)| over the samples.
pub fn max_abs_on_samples(f: &Polynomial, samples: &[DMatrix<Complex64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for u in samples {
        worst = worst.max(f.eval_c64(&group_point(f.space(), u)?).norm());
    }
    Ok(worst)
}

/// Eigenvalue of Δ on f read off from the polynomials themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenEstimate {
    /// Set when Δf = λf holds in the free polynomial ring.
    pub exact: Option<Rational>,
    pub value: f64,
    /// max |Δf(u) - λ f(u)| over the samples, for f scaled so that
    /// max |f(u)| = 1 there.
    pub max_residual: f64,
}

/// Extracts λ with Δf ≈ λf, by exact division when Δf is a rational
/// multiple of f and otherwise by least squares over the samples.
pub fn casimir_eigenvalue(
    f: &Polynomial,
    n: usize,
    samples: &[DMatrix<Complex64>],
) -> Result<EigenEstimate> {
    let cf = casimir(f, n)?;
    eigenvalue_of(f, &cf, samples)
}

/// Same as [`casimir_eigenvalue`] with Δf already computed.
pub fn eigenvalue_of(
    f: &Polynomial,
    cf: &Polynomial,
    samples: &[DMatrix<Complex64>],
) -> Result<EigenEstimate> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no eigenvalue".into()));
    }
    let exact = f.terms().next().and_then(|(_, lead)| {
        let ratio = &cf.coefficient(f.terms().next()?.0.exponents()) / lead;
        (ratio.is_real() && *cf == f.scale(&ratio)).then_some(ratio.re)
    });
    let mut values = Vec::with_capacity(samples.len());
    for u in samples {
        let p = group_point(f.space(), u)?;
        values.push((f.eval_c64(&p), cf.eval_c64(&p)));
    }
    let scale = values.iter().map(|(a, _)| a.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::InvalidArgument("polynomial vanishes at every sample".into()));
    }
    let value = match &exact {
        Some(r) => rational_to_f64(r),
        None => {
            let num: Complex64 = values.iter().map(|(a, b)| a.conj() * b).sum();
            let den: f64 = values.iter().map(|(a, _)| a.norm_sqr()).sum();
            (num / den).re
        }
    };
    let max_residual = values
        .iter()
        .map(|(a, b)| (b - a * value).norm() / scale)
        .fold(0.0, f64::max);
    Ok(EigenEstimate {
        exact,
        value,
        max_residual,
    })
}
