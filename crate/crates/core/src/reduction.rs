//! Chart maps between reduced phase spaces of CP^n and HP^n geodesic flows.
//!
//! The complex chart sends (u, v) with ||u|| = 1, u·v̄ = 0, v != 0 to
//!
//! ```text
//! ũ = (||v|| u + i v) / √2,   ṽ = (v̄ - i ||v|| ū) / √2,
//! ```
//!
//! which satisfies <ũ,ũ> = <ṽ,ṽ> = ||v||² and ũ·ṽ = 0.
//!
//! For the quaternionic chart, C^{2n+2} = H^{n+1} with coordinates paired as
//! (x_{2k}, x_{2k+1}), the structure map J(a, b) = (-b̄, ā) and the complex
//! symplectic form I(x, y) = Σ x_{2k} y_{2k+1} - x_{2k+1} y_{2k}. The map
//!
//! ```text
//! z = (||v|| u + i v) / √2,   w = J(||v|| u - i v) / √2
//! ```
//!
//! takes ||u|| = 1, <u,v> = 0, I(u,v) = 0, v != 0 to ||z|| = ||w||,
//! <z,w> = 0, I(z,w) = 0, because I(x, Jy) = <x, y> and <x, Jy> = -I(x, y).
//!
//! Everything here is floating point: the maps involve square roots.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Gate on input constraint residuals.
pub const INPUT_TOLERANCE: f64 = 1e-10;
/// Gate on output constraint residuals.
pub const OUTPUT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Complex,
    Quaternionic,
}

/// A pair of complex vectors fed to or produced by a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub kind: ChartKind,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Σ x_i ȳ_i.
pub fn hermitian(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Σ x_i y_i.
pub fn bilinear(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    hermitian(x, x).re.sqrt()
}

/// Σ x_{2k} y_{2k+1} - x_{2k+1} y_{2k}.
pub fn symplectic(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(a, b)| a[0] * b[1] - a[1] * b[0])
        .sum()
}

/// J(a, b) = (-b̄, ā) on each coordinate pair.
pub fn quaternionic_j(x: &[Complex64]) -> Vec<Complex64> {
    x.chunks(2).flat_map(|p| [-p[1].conj(), p[0].conj()]).collect()
}

fn gate(constraint: &str, residuals: Vec<f64>, tol: f64) -> Result<()> {
    if residuals.iter().all(|r| r.is_finite() && *r < tol) {
        Ok(())
    } else {
        Err(Error::ChartPrecondition {
            constraint: constraint.to_string(),
            residuals,
        })
    }
}

fn nonzero(v: &[Complex64]) -> f64 {
    // Residual for v != 0: 0 if nonzero, 1 otherwise.
    if norm(v) > INPUT_TOLERANCE {
        0.0
    } else {
        1.0
    }
}

/// [| ||u|| - 1 |, |u·v̄|, v == 0].
pub fn complex_input_residuals(u: &[Complex64], v: &[Complex64]) -> Vec<f64> {
    vec![(norm(u) - 1.0).abs(), hermitian(u, v).norm(), nonzero(v)]
}

/// [|<ũ,ũ> - <ṽ,ṽ>|, |ũ·ṽ|].
pub fn complex_output_residuals(ut: &[Complex64], vt: &[Complex64]) -> Vec<f64> {
    vec![
        (hermitian(ut, ut).re - hermitian(vt, vt).re).abs(),
        bilinear(ut, vt).norm(),
    ]
}

/// [| ||u|| - 1 |, |<u,v>|, |I(u,v)|, v == 0].
pub fn quaternionic_input_residuals(u: &[Complex64], v: &[Complex64]) -> Vec<f64> {
    vec![
        (norm(u) - 1.0).abs(),
        hermitian(u, v).norm(),
        symplectic(u, v).norm(),
        nonzero(v),
    ]
}

/// [| ||z|| - ||w|| |, |<z,w>|, |I(z,w)|].
pub fn quaternionic_output_residuals(z: &[Complex64], w: &[Complex64]) -> Vec<f64> {
    vec![
        (norm(z) - norm(w)).abs(),
        hermitian(z, w).norm(),
        symplectic(z, w).norm(),
    ]
}

fn same_len(u: &[Complex64], v: &[Complex64], even: bool) -> Result<()> {
    if u.len() != v.len() || u.is_empty() || (even && !u.len().is_multiple_of(2)) {
        return Err(Error::Arity(format!(
            "chart inputs of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(())
}

/// The complex chart. Rejects inputs whose residuals exceed
/// [`INPUT_TOLERANCE`].
pub fn chart_complex(u: &[Complex64], v: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    same_len(u, v, false)?;
    gate("||u|| = 1, u.conj(v) = 0, v != 0", complex_input_residuals(u, v), INPUT_TOLERANCE)?;
    let nv = norm(v);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ut: Vec<_> = u.iter().zip(v).map(|(a, b)| (a * nv + I * b) * s).collect();
    let vt: Vec<_> = u.iter().zip(v).map(|(a, b)| (b.conj() - I * nv * a.conj()) * s).collect();
    gate("<u~,u~> = <v~,v~>, u~.v~ = 0", complex_output_residuals(&ut, &vt), OUTPUT_TOLERANCE)?;
    Ok((ut, vt))
}

/// The quaternionic chart on C^{2n+2}. Rejects inputs whose residuals exceed
/// [`INPUT_TOLERANCE`].
pub fn chart_quaternionic(u: &[Complex64], v: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    same_len(u, v, true)?;
    gate(
        "||u|| = 1, <u,v> = 0, I(u,v) = 0, v != 0",
        quaternionic_input_residuals(u, v),
        INPUT_TOLERANCE,
    )?;
    let nv = norm(v);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z: Vec<_> = u.iter().zip(v).map(|(a, b)| (a * nv + I * b) * s).collect();
    let y: Vec<_> = u.iter().zip(v).map(|(a, b)| (a * nv - I * b) * s).collect();
    let w = quaternionic_j(&y);
    gate(
        "||z|| = ||w||, <z,w> = 0, I(z,w) = 0",
        quaternionic_output_residuals(&z, &w),
        OUTPUT_TOLERANCE,
    )?;
    Ok((z, w))
}

/// Quantities constant on classes (e^{iθ}ũ, e^{-iθ}ṽ): all products
/// ũ_i ṽ_j, followed by <ũ,ũ> and <ṽ,ṽ>.
pub fn complex_class_invariants(ut: &[Complex64], vt: &[Complex64]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = ut.iter().flat_map(|a| vt.iter().map(move |b| a * b)).collect();
    out.push(hermitian(ut, ut));
    out.push(hermitian(vt, vt));
    out
}

fn gaussian_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect()
}

fn unit(x: Vec<Complex64>) -> Vec<Complex64> {
    let n = norm(&x);
    x.into_iter().map(|c| c / n).collect()
}

/// Removes the components of v along the orthonormal vectors `basis`.
fn project_out(mut v: Vec<Complex64>, basis: &[&[Complex64]]) -> Vec<Complex64> {
    for b in basis {
        let c = hermitian(&v, b);
        for (x, y) in v.iter_mut().zip(b.iter()) {
            *x -= c * y;
        }
    }
    v
}

/// Admissible input for the chart of the given kind: arity n+1 (complex) or
/// 2n+2 (quaternionic), with ||v|| spread over roughly [0.5, 3].
pub fn random_admissible(kind: ChartKind, n: usize, rng: &mut ChaCha8Rng) -> ChartPoint {
    let len = match kind {
        ChartKind::Complex => n + 1,
        ChartKind::Quaternionic => 2 * n + 2,
    };
    let u = unit(gaussian_vector(rng, len));
    let v = match kind {
        ChartKind::Complex => project_out(gaussian_vector(rng, len), &[&u]),
        ChartKind::Quaternionic => {
            let ju = quaternionic_j(&u);
            project_out(gaussian_vector(rng, len), &[&u, &ju])
        }
    };
    let scale = 0.5 + 2.5 * rand::Rng::gen::<f64>(rng);
    let v = unit(v).into_iter().map(|c| c * scale).collect();
    ChartPoint { u, v, kind }
}

/// Maximum residuals over a batch of random admissible inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct BatchReport {
    pub kind: ChartKind,
    pub count: usize,
    pub max_input_residual: f64,
    pub max_output_residual: f64,
    /// Number of inputs the chart rejected.
    pub rejected: usize,
}

pub fn verify_batch(kind: ChartKind, n: usize, count: usize, seed: u64) -> BatchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BatchReport {
        kind,
        count,
        max_input_residual: 0.0,
        max_output_residual: 0.0,
        rejected: 0,
    };
    let max = |r: Vec<f64>| r.into_iter().fold(0.0, f64::max);
    for _ in 0..count {
        let p = random_admissible(kind, n, &mut rng);
        let (inp, out) = match kind {
            ChartKind::Complex => (
                complex_input_residuals(&p.u, &p.v),
                chart_complex(&p.u, &p.v).map(|(a, b)| complex_output_residuals(&a, &b)),
            ),
            ChartKind::Quaternionic => (
                quaternionic_input_residuals(&p.u, &p.v),
                chart_quaternionic(&p.u, &p.v).map(|(a, b)| quaternionic_output_residuals(&a, &b)),
            ),
        };
        report.max_input_residual = report.max_input_residual.max(max(inp));
        match out {
            Ok(r) => report.max_output_residual = report.max_output_residual.max(max(r)),
            Err(_) => report.rejected += 1,
        }
    }
    report
}
