//! Explicit eigenfunction families: sections (a,z)^k (b,w)^k for CP^n,
//! l_AB(U,V)^k for HP^n and φ_a^p φ̃_b^q for SU(n)/SO(n), together with
//! the checks tying them to the spectrum.
//!
//! The bilinear form (x, y) = Σ x_i y_i is used without conjugation
//! throughout.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::SymmetricSpaceDescriptor;
use crate::error::{Error, Result};
use crate::liediff;
use crate::polyalg::{apply_box, random_gaussian, span_rank, GaussianRational, Polynomial, VarSpace};
use crate::rootsys::{rational_to_f64, Rational};
use crate::spectrum;

/// Bound on numerators and denominators of sampled parameters.
pub const PARAMETER_BOUND: i64 = 9;

/// Generators sampled per unit of expected multiplicity in span checks.
pub const OVERSAMPLING: usize = 5;

/// Number of special-unitary samples used by the on-group checks.
pub const GROUP_SAMPLES: usize = 200;

pub fn bilinear(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter()
        .zip(b)
        .fold(GaussianRational::zero(), |s, (x, y)| &s + &(x * y))
}

/// I(A, B) = (a, d) - (b, c) for A = (a, b), B = (c, d).
pub fn hp_invariant(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    let h = a.len() / 2;
    &bilinear(&a[..h], &b[h..]) - &bilinear(&a[h..], &b[..h])
}

fn constraint(name: &str, residual: &GaussianRational) -> Result<()> {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::Constraint {
            constraint: name.to_string(),
            residual: residual.to_string(),
        })
    }
}

/// Parameters of a family member with the residual of its defining
/// constraint, which must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionFamilySpec {
    pub space: String,
    pub level: Vec<u32>,
    pub params: Vec<Vec<GaussianRational>>,
    pub constraint_residual: GaussianRational,
}

impl SectionFamilySpec {
    pub fn cpn(a: &[GaussianRational], b: &[GaussianRational], k: u32) -> Self {
        SectionFamilySpec {
            space: "CP^n".into(),
            level: vec![k],
            params: vec![a.to_vec(), b.to_vec()],
            constraint_residual: bilinear(a, b),
        }
    }

    pub fn hpn(a: &[GaussianRational], b: &[GaussianRational], k: u32) -> Self {
        SectionFamilySpec {
            space: "HP^n".into(),
            level: vec![k],
            params: vec![a.to_vec(), b.to_vec()],
            constraint_residual: hp_invariant(a, b),
        }
    }

    pub fn sun(a: &[GaussianRational], b: &[GaussianRational], p: u32, q: u32) -> Self {
        SectionFamilySpec {
            space: "SU3/SO3".into(),
            level: vec![p, q],
            params: vec![a.to_vec(), b.to_vec()],
            constraint_residual: bilinear(a, b),
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.constraint_residual.is_zero()
    }
}

/// Families `z`, `w` of length n+1.
pub fn cp_space(n: usize) -> Arc<VarSpace> {
    VarSpace::new(&[("z", &[n + 1]), ("w", &[n + 1])]).expect("fixed family names")
}

/// Families `z`, `zbar` of length n+1.
pub fn cp_restricted_space(n: usize) -> Arc<VarSpace> {
    VarSpace::new(&[("z", &[n + 1]), ("zbar", &[n + 1])]).expect("fixed family names")
}

/// Families `U`, `V` of length 2n+2.
pub fn hp_space(n: usize) -> Arc<VarSpace> {
    VarSpace::new(&[("U", &[2 * n + 2]), ("V", &[2 * n + 2])]).expect("fixed family names")
}

/// Families `z`, `w`, `zbar`, `wbar` of length n+1.
pub fn hp_restricted_space(n: usize) -> Arc<VarSpace> {
    VarSpace::new(&[
        ("z", &[n + 1]),
        ("w", &[n + 1]),
        ("zbar", &[n + 1]),
        ("wbar", &[n + 1]),
    ])
    .expect("fixed family names")
}

fn vector_family(space: &VarSpace, name: &str) -> Result<(usize, usize)> {
    match space.family(name) {
        Some((off, [len])) => Ok((off, *len)),
        _ => Err(Error::Arity(format!("expected a vector family `{name}`"))),
    }
}

/// Σ c_i x_i over the vector family `name`.
pub fn linear_form(space: &Arc<VarSpace>, name: &str, c: &[GaussianRational]) -> Result<Polynomial> {
    let (off, len) = vector_family(space, name)?;
    if c.len() != len {
        return Err(Error::Arity(format!(
            "{} coefficients for family {name} of length {len}",
            c.len()
        )));
    }
    let terms = c.iter().enumerate().map(|(i, ci)| {
        let mut exps = vec![0u16; space.num_vars()];
        exps[off + i] = 1;
        (crate::polyalg::Monomial::from_exponents(exps), ci.clone())
    });
    Ok(Polynomial::from_terms(space, terms))
}

/// (a, z)^k (b, w)^k, requiring (a, b) = 0. For k = 0 this is 1.
pub fn cpn_section(a: &[GaussianRational], b: &[GaussianRational], k: u32) -> Result<Polynomial> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Arity("a and b must have the same positive length".into()));
    }
    constraint("(a,b)=0", &bilinear(a, b))?;
    let space = cp_space(a.len() - 1);
    let az = linear_form(&space, "z", a)?;
    let bw = linear_form(&space, "w", b)?;
    Ok(&az.pow(k) * &bw.pow(k))
}

fn sum_second_derivatives(p: &Polynomial, pairs: &[(&str, &str)], factor: i64) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(p.space());
    for (x, y) in pairs {
        let (ox, lx) = vector_family(p.space(), x)?;
        let (oy, ly) = vector_family(p.space(), y)?;
        if lx != ly {
            return Err(Error::Arity(format!("families {x} and {y} differ in length")));
        }
        for i in 0..lx {
            acc = &acc + &p.derive2(ox + i, oy + i);
        }
    }
    Ok(acc.scale(&GaussianRational::from_ints(factor, 0)))
}

/// Σ ∂²/∂z_i∂w_i.
pub fn mixed_laplacian(p: &Polynomial) -> Result<Polynomial> {
    sum_second_derivatives(p, &[("z", "w")], 1)
}

/// 4 Σ ∂²/∂x_i∂xbar_i over every family `x` that has a companion `xbar`.
pub fn euclidean_laplacian(p: &Polynomial) -> Result<Polynomial> {
    let space = p.space().clone();
    let names: Vec<String> = space.families().iter().map(|f| f.name.clone()).collect();
    let pairs: Vec<(&str, String)> = names
        .iter()
        .filter(|n| names.contains(&format!("{n}bar")))
        .map(|n| (n.as_str(), format!("{n}bar")))
        .collect();
    if pairs.is_empty() {
        return Err(Error::Arity("no conjugate family pairs".into()));
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (*a, b.as_str())).collect();
    sum_second_derivatives(p, &refs, 4)
}

/// Substitutes w_i -> zbar_i.
pub fn restrict_conjugate(p: &Polynomial) -> Result<Polynomial> {
    let (_, len) = vector_family(p.space(), "z")?;
    let target = cp_restricted_space(len - 1);
    let images: Result<Vec<Polynomial>> = (0..2 * len)
        .map(|v| {
            let fam = if v < len { "z" } else { "zbar" };
            Polynomial::named(&target, fam, &[v % len])
        })
        .collect();
    p.substitute(&target, &images?)
}

/// l_AB(U, V) = (A, U)(B, V) - (B, U)(A, V) with the entries of A and B
/// given as polynomials over the same space, so they may be symbolic.
pub fn l_ab(a: &[Polynomial], b: &[Polynomial]) -> Result<Polynomial> {
    let space = a
        .first()
        .ok_or_else(|| Error::Arity("empty parameter vector".into()))?
        .space()
        .clone();
    let (ou, lu) = vector_family(&space, "U")?;
    let (ov, lv) = vector_family(&space, "V")?;
    if a.len() != lu || b.len() != lu || lv != lu {
        return Err(Error::Arity("A, B, U, V must have equal length".into()));
    }
    let pair = |x: &[Polynomial], off: usize| -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&space);
        for (i, xi) in x.iter().enumerate() {
            acc = acc.checked_add(&xi.checked_mul(&Polynomial::var(&space, off + i))?)?;
        }
        Ok(acc)
    };
    Ok(&(&pair(a, ou)? * &pair(b, ov)?) - &(&pair(b, ou)? * &pair(a, ov)?))
}

/// I(A, B) with symbolic entries.
pub fn hp_invariant_symbolic(a: &[Polynomial], b: &[Polynomial]) -> Result<Polynomial> {
    let h = a.len() / 2;
    let space = a
        .first()
        .ok_or_else(|| Error::Arity("empty parameter vector".into()))?
        .space()
        .clone();
    let mut acc = Polynomial::zero(&space);
    for i in 0..h {
        acc = acc.checked_add(&a[i].checked_mul(&b[h + i])?)?;
        acc = acc.checked_sub(&a[h + i].checked_mul(&b[i])?)?;
    }
    Ok(acc)
}

/// l_AB(U, V)^k, requiring I(A, B) = 0.
pub fn hpn_section(a: &[GaussianRational], b: &[GaussianRational], k: u32) -> Result<Polynomial> {
    if a.len() != b.len() || a.len() < 2 || !a.len().is_multiple_of(2) {
        return Err(Error::Arity("A and B must have the same even length 2n+2".into()));
    }
    constraint("I(A,B)=0", &hp_invariant(a, b))?;
    let space = hp_space(a.len() / 2 - 1);
    let consts = |v: &[GaussianRational]| -> Vec<Polynomial> {
        v.iter().map(|c| Polynomial::constant(&space, c.clone())).collect()
    };
    Ok(l_ab(&consts(a), &consts(b))?.pow(k))
}

/// Substitutes U = (z, w), V = (w̄, -z̄).
pub fn hpn_restrict(p: &Polynomial) -> Result<Polynomial> {
    let (_, len) = vector_family(p.space(), "U")?;
    let m = len / 2;
    let target = hp_restricted_space(m - 1);
    let mut images = Vec::with_capacity(2 * len);
    for i in 0..m {
        images.push(Polynomial::named(&target, "z", &[i])?);
    }
    for i in 0..m {
        images.push(Polynomial::named(&target, "w", &[i])?);
    }
    for i in 0..m {
        images.push(Polynomial::named(&target, "wbar", &[i])?);
    }
    for i in 0..m {
        images.push(-&Polynomial::named(&target, "zbar", &[i])?);
    }
    p.substitute(&target, &images)
}

fn phi_on(family: &str, a: &[GaussianRational], n: usize) -> Result<Polynomial> {
    if a.len() != n {
        return Err(Error::Arity(format!("vector of length {} for n = {n}", a.len())));
    }
    let space = liediff::su_space(n);
    let mut acc = Polynomial::zero(&space);
    for i in 0..n {
        let mut col = Polynomial::zero(&space);
        for (j, aj) in a.iter().enumerate() {
            col = &col + &Polynomial::named(&space, family, &[j, i])?.scale(aj);
        }
        acc = &acc + &col.pow(2);
    }
    Ok(acc)
}

/// φ_a = Σ_i (Σ_j a_j z_ji)² = Tr(zᵀ a aᵀ z).
pub fn sun_phi(a: &[GaussianRational], n: usize) -> Result<Polynomial> {
    phi_on("z", a, n)
}

/// φ̃_b = Σ_i (Σ_j b_j zbar_ji)².
pub fn sun_phi_tilde(b: &[GaussianRational], n: usize) -> Result<Polynomial> {
    phi_on("zbar", b, n)
}

/// φ_a^p φ̃_b^q. The constraint (a, b) = 0 is enforced when p, q >= 1.
pub fn sun_family(a: &[GaussianRational], b: &[GaussianRational], p: u32, q: u32, n: usize) -> Result<Polynomial> {
    if p > 0 && q > 0 {
        constraint("(a,b)=0", &bilinear(a, b))?;
    }
    Ok(&sun_phi(a, n)?.pow(p) * &sun_phi_tilde(b, n)?.pow(q))
}

/// Swaps z and zbar and conjugates every coefficient.
pub fn conjugate_matrix_polynomial(f: &Polynomial, n: usize) -> Result<Polynomial> {
    let space = f.space().clone();
    let mut images = Vec::with_capacity(2 * n * n);
    for fam in ["zbar", "z"] {
        for i in 0..n {
            for j in 0..n {
                images.push(Polynomial::named(&space, fam, &[i, j])?);
            }
        }
    }
    f.conj_coefficients().substitute(&space, &images)
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<GaussianRational> {
    (0..len).map(|_| random_gaussian(rng, PARAMETER_BOUND)).collect()
}

/// Random b with Σ w_i b_i = 0 for the given weights w (not all zero).
fn random_in_kernel(rng: &mut ChaCha8Rng, w: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut b = random_vector(rng, w.len());
    let nz: Vec<usize> = (0..w.len()).filter(|&i| !w[i].is_zero()).collect();
    let j = nz[rng.gen_range(0..nz.len())];
    b[j] = GaussianRational::zero();
    b[j] = &(-&bilinear(w, &b)) / &w[j];
    b
}

fn nonzero_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<GaussianRational> {
    loop {
        let v = random_vector(rng, len);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// (a, b) in C^{n+1} with (a, b) = 0 exactly.
pub fn sample_cp_parameters(rng: &mut ChaCha8Rng, n: usize) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    let a = nonzero_vector(rng, n + 1);
    let b = random_in_kernel(rng, &a);
    (a, b)
}

/// (A, B) in C^{2n+2} with I(A, B) = 0 exactly.
pub fn sample_hp_parameters(rng: &mut ChaCha8Rng, n: usize) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    let m = n + 1;
    let a = nonzero_vector(rng, 2 * m);
    // I(A, B) = Σ a_i B_{m+i} - a_{m+i} B_i is linear in B with weights w.
    let mut w = vec![GaussianRational::zero(); 2 * m];
    for i in 0..m {
        w[m + i] = a[i].clone();
        w[i] = -&a[m + i];
    }
    let b = random_in_kernel(rng, &w);
    (a, b)
}

/// (a, b) in C^n with (a, b) = 0 exactly.
pub fn sample_sun_parameters(rng: &mut ChaCha8Rng, n: usize) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    let a = nonzero_vector(rng, n);
    let b = random_in_kernel(rng, &a);
    (a, b)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest residual seen: exact checks report 0 or 1, numerical checks
    /// the maximum absolute deviation.
    pub residual: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub space: String,
    pub level: Vec<u32>,
    pub generators: usize,
    pub rank: Option<usize>,
    pub expected_multiplicity: Option<String>,
    /// Sorted by name.
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn exact_check(name: &str, failures: usize, total: usize, what: &str) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: failures == 0,
        residual: Some(if failures == 0 { 0.0 } else { 1.0 }),
        detail: format!("{what}: {} of {total} generators", total - failures),
    }
}

fn numeric_check(name: &str, residual: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: residual < liediff::SAMPLE_TOLERANCE,
        residual: Some(residual),
        detail,
    }
}

fn rank_check(rank: usize, expected: &num_bigint::BigUint) -> CheckResult {
    let ok = num_bigint::BigUint::from(rank) == *expected;
    CheckResult {
        name: "span_rank".into(),
        passed: ok,
        residual: None,
        detail: format!("rank {rank}, expected multiplicity {expected}"),
    }
}

fn count_failures<T>(items: &[T], mut ok: impl FnMut(&T) -> Result<bool>) -> Result<usize> {
    let mut bad = 0;
    for it in items {
        if !ok(it)? {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Runs the constraint gate, the annihilation identity, the span-rank
/// comparison and (for SU(3)/SO(3)) the Lie-derivative checks.
///
/// `level` is `[k]` for CP^n and HP^n and `[p, q]` for SU3/SO3. Check
/// failures are report entries; an error means the space has no family.
pub fn verify_family(space: &SymmetricSpaceDescriptor, level: &[u32], seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (checks, generators, rank, expected) = match (space.id.as_str(), level) {
        ("CP^n", &[k]) => {
            let n = space.n.unwrap_or(1);
            let expected = spectrum::multiplicity_closed(space, k)?;
            let count = OVERSAMPLING * usize::try_from(&expected).unwrap_or(usize::MAX);
            let params: Vec<_> = (0..count).map(|_| sample_cp_parameters(&mut rng, n)).collect();
            let specs: Vec<_> = params.iter().map(|(a, b)| SectionFamilySpec::cpn(a, b, k)).collect();
            let bad_constraint = specs.iter().filter(|s| !s.is_admissible()).count();
            let sections: Vec<Polynomial> = params
                .iter()
                .map(|(a, b)| cpn_section(a, b, k))
                .collect::<Result<_>>()?;
            let restricted: Vec<Polynomial> =
                sections.iter().map(restrict_conjugate).collect::<Result<_>>()?;
            let bad_mixed = count_failures(&sections, |p| Ok(mixed_laplacian(p)?.is_zero()))?;
            let bad_eucl = count_failures(&restricted, |p| Ok(euclidean_laplacian(p)?.is_zero()))?;
            let rank = span_rank(&restricted, seed)?;
            let checks = vec![
                exact_check("constraint", bad_constraint, count, "(a,b) = 0"),
                exact_check("euclidean_laplacian", bad_eucl, count, "restriction harmonic"),
                exact_check("mixed_laplacian", bad_mixed, count, "annihilated"),
                rank_check(rank, &expected),
            ];
            (checks, count, rank, expected)
        }
        ("HP^n", &[k]) => {
            let n = space.n.unwrap_or(1);
            let expected = spectrum::multiplicity_closed(space, k)?;
            let count = OVERSAMPLING * usize::try_from(&expected).unwrap_or(usize::MAX);
            let params: Vec<_> = (0..count).map(|_| sample_hp_parameters(&mut rng, n)).collect();
            let bad_constraint = params
                .iter()
                .filter(|(a, b)| !SectionFamilySpec::hpn(a, b, k).is_admissible())
                .count();
            let sections: Vec<Polynomial> = params
                .iter()
                .map(|(a, b)| hpn_section(a, b, k))
                .collect::<Result<_>>()?;
            let restricted: Vec<Polynomial> = sections.iter().map(hpn_restrict).collect::<Result<_>>()?;
            let bad_box = count_failures(&sections, |p| Ok(apply_box(p, n)?.is_zero()))?;
            let bad_eucl = count_failures(&restricted, |p| Ok(euclidean_laplacian(p)?.is_zero()))?;
            let rank = span_rank(&restricted, seed)?;
            let checks = vec![
                exact_check("box_annihilation", bad_box, count, "annihilated by box"),
                exact_check("constraint", bad_constraint, count, "I(A,B) = 0"),
                exact_check("euclidean_laplacian", bad_eucl, count, "restriction harmonic"),
                rank_check(rank, &expected),
            ];
            (checks, count, rank, expected)
        }
        ("SU3/SO3", &[p, q]) => {
            let n = 3;
            let expected = spectrum::multiplicity_weyl_at(space, &[p, q])?;
            let count = OVERSAMPLING * usize::try_from(&expected).unwrap_or(usize::MAX);
            let params: Vec<_> = (0..count).map(|_| sample_sun_parameters(&mut rng, n)).collect();
            let bad_constraint = params
                .iter()
                .filter(|(a, b)| !SectionFamilySpec::sun(a, b, p, q).is_admissible())
                .count();
            let family: Vec<Polynomial> = params
                .iter()
                .map(|(a, b)| sun_family(a, b, p, q, n))
                .collect::<Result<_>>()?;
            let bad_so = count_failures(&family, |f| liediff::so_invariance(f, n))?;
            let rank = span_rank(&family, seed)?;
            let samples = liediff::unitary_samples(n, GROUP_SAMPLES, seed);
            let est = liediff::casimir_eigenvalue(&family[0], n, &samples)?;
            let target = spectrum::su3_family_eigenvalue(p, q) * liediff::su3_normalization();
            let target_f = rational_to_f64(&target);
            let dev = (est.value - target_f).abs();
            let (a, b) = &params[0];
            let phi = sun_phi(a, n)?;
            let phit = sun_phi_tilde(b, n)?;
            let k = liediff::carre_du_champ(&phi, &phit, n)?;
            let ab = bilinear(a, b);
            let rhs = &(&phi * &phit).scale(&GaussianRational::real(Rational::new(4.into(), 3.into())))
                - &Polynomial::constant(&phi.space().clone(), &GaussianRational::from_ints(4, 0) * &(&ab * &ab));
            let k_res = liediff::max_abs_on_samples(&(&k - &rhs), &samples)?;
            let checks = vec![
                numeric_check(
                    "carre_du_champ",
                    k_res,
                    format!("k(phi_a, phi~_b) = -4(a,b)^2 + (4/3) phi_a phi~_b at {GROUP_SAMPLES} samples"),
                ),
                numeric_check(
                    "casimir_eigen",
                    est.max_residual,
                    format!("Casimir eigenvalue {:.12} at {GROUP_SAMPLES} samples", est.value),
                ),
                numeric_check(
                    "casimir_normalization",
                    dev,
                    format!("expected {target} = su3 eigenvalue / 3"),
                ),
                exact_check("constraint", bad_constraint, count, "(a,b) = 0"),
                exact_check("so_invariance", bad_so, count, "SO(3)-invariant"),
                rank_check(rank, &expected),
            ];
            (checks, count, rank, expected)
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no eigenfunction family for {} at level {level:?}",
                space.display_name()
            )))
        }
    };
    let mut checks = checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        space: space.display_name(),
        level: level.to_vec(),
        generators,
        rank: Some(rank),
        expected_multiplicity: Some(expected.to_string()),
        checks,
    })
}

/// The first `count` generators that [`verify_family`] draws for the same
/// seed, as functions on the space (restricted sections, or matrix
/// polynomials in z, zbar for SU3/SO3).
pub fn family_generators(
    space: &SymmetricSpaceDescriptor,
    level: &[u32],
    count: usize,
    seed: u64,
) -> Result<Vec<Polynomial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.n.unwrap_or(1);
    (0..count)
        .map(|_| match (space.id.as_str(), level) {
            ("CP^n", &[k]) => {
                let (a, b) = sample_cp_parameters(&mut rng, n);
                restrict_conjugate(&cpn_section(&a, &b, k)?)
            }
            ("HP^n", &[k]) => {
                let (a, b) = sample_hp_parameters(&mut rng, n);
                hpn_restrict(&hpn_section(&a, &b, k)?)
            }
            ("SU3/SO3", &[p, q]) => {
                let (a, b) = sample_sun_parameters(&mut rng, 3);
                sun_family(&a, &b, p, q, 3)
            }
            _ => Err(Error::InvalidArgument(format!(
                "no eigenfunction family for {} at level {level:?}",
                space.display_name()
            ))),
        })
        .collect()
}
