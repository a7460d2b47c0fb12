//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Variables are grouped into named families declared in a [`VarSpace`]; a
//! family has a shape (`[]` for a single variable, `[n]` for a vector,
//! `[n, n]` for a matrix). Polynomials over different spaces cannot be
//! combined.
//!
//! # Canonical text format
//!
//! ```text
//! poly  := "0" | term (" + " term)*
//! term  := "(" coeff ")" ("*" var ("^" uint)?)*
//! coeff := rat ("+" | "-") urat "i"        e.g. (3/2-1i), (1+0i)
//! rat   := "-"? urat
//! urat  := uint ("/" uint)?                 reduced, positive denominator
//! var   := ident ("[" uint ("," uint)* "]")?
//! ```
//!
//! Terms are listed by descending total degree, then by descending exponent
//! vector in declaration order. Exponents of 1 are omitted.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rootsys::{rational_to_f64, Rational};

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    /// Parses `a+bi` / `a-bi` with rational parts, as printed by Display.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PolynomialParse {
            offset: 0,
            message: format!("`{s}` is not a Gaussian rational a+bi"),
        };
        let body = s.strip_suffix('i').ok_or_else(bad)?;
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .last()
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let re = BigRational::from_str(&body[..split]).map_err(|_| bad())?;
        let im = BigRational::from_str(body[split..].trim_start_matches('+')).map_err(|_| bad())?;
        Ok(GaussianRational::new(re, im))
    }
}

/// A family of variables with a name and a shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarFamily {
    pub name: String,
    pub shape: Vec<usize>,
}

impl VarFamily {
    pub fn size(&self) -> usize {
        self.shape.iter().product()
    }
}

/// Ordered declaration of variable families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    families: Vec<VarFamily>,
    offsets: Vec<usize>,
    total: usize,
}

impl VarSpace {
    /// Declares the families in order; names must be distinct identifiers.
    pub fn new(families: &[(&str, &[usize])]) -> Result<Arc<VarSpace>> {
        let mut fams: Vec<VarFamily> = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for (name, shape) in families {
            let ok = !name.is_empty()
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
            if !ok || fams.iter().any(|f| f.name == *name) {
                return Err(Error::InvalidArgument(format!(
                    "invalid or repeated family name `{name}`"
                )));
            }
            offsets.push(total);
            let f = VarFamily {
                name: name.to_string(),
                shape: shape.to_vec(),
            };
            total += f.size();
            fams.push(f);
        }
        Ok(Arc::new(VarSpace {
            families: fams,
            offsets,
            total,
        }))
    }

    pub fn num_vars(&self) -> usize {
        self.total
    }

    pub fn families(&self) -> &[VarFamily] {
        &self.families
    }

    /// Offset and shape of a family.
    pub fn family(&self, name: &str) -> Option<(usize, &[usize])> {
        self.families
            .iter()
            .position(|f| f.name == name)
            .map(|i| (self.offsets[i], self.families[i].shape.as_slice()))
    }

    /// Global index of `name[idx]` (row-major for matrices).
    pub fn var(&self, name: &str, idx: &[usize]) -> Result<usize> {
        let (off, shape) = self
            .family(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        if idx.len() != shape.len() || idx.iter().zip(shape).any(|(i, s)| i >= s) {
            return Err(Error::UnknownVariable(format!("{name}{idx:?}")));
        }
        let mut flat = 0;
        for (i, s) in idx.iter().zip(shape) {
            flat = flat * s + i;
        }
        Ok(off + flat)
    }

    /// Text name of a global variable index, e.g. `z[1,2]`.
    pub fn var_name(&self, v: usize) -> String {
        let fi = self.offsets.iter().rposition(|&o| o <= v).expect("index in range");
        let f = &self.families[fi];
        let mut rem = v - self.offsets[fi];
        if f.shape.is_empty() {
            return f.name.clone();
        }
        let mut idx = vec![0; f.shape.len()];
        for (slot, s) in idx.iter_mut().zip(&f.shape).rev() {
            *slot = rem % s;
            rem /= s;
        }
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("{}[{}]", f.name, parts.join(","))
    }

    /// Parses a variable name as printed by [`VarSpace::var_name`].
    pub fn parse_var(&self, s: &str) -> Result<usize> {
        match s.find('[') {
            None => self.var(s, &[]),
            Some(b) => {
                let inner = s[b + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::UnknownVariable(s.to_string()))?;
                let idx: std::result::Result<Vec<usize>, _> =
                    inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
                let idx = idx.map_err(|_| Error::UnknownVariable(s.to_string()))?;
                self.var(&s[..b], &idx)
            }
        }
    }
}

/// Exponent vector with cached total degree. Ordered so that larger
/// monomials (higher degree, then lexicographically larger) sort first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial { deg, exps }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True if `self` divides `other`.
    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.deg.cmp(&self.deg).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

fn accumulate(map: &mut HashMap<Monomial, GaussianRational>, m: Monomial, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl Polynomial {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Polynomial {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<VarSpace>, c: GaussianRational) -> Self {
        let mut p = Polynomial::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.num_vars()), c);
        }
        p
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Polynomial::constant(space, GaussianRational::one())
    }

    /// The variable with global index `v`.
    pub fn var(space: &Arc<VarSpace>, v: usize) -> Self {
        Polynomial::monomial(space, GaussianRational::one(), &[(v, 1)])
    }

    /// Variable `name[idx]`.
    pub fn named(space: &Arc<VarSpace>, name: &str, idx: &[usize]) -> Result<Self> {
        Ok(Polynomial::var(space, space.var(name, idx)?))
    }

    /// `c * prod x_v^e` for the listed `(v, e)` pairs.
    pub fn monomial(space: &Arc<VarSpace>, c: GaussianRational, powers: &[(usize, u16)]) -> Self {
        let mut exps = vec![0u16; space.num_vars()];
        for &(v, e) in powers {
            exps[v] += e;
        }
        let mut p = Polynomial::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::from_exponents(exps), c);
        }
        p
    }

    /// Builds a polynomial from raw terms, merging duplicates.
    pub fn from_terms(
        space: &Arc<VarSpace>,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut map = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), space.num_vars(), "monomial length mismatch");
            accumulate(&mut map, m, c);
        }
        Polynomial {
            space: space.clone(),
            terms: map.into_iter().collect(),
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.deg).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.deg);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::one(self.space.num_vars()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u16]) -> GaussianRational {
        self.terms
            .get(&Monomial::from_exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = &*v + c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(Polynomial {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.space));
        }
        let mut map = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut map, m1.mul(m2), c1 * c2);
            }
        }
        Ok(Polynomial {
            space: self.space.clone(),
            terms: map.into_iter().collect(),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.space);
        }
        Polynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.space);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Complex conjugate of every coefficient (variables untouched).
    pub fn conj_coefficients(&self) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Formal partial derivative with respect to the global variable `v`.
    pub fn derive(&self, v: usize) -> Result<Polynomial> {
        if v >= self.space.num_vars() {
            return Err(Error::UnknownVariable(format!("#{v}")));
        }
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            out.insert(
                Monomial {
                    deg: m.deg - 1,
                    exps,
                },
                c * &GaussianRational::from_ints(i64::from(e), 0),
            );
        }
        Ok(Polynomial {
            space: self.space.clone(),
            terms: out,
        })
    }

    /// Derivative by variable name, e.g. `derive_named("z", &[0])`.
    pub fn derive_named(&self, name: &str, idx: &[usize]) -> Result<Polynomial> {
        self.derive(self.space.var(name, idx)?)
    }

    /// Mixed second derivative, computed term by term.
    pub fn derive2(&self, a: usize, b: usize) -> Polynomial {
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            let ea = m.exps[a];
            if ea == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[a] -= 1;
            let eb = exps[b];
            if eb == 0 {
                continue;
            }
            exps[b] -= 1;
            let f = i64::from(ea) * i64::from(eb);
            accumulate(
                &mut map,
                Monomial {
                    deg: m.deg - 2,
                    exps,
                },
                c * &GaussianRational::from_ints(f, 0),
            );
        }
        Polynomial {
            space: self.space.clone(),
            terms: map.into_iter().collect(),
        }
    }

    /// Applies sum_v x'_v d/dx_v where `field[v]` lists the linear form
    /// x'_v = sum (w, c) c x_w. Used for linear vector fields.
    pub fn apply_linear_field(&self, field: &[Vec<(usize, GaussianRational)>]) -> Polynomial {
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            for (v, form) in field.iter().enumerate() {
                let e = m.exps[v];
                if e == 0 || form.is_empty() {
                    continue;
                }
                let ce = c * &GaussianRational::from_ints(i64::from(e), 0);
                for (w, a) in form {
                    let mut exps = m.exps.clone();
                    exps[v] -= 1;
                    exps[*w] += 1;
                    accumulate(&mut map, Monomial { deg: m.deg, exps }, &ce * a);
                }
            }
        }
        Polynomial {
            space: self.space.clone(),
            terms: map.into_iter().collect(),
        }
    }

    /// Exact evaluation.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.space.num_vars() {
            return Err(Error::Arity(format!(
                "point has {} coordinates, space has {} variables",
                point.len(),
                self.space.num_vars()
            )));
        }
        let mut acc = GaussianRational::zero();
        let mut cache: HashMap<(usize, u16), GaussianRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| {
                        (0..e).fold(GaussianRational::one(), |a, _| &a * &point[v])
                    })
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation.
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.space.num_vars(), "point arity");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= point[v].powu(u32::from(e));
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[v]` (polynomials over `target`) for every
    /// variable `v` of this polynomial's space.
    pub fn substitute(&self, target: &Arc<VarSpace>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.space.num_vars() {
            return Err(Error::Arity(format!(
                "{} images for {} variables",
                images.len(),
                self.space.num_vars()
            )));
        }
        for im in images {
            if im.space != *target {
                return Err(Error::VariableMismatch);
            }
        }
        let monomial_images: Option<Vec<(Monomial, GaussianRational)>> = images
            .iter()
            .map(|p| {
                if p.terms.len() == 1 {
                    p.terms.iter().next().map(|(m, c)| (m.clone(), c.clone()))
                } else {
                    None
                }
            })
            .collect();
        if let Some(mi) = monomial_images {
            let mut map = HashMap::new();
            for (m, c) in &self.terms {
                let mut mono = Monomial::one(target.num_vars());
                let mut coeff = c.clone();
                for (v, &e) in m.exps.iter().enumerate() {
                    for _ in 0..e {
                        mono = mono.mul(&mi[v].0);
                        coeff = &coeff * &mi[v].1;
                    }
                }
                accumulate(&mut map, mono, coeff);
            }
            return Ok(Polynomial {
                space: target.clone(),
                terms: map.into_iter().collect(),
            });
        }
        let mut cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((v, e)).or_insert_with(|| images[v].pow(u32::from(e)));
                t = &t * p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Canonical text form (see the module documentation).
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut s = format!("({c})");
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                s.push('*');
                s.push_str(&self.space.var_name(v));
                if e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    /// Parses the canonical text form over `space`. Repeated monomials are
    /// merged, so any term order is accepted.
    pub fn parse(space: &Arc<VarSpace>, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text == "0" {
            return Ok(Polynomial::zero(space));
        }
        let mut terms = Vec::new();
        let mut offset = 0;
        for chunk in text.split(" + ") {
            let err = |message: String| Error::PolynomialParse { offset, message };
            let rest = chunk
                .strip_prefix('(')
                .ok_or_else(|| err(format!("term `{chunk}` must start with `(`")))?;
            let close = rest
                .find(')')
                .ok_or_else(|| err("missing `)` after coefficient".into()))?;
            let coeff: GaussianRational = rest[..close].parse().map_err(|_| {
                err(format!("bad coefficient `{}`", &rest[..close]))
            })?;
            let mut exps = vec![0u16; space.num_vars()];
            let factors = &rest[close + 1..];
            if !factors.is_empty() {
                let factors = factors
                    .strip_prefix('*')
                    .ok_or_else(|| err("expected `*` after coefficient".into()))?;
                for f in split_factors(factors) {
                    let (name, e) = match f.rfind('^') {
                        Some(i) if !f[i..].contains(']') => {
                            let e: u16 = f[i + 1..]
                                .parse()
                                .map_err(|_| err(format!("bad exponent in `{f}`")))?;
                            (&f[..i], e)
                        }
                        _ => (f, 1),
                    };
                    let v = space.parse_var(name).map_err(|_| err(format!("unknown variable `{name}`")))?;
                    exps[v] += e;
                }
            }
            terms.push((Monomial::from_exponents(exps), coeff));
            offset += chunk.len() + 3;
        }
        Ok(Polynomial::from_terms(space, terms))
    }
}

/// Splits `a*b[1,2]^3*c` on `*` outside brackets.
fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

// Operator forms panic on mismatched spaces; use the checked_* methods to
// get an error instead.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different variable spaces")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different variable spaces")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different variable spaces")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Applies the constant-coefficient differential operator of `p`
/// (x^m -> d^m) to `q`.
pub fn apply_operator(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.check(q)?;
    let mut map = HashMap::new();
    for (mp, cp) in &p.terms {
        for (mq, cq) in &q.terms {
            if !mp.divides(mq) {
                continue;
            }
            let mut factor = BigInt::one();
            let mut exps = mq.exps.clone();
            for (v, &e) in mp.exps.iter().enumerate() {
                for j in 0..e {
                    factor *= BigInt::from(mq.exps[v] - j);
                }
                exps[v] -= e;
            }
            let c = &(cp * cq) * &GaussianRational::real(Rational::from_integer(factor));
            accumulate(
                &mut map,
                Monomial {
                    deg: mq.deg - mp.deg,
                    exps,
                },
                c,
            );
        }
    }
    Ok(Polynomial {
        space: q.space.clone(),
        terms: map.into_iter().collect(),
    })
}

/// <<p, q>> = (d(P) q)(0), bilinear, with the identity form on variables.
pub fn pairing(p: &Polynomial, q: &Polynomial) -> Result<GaussianRational> {
    Ok(apply_operator(p, q)?.constant_term())
}

/// The operator sum_i (d^2/dU_i dV_{n+1+i} - d^2/dV_i dU_{n+1+i}) over the
/// families `U` and `V` of length 2n+2.
pub fn apply_box(p: &Polynomial, n: usize) -> Result<Polynomial> {
    let space = p.space().clone();
    let check = |name: &str| -> Result<usize> {
        match space.family(name) {
            Some((off, shape)) if shape == [2 * n + 2] => Ok(off),
            Some((_, shape)) => Err(Error::Arity(format!(
                "family {name} has shape {shape:?}, expected [{}]",
                2 * n + 2
            ))),
            None => Err(Error::Arity(format!("box operator needs a family `{name}`"))),
        }
    };
    let (u, v) = (check("U")?, check("V")?);
    let mut acc = Polynomial::zero(&space);
    for i in 0..=n {
        acc = &acc + &p.derive2(u + i, v + n + 1 + i);
        acc = &acc - &p.derive2(v + i, u + n + 1 + i);
    }
    Ok(acc)
}

/// Gaussian integer used inside the rank computation.
type GInt = (BigInt, BigInt);

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gsub(a: &GInt, b: &GInt) -> GInt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn gzero(a: &GInt) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

/// Primes p = 1 mod 4 below 2^62 with a square root of -1 mod p, so that
/// Z[i] maps onto Z/p.
const MODULI: [(u64, u64); 4] = [
    (4611686018427387817, 4490822397581186023),
    (4611686018427387761, 3481184452870754207),
    (4611686018427387737, 4166598643325741967),
    (4611686018427387733, 678134394580861710),
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce_mod(x: &GInt, p: u64, iota: u64) -> u64 {
    let pb = BigInt::from(p);
    let re = x.0.mod_floor(&pb).to_u64().expect("residue fits");
    let im = x.1.mod_floor(&pb).to_u64().expect("residue fits");
    (re + mulmod(im, iota, p)) % p
}

/// Incremental row echelon basis over Z/p with unit pivots. Remembers which
/// input rows became pivots.
struct ModularBasis {
    p: u64,
    iota: u64,
    rows: Vec<(usize, Vec<u64>)>,
    pivot_rows: Vec<usize>,
}

impl ModularBasis {
    fn new((p, iota): (u64, u64)) -> Self {
        ModularBasis {
            p,
            iota,
            rows: Vec::new(),
            pivot_rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, index: usize, row: &[GInt]) {
        let p = self.p;
        let mut r: Vec<u64> = row.iter().map(|x| reduce_mod(x, p, self.iota)).collect();
        for (piv, b) in &self.rows {
            let f = r[*piv];
            if f == 0 {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                *x = (*x + p - mulmod(f, *y, p)) % p;
            }
        }
        if let Some(piv) = r.iter().position(|&x| x != 0) {
            let inv = powmod(r[piv], p - 2, p);
            for x in r.iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            self.rows.push((piv, r));
            self.pivot_rows.push(index);
        }
    }
}

/// Exact quotient of Gaussian integers; `b` must divide `a`.
fn gdiv_exact(a: &GInt, b: &GInt) -> GInt {
    let n = &b.0 * &b.0 + &b.1 * &b.1;
    let num = gmul(a, &(b.0.clone(), -&b.1));
    debug_assert!((&num.0 % &n).is_zero() && (&num.1 % &n).is_zero());
    (&num.0 / &n, &num.1 / &n)
}

/// Exact check that every row lies in the span of the rows listed in
/// `pivot_rows`, whose submatrix on `pivot_cols` is nonsingular mod p and
/// hence over Q(i). Returns false if the modular rank was too small.
///
/// Fraction-free Gauss-Jordan (every division exact) turns the pivot rows
/// into Y with Y restricted to `pivot_cols` equal to D times the identity;
/// a row x is then in the span iff D x = sum_k x_{c_k} Y_k.
fn certify(rows: &[Vec<GInt>], pivot_rows: &[usize], pivot_cols: &[usize]) -> bool {
    let mut y: Vec<Vec<GInt>> = pivot_rows.iter().map(|&r| rows[r].clone()).collect();
    let mut prev: GInt = (BigInt::one(), BigInt::zero());
    for (k, &c) in pivot_cols.iter().enumerate() {
        let Some(s) = (k..y.len()).find(|&i| !gzero(&y[i][c])) else {
            return false;
        };
        y.swap(k, s);
        let pivot = y[k].clone();
        let pk = pivot[c].clone();
        for (i, row) in y.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[c].clone();
            for (x, v) in row.iter_mut().zip(&pivot) {
                let t = if gzero(&f) || gzero(v) {
                    gmul(&pk, x)
                } else {
                    gsub(&gmul(&pk, x), &gmul(&f, v))
                };
                *x = gdiv_exact(&t, &prev);
            }
        }
        prev = pk;
    }
    let d = prev;
    for (i, x) in rows.iter().enumerate() {
        if pivot_rows.contains(&i) {
            continue;
        }
        for j in 0..x.len() {
            if pivot_cols.contains(&j) {
                continue;
            }
            let mut acc = gmul(&d, &x[j]);
            for (k, &c) in pivot_cols.iter().enumerate() {
                if !gzero(&x[c]) && !gzero(&y[k][j]) {
                    acc = gsub(&acc, &gmul(&x[c], &y[k][j]));
                }
            }
            if !gzero(&acc) {
                return false;
            }
        }
    }
    true
}

/// Rank over Q(i) of the full evaluation matrix, with the rank history of
/// the batch prefixes computed modulo `modulus`.
fn modular_rank_with_history(
    rows: &[Vec<GInt>],
    batches: &[usize],
    modulus: (u64, u64),
) -> (ModularBasis, Vec<(usize, usize)>) {
    let mut basis = ModularBasis::new(modulus);
    let mut history = Vec::new();
    let mut done = 0;
    for &end in batches {
        for (i, row) in rows.iter().enumerate().take(end).skip(done) {
            if basis.rank() < row.len() {
                basis.insert(i, row);
            }
        }
        done = end;
        history.push((end, basis.rank()));
    }
    (basis, history)
}

/// Reference elimination over Q(i), used if every modulus is unlucky.
fn exact_rank(rows: &[Vec<GInt>]) -> usize {
    let mut pivots: Vec<(usize, Vec<GaussianRational>)> = Vec::new();
    for row in rows {
        let mut r: Vec<GaussianRational> = row
            .iter()
            .map(|x| {
                GaussianRational::new(
                    Rational::from_integer(x.0.clone()),
                    Rational::from_integer(x.1.clone()),
                )
            })
            .collect();
        for (c, b) in &pivots {
            if !r[*c].is_zero() {
                let f = r[*c].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        if let Some(c) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[c].inv().expect("nonzero");
            let r = r.iter().map(|x| x * &inv).collect();
            pivots.push((c, r));
        }
    }
    pivots.len()
}

/// Rank certificate details.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanRankReport {
    pub rank: usize,
    /// Number of evaluation points after which the rank was read off.
    pub points: usize,
    /// (points, rank) after each batch.
    pub history: Vec<(usize, usize)>,
}

/// Nonzero exponents of a monomial as (variable, exponent) pairs.
type SparseExps = Vec<(usize, u16)>;

/// Terms with coefficients that fit in i128.
type SmallTerms = Vec<(SparseExps, u32, (i128, i128))>;

/// A polynomial with coefficients scaled to Gaussian integers.
struct IntPoly {
    terms: Vec<(SparseExps, u32, GInt)>,
    small: Option<SmallTerms>,
}

fn lcm_denominators(p: &Polynomial) -> BigInt {
    let mut l = BigInt::one();
    for c in p.terms.values() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    l
}

impl IntPoly {
    fn new(p: &Polynomial) -> Self {
        let l = Rational::from_integer(lcm_denominators(p));
        let terms: Vec<_> = p
            .terms
            .iter()
            .map(|(m, c)| {
                let sparse: Vec<(usize, u16)> = m
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (v, e))
                    .collect();
                let re = (&c.re * &l).to_integer();
                let im = (&c.im * &l).to_integer();
                (sparse, m.deg, (re, im))
            })
            .collect();
        let small = terms
            .iter()
            .map(|(s, d, (re, im))| Some((s.clone(), *d, (re.to_i128()?, im.to_i128()?))))
            .collect();
        IntPoly { terms, small }
    }
}

/// Point with numerators (re, im) per variable and a shared denominator.
struct SamplePoint {
    num: Vec<(i64, i64)>,
    den: i64,
}

fn c_mul_checked(a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128)> {
    let re = a.0.checked_mul(b.0)?.checked_sub(a.1.checked_mul(b.1)?)?;
    let im = a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?;
    Some((re, im))
}

/// d^maxdeg * p(num / d) as a Gaussian integer.
fn eval_scaled(p: &IntPoly, pt: &SamplePoint, maxdeg: u32) -> GInt {
    if let Some(small) = &p.small {
        if let Some(v) = eval_scaled_small(small, pt, maxdeg) {
            return (BigInt::from(v.0), BigInt::from(v.1));
        }
    }
    let mut acc: GInt = (BigInt::zero(), BigInt::zero());
    for (sparse, deg, c) in &p.terms {
        let mut t = c.clone();
        for &(v, e) in sparse {
            let x = (BigInt::from(pt.num[v].0), BigInt::from(pt.num[v].1));
            for _ in 0..e {
                t = gmul(&t, &x);
            }
        }
        let s = BigInt::from(pt.den).pow(maxdeg - deg);
        acc.0 += &t.0 * &s;
        acc.1 += &t.1 * &s;
    }
    acc
}

fn eval_scaled_small(
    terms: &[(SparseExps, u32, (i128, i128))],
    pt: &SamplePoint,
    maxdeg: u32,
) -> Option<(i128, i128)> {
    let mut acc = (0i128, 0i128);
    for (sparse, deg, c) in terms {
        let mut t = *c;
        for &(v, e) in sparse {
            let x = (i128::from(pt.num[v].0), i128::from(pt.num[v].1));
            for _ in 0..e {
                t = c_mul_checked(t, x)?;
            }
        }
        let s = i128::from(pt.den).checked_pow(maxdeg - deg)?;
        acc.0 = acc.0.checked_add(t.0.checked_mul(s)?)?;
        acc.1 = acc.1.checked_add(t.1.checked_mul(s)?)?;
    }
    Some(acc)
}

/// Bound on numerators and denominators of sample coordinates.
pub const SAMPLE_BOUND: i64 = 100;

fn sample_point(rng: &mut ChaCha8Rng, nvars: usize) -> SamplePoint {
    let den = rng.gen_range(1..=SAMPLE_BOUND);
    let num = (0..nvars)
        .map(|_| {
            (
                rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
                rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
            )
        })
        .collect();
    SamplePoint { num, den }
}

/// Exact rank of the span of `polys`, read off from evaluations at
/// pseudo-random Gaussian-rational points (see [`span_rank_report`]).
pub fn span_rank(polys: &[Polynomial], sample_seed: u64) -> Result<usize> {
    Ok(span_rank_report(polys, sample_seed)?.rank)
}

/// Evaluates at 2|polys| points, then adds batches of |polys| points until
/// two successive batch sizes give the same rank.
///
/// Each point row is scaled by d^maxdeg and each column by the common
/// denominator of the polynomial's coefficients; both scalings are
/// invertible, so the rank is that of the evaluation matrix over Q(i).
///
/// Ranks are tracked modulo a prime p = 1 mod 4, which can only undercount.
/// The final value is then certified over Q(i): the pivot minor is nonzero
/// mod p, so the rank is at least the modular one, and every other row is
/// checked exactly to lie in the span of the pivot rows. On failure the
/// next prime is tried. History entries are the modular ranks.
pub fn span_rank_report(polys: &[Polynomial], sample_seed: u64) -> Result<SpanRankReport> {
    if polys.is_empty() {
        return Ok(SpanRankReport {
            rank: 0,
            points: 0,
            history: vec![],
        });
    }
    let space = polys[0].space.clone();
    for p in polys {
        if p.space != space {
            return Err(Error::VariableMismatch);
        }
    }
    let maxdeg = polys.iter().map(Polynomial::degree).max().unwrap_or(0);
    let ints: Vec<IntPoly> = polys.iter().map(IntPoly::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let batch = polys.len();
    let mut rows: Vec<Vec<GInt>> = Vec::new();
    let mut batches = Vec::new();
    let mut basis = ModularBasis::new(MODULI[0]);
    let mut history = Vec::new();
    let mut target = 2 * batch;
    loop {
        while rows.len() < target {
            let pt = sample_point(&mut rng, space.num_vars());
            let row: Vec<GInt> = ints.iter().map(|p| eval_scaled(p, &pt, maxdeg)).collect();
            if basis.rank() < batch {
                basis.insert(rows.len(), &row);
            }
            rows.push(row);
        }
        batches.push(target);
        history.push((target, basis.rank()));
        let n = history.len();
        if n >= 2 && history[n - 1].1 == history[n - 2].1 {
            break;
        }
        target += batch;
    }
    let points = rows.len();
    for (attempt, &modulus) in MODULI.iter().enumerate() {
        if attempt > 0 {
            (basis, history) = modular_rank_with_history(&rows, &batches, modulus);
        }
        let cols: Vec<usize> = basis.rows.iter().map(|(c, _)| *c).collect();
        if certify(&rows, &basis.pivot_rows, &cols) {
            return Ok(SpanRankReport {
                rank: basis.rank(),
                points,
                history,
            });
        }
    }
    let rank = exact_rank(&rows);
    Ok(SpanRankReport {
        rank,
        points,
        history,
    })
}

/// Uniformly random Gaussian rational with parts p/q, |p| <= bound, 1 <= q
/// <= bound.
pub fn random_gaussian(rng: &mut impl Rng, bound: i64) -> GaussianRational {
    let mut part = || {
        Rational::new(
            BigInt::from(rng.gen_range(-bound..=bound)),
            BigInt::from(rng.gen_range(1..=bound)),
        )
    };
    let re = part();
    let im = part();
    GaussianRational::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn zw(n: usize) -> Arc<VarSpace> {
        VarSpace::new(&[("z", &[n]), ("w", &[n])]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let s = zw(1);
        let z = Polynomial::named(&s, "z", &[0]).unwrap();
        let w = Polynomial::named(&s, "w", &[0]).unwrap();
        let lhs = &(&z + &w) * &(&z - &w);
        let rhs = &z.pow(2) - &w.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(z.pow(0), Polynomial::one(&s));
    }

    #[test]
    fn square_of_linear_form() {
        let s = VarSpace::new(&[("z", &[2])]).unwrap();
        let z0 = Polynomial::named(&s, "z", &[0]).unwrap();
        let z1 = Polynomial::named(&s, "z", &[1]).unwrap();
        let l = &z0 + &z1.scale(&g(0, 1));
        let expect = &(&z0.pow(2) + &(&z0 * &z1).scale(&g(0, 2))) - &z1.pow(2);
        assert_eq!(l.pow(2), expect);
    }

    #[test]
    fn mismatched_spaces() {
        let a = Polynomial::one(&zw(1));
        let b = Polynomial::one(&zw(2));
        assert_eq!(a.checked_add(&b), Err(Error::VariableMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::VariableMismatch));
    }

    #[test]
    fn derivatives() {
        let s = zw(2);
        let z0 = Polynomial::named(&s, "z", &[0]).unwrap();
        let w1 = Polynomial::named(&s, "w", &[1]).unwrap();
        let p = &z0.pow(2) * &w1;
        let d = p.derive_named("z", &[0]).unwrap();
        assert_eq!(d, (&z0 * &w1).scale(&g(2, 0)));
        assert!(Polynomial::constant(&s, g(3, 1)).derive(0).unwrap().is_zero());
        assert!(p.derive_named("x", &[0]).is_err());
        assert!(p.derive(99).is_err());
    }

    #[test]
    fn box_of_constant_is_zero() {
        let s = VarSpace::new(&[("U", &[4]), ("V", &[4])]).unwrap();
        assert!(apply_box(&Polynomial::constant(&s, g(2, 0)), 1).unwrap().is_zero());
        assert!(apply_box(&Polynomial::one(&s), 2).is_err());
    }

    #[test]
    fn pairing_examples() {
        let s = VarSpace::new(&[("x", &[])]).unwrap();
        let x = Polynomial::named(&s, "x", &[]).unwrap();
        assert_eq!(pairing(&x, &x).unwrap(), g(1, 0));
        assert_eq!(pairing(&x.pow(2), &x.pow(2)).unwrap(), g(2, 0));
        assert_eq!(pairing(&x.pow(2), &x).unwrap(), g(0, 0));
    }

    #[test]
    fn span_rank_examples() {
        let s = VarSpace::new(&[("x", &[])]).unwrap();
        let x = Polynomial::named(&s, "x", &[]).unwrap();
        let one = Polynomial::one(&s);
        assert_eq!(span_rank(&[one, x.clone(), x.pow(2)], 1).unwrap(), 3);
        assert_eq!(span_rank(&[x.clone(), x.scale(&g(2, 0))], 1).unwrap(), 1);
        assert_eq!(span_rank(&[], 1).unwrap(), 0);
        let r = span_rank_report(std::slice::from_ref(&x), 5).unwrap();
        assert_eq!(r.history, vec![(2, 1), (3, 1)]);
    }

    #[test]
    fn canonical_text() {
        let s = VarSpace::new(&[("z", &[2, 2]), ("w", &[2])]).unwrap();
        let a = Polynomial::named(&s, "z", &[1, 0]).unwrap();
        let b = Polynomial::named(&s, "w", &[1]).unwrap();
        let p = &(&a.pow(2) * &b).scale(&GaussianRational::new(
            Rational::new(3.into(), 2.into()),
            Rational::from_integer((-1).into()),
        )) + &Polynomial::constant(&s, g(0, 1));
        let text = p.to_canonical_string();
        assert_eq!(text, "(3/2-1i)*z[1,0]^2*w[1] + (0+1i)");
        assert_eq!(Polynomial::parse(&s, &text).unwrap(), p);
        assert_eq!(Polynomial::parse(&s, "0").unwrap(), Polynomial::zero(&s));
        assert!(Polynomial::parse(&s, "(1+0i)*q[0]").is_err());
        assert!(Polynomial::parse(&s, "1+0i").is_err());
    }

    #[test]
    fn substitution() {
        let src = zw(2);
        let dst = VarSpace::new(&[("z", &[2]), ("zbar", &[2])]).unwrap();
        let images: Vec<Polynomial> = (0..4)
            .map(|v| {
                let name = if v < 2 { "z" } else { "zbar" };
                Polynomial::named(&dst, name, &[v % 2]).unwrap()
            })
            .collect();
        let p = &Polynomial::named(&src, "z", &[0]).unwrap() * &Polynomial::named(&src, "w", &[1]).unwrap();
        let r = p.substitute(&dst, &images).unwrap();
        assert_eq!(r.to_canonical_string(), "(1+0i)*z[0]*zbar[1]");
    }
}
