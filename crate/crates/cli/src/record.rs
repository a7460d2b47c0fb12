//! Machine-readable output records (JSON schema version 1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use symspec::eigenfun::VerificationReport;
use symspec::rootsys::Rational;

pub const SCHEMA_VERSION: u32 = 1;

/// Digits after the point in decimal renderings.
pub const DECIMAL_DIGITS: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    /// The arguments as given, joined by spaces.
    pub command: String,
    pub space: Option<String>,
    pub parameters: BTreeMap<String, u64>,
    pub result: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Spectrum(SpectrumPayload),
    Splitting(SplittingPayload),
    Verification(VerificationPayload),
    Diagram(DiagramPayload),
}

/// An exact rational `p/q` with a rounded decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Number {
    pub exact: String,
    pub decimal: String,
}

impl Number {
    pub fn new(r: &Rational) -> Self {
        Number {
            exact: r.to_string(),
            decimal: decimal(r, DECIMAL_DIGITS),
        }
    }

    /// `9/2 (4.5)`, or just `8` for integers.
    pub fn cell(&self) -> String {
        if self.exact == self.decimal {
            self.exact.clone()
        } else {
            format!("{} ({})", self.exact, self.decimal)
        }
    }
}

/// Rounds half away from zero to `digits` places and drops trailing zeros.
pub fn decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let num: BigInt = r.numer().abs() * &scale * 2 + r.denom();
    let scaled = num.div_floor(&(r.denom() * 2));
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if r.is_negative() && !scaled.is_zero() { "-" } else { "" };
    let mut frac = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPayload {
    pub n_m: u32,
    pub sigma: Number,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    /// `[k]` for rank-one spaces, `[p, q]` for SU3/SO3.
    pub k: Vec<u32>,
    pub energy: Option<Number>,
    pub eigenvalue: Number,
    pub multiplicity_closed: Option<String>,
    pub multiplicity_weyl: String,
    /// Highest weight in fundamental-weight coordinates.
    pub highest_weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPayload {
    pub q: u64,
    pub pairs: Vec<SplittingPair>,
    /// Pairs up to swapping (k1, k2) <-> (k2, k1).
    pub real_modules: usize,
    pub total_dimension: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPair {
    pub k1: u64,
    pub k2: u64,
    pub dimension: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationPayload {
    pub passed: bool,
    pub seed: u64,
    pub report: VerificationReport,
    /// Generators in canonical polynomial text, when requested.
    pub emitted: Vec<String>,
}

// Residuals are finite, so float equality is reflexive here.
impl Eq for VerificationPayload {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramPayload {
    pub target: String,
    pub family: String,
    pub rank: usize,
    pub white_nodes: Vec<usize>,
    pub arrows: Vec<[usize; 2]>,
    pub satake: String,
    pub painted: String,
    pub b2: usize,
}
