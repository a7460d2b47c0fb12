//! Descriptors of the supported compact symmetric spaces and the plain-text
//! descriptor format used to add or override entries.
//!
//! # Descriptor format
//!
//! A descriptor is a TOML document with exactly these keys (unknown keys are
//! rejected):
//!
//! ```text
//! schema_version = 1                     # mandatory, must be 1
//! id = "CP^n"                            # space identifier
//! n = 2                                  # optional family parameter
//! group_family = "A"                     # A, B, C, D or F4
//! group_rank = 2
//! restricted_family = "BC"               # A, B, C, D, F4 or BC
//! restricted_rank = 1
//! restricted_multiplicities = [2, 1]     # per root length, shortest first
//! satake_white = [1, 2]                  # 1-based white nodes
//! satake_arrows = [[1, 2]]               # pairs of white nodes
//! n_m = 2                                # energy constant, >= 1
//! sigma = "1"                            # positive rational, "p" or "p/q"
//! highest_weight = [[1, 1]]              # one generator per level index
//! ```
//!
//! The highest weight at levels `(k_1, ..., k_r)` is `sum k_i * g_i` in the
//! fundamental-weight basis of the group, where `g_i` is the i-th row of
//! `highest_weight`.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::diagrams::{grassmannian_satake, SatakeDiagram};
use crate::error::{Error, Result};
use crate::rootsys::{
    build_root_system, cartan_helgason_even, weyl_dim, Family, Rational, RationalVec,
    RootSystem, Weight,
};

pub const SCHEMA_VERSION: i64 = 1;

/// Ids of the embedded catalog entries.
pub const CATALOG_IDS: [&str; 5] = ["S^n", "CP^n", "HP^n", "CaP2", "SU3/SO3"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSpaceDescriptor {
    pub id: String,
    pub n: Option<usize>,
    pub group_family: Family,
    pub group_rank: usize,
    pub restricted_family: Family,
    pub restricted_rank: usize,
    /// Multiplicities of the restricted roots, one per root length, shortest
    /// first.
    pub restricted_multiplicities: Vec<u32>,
    pub satake: SatakeDiagram,
    pub n_m: u32,
    pub sigma: Rational,
    /// Generators of the highest-weight map, in fundamental-weight
    /// coordinates of the group, one per level index.
    pub highest_weight: Vec<Vec<i64>>,
}

impl SymmetricSpaceDescriptor {
    /// Display name with the parameter substituted, e.g. `CP^2`.
    pub fn display_name(&self) -> String {
        match self.n {
            Some(n) if self.id.ends_with("^n") => {
                format!("{}{}", &self.id[..self.id.len() - 1], n)
            }
            Some(n) => format!("{} (n={n})", self.id),
            None => self.id.clone(),
        }
    }

    pub fn is_rank_one(&self) -> bool {
        self.restricted_rank == 1
    }

    pub fn group_root_system(&self) -> Result<RootSystem> {
        build_root_system(self.group_family, self.group_rank)
    }

    pub fn restricted_root_system(&self) -> Result<RootSystem> {
        build_root_system(self.restricted_family, self.restricted_rank)
    }

    /// Highest weight attached to the given level indices.
    pub fn highest_weight_at(&self, levels: &[u32]) -> Result<Weight> {
        if levels.len() != self.restricted_rank {
            return Err(Error::WrongRank(format!(
                "{} needs {} level indices, got {}",
                self.display_name(),
                self.restricted_rank,
                levels.len()
            )));
        }
        let mut coeffs = vec![0i64; self.group_rank];
        for (k, g) in levels.iter().zip(&self.highest_weight) {
            for (c, x) in coeffs.iter_mut().zip(g) {
                *c += i64::from(*k) * x;
            }
        }
        self.group_root_system()?.weight(&coeffs)
    }

    /// Smallest nonzero spherical weight of a rank-one restricted system
    /// (the generator usually written theta).
    pub fn theta(&self) -> Result<RationalVec> {
        if !self.is_rank_one() {
            return Err(Error::WrongRank(format!(
                "{} is not of rank one",
                self.display_name()
            )));
        }
        let rs = self.restricted_root_system()?;
        (1..=4)
            .map(|t| rs.weight(&[t]).expect("rank one weight"))
            .find(|w| cartan_helgason_even(&rs, w))
            .map(|w| w.ambient)
            .ok_or_else(|| Error::InvalidArgument("no spherical generator found".into()))
    }

    /// Half sum of positive restricted roots counted with multiplicity.
    pub fn restricted_rho(&self) -> Result<RationalVec> {
        let rs = self.restricted_root_system()?;
        let mut lengths: Vec<Rational> = rs.positive_roots.iter().map(|a| a.norm_sq()).collect();
        lengths.sort();
        lengths.dedup();
        if lengths.len() != self.restricted_multiplicities.len() {
            return Err(Error::InvalidArgument(format!(
                "{} root lengths but {} multiplicities",
                lengths.len(),
                self.restricted_multiplicities.len()
            )));
        }
        let mut sum = RationalVec::zeros(rs.ambient_dim());
        for a in &rs.positive_roots {
            let idx = lengths.iter().position(|l| *l == a.norm_sq()).unwrap();
            let m = BigRational::from_integer(self.restricted_multiplicities[idx].into());
            sum = &sum + &a.scale(&m);
        }
        Ok(sum.scale(&BigRational::new(1.into(), 2.into())))
    }

    /// 2<rho_a, theta>/<theta, theta>, which must equal `n_m` for a rank-one
    /// space.
    pub fn n_m_from_roots(&self) -> Result<Rational> {
        let theta = self.theta()?;
        let r = self.restricted_rho()?;
        Ok(BigRational::from_integer(2.into()) * r.dot(&theta) / theta.norm_sq())
    }

    /// Checks every invariant of the descriptor type.
    pub fn validate(&self) -> Result<()> {
        let fail = |inv: &str, detail: String| {
            Err(Error::DescriptorInvariant {
                invariant: inv.to_string(),
                detail,
            })
        };
        if self.n_m < 1 {
            return fail("n_m >= 1", format!("n_m = {}", self.n_m));
        }
        if !self.sigma.is_positive() {
            return fail("sigma > 0", format!("sigma = {}", self.sigma));
        }
        let group = match self.group_root_system() {
            Ok(g) => g,
            Err(e) => return fail("group root system", e.to_string()),
        };
        if let Err(e) = self.restricted_root_system() {
            return fail("restricted root system", e.to_string());
        }
        if self.satake.family != self.group_family || self.satake.rank != self.group_rank {
            return fail(
                "satake diagram matches group",
                format!(
                    "diagram {}{} vs group {}{}",
                    self.satake.family, self.satake.rank, self.group_family, self.group_rank
                ),
            );
        }
        if self.satake.white_orbits() != self.restricted_rank {
            return fail(
                "restricted_rank equals rank of the space",
                format!(
                    "restricted_rank {} but the Satake diagram has {} white orbits",
                    self.restricted_rank,
                    self.satake.white_orbits()
                ),
            );
        }
        if self.highest_weight.len() != self.restricted_rank {
            return fail(
                "one highest-weight generator per level index",
                format!(
                    "{} generators for rank {}",
                    self.highest_weight.len(),
                    self.restricted_rank
                ),
            );
        }
        for g in &self.highest_weight {
            if g.len() != self.group_rank {
                return fail(
                    "highest-weight generator length",
                    format!("{g:?} has length {}, group rank {}", g.len(), self.group_rank),
                );
            }
        }
        // every unit level must give a dominant weight
        for i in 0..self.restricted_rank {
            let mut levels = vec![0u32; self.restricted_rank];
            levels[i] = 1;
            let w = self.highest_weight_at(&levels)?;
            if !w.is_dominant() || w.coeffs.iter().all(|&c| c == 0) {
                return fail(
                    "highest_weight_map produces dominant weights",
                    format!("level {levels:?} gives {:?}", w.coeffs),
                );
            }
        }
        if let Err(e) = self.restricted_rho() {
            return fail("restricted multiplicities", e.to_string());
        }
        debug_assert_eq!(group.rank, self.group_rank);
        Ok(())
    }
}

fn sphere_group(n: usize) -> (Family, usize) {
    if n.is_multiple_of(2) {
        (Family::B, n / 2)
    } else {
        (Family::D, n.div_ceil(2))
    }
}

fn check_range(id: &str, n: Option<usize>, lo: usize, hi: usize) -> Result<usize> {
    match n {
        Some(n) if (lo..=hi).contains(&n) => Ok(n),
        Some(n) => Err(Error::UnsupportedParameter {
            space: id.to_string(),
            n,
            range: format!("{lo}..={hi}"),
        }),
        None => Err(Error::InvalidArgument(format!("{id} needs the parameter n"))),
    }
}

/// Normalizes accepted spellings of catalog ids.
pub fn canonical_id(id: &str) -> Option<&'static str> {
    match id {
        "S^n" | "S" | "sphere" => Some("S^n"),
        "CP^n" | "CP" => Some("CP^n"),
        "HP^n" | "HP" => Some("HP^n"),
        "CaP2" | "CaP^2" | "OP2" => Some("CaP2"),
        "SU3/SO3" | "SU(3)/SO(3)" => Some("SU3/SO3"),
        _ => None,
    }
}

/// Picks the F4 fundamental weight of least Weyl dimension; its module is
/// the first eigenspace of CaP2.
pub fn cap2_fundamental_index() -> usize {
    let f4 = build_root_system(Family::F4, 4).expect("F4");
    (0..4)
        .min_by_key(|&i| {
            let mut c = vec![0i64; 4];
            c[i] = 1;
            weyl_dim(&f4, &f4.weight(&c).unwrap()).unwrap()
        })
        .unwrap()
}

fn unit(len: usize, i: usize, value: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] += value;
    v
}

/// Embedded catalog entry.
pub fn lookup(id: &str, n: Option<usize>) -> Result<SymmetricSpaceDescriptor> {
    let cid = canonical_id(id).ok_or_else(|| Error::UnknownSpace(id.to_string()))?;
    let one = BigRational::from_integer(1.into());
    let d = match cid {
        "S^n" => {
            let n = check_range(cid, n, 2, 64)?;
            let (fam, r) = sphere_group(n);
            // the vector representation e1, written in fundamental weights
            let generator = match (fam, r) {
                (Family::B, 1) => vec![2],
                (Family::D, 2) => vec![1, 1],
                _ => unit(r, 0, 1),
            };
            let satake = match (fam, r) {
                (Family::D, 2) => SatakeDiagram::with_white(fam, r, &[1, 2], vec![(1, 2)])?,
                _ => SatakeDiagram::with_white(fam, r, &[1], vec![])?,
            };
            SymmetricSpaceDescriptor {
                id: cid.into(),
                n: Some(n),
                group_family: fam,
                group_rank: r,
                restricted_family: Family::A,
                restricted_rank: 1,
                restricted_multiplicities: vec![(n - 1) as u32],
                satake,
                n_m: (n - 1) as u32,
                sigma: BigRational::from_integer(4.into()),
                highest_weight: vec![generator],
            }
        }
        "CP^n" => {
            let n = check_range(cid, n, 1, 64)?;
            let mut g = unit(n, 0, 1);
            g[n - 1] += 1;
            let (rfam, mult) = if n == 1 {
                (Family::A, vec![1])
            } else {
                (Family::BC, vec![2 * (n as u32 - 1), 1])
            };
            SymmetricSpaceDescriptor {
                id: cid.into(),
                n: Some(n),
                group_family: Family::A,
                group_rank: n,
                restricted_family: rfam,
                restricted_rank: 1,
                restricted_multiplicities: mult,
                satake: grassmannian_satake(1, n)?,
                n_m: n as u32,
                sigma: one,
                highest_weight: vec![g],
            }
        }
        "HP^n" => {
            let n = check_range(cid, n, 1, 32)?;
            let (rfam, mult) = if n == 1 {
                (Family::A, vec![3])
            } else {
                (Family::BC, vec![4 * (n as u32 - 1), 3])
            };
            SymmetricSpaceDescriptor {
                id: cid.into(),
                n: Some(n),
                group_family: Family::C,
                group_rank: n + 1,
                restricted_family: rfam,
                restricted_rank: 1,
                restricted_multiplicities: mult,
                satake: SatakeDiagram::with_white(Family::C, n + 1, &[2], vec![])?,
                n_m: 2 * n as u32 + 1,
                sigma: one,
                highest_weight: vec![unit(n + 1, 1, 1)],
            }
        }
        "CaP2" => {
            if let Some(n) = n {
                if n != 2 {
                    return Err(Error::UnsupportedParameter {
                        space: cid.into(),
                        n,
                        range: "2 (or omitted)".into(),
                    });
                }
            }
            let i = cap2_fundamental_index();
            SymmetricSpaceDescriptor {
                id: cid.into(),
                n: None,
                group_family: Family::F4,
                group_rank: 4,
                restricted_family: Family::BC,
                restricted_rank: 1,
                restricted_multiplicities: vec![8, 7],
                satake: SatakeDiagram::with_white(Family::F4, 4, &[i + 1], vec![])?,
                n_m: 11,
                sigma: one,
                highest_weight: vec![unit(4, i, 1)],
            }
        }
        "SU3/SO3" => {
            if let Some(n) = n {
                if n != 3 {
                    return Err(Error::UnsupportedParameter {
                        space: cid.into(),
                        n,
                        range: "3 (or omitted)".into(),
                    });
                }
            }
            // Levels (k1, k2) map to 2*k2*Lambda1 + 2*k1*Lambda2, so that
            // (k1, k2) = (p, q) for the family phi_a^p phi~_b^q.
            // n_m: c1 of the full flag is 2 rho = theta1 + theta2.
            // sigma: the Casimir of Re Tr(Z W^*) is su3_eigenvalue / 3.
            SymmetricSpaceDescriptor {
                id: cid.into(),
                n: None,
                group_family: Family::A,
                group_rank: 2,
                restricted_family: Family::A,
                restricted_rank: 2,
                restricted_multiplicities: vec![1],
                satake: SatakeDiagram::with_white(Family::A, 2, &[1, 2], vec![])?,
                n_m: 1,
                sigma: BigRational::from_integer(3.into()),
                highest_weight: vec![vec![0, 2], vec![2, 0]],
            }
        }
        _ => unreachable!(),
    };
    debug_assert!(d.validate().is_ok());
    Ok(d)
}

/// The embedded catalog plus user-supplied overrides.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    overrides: Vec<SymmetricSpaceDescriptor>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a descriptor; it replaces any embedded entry with the same id
    /// and parameter.
    pub fn insert(&mut self, d: SymmetricSpaceDescriptor) {
        self.overrides.retain(|o| !(o.id == d.id && o.n == d.n));
        self.overrides.push(d);
    }

    pub fn lookup(&self, id: &str, n: Option<usize>) -> Result<SymmetricSpaceDescriptor> {
        let cid = canonical_id(id).unwrap_or(id);
        if let Some(d) = self
            .overrides
            .iter()
            .find(|d| d.id == cid && (d.n == n || n.is_none()))
        {
            return Ok(d.clone());
        }
        lookup(cid, n)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    schema_version: i64,
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    group_family: String,
    group_rank: usize,
    restricted_family: String,
    restricted_rank: usize,
    restricted_multiplicities: Vec<u32>,
    satake_white: Vec<usize>,
    satake_arrows: Vec<[usize; 2]>,
    n_m: i64,
    sigma: String,
    highest_weight: Vec<Vec<i64>>,
}

fn line_col(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    format!("line {line}, column {col}")
}

/// Parses and validates a descriptor document.
pub fn load_descriptor(text: &str) -> Result<SymmetricSpaceDescriptor> {
    let raw: RawDescriptor = toml::from_str(text).map_err(|e| Error::DescriptorParse {
        location: e.span().map(|s| line_col(text, s.start)),
        message: e.message().to_string(),
    })?;
    let field = |name: &str, message: String| Error::DescriptorParse {
        location: Some(format!("field `{name}`")),
        message,
    };
    if raw.schema_version != SCHEMA_VERSION {
        return Err(field(
            "schema_version",
            format!("unsupported schema_version {}", raw.schema_version),
        ));
    }
    let group_family = Family::parse(&raw.group_family)
        .ok_or_else(|| field("group_family", format!("unknown family `{}`", raw.group_family)))?;
    let restricted_family = Family::parse(&raw.restricted_family).ok_or_else(|| {
        field(
            "restricted_family",
            format!("unknown family `{}`", raw.restricted_family),
        )
    })?;
    let sigma = BigRational::from_str(raw.sigma.trim())
        .map_err(|_| field("sigma", format!("`{}` is not a rational number", raw.sigma)))?;
    if raw.n_m < 1 {
        return Err(Error::DescriptorInvariant {
            invariant: "n_m >= 1".into(),
            detail: format!("n_m = {}", raw.n_m),
        });
    }
    let n_m = u32::try_from(raw.n_m).map_err(|_| field("n_m", "value too large".into()))?;
    let satake = SatakeDiagram::with_white(
        group_family,
        raw.group_rank,
        &raw.satake_white,
        raw.satake_arrows.iter().map(|[a, b]| (*a, *b)).collect(),
    )
    .map_err(|e| field("satake_white", e.to_string()))?;
    let d = SymmetricSpaceDescriptor {
        id: raw.id,
        n: raw.n,
        group_family,
        group_rank: raw.group_rank,
        restricted_family,
        restricted_rank: raw.restricted_rank,
        restricted_multiplicities: raw.restricted_multiplicities,
        satake,
        n_m,
        sigma,
        highest_weight: raw.highest_weight,
    };
    d.validate()?;
    Ok(d)
}

fn family_key(f: Family) -> String {
    match f {
        Family::F4 => "F4".into(),
        other => other.label().into(),
    }
}

/// Renders a descriptor in the documented text format.
pub fn serialize_descriptor(d: &SymmetricSpaceDescriptor) -> String {
    let raw = RawDescriptor {
        schema_version: SCHEMA_VERSION,
        id: d.id.clone(),
        n: d.n,
        group_family: family_key(d.group_family),
        group_rank: d.group_rank,
        restricted_family: family_key(d.restricted_family),
        restricted_rank: d.restricted_rank,
        restricted_multiplicities: d.restricted_multiplicities.clone(),
        satake_white: d.satake.white_nodes(),
        satake_arrows: d.satake.arrows.iter().map(|&(a, b)| [a, b]).collect(),
        n_m: i64::from(d.n_m),
        sigma: d.sigma.to_string(),
        highest_weight: d.highest_weight.clone(),
    };
    toml::to_string(&raw).expect("descriptor serializes")
}

/// Every embedded entry over the given parameter ranges, for sweeps.
pub fn embedded_entries(
    sphere: std::ops::RangeInclusive<usize>,
    cp: std::ops::RangeInclusive<usize>,
    hp: std::ops::RangeInclusive<usize>,
) -> Vec<SymmetricSpaceDescriptor> {
    let mut out = Vec::new();
    out.extend(sphere.map(|n| lookup("S^n", Some(n)).unwrap()));
    out.extend(cp.map(|n| lookup("CP^n", Some(n)).unwrap()));
    out.extend(hp.map(|n| lookup("HP^n", Some(n)).unwrap()));
    out.push(lookup("CaP2", None).unwrap());
    out.push(lookup("SU3/SO3", None).unwrap());
    out
}
