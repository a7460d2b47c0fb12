//! The `symspec` command line: spectra, SU(3) splittings, eigenfunction
//! verification and Satake diagrams, rendered as a table, JSON or CSV.
//!
//! Exit codes: 0 success, 1 usage error or unknown input, 2 a verification
//! check failed.

pub mod record;
mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use symspec::catalog::{load_descriptor, Catalog};
use symspec::diagrams::{grassmannian_satake, satake_to_painted, second_betti, SatakeDiagram};
use symspec::eigenfun::{family_generators, verify_family};
use symspec::spectrum::{spectrum, splitting_count};

use record::{
    DiagramPayload, Number, OutputRecord, Payload, SpectrumPayload, SpectrumRow, SplittingPair,
    SplittingPayload, VerificationPayload, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "symspec", version, about = "Spectra and eigenfunctions of compact symmetric spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "SYMSPEC_FORMAT", default_value = "table")]
    pub format: Format,

    /// TOML space descriptor overriding the embedded entry with the same id.
    #[arg(long, global = true, value_name = "FILE")]
    pub catalog: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels, eigenvalues and multiplicities up to a level.
    Spectrum {
        /// Space id: S^n, CP^n, HP^n, CaP2, SU3/SO3.
        space: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
    },
    /// Solutions of x^2 - xy + y^2 = Q splitting an SU(3)/SO(3) eigenspace.
    Splitting {
        #[arg(value_name = "Q", value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
    },
    /// Builds an eigenfunction family and runs its checks.
    Verify {
        space: String,
        #[arg(long)]
        n: Option<usize>,
        /// Level for CP^n and HP^n.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        k: Option<u32>,
        /// Levels for SU3/SO3.
        #[arg(long, requires = "q")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        q: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the first COUNT generators in canonical text.
        #[arg(long, value_name = "COUNT", num_args = 0..=1, default_missing_value = "3")]
        emit: Option<usize>,
    },
    /// Satake diagram, painted Dynkin diagram and second Betti number.
    Diagram {
        /// A space id, or `grassmannian` with --p and --q.
        target: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(symspec::Error),
}

impl From<symspec::Error> for Failure {
    fn from(e: symspec::Error) -> Self {
        Failure::Library(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Library(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli, echo) {
        Ok(record) => {
            let code = exit_code(&record);
            match render::render(&record, cli.format) {
                Ok(text) => {
                    let _ = out.write_all(text.as_bytes());
                    code
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// 2 for a failed verification, 0 otherwise.
pub fn exit_code(record: &OutputRecord) -> i32 {
    match &record.result {
        Payload::Verification(v) if !v.passed => EXIT_VERIFY_FAILED,
        _ => EXIT_OK,
    }
}

fn catalog(cli: &Cli) -> Result<Catalog, Failure> {
    let mut catalog = Catalog::new();
    if let Some(path) = &cli.catalog {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        catalog.insert(load_descriptor(&text)?);
    }
    Ok(catalog)
}

fn params<const N: usize>(pairs: [(&str, Option<u64>); N]) -> BTreeMap<String, u64> {
    pairs
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
        .collect()
}

fn execute(cli: &Cli, command: String) -> Result<OutputRecord, Failure> {
    let record = |space: Option<String>, parameters, result| OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: command.clone(),
        space,
        parameters,
        result,
    };
    match &cli.command {
        Command::Spectrum { space, n, k_max } => {
            let d = catalog(cli)?.lookup(space, *n)?;
            let rows = spectrum(&d, *k_max)?
                .into_iter()
                .map(|line| SpectrumRow {
                    k: line.k,
                    energy: line.energy.as_ref().map(Number::new),
                    eigenvalue: Number::new(&line.eigenvalue),
                    multiplicity_closed: line.multiplicity_closed.map(|m| m.to_string()),
                    multiplicity_weyl: line.multiplicity_weyl.to_string(),
                    highest_weight: line.weight.coeffs,
                })
                .collect();
            let payload = SpectrumPayload {
                n_m: d.n_m,
                sigma: Number::new(&d.sigma),
                rows,
            };
            Ok(record(
                Some(d.display_name()),
                params([("n", n.map(|n| n as u64)), ("k_max", Some(u64::from(*k_max)))]),
                Payload::Spectrum(payload),
            ))
        }
        Command::Splitting { q } => {
            let sol = splitting_count(*q);
            let dims = sol.dimensions()?;
            let pairs = sol
                .pairs
                .iter()
                .zip(&dims)
                .map(|(&(k1, k2), d)| SplittingPair {
                    k1,
                    k2,
                    dimension: d.to_string(),
                })
                .collect();
            let payload = SplittingPayload {
                q: *q,
                pairs,
                real_modules: sol.real_module_count(),
                total_dimension: dims.iter().sum::<num_bigint::BigUint>().to_string(),
            };
            Ok(record(
                Some("SU3/SO3".into()),
                params([("q", Some(*q))]),
                Payload::Splitting(payload),
            ))
        }
        Command::Verify {
            space,
            n,
            k,
            p,
            q,
            seed,
            emit,
        } => {
            let d = catalog(cli)?.lookup(space, *n)?;
            let level = match (k, p, q) {
                (Some(k), None, None) => vec![*k],
                (None, Some(p), Some(q)) => vec![*p, *q],
                _ => return Err(Failure::Usage("verify needs --k, or --p and --q".into())),
            };
            let report = verify_family(&d, &level, *seed)?;
            let emitted = match emit {
                Some(count) => family_generators(&d, &level, *count, *seed)?
                    .iter()
                    .map(|f| f.to_canonical_string())
                    .collect(),
                None => Vec::new(),
            };
            let parameters = params([
                ("n", n.map(|n| n as u64)),
                ("k", k.map(u64::from)),
                ("p", p.map(u64::from)),
                ("q", q.map(u64::from)),
                ("seed", Some(*seed)),
                ("emit", emit.map(|e| e as u64)),
            ]);
            let payload = VerificationPayload {
                passed: report.passed(),
                seed: *seed,
                report,
                emitted,
            };
            Ok(record(Some(d.display_name()), parameters, Payload::Verification(payload)))
        }
        Command::Diagram { target, n, p, q } => {
            let (name, sd, parameters) = if target.eq_ignore_ascii_case("grassmannian") {
                let (Some(p), Some(q)) = (p, q) else {
                    return Err(Failure::Usage("grassmannian needs --p and --q".into()));
                };
                let sd = grassmannian_satake(*p, *q)?;
                let parameters = params([("p", Some(*p as u64)), ("q", Some(*q as u64))]);
                (format!("Gr({p},{q})"), sd, parameters)
            } else {
                let d = catalog(cli)?.lookup(target, *n)?;
                (d.display_name(), d.satake.clone(), params([("n", n.map(|n| n as u64))]))
            };
            Ok(record(Some(name.clone()), parameters, Payload::Diagram(diagram(name, &sd))))
        }
    }
}

fn diagram(target: String, sd: &SatakeDiagram) -> DiagramPayload {
    DiagramPayload {
        target,
        family: sd.family.to_string(),
        rank: sd.rank,
        white_nodes: sd.white_nodes(),
        arrows: sd.arrows.iter().map(|&(i, j)| [i, j]).collect(),
        satake: sd.render(),
        painted: satake_to_painted(sd).render(),
        b2: second_betti(sd),
    }
}
