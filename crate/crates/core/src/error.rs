use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: {reason}")]
    UnsupportedRootSystem {
        family: String,
        rank: usize,
        reason: String,
    },

    #[error("weight {coeffs:?} is not dominant")]
    NotDominant { coeffs: Vec<i64> },

    #[error("vector is not an integral weight of {family}{rank}")]
    NotIntegral { family: String, rank: usize },

    #[error("unknown symmetric space `{0}`")]
    UnknownSpace(String),

    #[error("{space}: parameter n = {n} outside the supported range {range}")]
    UnsupportedParameter {
        space: String,
        n: usize,
        range: String,
    },

    #[error("{0}")]
    WrongRank(String),

    #[error("{0}")]
    NoClosedForm(String),

    #[error("descriptor parse error{}: {message}", location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default())]
    DescriptorParse {
        location: Option<String>,
        message: String,
    },

    #[error("descriptor rejected, invariant `{invariant}` violated: {detail}")]
    DescriptorInvariant { invariant: String, detail: String },

    #[error("variable declarations differ")]
    VariableMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("{0}")]
    Arity(String),

    #[error("polynomial parse error at byte {offset}: {message}")]
    PolynomialParse { offset: usize, message: String },

    #[error("constraint `{constraint}` violated, residual {residual}")]
    Constraint { constraint: String, residual: String },

    #[error("chart precondition failed: {constraint} residuals {residuals:?}")]
    ChartPrecondition {
        constraint: String,
        residuals: Vec<f64>,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
