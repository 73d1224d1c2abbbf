use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Each variant maps onto one of the process exit codes used by the `shtuka`
/// binary (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible base fields: q = {left} vs q = {right}")]
    IncompatibleBase { left: u64, right: u64 },

    #[error("denominator is identically zero")]
    ZeroDenominator,

    #[error("denominator vanishes at the center s = 0")]
    PoleAtCenter,

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("singular curve model: {0}")]
    SingularModel(String),

    #[error("point (0,0) does not lie on the model")]
    NoTwoTorsion,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invariant check `{check}` failed: {detail}")]
    Invariant { check: String, detail: String },

    #[error("{terms} unresolved terms: Hom(E2, sigma*E1^v) has dimension {dimension} and no density plugin was supplied")]
    UnresolvedCensus { terms: u128, dimension: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("derivative order r = {0} must be even")]
    OddOrder(u32),

    #[error("bundle class is not self-dual: {0}")]
    NotSelfDual(String),

    #[error("character restriction is incompatible: {0}")]
    Restriction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invariant(check: &str, detail: impl Into<String>) -> Self {
        Error::Invariant { check: check.to_string(), detail: detail.into() }
    }

    /// Exit code contract: 0 ok, 2 parse/usage, 3 invariant, 4 unresolved census,
    /// 5 not rational. Everything else is reported as a usage-level failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::OddOrder(_) => 2,
            Error::Invariant { .. } | Error::SingularModel(_) | Error::NoTwoTorsion => 3,
            Error::UnresolvedCensus { .. } => 4,
            Error::NotRational(_) => 5,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
