use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("{what}: requested size {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("non-integral division in recursion at {0}")]
    NonIntegralDivision(String),
    #[error("polynomiality violated: {0}")]
    PolynomialityViolation(String),
    #[error("non-integer coefficient: {0}")]
    NonIntegerCoefficient(String),
    #[error("fixed-point iteration did not become stationary: {0}")]
    FixedPointDivergence(String),
    #[error("shadow polynomials missing for genus {0}")]
    ShadowSetIncomplete(usize),
    #[error("no root of the discriminant matches the coefficient-ratio estimate {0}")]
    NoConsistentRoot(String),
    #[error("singularity condition violated: {0}")]
    ConditionViolated(String),
    #[error("no root of the substitution equation before its first pole: {0}")]
    NoRootBeforePole(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
