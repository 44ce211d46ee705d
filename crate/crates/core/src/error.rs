use thiserror::Error;

use crate::numeric::ScalarKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("cannot combine {0:?} with {1:?} without an explicit conversion")]
    KindMismatch(ScalarKind, ScalarKind),

    #[error("failed to parse scalar {0:?}")]
    Parse(String),

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("{0} is not representable exactly in this scalar kind; use float mode")]
    NotRepresentable(String),

    #[error("enumeration budget exceeded ({0} nodes)")]
    BudgetExceeded(u64),

    #[error("dimension {got} outside supported range {min}..={max}")]
    Dimension { got: usize, min: usize, max: usize },

    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("witness set mismatch in `{identity}` at lattice coordinates {triple:?}")]
    WitnessMismatch { identity: String, triple: [i64; 3] },

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
