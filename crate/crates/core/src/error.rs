use thiserror::Error;

use crate::dsl::ParseError;
use crate::form::Form;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension {0} not supported (expected 1..={max})", max = crate::form::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("d a{generator} must have only (2,0) and (1,1) components, found {found}")]
    BadGeneratorShape { generator: usize, found: String },

    #[error("structure equations fail d^2 = 0 on generators {failing:?}")]
    InvalidSpec { failing: Vec<usize> },

    #[error("image is not contained in the kernel; witness {witness:?}")]
    Containment { witness: Vec<crate::GaussianRational> },

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("expected a {expected}x{expected} matrix")]
    MatrixShape { expected: usize },

    #[error("exponent {k} out of range 0..={n}")]
    ExponentOutOfRange { k: usize, n: usize },

    #[error("malformed coefficient index set: {0}")]
    MalformedIndexSet(String),

    #[error("metric is not Gauduchon (ddbar omega^(n-1) = {witness})")]
    NotGauduchon { witness: Form },

    #[error("unknown catalog key `{key}`; available: {available}")]
    UnknownKey { key: String, available: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
