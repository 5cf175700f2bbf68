use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix {index} is not an involution (max residual {residual:e})")]
    NotInvolution { index: usize, residual: f64 },

    #[error("involutions {i} and {j} do not commute (max residual {residual:e})")]
    NotCommuting { i: usize, j: usize, residual: f64 },

    #[error("circle blocks overlap or are out of range: {0}")]
    BadCircleBlocks(String),

    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },

    #[error("closure enumeration requires exact rational entries")]
    InexactClosure,

    #[error("coset representatives are not distinct (indices {i} and {j} coincide)")]
    DuplicateCosetRep { i: usize, j: usize },

    #[error("coset index has length {got}, expected {expected}")]
    CosetIndexOutOfRange { got: usize, expected: usize },

    #[error("coefficient of degree {degree} is {value} which is not within {tol:e} of an integer")]
    Rounding { degree: usize, value: f64, tol: f64 },

    #[error("monomial basis of degree {degree} has {size} elements, exceeding cap {cap}")]
    BasisCapExceeded { degree: usize, size: usize, cap: usize },

    #[error("rank computation requires exact rational entries")]
    InexactRank,

    #[error("involutions use hyperbolic entries but no theta value was given")]
    MissingTheta,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
