use thiserror::Error;

/// Errors raised by constructors and checks across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Hopf datum: {0}")]
    InvalidDatum(String),
    #[error("no left integral supported on a single monomial")]
    NoIntegralFound,
    #[error("top PBW monomial does not pair with a single group element")]
    MalformedTop,
    #[error("objects are defined over different Hopf data")]
    DatumMismatch,
    #[error("invalid comodule: {0}")]
    InvalidComodule(String),
    #[error("differential does not square to zero on degree {0}")]
    NotSquareZero(i64),
    #[error("differential is not {n}-nilpotent starting at degree {degree}")]
    NotNilpotent { n: u32, degree: i64 },
    #[error("not a mixed complex: {0}")]
    NotMixed(String),
    #[error("map is not colinear")]
    NotColinear,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("exactness fails at {position} in degree {degree}: {detail}")]
    ExactnessFailure {
        degree: i64,
        position: String,
        detail: String,
    },
    #[error("homology degree {0} exceeds the bound {1}")]
    WindowTooLarge(i64, i64),
    #[error("operation needs rank 1, datum has rank {0}")]
    RankUnsupported(usize),
    #[error("incompatible structures: {0}")]
    IncompatibleStructures(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
