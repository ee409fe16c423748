use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is below 5; the families require p >= 5")]
    PrimeTooSmall(u64),

    #[error("the zero polynomial has no well-defined root count")]
    ZeroPolynomial,

    #[error("discriminant vanishes identically modulo {0}")]
    DegenerateModP(u64),

    #[error("family has identically zero discriminant")]
    SingularFamily,

    #[error("family has constant j-invariant")]
    ConstantJInvariant,

    #[error("invalid interval [{lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("twist parameter must be nonzero modulo {0}")]
    ZeroTwist(u64),

    #[error("sample is empty")]
    EmptySample,

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },

    #[error("malformed family file: {0}")]
    FamilyFile(String),
}
