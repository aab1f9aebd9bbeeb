use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid root system component {family}{rank}")]
    InvalidComponent { family: char, rank: usize },
    #[error("cannot parse root system spec {0:?}")]
    BadSystemSpec(String),
    #[error("total rank {0} exceeds the supported maximum of 64")]
    RankTooLarge(usize),
    #[error("Weyl group enumeration exceeded the cap of {cap} elements")]
    WeylCapExceeded { cap: usize },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadReflection { index: usize, rank: usize },
    #[error("root index {0} out of range")]
    BadRootIndex(usize),
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("minimum over an empty list")]
    EmptyMin,
    #[error("negative multiplicity in a monoid exponent")]
    NegativeMultiplicity,
    #[error("character is not in the monoid spanned by the negative roots of the chart")]
    NotInMonoid,
    #[error("ring mismatch: {0}")]
    RingMismatch(&'static str),
    #[error("Laurent polynomial cannot be evaluated at a boundary point")]
    LaurentAtBoundary,
    #[error("point and polynomial live in different charts")]
    ChartMismatch,
    #[error("limit does not exist: cocharacter pairs negatively with simple root {0}")]
    LimitDoesNotExist(usize),
    #[error("point lies in the interior; no boundary stratum")]
    InteriorPoint,
    #[error("value pattern does not match stratum {tau}: {detail}")]
    PatternMismatch { tau: String, detail: String },
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}
