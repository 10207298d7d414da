use thiserror::Error;

/// Errors raised by the exact core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("operation unsupported in {0} mode")]
    UnsupportedInMode(&'static str),
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("line coefficients t and u are both zero")]
    DegenerateLine,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines are identical")]
    IdenticalLines,
    #[error("affine map is singular")]
    SingularMap,
    #[error("vertex at infinity")]
    VertexAtInfinity,
    #[error("invalid quadrilateral: {0}")]
    InvalidQuadrilateral(&'static str),
    #[error("both forms are zero")]
    BothZero,
    #[error("zero form has no well-defined root set")]
    ZeroForm,
    #[error("forms have different degrees")]
    DegreeMismatch,
    #[error("form does not divide exactly")]
    NotDivisible,
    #[error("internal identity check failed: {0}")]
    IdentityCheckFailed(&'static str),
    #[error("no finite diagonal point")]
    NoFiniteDiagonalPoint,
    #[error("no non-parallel pair among opposite sides and diagonals")]
    NoNonParallelPair,
    #[error("product of coefficients is not a square")]
    NotASquare,
    #[error("pair of lines is parallel")]
    ParallelPair,
    #[error("lines are not a pair of the field")]
    NotAPair,
    #[error("polynomials are not in standard form")]
    NotStandard,
    #[error("wrong bisector field class for this operation")]
    WrongClass,
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("point is singular")]
    SingularPoint,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("field too large for enumeration (p = {p}, bound = {bound})")]
    FieldTooLarge { p: u64, bound: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
