use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} does not define a quadratic field")]
    InvalidD(i64),
    #[error("field is not real quadratic")]
    NotRealQuadratic,
    #[error("abstract field descriptors carry no element arithmetic")]
    AbstractField,
    #[error("no splitting data recorded for the prime {0}")]
    MissingTableEntry(u64),
    #[error("{0} is not a rational prime")]
    NotPrime(u64),
    #[error("valuation of zero")]
    ZeroElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("discriminant {disc} exceeds the configured bound {bound} in absolute value")]
    DiscriminantTooLarge { disc: i64, bound: u64 },
    #[error("enumeration box of {size} candidates exceeds the ceiling {ceiling}")]
    BoxTooLarge { size: u128, ceiling: u128 },
    #[error("exponent bound must be at least 1")]
    InvalidBound,
    #[error("a^4 - b^4 = n c^p does not hold")]
    EquationFails,
    #[error("exponent p = {0} must be a prime >= 5")]
    ExponentTooSmall(u64),
    #[error("ord of n at a prime above {prime} is {ord} >= p = {p}")]
    NOrdTooLarge { prime: u64, ord: u32, p: u64 },
    #[error("n must be a positive integer")]
    InvalidN,
    #[error("{0} is not an algebraic integer")]
    NotIntegral(&'static str),
    #[error("curve is singular (discriminant zero)")]
    SingularCurve,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("seed a^4 = b^4 gives only the zero solution")]
    DegenerateSeed,
    #[error("lambda must avoid 0 and 1")]
    DegenerateLambda,
    #[error("lambda + mu != 1")]
    NotASolution,
    #[error("triple has C = a^2 + b^2 = 0")]
    DegenerateTriple,
    #[error("missing valuation profile for the prime above {0}")]
    IncompleteProfiles(u64),
    #[error("solution set was computed for a different S than the statement requires")]
    WrongS,
    #[error("sieve cutoff {cutoff} exceeds the memory budget of {budget} entries")]
    CutoffTooLarge { cutoff: u64, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
