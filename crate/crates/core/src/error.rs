use crate::rational::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("radicand has odd degree {0}")]
    OddDegree(usize),
    #[error("radicand is the zero polynomial")]
    ZeroRadicand,
    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeadingCoefficient(Rational),
    #[error("radicand is a perfect square")]
    PerfectSquare,
    #[error("period form violated at index {index}: {reason}")]
    FormViolation { index: usize, reason: String },
    #[error("expansion is not periodic")]
    NotPeriodic,
    #[error("genus mismatch: deg a0 = {found}, expected {expected}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("no quasi-period length m fits g = {g}, N = {n}")]
    EmptyRange { g: usize, n: usize },
    #[error("zero denominator in h_{0}")]
    ZeroDenominator(usize),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("residual constraint not satisfied: {0}")]
    ConstraintViolated(String),
    #[error("nonvanishing variable is zero: {0}")]
    NonvanishingViolated(String),
    #[error("round trip failed: {0}")]
    RoundTripFailed(String),
    #[error("input is not symmetric in the root variables")]
    NotSymmetric,
    #[error("expected a sextic, got degree {0:?}")]
    NotSextic(Option<usize>),
    #[error("curve is singular (D = 0)")]
    SingularCurve,
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),
    #[error("record is not verified")]
    UnverifiedRecord,
    #[error("missing value for variable {0}")]
    MissingAssignment(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
