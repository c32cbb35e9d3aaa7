use alloc::string::String;
use core::fmt;

/// Coarse classification of an [`Error`], used by callers that map failures
/// onto exit codes or HTTP-like statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Argument,
    Range,
    Resource,
    Validation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A table limit of zero was requested.
    ZeroLimit,
    /// The table could not be allocated.
    Allocation { limit: u64 },
    /// `n` lies outside `1..=limit`.
    OutOfRange { n: u64, limit: u64 },
    /// The brute-force oracle refuses bounds above its guard.
    OracleBound { bound: u64, max: u64 },
    /// A base complexity below the certified complexity of a constant.
    BelowComplexity { value: u64, given: u64, certified: u64 },
    /// Exponent tuple length does not match the polynomial.
    Arity { expected: usize, got: usize },
    /// Operation needs a polynomial of positive degree.
    ZeroDegree,
    /// Variable index outside `1..=degree`.
    Variable { index: usize, degree: usize },
    /// Structurally invalid polynomial (zero constant, zero addend, ...).
    InvalidPolynomial(&'static str),
    /// Malformed rational threshold.
    Threshold(String),
    /// `alpha` must satisfy `0 < alpha < 1`.
    Alpha,
    /// The base leader enumeration came too close to the table limit to be
    /// trusted as complete.
    BaseHorizon { largest: u64, limit: u64 },
    /// Text that failed to parse.
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Allocation { .. } => ErrorKind::Resource,
            Error::OutOfRange { .. } | Error::BaseHorizon { .. } => ErrorKind::Range,
            Error::InvalidPolynomial(_) => ErrorKind::Validation,
            _ => ErrorKind::Argument,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroLimit => write!(f, "table limit must be at least 1"),
            Error::Allocation { limit } => write!(f, "cannot allocate a table of {limit} entries"),
            Error::OutOfRange { n, limit } => write!(f, "{n} is outside the table range 1..={limit}"),
            Error::OracleBound { bound, max } => {
                write!(f, "oracle bound {bound} exceeds the guard {max}")
            }
            Error::BelowComplexity { value, given, certified } => write!(
                f,
                "base complexity {given} for {value} is below its complexity {certified}"
            ),
            Error::Arity { expected, got } => {
                write!(f, "expected {expected} exponents, got {got}")
            }
            Error::ZeroDegree => write!(f, "polynomial has degree 0"),
            Error::Variable { index, degree } => {
                write!(f, "variable x{index} does not exist in a degree-{degree} polynomial")
            }
            Error::InvalidPolynomial(why) => write!(f, "invalid low-defect polynomial: {why}"),
            Error::Threshold(why) => write!(f, "invalid threshold: {why}"),
            Error::Alpha => write!(f, "alpha must lie strictly between 0 and 1"),
            Error::BaseHorizon { largest, limit } => write!(
                f,
                "base leader set reaches {largest}, too close to the table limit {limit}; build a larger table"
            ),
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
