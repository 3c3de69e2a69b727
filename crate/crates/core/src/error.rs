use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    /// Characteristic 2, or the characteristic divides the root order.
    BadCharacteristic { p: u64, n: u64 },
    NoRootOfUnity { order: u64 },
    DivisionByZero,
    ContextMismatch,
    Unsupported(&'static str),
    EvenInput(u64),
    ZeroScalar,
    NotSymmetric { row: usize, col: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// Two independent computations of the same quantity disagree.
    PathDisagreement(String),
    BadPairing(String),
    AlgebraMismatch,
    WrongDegreeMod4(u64),
    ZeroParameter,
    HypothesisViolated(&'static str),
    DegenerateInput,
    OutOfRange(String),
    BudgetExceeded { size: u128, budget: u128 },
    FactorizationFailed(u64),
    InvalidInput(String),
    /// A dimension-filled hyperbolic count came out negative or fractional.
    BadHypCount(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadCharacteristic { p, n } => {
                write!(f, "characteristic {p} is 2 or divides n = {n}")
            }
            Error::NoRootOfUnity { order } => {
                write!(f, "field has no primitive root of unity of order {order}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::ContextMismatch => f.write_str("operands live in different fields"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::EvenInput(n) => write!(f, "expected an odd integer, got {n}"),
            Error::ZeroScalar => f.write_str("scaling by zero"),
            Error::NotSymmetric { row, col } => {
                write!(f, "gram matrix is not symmetric at ({row}, {col})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::PathDisagreement(msg) => write!(f, "independent paths disagree: {msg}"),
            Error::BadPairing(msg) => write!(f, "bad pairing: {msg}"),
            Error::AlgebraMismatch => f.write_str("elements belong to different algebras"),
            Error::WrongDegreeMod4(n) => write!(f, "degree {n} is not 2 mod 4"),
            Error::ZeroParameter => f.write_str("algebra parameters must be nonzero"),
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::DegenerateInput => f.write_str("form is degenerate"),
            Error::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            Error::BudgetExceeded { size, budget } => {
                write!(f, "size {size} exceeds budget {budget}")
            }
            Error::FactorizationFailed(n) => {
                write!(f, "could not factor {n} by trial division")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::BadHypCount(msg) => write!(f, "bad hyperbolic count: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
