use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidName(String),
    DivisionByZero,
    /// Division by a scalar that mentions a deformation parameter.
    NonNumericDivisor,
    /// A word mentions a generator outside the algebra it is used in.
    UniverseMismatch { generator: usize, rank: usize },
    ArityMismatch { left: usize, right: usize },
    /// Tensor powers are capped at three legs.
    ArityOverflow(usize),
    LegOutOfRange { leg: usize, arity: usize },
    UnknownGenerator(String),
    DuplicateGenerator(String),
    DuplicateRelation { left: String, right: String },
    /// A rewrite correction is not strictly lighter than the pair it replaces.
    NonDecreasingRewrite { left: String, right: String },
    /// exp/cosh/sinh of an element with a nonzero constant term.
    NonZeroConstantTerm,
    /// A formal series was requested with no truncation degree.
    NeedsTruncation,
    /// A diagonal Gram block is singular or not numeric.
    SingularBlock { grade: u32 },
    /// A functional could not be matched by the dual basis.
    Residual(String),
    Precondition(String),
    NotInvertible(String),
    Mismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidName(n) => write!(f, "invalid name `{n}`"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonNumericDivisor => {
                write!(f, "division by a parameter-dependent scalar is not supported")
            }
            Error::UniverseMismatch { generator, rank } => write!(
                f,
                "generator index {generator} is outside an algebra with {rank} generators"
            ),
            Error::ArityMismatch { left, right } => {
                write!(f, "tensor arity mismatch: {left} vs {right}")
            }
            Error::ArityOverflow(n) => write!(f, "tensor arity {n} exceeds the maximum of 3"),
            Error::LegOutOfRange { leg, arity } => {
                write!(f, "leg {leg} out of range for arity {arity}")
            }
            Error::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            Error::DuplicateGenerator(n) => write!(f, "generator `{n}` declared twice"),
            Error::DuplicateRelation { left, right } => {
                write!(f, "relation [{left}, {right}] given twice")
            }
            Error::NonDecreasingRewrite { left, right } => write!(
                f,
                "rewrite {left}*{right}: correction is not lighter than the pair it replaces"
            ),
            Error::NonZeroConstantTerm => {
                write!(f, "series argument must have zero constant term")
            }
            Error::NeedsTruncation => write!(f, "formal series need a truncation degree"),
            Error::SingularBlock { grade } => {
                write!(f, "pairing block of grade {grade} is singular or not numeric")
            }
            Error::Residual(s) => write!(f, "reconstruction residual: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::NotInvertible(s) => write!(f, "not invertible: {s}"),
            Error::Mismatch(s) => write!(f, "mismatch: {s}"),
        }
    }
}

impl core::error::Error for Error {}
