//! Error and warning types shared by the whole library.

use std::fmt;

/// Library-wide error type.
///
/// Every fallible operation in this crate reports one of these variants.
/// The [`Error::code`] method exposes a stable machine-readable string for
/// each variant so that front ends (e.g. the CLI) can map errors to exit
/// classes without matching on the enum shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text could not be parsed; `position` is a byte offset.
    Parse { position: usize, message: String },
    /// A variable name was used that the receiving object does not know.
    UnknownVariable(String),
    /// Evaluation point does not bind one of the polynomial's variables.
    UnboundVariable(String),
    /// Operation requires a homogeneous polynomial.
    NonHomogeneous,
    /// A matrix that must be invertible is singular.
    SingularMatrix,
    /// The quadric of a general critical system is degenerate.
    DegenerateQuadric,
    /// Mismatched lengths or shapes in the input.
    DimensionMismatch { expected: usize, found: usize },
    /// The zero polynomial was passed where a nonzero one is required.
    ZeroPolynomial,
    /// Operation requires a univariate polynomial.
    NotUnivariate,
    /// Operation requires a squarefree polynomial.
    NotSquarefree,
    /// Resultant input has degree 0 in the elimination variable.
    DegreeTooLow { variable: String },
    /// Catch-all for invalid arguments with a human-readable reason.
    InvalidInput(String),
    /// User-supplied numerical invariants violate a consistency constraint.
    InconsistentInvariants(String),
    /// Two curves (or a system) share a positive-dimensional component.
    PositiveDimensional,
    /// Random choices failed a genericity requirement; reseeding may help.
    GenericityFailure(String),
    /// Repeated counting trials disagreed even after the retry budget.
    UnstableCount(String),
    /// Too few exact sample points could be found on a curve.
    InsufficientSamplePoints { found: usize, needed: usize },
    /// An input degree exceeds a configured cap.
    DegreeCapExceeded { degree: u32, cap: u32 },
    /// A constructed auxiliary system degenerated (e.g. vanished identically).
    DegenerateSystem(String),
    /// Integer overflow in a closed-form formula.
    Overflow,
    /// Two independent pipelines disagreed; indicates a bug, not bad input.
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::UnboundVariable(_) => "unbound_variable",
            Error::NonHomogeneous => "non_homogeneous",
            Error::SingularMatrix => "singular_matrix",
            Error::DegenerateQuadric => "degenerate_quadric",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotUnivariate => "not_univariate",
            Error::NotSquarefree => "not_squarefree",
            Error::DegreeTooLow { .. } => "degree_too_low",
            Error::InvalidInput(_) => "invalid_input",
            Error::InconsistentInvariants(_) => "inconsistent_invariants",
            Error::PositiveDimensional => "positive_dimensional",
            Error::GenericityFailure(_) => "genericity_failure",
            Error::UnstableCount(_) => "unstable_count",
            Error::InsufficientSamplePoints { .. } => "insufficient_sample_points",
            Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
            Error::DegenerateSystem(_) => "degenerate_system",
            Error::Overflow => "overflow",
            Error::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
            Error::UnknownVariable(name) => write!(f, "unknown variable '{name}'"),
            Error::UnboundVariable(name) => {
                write!(f, "evaluation point does not bind variable '{name}'")
            }
            Error::NonHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::DegenerateQuadric => write!(f, "quadric is degenerate"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroPolynomial => write!(f, "operation requires a nonzero polynomial"),
            Error::NotUnivariate => write!(f, "operation requires a univariate polynomial"),
            Error::NotSquarefree => write!(f, "operation requires a squarefree polynomial"),
            Error::DegreeTooLow { variable } => {
                write!(f, "polynomial has degree 0 in elimination variable '{variable}'")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InconsistentInvariants(msg) => {
                write!(f, "inconsistent invariants: {msg}")
            }
            Error::PositiveDimensional => {
                write!(f, "inputs share a positive-dimensional solution component")
            }
            Error::GenericityFailure(msg) => {
                write!(f, "genericity failure: {msg}; rerun with a different seed")
            }
            Error::UnstableCount(msg) => {
                write!(f, "counting trials disagreed after retries: {msg}")
            }
            Error::InsufficientSamplePoints { found, needed } => {
                write!(
                    f,
                    "found only {found} exact sample points on the curve, need {needed}"
                )
            }
            Error::DegreeCapExceeded { degree, cap } => {
                write!(f, "input degree {degree} exceeds configured cap {cap}")
            }
            Error::DegenerateSystem(msg) => write!(f, "degenerate system: {msg}"),
            Error::Overflow => write!(f, "integer overflow in formula evaluation"),
            Error::Internal(msg) => {
                write!(f, "internal consistency violation: {msg}")
            }
        }
    }
}

impl std::error::Error for Error {}

/// Non-fatal diagnostic attached to otherwise successful results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    /// Stable machine-readable code.
    pub code: &'static str,
    /// Human-readable explanation.
    pub message: String,
}

impl Warning {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Warning { code, message: message.into() }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}
