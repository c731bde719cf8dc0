//! Error type shared across the crate.

use std::fmt;

/// Everything that can go wrong in the calculus layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero rational function.
    ZeroDivisor,
    /// Evaluation point lies on the denominator's zero set.
    PoleAtEvaluationPoint,
    /// Operators declared over different numbers of base variables.
    VariableCountMismatch { left: usize, right: usize },
    /// Source/target component spaces do not line up.
    SpaceMismatch { expected: usize, found: usize },
    /// Tuple argument has the wrong length.
    LengthMismatch { expected: usize, found: usize },
    /// Metric matrix is not invertible.
    SingularMetric,
    /// Metric matrix is not symmetric.
    NonSymmetricMetric,
    /// |det ω| has no exact n-th root in Q, so the density ω̂ is unavailable.
    DensityUnavailable,
    /// Linearized curvature constructors require a constant metric.
    FlatBackgroundRequired,
    /// The requested algebraic map degenerates in dimension two.
    DegenerateAtN2,
    /// minimal_parametrization_search was handed a pair that is not a parametrization.
    NotAParametrization,
    /// A Gröbner run exceeded its time budget.
    BudgetExceeded,
    /// Operator document syntax error.
    Parse { line: usize, col: usize, msg: String },
    /// Check name not in the registered set.
    UnknownCheck(String),
    /// Unsupported request (e.g. search space too large).
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivisor => write!(f, "zero divisor"),
            Error::PoleAtEvaluationPoint => write!(f, "pole at evaluation point"),
            Error::VariableCountMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            Error::SpaceMismatch { expected, found } => {
                write!(f, "space mismatch: expected dimension {expected}, found {found}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::SingularMetric => write!(f, "singular metric"),
            Error::NonSymmetricMetric => write!(f, "metric is not symmetric"),
            Error::DensityUnavailable => write!(f, "metric density unavailable"),
            Error::FlatBackgroundRequired => write!(f, "flat background required"),
            Error::DegenerateAtN2 => write!(f, "degenerate at n=2"),
            Error::NotAParametrization => write!(f, "not a parametrization"),
            Error::BudgetExceeded => write!(f, "budget exceeded"),
            Error::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            Error::UnknownCheck(name) => write!(f, "unknown check: {name}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
