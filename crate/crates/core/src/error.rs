use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Outcomes such as "unknown" or "fail" from the provers are values, not
/// errors; this enum is reserved for malformed input and broken preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero{}", step_suffix(*.step))]
    DivisionByZero { step: Option<usize> },

    #[error("float overflow at step {step}")]
    Overflow { step: usize },

    #[error("variable contexts differ: {0}")]
    ContextMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("lag too deep: {0}")]
    LagTooDeep(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("expression too large: {terms} terms exceeds budget {budget}")]
    ExpressionTooLarge { terms: usize, budget: usize },

    #[error("degenerate equation: every point is an equilibrium")]
    DegenerateEquation,

    #[error("jacobian entry ({row}, {col}) has a vanishing denominator at the fixed point")]
    JacobianSingularEvaluation { row: usize, col: usize },

    #[error("cleared denominator is not a perfect square")]
    NotPerfectSquare,

    #[error("no stable fixed point: {0}")]
    NoStableFixedPoint(String),

    #[error("unsupported residual kind: {0}")]
    UnsupportedKind(String),

    #[error("cannot establish positivity of the cleared denominator")]
    IndefiniteDenominator,

    #[error("orbit tail has not converged: drift {drift:e}")]
    NotConverged { drift: f64 },

    #[error("invariant has a non-positive coefficient")]
    NotPositive,

    #[error("parameter interpolation failed verification")]
    InterpolationMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn step_suffix(step: Option<usize>) -> String {
    match step {
        Some(s) => format!(" at step {s}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
