use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("variable u{index} exceeds the declared variable count {num_vars}")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("cannot evaluate at a point with a zero coordinate (index {0})")]
    ZeroCoordinate(usize),

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("specialized degree {degree} exceeds the guard {limit}")]
    DegreeOverflow { degree: u64, limit: u64 },

    #[error("all linking numbers are zero; use the zero-linking limit instead")]
    ZeroLinking,

    #[error("linking numbers are not all zero")]
    NonzeroLinking,

    #[error("exact division failed: {0}")]
    DivisionFailed(String),

    #[error("every quadrature sample was degenerate")]
    DegenerateSamples,

    #[error("unknown catalog key `{key}`{}", suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default())]
    UnknownKey {
        key: String,
        suggestion: Option<String>,
    },
}
