use thiserror::Error;

/// Errors raised by the library. Validation failures name the invariant that
/// was violated so that callers (and the CLI) can report it verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid surface: invariant `{invariant}` violated: {detail}")]
    InvalidSurface { invariant: &'static str, detail: String },

    #[error("unsupported surface: intersection form has signature ({pos}, {neg}) with {zero} null directions, expected (1, {expected_neg})")]
    UnsupportedSignature {
        pos: usize,
        neg: usize,
        zero: usize,
        expected_neg: usize,
    },

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("precondition `{invariant}` violated: {detail}")]
    Precondition { invariant: &'static str, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no piece of the decomposition satisfies the role conditions at this wall")]
    NoValidRole,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("walls at {low} and {high} are not adjacent: {between} enumerated wall(s) lie strictly between")]
    NotAdjacent {
        low: String,
        high: String,
        between: usize,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn pre(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            invariant,
            detail: detail.into(),
        }
    }

    pub(crate) fn surface(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidSurface {
            invariant,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
