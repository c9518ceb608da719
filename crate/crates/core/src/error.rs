use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative argument {value} for {what}")]
    NegativeArgument { what: &'static str, value: i64 },

    /// A division that was required to be exact left a nonzero remainder.
    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole encountered at k = {k}: {detail}")]
    Pole { k: u64, detail: String },

    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),

    #[error("resource cap exceeded: degree {degree} > max degree {cap}")]
    ResourceCap { degree: usize, cap: usize },

    /// The geometric stopping rule never fired before the term cap.
    #[error("series is not geometrically convergent: ratio {ratio:.6} after {terms} terms")]
    NonGeometric { terms: usize, ratio: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("outside numeric domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
