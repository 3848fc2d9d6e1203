use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductors {0} and {1} have no common embedding")]
    ConductorMismatch(u32, u32),
    #[error("degenerate q-number base (base - base^-1 = 0)")]
    DegenerateBase,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: usize },
    #[error("generator `{0}` is not available in the {1} presentation")]
    ConventionMismatch(String, String),
    #[error("operands live in different algebra contexts")]
    ContextMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
