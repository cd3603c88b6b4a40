use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not real")]
    NotReal,

    #[error("interval refinement hit the precision cap of {0} bits without separating the values")]
    PrecisionExhausted(u32),

    #[error("value cannot be represented in a cyclotomic field: {0}")]
    Representation(String),

    #[error("not a root of unity")]
    NotRootOfUnity,

    #[error("search budget of {budget} nodes exhausted ({found} partial results)")]
    SearchBudgetExceeded { budget: u64, found: usize },

    #[error("inconsistent branching: {0}")]
    InconsistentBranching(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown ring `{0}`")]
    UnknownRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
