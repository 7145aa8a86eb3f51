use thiserror::Error;

/// Errors raised by the algebra kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not divisible by pi^{power}: {poly}")]
    NotDivisible { poly: String, power: u32 },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("polynomials live in different rings ({0})")]
    RingMismatch(String),

    #[error("monomial order mismatch: {0}")]
    OrderMismatch(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("centre does not define a subgroup: {0}")]
    NotASubgroup(String),

    #[error("division by pi failed for {witness}")]
    DivisionObstruction { witness: String },

    #[error("lift to the next stage failed: {witness}")]
    LiftFailure { witness: String },

    #[error("morphism is not injective on coordinate rings after inverting pi: {witness}")]
    NotGenericIso { witness: String },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undefined name `{0}`")]
    UndefinedName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
