use thiserror::Error;

/// Errors produced by the algebra kernel and the analysis layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent overflow (64-bit checked arithmetic)")]
    ExponentOverflow,

    #[error("ring context mismatch: operands live in different rings")]
    ContextMismatch,

    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unsupported ideal class: {0}")]
    UnsupportedIdealClass(String),

    #[error("colon ideal by the zero ideal")]
    ZeroColonDivisor,

    #[error("work budget exceeded after {0} S-pair reductions")]
    WorkBudgetExceeded(usize),

    #[error("invalid algebra family: {0}")]
    InvalidAlgebraSpec(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("f-purity undefined: {0}")]
    FPureDomain(String),

    #[error("template error: {0}")]
    Template(String),

    #[error("level {0} is not defined by the table family")]
    MissingTableLevel(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
