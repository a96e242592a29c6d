use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must lie in 1..=2^127, got {0}")]
    BadModulus(u128),

    #[error("mixed moduli: {0} and {1}")]
    ModulusMismatch(u128, u128),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {0} is too large (p must be below 2^63)")]
    PrimeTooLarge(u64),

    #[error("invalid group parameters: {0}")]
    BadParams(String),

    #[error("operands belong to different groups")]
    ParamMismatch,

    #[error("exponent {value} out of range 0..{modulus}")]
    ExponentOutOfRange { value: u128, modulus: u128 },

    #[error("group order {order} exceeds oracle cap {cap}")]
    OracleCapExceeded { order: u128, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
