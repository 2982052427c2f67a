use thiserror::Error;

/// Errors raised by the series engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("parts must be positive and nonincreasing: {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("inadmissible spec: {0}")]
    InvalidSpec(String),

    #[error("evaluation points must be pairwise distinct")]
    RepeatedPoints,

    #[error("partition of length {length} needs at least that many variables, got {variables}")]
    TooFewVariables { length: usize, variables: usize },

    #[error("normalising factor v_lambda vanishes at t = {0}")]
    DegenerateParameter(String),

    #[error("theta factor degenerates: residue {residue} is 0 mod {modulus}")]
    DegenerateTheta { residue: i64, modulus: usize },

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("F-hat_n is defined only for n >= 2, got n = {0}")]
    FhatOrder(usize),

    #[error("F-hat_{n} takes {expected} arguments, got {got}")]
    Arity { n: usize, expected: usize, got: usize },

    #[error("coefficient {value} at q^{index} is not integral")]
    NonIntegral { index: usize, value: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("{divisor} does not divide the level {level}")]
    NotADivisor { divisor: u64, level: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
