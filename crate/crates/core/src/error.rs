use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("fan-out exponent k must be at least 1")]
    ZeroExponent,
    #[error("fan-out exponent k = {0} exceeds the supported maximum of {max}", max = crate::sort::MAX_K)]
    ExponentTooLarge(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("fewunique needs at least one distinct value")]
    NoDistinctValues,
    #[error("unknown distribution `{0}` (expected random, sorted, reversed, fewunique:<d> or equal)")]
    UnknownDistribution(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("brute-force enumeration is limited to n <= {max}, got n = {0}", max = crate::cost_model::MAX_BRUTE_FORCE_N)]
    TooLarge(usize),
    #[error("small-size table does not cover partition size {0}")]
    TableMissing(usize),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
