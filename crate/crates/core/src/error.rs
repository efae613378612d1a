use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside its closed admissible interval.
    #[error("{name} = {value} is outside the admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("Battle of the Sexes requires alpha > beta > sigma, got ({alpha}, {beta}, {sigma})")]
    BosOrdering { alpha: f64, beta: f64, sigma: f64 },

    /// The closed-form expressions only exist for Battle-of-the-Sexes games.
    #[error("closed-form payoffs require a Battle of the Sexes game")]
    NotBos,

    #[error("invalid strategy grid: {0}")]
    InvalidGrid(String),

    #[error("eps must be finite and non-negative, got {0}")]
    InvalidEps(f64),
}
