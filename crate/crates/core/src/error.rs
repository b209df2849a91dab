use thiserror::Error;

/// Errors raised by the library. Invalid input is kept distinct from
/// "not isomorphic", which is a regular result and never an error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group too large: closure exceeds {limit} elements")]
    GroupTooLarge { limit: usize },
    #[error("cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a block system")]
    NotABlockSystem,
    #[error("empty domain")]
    EmptyDomain,
    #[error("invalid restriction set: {0}")]
    InvalidRestriction(String),
    #[error("configuration is not homogeneous")]
    NotHomogeneous,
    #[error("not central: {0}")]
    NotCentral(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("group is not almost simple")]
    NotAlmostSimple,
    #[error("quotient too large: {0} vertices")]
    QuotientTooLarge(usize),
    #[error("unknown builtin group `{0}`")]
    UnknownGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a configured size cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::GroupTooLarge { .. } | Error::CapExceeded { .. } | Error::QuotientTooLarge(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
