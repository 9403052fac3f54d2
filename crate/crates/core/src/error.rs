use thiserror::Error;

/// Which side of a power-sum system a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("0^0 is undefined")]
    ZeroToZero,
    #[error("{0} of the zero polynomial is undefined")]
    ZeroPolynomial(&'static str),
    #[error("{0} of the zero function is undefined")]
    ZeroFunction(&'static str),
    #[error("factorization infeasible: {0}")]
    FactorizationInfeasible(String),
    #[error("invalid system: {side} term {index}: {reason}")]
    InvalidSystem {
        side: Side,
        /// 1-based, matching the order of terms in the system file.
        index: usize,
        reason: String,
    },
    #[error("invalid system: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Resource exhaustion, as opposed to bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::ResourceCap(_) | Error::FactorizationInfeasible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
