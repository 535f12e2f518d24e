use thiserror::Error;

/// Which end of the valuation lattice a tail or divergence refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `l -> -inf`, i.e. `|x| -> inf`.
    Lower,
    /// `l -> +inf`, i.e. `|x| -> 0`.
    Upper,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Lower => f.write_str("lower"),
            Side::Upper => f.write_str("upper"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(i64, i64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("non-integrable: the {0} tail does not decay fast enough")]
    NonIntegrable(Side),

    #[error("function is not in the space: weighted ball integrals diverge ({0} tail)")]
    NotInSpace(Side),

    #[error("operator integral diverges: {0}")]
    OperatorDiverges(String),

    #[error("kernel profile undefined at j = {0} (no tail descriptor)")]
    KernelUndefined(i64),

    #[error("kernel has no exact tail description: {0}")]
    KernelNotExact(String),

    #[error("phi is not in the class: {0}")]
    NotInClass(String),

    #[error("search failed to converge: {0}")]
    NoConvergence(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
