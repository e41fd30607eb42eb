use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Cl(0,0) is the scalar algebra; nothing to decompose")]
    ScalarAlgebra,

    #[error("sign propagation is inconsistent at blade {blade}: requires both +1 and -1")]
    InconsistentPropagation { blade: String },

    #[error("no span witness found: every probed vector has rank < k")]
    NoSpanWitness,

    #[error("curve integration produced a non-finite state at t = {t}")]
    NonFiniteState { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
