use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("model is unstable (margin = {margin}); no stationary state")]
    Unstable { margin: f64 },

    #[error("covariance diverged at t = {t} (entry exceeded overflow guard)")]
    Divergence { t: f64 },

    #[error("eigenvalue collision (separation {separation}); eigenmode classification failed")]
    EigenvalueCollision { separation: f64 },

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("singular response matrix at omega = {omega}")]
    Singular { omega: f64 },

    #[error("Fock truncation unreliable: top-level population {population} exceeds 1e-4")]
    TruncationUnreliable { population: f64 },

    #[error("Fock dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
