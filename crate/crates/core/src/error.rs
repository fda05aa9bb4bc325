use thiserror::Error;

/// Errors raised by state construction, channel application and the
/// scenario builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is not one: |tr - 1| = {deviation:e}")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("basis is not orthonormal: max |<v_i|v_j> - delta_ij| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("invalid subsystem dimensions {dims:?}: {reason}")]
    InvalidDims { dims: Vec<usize>, reason: &'static str },

    #[error("total dimension {total} exceeds the configured maximum {max}")]
    DimensionOverflow { total: usize, max: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystemIndex { index: usize, count: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("invalid rank {rank} for total dimension {total}")]
    InvalidRank { rank: usize, total: usize },

    #[error("intensity {0} is outside [0, 1]")]
    InvalidIntensity(f64),

    #[error("outcome index {outcome} out of range for {count} outcomes")]
    InvalidOutcome { outcome: usize, count: usize },

    #[error("outcome {outcome} has probability {probability:e}, at or below the collapse threshold")]
    ZeroProbabilityOutcome { outcome: usize, probability: f64 },

    #[error("state is not invariant under dephasing of the observable (trace distance {distance:e})")]
    NotARealityState { distance: f64 },

    #[error("bases are not mutually unbiased: max ||<a|b>|^2 - 1/d| = {deviation:e}")]
    NotUnbiased { deviation: f64 },

    #[error("branches are indistinguishable: overlap {overlap} is too close to 1")]
    DegenerateGram { overlap: f64 },

    #[error("packet does not fit the grid: truncated tail mass {tail_mass:e} or support {support} > {sites} sites")]
    PacketTooWide {
        tail_mass: f64,
        support: usize,
        sites: usize,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
