use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by geometry, sampling, and distribution construction.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("zero-length path")]
    ZeroLengthPath,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid density: {0}")]
    InvalidDensity(f64),

    #[error("negative area: {0}")]
    NegativeArea(f64),

    #[error("need {need} base stations, realization holds {have}")]
    InsufficientBaseStations { need: usize, have: usize },

    #[error("incoherent correlation: pmf entry {0} outside [0, 1]")]
    IncoherentCorrelation(f64),

    #[error("state space too large: {bits} blocking bits exceeds the {max}-bit enumeration cap")]
    StateSpaceTooLarge { bits: usize, max: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
