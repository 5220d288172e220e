//! Stochastic-geometry simulator for macrodiversity in mmWave cellular
//! uplinks with correlated blockage.
//!
//! The crate samples random networks (base stations, blockages, and
//! interferers drawn from Poisson point processes), evaluates exact
//! per-realization distributions of LOS probability, SNR, and SINR under
//! selection and diversity combining, and aggregates them into empirical
//! CDFs and outage curves. Every analytic formula is backed by a geometric
//! brute-force validator in [`oracle`].

pub mod blocking;
pub mod engine;
pub mod geometry;
pub mod oracle;
pub mod placement;
pub mod sinr;
pub mod snr;

mod error;
mod types;

pub use error::{Error, Result};
pub use types::{CombiningScheme, DiversityOrder};
