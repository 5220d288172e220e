//! Network realization sampling.
//!
//! Base stations form a homogeneous PPP, so their ordered distances from
//! the source follow a chain of conditional CDFs that invert in closed
//! form: r_i = sqrt(-ln(1 - x_i)/(lambda*pi) + r_{i-1}^2) with r_0 = 0.
//! Blockage centers are a second, independent PPP sampled over a covering
//! disk. Interferers live in neighboring cells, one per cell, uniform on
//! a disk of the average cell radius around their host base station.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::geometry::Point2D;
use crate::{DiversityOrder, Error, Result};

/// Deterministic pseudo-random stream identified by (seed, substream).
///
/// Identical (seed, substream) pairs reproduce identical sequences
/// bit-for-bit, and `seek` jumps to an absolute position within the
/// substream so independent consumers can carve out disjoint sections.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, substream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(substream);
        RngStream { rng }
    }

    /// Jumps to an absolute word position within this substream.
    pub fn seek(&mut self, word_pos: u128) {
        self.rng.set_word_pos(word_pos);
    }

    /// Uniform draw on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Poisson draw with the given mean (0 allowed).
    pub fn poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        let dist = Poisson::new(mean).expect("positive finite mean");
        dist.sample(&mut self.rng) as u64
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

/// Documented word positions carving each realization substream into
/// disjoint sections, so draws for one purpose never shift another.
pub mod section {
    /// Base-station distance and angle draws.
    pub const BASE_STATIONS: u128 = 0;
    /// Interferer offsets when the serving order is N = 1.
    pub const INTERFERERS_N1: u128 = 1 << 20;
    /// Interferer offsets when the serving order is N = 2.
    pub const INTERFERERS_N2: u128 = 1 << 21;
    /// Correlated (shared-geometry) blockage draws; stride per density index.
    pub const BLOCKAGES: u128 = 1 << 32;
    /// Independent per-path blockage draws; stride per density index.
    pub const BLOCKAGES_INDEPENDENT: u128 = 1 << 50;
    /// Span reserved for one blockage-density index within either region.
    pub const BLOCKAGE_STRIDE: u128 = 1 << 40;
}

/// One sampled network geometry around a source at the origin.
#[derive(Debug, Clone)]
pub struct NetworkRealization {
    /// The source transmitter; always the origin.
    pub source: Point2D,
    /// Base stations ordered by nondecreasing distance to the source.
    pub base_stations: Vec<Point2D>,
    /// Interfering transmitters, one per neighboring cell.
    pub interferers: Vec<Point2D>,
    /// Base-station density the geometry was sampled at.
    pub lambda_bs: f64,
}

impl NetworkRealization {
    pub fn new(base_stations: Vec<Point2D>, lambda_bs: f64) -> Result<Self> {
        if !(lambda_bs > 0.0) {
            return Err(Error::InvalidDensity(lambda_bs));
        }
        for pair in base_stations.windows(2) {
            if pair[0].norm() > pair[1].norm() {
                return Err(Error::InvalidConfig(
                    "base stations not ordered by distance".into(),
                ));
            }
        }
        Ok(NetworkRealization {
            source: Point2D::ORIGIN,
            base_stations,
            interferers: Vec::new(),
            lambda_bs,
        })
    }

    pub fn with_interferers(mut self, interferers: Vec<Point2D>) -> Self {
        self.interferers = interferers;
        self
    }

    /// Distance from the source to the i-th nearest base station (0-based).
    pub fn distance(&self, i: usize) -> f64 {
        self.base_stations[i].norm()
    }
}

/// Inverse of the conditional distance CDF: maps a uniform draw in [0, 1)
/// to the next ordered PPP distance given the previous one.
pub fn next_ordered_distance(lambda_bs: f64, prev: f64, u: f64) -> f64 {
    (-(1.0 - u).ln() / (lambda_bs * PI) + prev * prev).sqrt()
}

/// Ordered distances r_1 < r_2 < ... < r_count from the origin to the
/// nearest base stations of a PPP with density `lambda_bs`.
pub fn sample_ordered_distances(
    lambda_bs: f64,
    count: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if !(lambda_bs > 0.0) {
        return Err(Error::InvalidDensity(lambda_bs));
    }
    let mut distances = Vec::with_capacity(count);
    let mut prev = 0.0;
    for _ in 0..count {
        let r = next_ordered_distance(lambda_bs, prev, rng.uniform());
        distances.push(r);
        prev = r;
    }
    Ok(distances)
}

/// Base-station positions ordered by distance, with i.i.d. uniform angles.
///
/// Consumes `count` uniforms for the distances followed by `count`
/// uniforms for the angles.
pub fn sample_base_stations(
    lambda_bs: f64,
    count: usize,
    rng: &mut RngStream,
) -> Result<Vec<Point2D>> {
    let distances = sample_ordered_distances(lambda_bs, count, rng)?;
    Ok(distances
        .into_iter()
        .map(|r| Point2D::from_polar(r, TAU * rng.uniform()))
        .collect())
}

/// Blockage centers of a PPP with density `lambda_bl`, restricted to the
/// disk of radius `region_radius` about the origin.
pub fn sample_blockages(
    lambda_bl: f64,
    region_radius: f64,
    rng: &mut RngStream,
) -> Result<Vec<Point2D>> {
    if lambda_bl < 0.0 {
        return Err(Error::InvalidDensity(lambda_bl));
    }
    if !(region_radius > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "region radius {region_radius} must be > 0"
        )));
    }
    let mean = lambda_bl * PI * region_radius * region_radius;
    let count = rng.poisson(mean);
    let mut centers = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let r = region_radius * rng.uniform().sqrt();
        centers.push(Point2D::from_polar(r, TAU * rng.uniform()));
    }
    Ok(centers)
}

/// The average cell radius r = (lambda_bs * pi)^(-1/2).
pub fn cell_radius(lambda_bs: f64) -> f64 {
    (lambda_bs * PI).powf(-0.5)
}

/// Interferer positions for serving order `n`: interferer j is uniform on
/// the disk of the average cell radius around base station X_{n+j}, the
/// j-th nearest station not serving the source.
pub fn place_interferers(
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
    lambda_bs: f64,
    rng: &mut RngStream,
) -> Result<Vec<Point2D>> {
    let need = n.count() + m;
    let have = realization.base_stations.len();
    if have < need {
        return Err(Error::InsufficientBaseStations { need, have });
    }
    let r_cell = cell_radius(lambda_bs);
    let mut interferers = Vec::with_capacity(m);
    for j in 0..m {
        let host = realization.base_stations[n.count() + j];
        let offset_r = r_cell * rng.uniform().sqrt();
        let offset_theta = TAU * rng.uniform();
        interferers.push(Point2D::new(
            host.x + offset_r * offset_theta.cos(),
            host.y + offset_r * offset_theta.sin(),
        ));
    }
    Ok(interferers)
}
