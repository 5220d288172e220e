//! Geometric brute-force validation.
//!
//! Instead of evaluating pmf formulas, this module drops an actual
//! blockage point process onto the plane and tests rectangle membership
//! path by path. One shared draw per trial reproduces the full spatial
//! correlation structure, including the cross-transmitter correlation
//! that the analytic product model deliberately ignores.

use crate::geometry::{blocks, Point2D};
use crate::placement::{sample_blockages, NetworkRealization, RngStream};
use crate::sinr::{combine, station_sinr, GainMatrix};
use crate::snr::ChannelParams;
use crate::{CombiningScheme, DiversityOrder, Error, Result};

/// Empirical counterpart of the analytic pair statistics.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub trials: u64,
    /// Empirical joint pmf of (B1, B2), indexed [b1][b2].
    pub joint_pmf: [[f64; 2]; 2],
    /// Fraction of trials with at least one LOS path.
    pub p_los: f64,
    /// Binomial standard error of each pmf entry.
    pub std_errors: [[f64; 2]; 2],
}

/// Radius of a disk about the origin that contains every blockage able to
/// intersect any of the given path rectangles.
fn covering_radius(paths: &[(Point2D, Point2D)], width: f64) -> f64 {
    let mut radius: f64 = width;
    for &(tx, rx) in paths {
        radius = radius.max(tx.norm() + tx.distance_to(&rx) + width);
    }
    radius
}

/// Per-trial blocking indicators for a list of paths under one shared
/// blockage draw per trial; bit k of a trial word is set iff path k is
/// blocked.
pub fn sample_blocking_indicators(
    paths: &[(Point2D, Point2D)],
    width: f64,
    lambda_bl: f64,
    trials: u64,
    rng: &mut RngStream,
) -> Result<Vec<u64>> {
    if paths.is_empty() {
        return Err(Error::EmptyInput("paths"));
    }
    if paths.len() > 64 {
        return Err(Error::InvalidConfig(format!(
            "{} paths exceed the 64-bit indicator word",
            paths.len()
        )));
    }
    let radius = covering_radius(paths, width);
    let mut words = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let centers = sample_blockages(lambda_bl, radius, rng)?;
        let mut word = 0u64;
        for (k, &(tx, rx)) in paths.iter().enumerate() {
            if centers.iter().any(|&c| blocks(c, tx, rx, width).unwrap_or(false)) {
                word |= 1 << k;
            }
        }
        words.push(word);
    }
    Ok(words)
}

/// Independent-blocking counterpart: each path sees its own blockage
/// process. A path in isolation is blocked iff its own rectangle is
/// non-empty, which reduces to a Bernoulli draw with the geometric
/// marginal 1 - exp(-lambda_bl * width * length).
pub fn sample_independent_indicators(
    paths: &[(Point2D, Point2D)],
    width: f64,
    lambda_bl: f64,
    trials: u64,
    rng: &mut RngStream,
) -> Result<Vec<u64>> {
    if paths.is_empty() {
        return Err(Error::EmptyInput("paths"));
    }
    if paths.len() > 64 {
        return Err(Error::InvalidConfig(format!(
            "{} paths exceed the 64-bit indicator word",
            paths.len()
        )));
    }
    let marginals: Vec<f64> = paths
        .iter()
        .map(|&(tx, rx)| crate::blocking::nlos_prob(lambda_bl, width * tx.distance_to(&rx)))
        .collect::<Result<_>>()?;
    let mut words = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let mut word = 0u64;
        for (k, &p) in marginals.iter().enumerate() {
            if rng.bernoulli(p) {
                word |= 1 << k;
            }
        }
        words.push(word);
    }
    Ok(words)
}

/// Empirical joint pmf of the two blocking indicators for the paths
/// tx -> x1 and tx -> x2.
pub fn empirical_pair_pmf(
    tx: Point2D,
    x1: Point2D,
    x2: Point2D,
    width: f64,
    lambda_bl: f64,
    trials: u64,
    rng: &mut RngStream,
) -> Result<OracleReport> {
    if trials == 0 {
        return Err(Error::EmptyInput("trials"));
    }
    let paths = [(tx, x1), (tx, x2)];
    let words = sample_blocking_indicators(&paths, width, lambda_bl, trials, rng)?;
    let mut counts = [[0u64; 2]; 2];
    for word in words {
        counts[(word & 1) as usize][((word >> 1) & 1) as usize] += 1;
    }
    let t = trials as f64;
    let mut joint_pmf = [[0.0; 2]; 2];
    let mut std_errors = [[0.0; 2]; 2];
    for b1 in 0..2 {
        for b2 in 0..2 {
            let p = counts[b1][b2] as f64 / t;
            joint_pmf[b1][b2] = p;
            std_errors[b1][b2] = (p * (1.0 - p) / t).sqrt();
        }
    }
    Ok(OracleReport {
        trials,
        joint_pmf,
        p_los: 1.0 - joint_pmf[1][1],
        std_errors,
    })
}

/// Paths from every transmitter to every serving station, ordered so that
/// bit (j * n + i) of an indicator word is the path Y_j -> X_i.
pub(crate) fn realization_paths(
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
) -> Result<Vec<(Point2D, Point2D)>> {
    if realization.base_stations.len() < n.count() {
        return Err(Error::InsufficientBaseStations {
            need: n.count(),
            have: realization.base_stations.len(),
        });
    }
    if realization.interferers.len() < m {
        return Err(Error::InvalidConfig(format!(
            "realization holds {} interferers, need {m}",
            realization.interferers.len()
        )));
    }
    let mut paths = Vec::with_capacity(n.count() * (m + 1));
    for j in 0..=m {
        let tx = if j == 0 {
            realization.source
        } else {
            realization.interferers[j - 1]
        };
        for i in 0..n.count() {
            paths.push((tx, realization.base_stations[i]));
        }
    }
    Ok(paths)
}

/// Combined SINR per indicator word, shared by correlated and independent
/// draws.
pub(crate) fn sinr_from_words(
    words: &[u64],
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
    scheme: CombiningScheme,
    params: &ChannelParams,
) -> Result<Vec<f64>> {
    let gains = GainMatrix::from_realization(realization, n, m, params.alpha)?;
    let inv_snr0 = params.inv_snr0();
    Ok(words
        .iter()
        .map(|&bits| match n {
            DiversityOrder::One => station_sinr(bits, &gains, inv_snr0, 0),
            DiversityOrder::Two => combine(
                station_sinr(bits, &gains, inv_snr0, 0),
                station_sinr(bits, &gains, inv_snr0, 1),
                scheme,
            ),
        })
        .collect())
}

/// One combined SINR sample per trial; a single blockage draw per trial
/// determines every indicator simultaneously from the shared geometry.
pub fn empirical_sinr_samples(
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
    scheme: CombiningScheme,
    params: &ChannelParams,
    trials: u64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::EmptyInput("trials"));
    }
    let paths = realization_paths(realization, n, m)?;
    let words = sample_blocking_indicators(&paths, params.width, params.lambda_bl, trials, rng)?;
    sinr_from_words(&words, realization, n, m, scheme, params)
}
