//! Exact per-realization SINR distributions with interference.
//!
//! With M interferers, the blocking pattern is a matrix of indicators
//! B_{i,j} over stations i and transmitters j (j = 0 is the source).
//! Columns are independent across transmitters while the two entries
//! within a column share the pairwise joint pmf, so the pattern
//! probability is the product of per-column pmf values. Enumerating all
//! 2^(N(M+1)) patterns and mapping each through the SINR formula yields
//! the exact discrete distribution; patterns landing on the same SINR
//! value pool their probability.

use crate::blocking::{self, PairBlockingStats};
use crate::placement::NetworkRealization;
use crate::snr::{ChannelParams, DiscreteDistribution};
use crate::{CombiningScheme, DiversityOrder, Error, Result};

/// Exact enumeration refuses beyond this many blocking bits.
pub const MAX_STATE_BITS: usize = 24;

/// One blocking pattern: bit (j * n + i) set means the path from
/// transmitter j to station i is blocked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockingState {
    pub bits: u32,
    pub probability: f64,
}

impl BlockingState {
    #[inline]
    pub fn blocked(&self, station: usize, tx: usize, n_stations: usize) -> bool {
        (self.bits >> (tx * n_stations + station)) & 1 == 1
    }
}

/// Path gains Omega_{i,j} = R_{i,j}^(-alpha) for stations i and
/// transmitters j; column 0 is the source.
#[derive(Debug, Clone)]
pub struct GainMatrix {
    stations: usize,
    transmitters: usize,
    gains: Vec<f64>,
}

impl GainMatrix {
    pub fn from_realization(
        realization: &NetworkRealization,
        n: DiversityOrder,
        m: usize,
        alpha: f64,
    ) -> Result<Self> {
        let stations = n.count();
        if realization.base_stations.len() < stations {
            return Err(Error::InsufficientBaseStations {
                need: stations,
                have: realization.base_stations.len(),
            });
        }
        if realization.interferers.len() < m {
            return Err(Error::InvalidConfig(format!(
                "realization holds {} interferers, need {m}",
                realization.interferers.len()
            )));
        }
        let mut gains = Vec::with_capacity(stations * (m + 1));
        for i in 0..stations {
            let station = realization.base_stations[i];
            gains.push(station.norm().powf(-alpha));
            for j in 0..m {
                gains.push(realization.interferers[j].distance_to(&station).powf(-alpha));
            }
        }
        Ok(GainMatrix {
            stations,
            transmitters: m + 1,
            gains,
        })
    }

    #[inline]
    pub fn omega(&self, station: usize, tx: usize) -> f64 {
        self.gains[station * self.transmitters + tx]
    }

    pub fn stations(&self) -> usize {
        self.stations
    }

    pub fn transmitters(&self) -> usize {
        self.transmitters
    }
}

/// Per-column pmf table indexed by the column's bit pattern.
fn column_tables(
    stats_per_tx: &[PairBlockingStats],
    n: DiversityOrder,
) -> Result<Vec<Vec<f64>>> {
    let mut tables = Vec::with_capacity(stats_per_tx.len());
    for stats in stats_per_tx {
        match n {
            DiversityOrder::One => tables.push(vec![stats.q1, stats.p1]),
            DiversityOrder::Two => {
                let j = &stats.joint;
                // Pattern index b1 | b2 << 1.
                tables.push(vec![j.p00, j.p10, j.p01, j.p11]);
            }
        }
    }
    Ok(tables)
}

/// All 2^(N(M+1)) blocking patterns with their probabilities.
///
/// One `PairBlockingStats` per transmitter j = 0..M; for N = 1 only the
/// first-row marginal of each column is used.
pub fn blocking_state_space(
    stats_per_tx: &[PairBlockingStats],
    n: DiversityOrder,
) -> Result<Vec<BlockingState>> {
    if stats_per_tx.is_empty() {
        return Err(Error::EmptyInput("stats_per_tx"));
    }
    let cols = stats_per_tx.len();
    let bits = n.count() * cols;
    if bits > MAX_STATE_BITS {
        return Err(Error::StateSpaceTooLarge {
            bits,
            max: MAX_STATE_BITS,
        });
    }
    let tables = column_tables(stats_per_tx, n)?;
    let col_mask = (1u32 << n.count()) - 1;
    let mut states = Vec::with_capacity(1 << bits);
    for mask in 0u32..(1u32 << bits) {
        let mut probability = 1.0;
        for (j, table) in tables.iter().enumerate() {
            probability *= table[((mask >> (j * n.count())) & col_mask) as usize];
        }
        states.push(BlockingState {
            bits: mask,
            probability,
        });
    }
    Ok(states)
}

#[inline]
pub(crate) fn station_sinr(bits: u64, gains: &GainMatrix, inv_snr0: f64, station: usize) -> f64 {
    let n = gains.stations();
    if (bits >> station) & 1 == 1 {
        return 0.0;
    }
    let mut denom = inv_snr0;
    for j in 1..gains.transmitters() {
        if (bits >> (j * n + station)) & 1 == 0 {
            denom += gains.omega(station, j);
        }
    }
    gains.omega(station, 0) / denom
}

/// SINR at one station for a given blocking pattern:
/// (1 - B_{i,0}) Omega_{i,0} / (SNR_0^(-1) + sum_j (1 - B_{i,j}) Omega_{i,j}).
pub fn sinr_for_state(
    state: &BlockingState,
    gains: &GainMatrix,
    snr0_db: f64,
    station: usize,
) -> f64 {
    station_sinr(state.bits as u64, gains, 10f64.powf(-snr0_db / 10.0), station)
}

/// Merge the per-station SINRs of a two-station realization.
pub fn combine(sinr1: f64, sinr2: f64, scheme: CombiningScheme) -> f64 {
    match scheme {
        CombiningScheme::Selection => sinr1.max(sinr2),
        CombiningScheme::Diversity => sinr1 + sinr2,
    }
}

/// Pair blocking statistics of every transmitter against the serving
/// stations. For N = 1 the second station is a mirror of the first, so
/// the first-row marginal is exact and nothing else is consumed.
pub(crate) fn stats_per_transmitter(
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
    params: &ChannelParams,
    correlated: bool,
) -> Result<Vec<PairBlockingStats>> {
    let need = n.count();
    if realization.base_stations.len() < need {
        return Err(Error::InsufficientBaseStations {
            need,
            have: realization.base_stations.len(),
        });
    }
    if realization.interferers.len() < m {
        return Err(Error::InvalidConfig(format!(
            "realization holds {} interferers, need {m}",
            realization.interferers.len()
        )));
    }
    let mut stats = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let tx = if j == 0 {
            realization.source
        } else {
            realization.interferers[j - 1]
        };
        let s = match n {
            DiversityOrder::One => {
                let a = params.width * tx.distance_to(&realization.base_stations[0]);
                PairBlockingStats::from_areas(a, a, a, params.lambda_bl)?
            }
            DiversityOrder::Two => blocking::pair_stats(
                tx,
                realization.base_stations[0],
                realization.base_stations[1],
                params.width,
                params.lambda_bl,
            )?,
        };
        if correlated {
            stats.push(s);
        } else {
            let joint = blocking::joint_pmf(s.p1, s.p2, s.q1, s.q2, 0.0)?;
            stats.push(PairBlockingStats {
                rho: 0.0,
                joint,
                ..s
            });
        }
    }
    Ok(stats)
}

/// Exact SINR distribution of one realization with M interferers.
///
/// Patterns that map to the same SINR value (e.g. every pattern with the
/// source blocked at all serving stations) pool their probability into a
/// single atom.
pub fn sinr_distribution(
    realization: &NetworkRealization,
    n: DiversityOrder,
    m: usize,
    scheme: CombiningScheme,
    params: &ChannelParams,
    correlated: bool,
) -> Result<DiscreteDistribution> {
    let stats = stats_per_transmitter(realization, n, m, params, correlated)?;
    let states = blocking_state_space(&stats, n)?;
    let gains = GainMatrix::from_realization(realization, n, m, params.alpha)?;
    let inv_snr0 = params.inv_snr0();
    let mut atoms = Vec::with_capacity(states.len());
    for state in &states {
        let value = match n {
            DiversityOrder::One => station_sinr(state.bits, &gains, inv_snr0, 0),
            DiversityOrder::Two => combine(
                station_sinr(state.bits, &gains, inv_snr0, 0),
                station_sinr(state.bits, &gains, inv_snr0, 1),
                scheme,
            ),
        };
        atoms.push((value, state.probability));
    }
    DiscreteDistribution::from_atoms(atoms)
}
