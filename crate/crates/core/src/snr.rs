//! Exact per-realization SNR distributions.
//!
//! Conditioned on the sampled geometry, the combined SNR takes finitely
//! many values: each blocking pattern of the serving base stations selects
//! a subset of the path gains Omega_i = R_i^(-alpha). The pattern
//! probabilities come straight from the pair blocking pmf, so the SNR
//! distribution is an exact discrete object, not a Monte Carlo estimate.

use crate::blocking::{self, JointPmf};
use crate::placement::NetworkRealization;
use crate::{CombiningScheme, DiversityOrder, Error, Result};

/// A finite distribution over nonnegative values.
///
/// Atoms are sorted by value, exact duplicates merged, zero-probability
/// atoms dropped, and the total mass must be 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    atoms: Vec<(f64, f64)>,
    cumulative: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn from_atoms(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        for &(value, prob) in &atoms {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidDistribution(format!("bad value {value}")));
            }
            if !prob.is_finite() || prob < 0.0 {
                return Err(Error::InvalidDistribution(format!("bad probability {prob}")));
            }
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (value, prob) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == value => last.1 += prob,
                _ => merged.push((value, prob)),
            }
        }
        merged.retain(|&(_, p)| p > 0.0);
        // Kahan-compensated prefix sums: a dense distribution can hold
        // tens of thousands of atoms and naive summation drifts past the
        // 1e-12 mass check.
        let mut cumulative = Vec::with_capacity(merged.len());
        let mut acc = 0.0;
        let mut comp = 0.0;
        for &(_, p) in &merged {
            let y = p - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cumulative.push(acc.min(1.0));
        }
        if (acc - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {acc}"
            )));
        }
        Ok(DiscreteDistribution {
            atoms: merged,
            cumulative,
        })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// P[value <= z]; atoms exactly at z are included. Evaluates to
    /// exactly 1 at or beyond the largest atom.
    pub fn cdf(&self, z: f64) -> f64 {
        if z < self.atoms[0].0 {
            return 0.0;
        }
        if z >= self.atoms[self.atoms.len() - 1].0 {
            return 1.0;
        }
        let idx = self.atoms.partition_point(|&(v, _)| v <= z);
        self.cumulative[idx - 1]
    }
}

/// Channel-level parameters shared by the SNR and SINR computations.
#[derive(Debug, Clone, Copy)]
pub struct ChannelParams {
    /// Path-loss exponent; received power decays as distance^(-alpha).
    pub alpha: f64,
    /// Reference SNR of an unblocked unit-distance link, in dB.
    pub snr0_db: f64,
    /// Blockage width.
    pub width: f64,
    /// Blockage density.
    pub lambda_bl: f64,
}

impl ChannelParams {
    pub fn snr0_linear(&self) -> f64 {
        10f64.powf(self.snr0_db / 10.0)
    }

    /// SNR_0^(-1), the noise term of the SINR denominator.
    pub fn inv_snr0(&self) -> f64 {
        10f64.powf(-self.snr0_db / 10.0)
    }
}

/// Atoms of the diversity-combining SNR given the pattern pmf and the two
/// scaled gains (largest first).
pub(crate) fn diversity_atoms(s_omega1: f64, s_omega2: f64, joint: &JointPmf) -> Vec<(f64, f64)> {
    vec![
        (0.0, joint.p11),
        (s_omega2, joint.p10),
        (s_omega1, joint.p01),
        (s_omega1 + s_omega2, joint.p00),
    ]
}

/// Atoms of the selection-combining SNR: the receiver keeps the stronger
/// unblocked path, so both-LOS collapses onto the nearer station's gain.
pub(crate) fn selection_atoms(s_omega1: f64, s_omega2: f64, joint: &JointPmf) -> Vec<(f64, f64)> {
    vec![
        (0.0, joint.p11),
        (s_omega2, joint.p10),
        (s_omega1, joint.p01 + joint.p00),
    ]
}

/// Exact SNR distribution of one realization.
///
/// Gains are Omega_i = R_i^(-alpha) scaled by SNR_0; the pattern pmf comes
/// from the pair blocking statistics of (X_1, X_2), with the correlation
/// coefficient forced to zero when `correlated` is false.
pub fn snr_distribution(
    realization: &NetworkRealization,
    n: DiversityOrder,
    scheme: CombiningScheme,
    params: &ChannelParams,
    correlated: bool,
) -> Result<DiscreteDistribution> {
    let have = realization.base_stations.len();
    if have < n.count() {
        return Err(Error::InsufficientBaseStations {
            need: n.count(),
            have,
        });
    }
    let snr0 = params.snr0_linear();
    let r1 = realization.distance(0);
    let omega1 = r1.powf(-params.alpha);
    match n {
        DiversityOrder::One => {
            let p1 = blocking::nlos_prob(params.lambda_bl, params.width * r1)?;
            DiscreteDistribution::from_atoms(vec![(0.0, p1), (snr0 * omega1, 1.0 - p1)])
        }
        DiversityOrder::Two => {
            let stats = blocking::pair_stats(
                realization.source,
                realization.base_stations[0],
                realization.base_stations[1],
                params.width,
                params.lambda_bl,
            )?;
            let joint = if correlated {
                stats.joint
            } else {
                blocking::joint_pmf(stats.p1, stats.p2, stats.q1, stats.q2, 0.0)?
            };
            let r2 = realization.distance(1);
            let omega2 = r2.powf(-params.alpha);
            let atoms = match scheme {
                CombiningScheme::Diversity => diversity_atoms(snr0 * omega1, snr0 * omega2, &joint),
                CombiningScheme::Selection => selection_atoms(snr0 * omega1, snr0 * omega2, &joint),
            };
            DiscreteDistribution::from_atoms(atoms)
        }
    }
}

/// Outage probability P[value <= beta] with beta given in dB.
pub fn outage(dist: &DiscreteDistribution, beta_db: f64) -> f64 {
    dist.cdf(10f64.powf(beta_db / 10.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2D;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn realization(r1: f64, th1: f64, r2: f64, th2: f64) -> NetworkRealization {
        NetworkRealization::new(
            vec![Point2D::from_polar(r1, th1), Point2D::from_polar(r2, th2)],
            0.3,
        )
        .unwrap()
    }

    fn params(lambda_bl: f64) -> ChannelParams {
        ChannelParams {
            alpha: 3.0,
            snr0_db: 15.0,
            width: 0.8,
            lambda_bl,
        }
    }

    #[test]
    fn unblocked_diversity_is_a_single_atom() {
        let real = realization(1.0, 0.2, 2.0, 1.0);
        let dist = snr_distribution(
            &real,
            DiversityOrder::Two,
            CombiningScheme::Diversity,
            &params(0.0),
            true,
        )
        .unwrap();
        let snr0 = 10f64.powf(1.5);
        assert_eq!(dist.atoms().len(), 1);
        let (value, prob) = dist.atoms()[0];
        assert!((value - snr0 * (1.0 + 0.125)).abs() < 1e-9);
        assert_eq!(prob, 1.0);
    }

    #[test]
    fn selection_atoms_half_half_independent() {
        // p1 = p2 = 0.5 independent: selection mass {0: 1/4, Omega2: 1/4, Omega1: 1/2}.
        let joint = crate::blocking::joint_pmf(0.5, 0.5, 0.5, 0.5, 0.0).unwrap();
        let dist = DiscreteDistribution::from_atoms(selection_atoms(4.0, 1.0, &joint)).unwrap();
        assert_eq!(dist.atoms(), &[(0.0, 0.25), (1.0, 0.25), (4.0, 0.5)]);
    }

    #[test]
    fn diversity_zero_atom_with_partial_correlation() {
        let joint = crate::blocking::joint_pmf(0.3, 0.4, 0.7, 0.6, 0.5).unwrap();
        let dist = DiscreteDistribution::from_atoms(diversity_atoms(4.0, 1.0, &joint)).unwrap();
        let p_zero = dist.atoms()[0].1;
        assert!((p_zero - 0.23224972160321822).abs() < 1e-12, "P[Z=0] = {p_zero}");
    }

    #[test]
    fn outage_examples() {
        let dist =
            DiscreteDistribution::from_atoms(vec![(0.0, 0.25), (1.0, 0.25), (4.0, 0.5)]).unwrap();
        // beta = 1 in linear units is 0 dB.
        assert_eq!(outage(&dist, 0.0), 0.5);
        let positive =
            DiscreteDistribution::from_atoms(vec![(1.0, 0.5), (4.0, 0.5)]).unwrap();
        assert_eq!(positive.cdf(0.5), 0.0);
        assert_eq!(positive.cdf(100.0), 1.0);
    }

    #[test]
    fn equidistant_stations_merge_atoms() {
        let real = NetworkRealization::new(
            vec![Point2D::new(1.5, 0.0), Point2D::new(0.0, 1.5)],
            0.3,
        )
        .unwrap();
        let dist = snr_distribution(
            &real,
            DiversityOrder::Two,
            CombiningScheme::Diversity,
            &params(0.6),
            true,
        )
        .unwrap();
        // Omega1 == Omega2 exactly, so the middle atoms coincide.
        assert_eq!(dist.atoms().len(), 3);
    }

    #[test]
    fn insufficient_base_stations() {
        let real = NetworkRealization::new(vec![Point2D::new(1.0, 0.0)], 0.3).unwrap();
        assert!(matches!(
            snr_distribution(
                &real,
                DiversityOrder::Two,
                CombiningScheme::Selection,
                &params(0.6),
                true
            ),
            Err(Error::InsufficientBaseStations { need: 2, have: 1 })
        ));
    }

    proptest! {
        /// The diversity CDF steps through the piecewise closed form:
        /// 0, p1 p2 + rho h, p1, p1 + q1 p2 - rho h, 1.
        #[test]
        fn diversity_cdf_breakpoints(
            r1 in 0.2f64..2.0, th1 in 0.0f64..TAU,
            extra in 0.01f64..2.0, th2 in 0.0f64..TAU,
            lambda in 0.0f64..1.5,
        ) {
            let r2 = r1 + extra;
            let real = realization(r1, th1, r2, th2);
            let p = params(lambda);
            let dist = snr_distribution(
                &real, DiversityOrder::Two, CombiningScheme::Diversity, &p, true,
            ).unwrap();
            let stats = crate::blocking::pair_stats(
                Point2D::ORIGIN,
                real.base_stations[0],
                real.base_stations[1],
                p.width,
                lambda,
            ).unwrap();
            let h = (stats.p1 * stats.p2 * stats.q1 * stats.q2).sqrt();
            let snr0 = p.snr0_linear();
            let omega1 = r1.powf(-p.alpha) * snr0;
            let omega2 = r2.powf(-p.alpha) * snr0;
            let eps = 1e-9 * omega2;
            prop_assert!(dist.cdf(-1.0) == 0.0);
            prop_assert!((dist.cdf(omega2 - eps) - (stats.p1 * stats.p2 + stats.rho * h)).abs() <= 1e-12);
            prop_assert!((dist.cdf(omega1 - eps) - stats.p1).abs() <= 1e-12);
            prop_assert!((dist.cdf(omega1 + omega2 - eps)
                - (stats.p1 + stats.q1 * stats.p2 - stats.rho * h)).abs() <= 1e-12);
            prop_assert!(dist.cdf(omega1 + omega2) == 1.0);
        }

        /// Selection never beats diversity: its CDF dominates pointwise,
        /// and its plateau on [Omega2, Omega1) has height p1.
        #[test]
        fn selection_cdf_dominates_diversity(
            r1 in 0.2f64..2.0, th1 in 0.0f64..TAU,
            extra in 0.01f64..2.0, th2 in 0.0f64..TAU,
            lambda in 0.0f64..1.5, corr in proptest::bool::ANY,
        ) {
            let real = realization(r1, th1, r1 + extra, th2);
            let p = params(lambda);
            let sel = snr_distribution(
                &real, DiversityOrder::Two, CombiningScheme::Selection, &p, corr,
            ).unwrap();
            let div = snr_distribution(
                &real, DiversityOrder::Two, CombiningScheme::Diversity, &p, corr,
            ).unwrap();
            let snr0 = p.snr0_linear();
            let omega1 = r1.powf(-p.alpha) * snr0;
            let omega2 = (r1 + extra).powf(-p.alpha) * snr0;
            for z in [0.0, omega2 * 0.5, omega2, (omega1 + omega2) / 2.0, omega1, omega1 * 1.5,
                      omega1 + omega2, (omega1 + omega2) * 2.0] {
                prop_assert!(sel.cdf(z) >= div.cdf(z), "z = {z}");
            }
            let stats = crate::blocking::pair_stats(
                Point2D::ORIGIN,
                real.base_stations[0],
                real.base_stations[1],
                p.width,
                lambda,
            ).unwrap();
            let mid = (omega1 + omega2) / 2.0;
            prop_assert!((sel.cdf(mid) - stats.p1).abs() <= 1e-12);
        }

        /// correlated = false reproduces the independent product pmf.
        #[test]
        fn independent_mode_is_product_pmf(
            r1 in 0.2f64..2.0, th1 in 0.0f64..TAU,
            extra in 0.01f64..2.0, th2 in 0.0f64..TAU,
            lambda in 0.05f64..1.5,
        ) {
            let real = realization(r1, th1, r1 + extra, th2);
            let p = params(lambda);
            let dist = snr_distribution(
                &real, DiversityOrder::Two, CombiningScheme::Diversity, &p, false,
            ).unwrap();
            let stats = crate::blocking::pair_stats(
                Point2D::ORIGIN,
                real.base_stations[0],
                real.base_stations[1],
                p.width,
                lambda,
            ).unwrap();
            let expect = stats.p1 * stats.p2;
            prop_assert!((dist.atoms()[0].1 - expect).abs() <= 1e-15);
        }
    }
}
