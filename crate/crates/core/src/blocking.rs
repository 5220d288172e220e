//! Analytic blocking statistics for a transmitter and a pair of base
//! stations.
//!
//! Each path owns a blockage rectangle of area a_i = W * R_i; a PPP of
//! blockage centers with density lambda_bl then blocks path i with
//! probability p_i = 1 - exp(-lambda_bl * a_i). The rectangles of the two
//! paths overlap in an area v, so the two blocking indicators are
//! correlated: a blockage landing in v cuts both paths at once. The joint
//! pmf of the indicator pair is fully determined by the marginals and the
//! correlation coefficient rho.

use crate::geometry::{convex_intersection_area, path_rectangle, Point2D};
use crate::{DiversityOrder, Error, Result};

/// Coherence slack for joint pmf entries before clamping to [0, 1].
const PMF_TOL: f64 = 1e-12;

/// Joint pmf of the two blocking indicators (B1, B2); index 1 = blocked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPmf {
    /// P[B1 = 0, B2 = 0] — both paths LOS.
    pub p00: f64,
    /// P[B1 = 0, B2 = 1].
    pub p01: f64,
    /// P[B1 = 1, B2 = 0].
    pub p10: f64,
    /// P[B1 = 1, B2 = 1] — both paths blocked.
    pub p11: f64,
}

impl JointPmf {
    pub fn get(&self, b1: bool, b2: bool) -> f64 {
        match (b1, b2) {
            (false, false) => self.p00,
            (false, true) => self.p01,
            (true, false) => self.p10,
            (true, true) => self.p11,
        }
    }
}

/// Analytic blocking statistics for one transmitter against two base
/// stations.
#[derive(Debug, Clone)]
pub struct PairBlockingStats {
    /// Blockage-region areas of the two paths.
    pub a1: f64,
    pub a2: f64,
    /// Overlap area common to both regions.
    pub v: f64,
    /// NLOS probabilities p_i = 1 - exp(-lambda_bl * a_i).
    pub p1: f64,
    pub p2: f64,
    /// LOS probabilities q_i = 1 - p_i.
    pub q1: f64,
    pub q2: f64,
    /// Correlation coefficient of the two blocking indicators.
    pub rho: f64,
    /// Joint pmf of (B1, B2).
    pub joint: JointPmf,
}

/// Probability that at least one blockage center lands in a region of the
/// given area: 1 - exp(-lambda_bl * area).
pub fn nlos_prob(lambda_bl: f64, area: f64) -> Result<f64> {
    if lambda_bl < 0.0 {
        return Err(Error::InvalidDensity(lambda_bl));
    }
    if area < 0.0 {
        return Err(Error::NegativeArea(area));
    }
    Ok(-(-lambda_bl * area).exp_m1())
}

/// Joint pmf from marginals and correlation, with h = sqrt(p1 p2 q1 q2):
///
/// ```text
/// (0,0): q1 q2 + rho h     (0,1): q1 p2 - rho h
/// (1,0): p1 q2 - rho h     (1,1): p1 p2 + rho h
/// ```
///
/// Entries falling outside [0, 1] by more than 1e-12 signal an incoherent
/// (p1, p2, rho) triple; smaller excursions are clamped.
pub fn joint_pmf(p1: f64, p2: f64, q1: f64, q2: f64, rho: f64) -> Result<JointPmf> {
    let h = (p1 * p2 * q1 * q2).sqrt();
    let rho_h = rho * h;
    let entries = [
        q1 * q2 + rho_h,
        q1 * p2 - rho_h,
        p1 * q2 - rho_h,
        p1 * p2 + rho_h,
    ];
    for &e in &entries {
        if !(-PMF_TOL..=1.0 + PMF_TOL).contains(&e) {
            return Err(Error::IncoherentCorrelation(e));
        }
    }
    let [p00, p01, p10, p11] = entries.map(|e| e.clamp(0.0, 1.0));
    Ok(JointPmf { p00, p01, p10, p11 })
}

impl PairBlockingStats {
    /// Statistics from precomputed areas a1, a2 and overlap v.
    ///
    /// The (0,0) entry exp(-lambda_bl (a1 + a2 - v)) is assembled as
    /// q1 q2 (1 + expm1(lambda_bl v)), which is the same quantity but
    /// keeps rho exactly nonnegative under cancellation at small v.
    pub fn from_areas(a1: f64, a2: f64, v: f64, lambda_bl: f64) -> Result<Self> {
        let p1 = nlos_prob(lambda_bl, a1)?;
        let p2 = nlos_prob(lambda_bl, a2)?;
        let q1 = 1.0 - p1;
        let q2 = 1.0 - p2;
        if v < 0.0 {
            return Err(Error::NegativeArea(v));
        }
        // rho h = p(0,0) - q1 q2 = q1 q2 (e^{lambda v} - 1) >= 0.
        let rho_h = q1 * q2 * (lambda_bl * v).exp_m1();
        let h = (p1 * p2 * q1 * q2).sqrt();
        let rho = if h == 0.0 { 0.0 } else { rho_h / h };
        let joint = joint_pmf(p1, p2, q1, q2, rho)?;
        Ok(PairBlockingStats {
            a1,
            a2,
            v,
            p1,
            p2,
            q1,
            q2,
            rho,
            joint,
        })
    }
}

/// Full pair statistics for the paths tx -> x1 and tx -> x2.
pub fn pair_stats(
    tx: Point2D,
    x1: Point2D,
    x2: Point2D,
    width: f64,
    lambda_bl: f64,
) -> Result<PairBlockingStats> {
    let rect1 = path_rectangle(tx, x1, width)?;
    let rect2 = path_rectangle(tx, x2, width)?;
    let a1 = width * tx.distance_to(&x1);
    let a2 = width * tx.distance_to(&x2);
    let v = convex_intersection_area(&rect1, &rect2);
    PairBlockingStats::from_areas(a1, a2, v.min(a1).min(a2), lambda_bl)
}

/// LOS probability of the realization the stats were built from.
///
/// N = 1 uses the first marginal alone; N = 2 is the probability that at
/// least one path is LOS, with or without the correlation term.
pub fn los_probability(stats: &PairBlockingStats, n: DiversityOrder, correlated: bool) -> f64 {
    match n {
        DiversityOrder::One => stats.q1,
        DiversityOrder::Two => {
            if correlated {
                1.0 - stats.joint.p11
            } else {
                1.0 - stats.p1 * stats.p2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    #[test]
    fn nlos_prob_examples() {
        assert_eq!(nlos_prob(0.0, 5.0).unwrap(), 0.0);
        assert_eq!(nlos_prob(0.6, 0.0).unwrap(), 0.0);
        let p = nlos_prob(0.6, 0.8).unwrap();
        assert!((p - 0.38121660819385916).abs() < 1e-15, "p = {p}");
        assert!(nlos_prob(-0.1, 1.0).is_err());
        assert!(nlos_prob(0.1, -1.0).is_err());
    }

    #[test]
    fn joint_pmf_independence_and_perfect_correlation() {
        let ind = joint_pmf(0.3, 0.4, 0.7, 0.6, 0.0).unwrap();
        assert!((ind.p00 - 0.42).abs() < 1e-15);
        assert!((ind.p01 - 0.28).abs() < 1e-15);
        assert!((ind.p10 - 0.18).abs() < 1e-15);
        assert!((ind.p11 - 0.12).abs() < 1e-15);

        let perfect = joint_pmf(0.5, 0.5, 0.5, 0.5, 1.0).unwrap();
        assert!((perfect.p00 - 0.5).abs() < 1e-15);
        assert!(perfect.p01.abs() < 1e-15);
        assert!(perfect.p10.abs() < 1e-15);
        assert!((perfect.p11 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn joint_pmf_partial_correlation_example() {
        let pmf = joint_pmf(0.3, 0.4, 0.7, 0.6, 0.5).unwrap();
        assert!((pmf.p11 - 0.23224972160321822).abs() < 1e-12, "p11 = {}", pmf.p11);
    }

    #[test]
    fn joint_pmf_rejects_incoherent_correlation() {
        // rho = 1 forces the (1,0) entry negative for these marginals.
        assert!(matches!(
            joint_pmf(0.2, 0.8, 0.8, 0.2, 1.0),
            Err(Error::IncoherentCorrelation(_))
        ));
    }

    #[test]
    fn pair_stats_zero_density() {
        let stats = pair_stats(
            Point2D::ORIGIN,
            Point2D::new(1.0, 0.0),
            Point2D::new(0.0, 2.0),
            0.8,
            0.0,
        )
        .unwrap();
        assert_eq!(stats.p1, 0.0);
        assert_eq!(stats.p2, 0.0);
        assert_eq!(stats.joint.p00, 1.0);
        assert_eq!(stats.rho, 0.0);
    }

    #[test]
    fn pair_stats_opposite_stations_are_independent() {
        let stats = pair_stats(
            Point2D::ORIGIN,
            Point2D::new(1.5, 0.0),
            Point2D::new(-2.0, 0.0),
            0.6,
            0.7,
        )
        .unwrap();
        assert_eq!(stats.v, 0.0);
        assert_eq!(stats.rho, 0.0);
        assert!((stats.joint.p00 - stats.q1 * stats.q2).abs() < 1e-15);
    }

    #[test]
    fn pair_stats_identical_stations_fully_correlated() {
        let x = Point2D::new(1.2, 0.7);
        let stats = pair_stats(Point2D::ORIGIN, x, x, 0.8, 0.6).unwrap();
        assert!((stats.v - stats.a1).abs() < 1e-12);
        assert!((stats.rho - 1.0).abs() < 1e-9, "rho = {}", stats.rho);
        assert!((stats.joint.p00 - stats.q1).abs() < 1e-12);
    }

    #[test]
    fn los_probability_examples() {
        let zero = PairBlockingStats::from_areas(0.8, 1.2, 0.3, 0.0).unwrap();
        assert_eq!(los_probability(&zero, DiversityOrder::One, true), 1.0);
        assert_eq!(los_probability(&zero, DiversityOrder::Two, true), 1.0);
        assert_eq!(los_probability(&zero, DiversityOrder::Two, false), 1.0);

        let uncorr = PairBlockingStats::from_areas(0.8, 1.2, 0.0, 0.6).unwrap();
        let expect = uncorr.q1 + uncorr.q2 - uncorr.q1 * uncorr.q2;
        assert!((los_probability(&uncorr, DiversityOrder::Two, true) - expect).abs() < 1e-14);

        let stats = PairBlockingStats::from_areas(0.8, 1.2, 0.3, 0.6).unwrap();
        let plos = los_probability(&stats, DiversityOrder::Two, true);
        assert!((plos - 0.7449407075930341).abs() < 1e-12, "plos = {plos}");
    }

    fn random_pair_geometry(
        u: (f64, f64, f64, f64, f64),
    ) -> (Point2D, Point2D, Point2D, f64, f64) {
        let (r1, th1, r2, th2, w) = u;
        (
            Point2D::ORIGIN,
            Point2D::from_polar(r1, th1),
            Point2D::from_polar(r2, th2),
            w,
            0.6,
        )
    }

    proptest! {
        /// 1 - p1 p2 - rho h equals the closed form
        /// e^{-l a1} + e^{-l a2} - e^{-l (a1 + a2 - v)}.
        #[test]
        fn closed_form_identity(
            r1 in 0.05f64..4.0, th1 in 0.0f64..TAU,
            r2 in 0.05f64..4.0, th2 in 0.0f64..TAU,
            w in 0.1f64..1.5, lambda in 0.0f64..2.0,
        ) {
            let (tx, x1, x2, _, _) = random_pair_geometry((r1, th1, r2, th2, w));
            let stats = pair_stats(tx, x1, x2, w, lambda).unwrap();
            let h = (stats.p1 * stats.p2 * stats.q1 * stats.q2).sqrt();
            let eq1 = 1.0 - stats.p1 * stats.p2 - stats.rho * h;
            let eq4 = (-lambda * stats.a1).exp() + (-lambda * stats.a2).exp()
                - (-lambda * (stats.a1 + stats.a2 - stats.v)).exp();
            prop_assert!((eq1 - eq4).abs() <= 1e-12, "eq1 = {eq1}, eq4 = {eq4}");
        }

        /// Origin-anchored rectangles always overlap nonnegatively, so
        /// correlation can only reduce the LOS probability, and the pmf
        /// marginals must recover p_i / q_i.
        #[test]
        fn correlation_nonnegative_and_marginals_consistent(
            r1 in 0.05f64..4.0, th1 in 0.0f64..TAU,
            r2 in 0.05f64..4.0, th2 in 0.0f64..TAU,
            w in 0.1f64..1.5, lambda in 0.01f64..2.0,
        ) {
            let (tx, x1, x2, _, _) = random_pair_geometry((r1, th1, r2, th2, w));
            let stats = pair_stats(tx, x1, x2, w, lambda).unwrap();
            prop_assert!(stats.rho >= 0.0);

            let corr = los_probability(&stats, DiversityOrder::Two, true);
            let ind = los_probability(&stats, DiversityOrder::Two, false);
            let single = los_probability(&stats, DiversityOrder::One, true);
            prop_assert!(corr <= ind);
            prop_assert!(corr >= single);

            prop_assert!((stats.joint.p00 + stats.joint.p01 - stats.q1).abs() <= 1e-12);
            prop_assert!((stats.joint.p00 + stats.joint.p10 - stats.q2).abs() <= 1e-12);
            let total = stats.joint.p00 + stats.joint.p01 + stats.joint.p10 + stats.joint.p11;
            prop_assert!((total - 1.0).abs() <= 1e-12);
        }
    }
}
