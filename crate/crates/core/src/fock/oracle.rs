//! Correlations and Bell values computed directly from photon-count tables.

use num_complex::Complex64;

use super::cutoff::FockCutoff;
use super::distribution::{apply_bernoulli_loss, joint_photon_distribution, JointPhotonDistribution};
use crate::bell::coefficients::{cglmp_epsilon, slk_coefficients_via_dft, slk_epsilon};
use crate::bell::functional::{BellFunctional, REALITY_TOLERANCE};
use crate::bell::phase::omega_power;
use crate::error::{BellError, Result};
use crate::types::{check_dimension, BellKind, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams};

/// Agreement required between the thinning and the lossy-weight paths.
pub const LOSS_PATH_TOLERANCE: f64 = 1e-12;

/// Powers `w^0 .. w^{len-1}`.
fn powers(w: Complex64, len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..len {
        out.push(acc);
        acc *= w;
    }
    out
}

/// `sum_{k,l} wa[k] wb[l] p[k][l]`.
fn weighted_sum(dist: &JointPhotonDistribution, wa: &[Complex64], wb: &[Complex64]) -> Complex64 {
    dist.rows()
        .zip(wa)
        .map(|(row, &a)| a * row.iter().zip(wb).map(|(&p, &b)| b * p).sum::<Complex64>())
        .sum()
}

/// `sum_{k,l} omega^{n(k-l)} p[k][l]`.
pub fn oracle_correlation(order: CorrelationOrder, dist: &JointPhotonDistribution) -> Complex64 {
    let side = dist.side();
    let (n, d) = (i64::from(order.n()), order.d());
    // exact roots of unity per count, never accumulated
    let wa: Vec<Complex64> = (0..side).map(|k| omega_power(n * k as i64, d)).collect();
    let wb: Vec<Complex64> = wa.iter().map(|w| w.conj()).collect();
    weighted_sum(dist, &wa, &wb)
}

/// `sum_{k,l} (1 - eta_A + eta_A omega^n)^k (1 - eta_B + eta_B omega^{-n})^l p[k][l]`
/// on the loss-free table.
pub fn oracle_correlation_lossy_weights(
    order: CorrelationOrder,
    ideal: &JointPhotonDistribution,
    det: DetectorModel,
) -> Complex64 {
    let w = omega_power(i64::from(order.n()), order.d());
    let side = ideal.side();
    let wa = powers(1.0 - det.eta_a() + det.eta_a() * w, side);
    let wb = powers(1.0 - det.eta_b() + det.eta_b() * w.conj(), side);
    weighted_sum(ideal, &wa, &wb)
}

/// Lossy correlation by thinning the table, checked against the
/// lossy-weight identity on the loss-free table.
pub fn oracle_correlation_lossy(
    order: CorrelationOrder,
    ideal: &JointPhotonDistribution,
    det: DetectorModel,
) -> Result<Complex64> {
    let thinned = oracle_correlation(order, &apply_bernoulli_loss(ideal, det));
    let weighted = oracle_correlation_lossy_weights(order, ideal, det);
    let gap = (thinned - weighted).norm();
    if gap > LOSS_PATH_TOLERANCE {
        return Err(BellError::OraclePathMismatch(gap));
    }
    Ok(thinned)
}

/// Distributions for setting pairs `(1,1), (1,2), (2,1), (2,2)`, after loss.
pub fn oracle_distributions(
    settings: &MeasurementSettings,
    r: TmssParams,
    cutoff: FockCutoff,
    det: DetectorModel,
) -> Result<[JointPhotonDistribution; 4]> {
    settings.validate()?;
    let build = |a: usize, b: usize| -> Result<JointPhotonDistribution> {
        let ideal = joint_photon_distribution(settings.alice(a), settings.bob(b), r, cutoff)?;
        Ok(apply_bernoulli_loss(&ideal, det))
    };
    Ok([build(0, 0)?, build(0, 1)?, build(1, 0)?, build(1, 1)?])
}

/// Bell value from the joint-probability form: counts binned by residue
/// modulo `d`, weighted by `epsilon_ab(k', l')`.
///
/// SLK coefficients are recentered and rescaled exactly as the
/// correlation-form table is, so both forms share the local bound 2.
pub fn oracle_bell_from_probs(kind: BellKind, d: u32, dists: &[JointPhotonDistribution; 4]) -> Result<f64> {
    check_dimension(d)?;
    let (eps, scale): (Box<dyn Fn(u32, u32, u32, u32) -> Result<f64>>, f64) = match kind {
        BellKind::Cglmp => (Box::new(move |a, b, k, l| cglmp_epsilon(a, b, k, l, d)), 1.0),
        BellKind::Slk => {
            let dft = slk_coefficients_via_dft(d)?;
            (Box::new(move |a, b, k, l| slk_epsilon(a, b, k, l, d)), 2.0 / dft.raw_bound)
        }
    };
    let mut total = 0.0;
    for (idx, dist) in dists.iter().enumerate() {
        let (a, b) = ((idx / 2) as u32 + 1, (idx % 2) as u32 + 1);
        let bins = dist.binned(d);
        let mut zeroth = 0.0;
        for m in 0..d {
            zeroth += eps(a, b, m, 0)?;
        }
        zeroth /= f64::from(d);
        let mut part = 0.0;
        let mut mass = 0.0;
        for (kp, row) in bins.iter().enumerate() {
            for (lp, &p) in row.iter().enumerate() {
                part += eps(a, b, kp as u32, lp as u32)? * p;
                mass += p;
            }
        }
        // drop the zeroth-order (constant) component
        total += part - zeroth * mass;
    }
    Ok(scale * total)
}

/// Bell value in correlation form with oracle correlations.
pub fn oracle_bell_from_correlations(kind: BellKind, d: u32, dists: &[JointPhotonDistribution; 4]) -> Result<f64> {
    let functional = BellFunctional::new(kind, d)?;
    functional.evaluate_with(|a, b, order| Ok(oracle_correlation(order, &dists[2 * a + b])))
}

/// Imaginary part of an oracle Bell sum; should vanish.
pub fn oracle_bell_imaginary(kind: BellKind, d: u32, dists: &[JointPhotonDistribution; 4]) -> Result<f64> {
    let functional = BellFunctional::new(kind, d)?;
    let mut total = Complex64::new(0.0, 0.0);
    for order in CorrelationOrder::all(d)? {
        for a in 0..2 {
            for b in 0..2 {
                total += functional.table().get(a, b, order.n()) * oracle_correlation(order, &dists[2 * a + b]);
            }
        }
    }
    debug_assert!(total.im.abs() < REALITY_TOLERANCE.max(1e-8));
    Ok(total.im)
}
