//! Closed forms for the two-mode squeezed vacuum: characteristic function,
//! s-parameterized two-mode quasiprobability, and the n-th order correlation
//! for ideal and lossy photon counting.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::phase::order_cot;
use crate::error::{BellError, Result};
use crate::types::{check_finite, ComplexAmplitude, CorrelationOrder, DetectorModel, TmssParams};

/// `alpha beta + alpha* beta*`, which is real.
fn cross_term(alpha: Complex64, beta: Complex64) -> f64 {
    2.0 * (alpha * beta).re
}

/// Two-mode characteristic function with a (possibly complex) order parameter.
pub fn characteristic_tmss(
    xi: ComplexAmplitude,
    eta: ComplexAmplitude,
    r: TmssParams,
    s: ComplexAmplitude,
) -> Result<ComplexAmplitude> {
    check_finite(xi, "xi")?;
    check_finite(eta, "eta")?;
    check_finite(s, "order parameter")?;
    let r = r.r();
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    let quad = xi.norm_sqr() * (ch - s) + eta.norm_sqr() * (ch - s.conj()) + cross_term(xi, eta) * sh;
    Ok((-0.5 * quad).exp())
}

/// Two-mode `s`-parameterized quasiprobability `W(alpha, beta; s)`.
pub fn quasiprob_tmss(
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
    s: ComplexAmplitude,
) -> Result<ComplexAmplitude> {
    check_finite(alpha, "alpha")?;
    check_finite(beta, "beta")?;
    check_finite(s, "order parameter")?;
    let one_minus_s2 = 1.0 - s * s;
    if one_minus_s2.norm() < 1e-14 {
        return Err(BellError::DegenerateOrderParameter(one_minus_s2.norm()));
    }
    let r = r.r();
    let a = (2.0 * r).cosh() - s;
    let quad = alpha.norm_sqr() * a.conj() + beta.norm_sqr() * a + cross_term(alpha, beta) * (2.0 * r).sinh();
    let prefactor = 4.0 / (PI * PI * one_minus_s2);
    Ok(prefactor * (-2.0 * quad / one_minus_s2).exp())
}

/// Ideal-detector correlation `C^(n)(alpha, beta)` of the TMSS.
pub fn corr_tmss(
    order: CorrelationOrder,
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
) -> Result<ComplexAmplitude> {
    check_finite(alpha, "alpha")?;
    check_finite(beta, "beta")?;
    Ok(corr_tmss_unchecked(order, alpha, beta, r.r()))
}

pub(crate) fn corr_tmss_unchecked(order: CorrelationOrder, alpha: Complex64, beta: Complex64, r: f64) -> Complex64 {
    let cot = order_cot(order);
    // 1 - s_n^2 = 1 + cot^2 = 1 / sin^2(n pi / d)
    let one_minus_s2 = 1.0 + cot * cot;
    let a = Complex64::new((2.0 * r).cosh(), cot);
    let quad = alpha.norm_sqr() * a.conj() + beta.norm_sqr() * a + cross_term(alpha, beta) * (2.0 * r).sinh();
    (-2.0 * quad / one_minus_s2).exp()
}

/// Correlation `C^(n)(alpha, beta; eta_A, eta_B)` with Bernoulli-loss detectors.
///
/// `R(eta) = cosh 2r - 1 + (1 + i cot)/eta`, `S = (1 + cot^2)/(eta_A eta_B)`,
/// `T = R(eta_A) R*(eta_B) - sinh^2 2r`. `T` is expanded around
/// `u = cosh 2r - 1` so the `cosh^2 - sinh^2` cancellation is exact.
pub fn corr_tmss_lossy(
    order: CorrelationOrder,
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
    det: DetectorModel,
) -> Result<ComplexAmplitude> {
    check_finite(alpha, "alpha")?;
    check_finite(beta, "beta")?;
    corr_tmss_lossy_unchecked(order, alpha, beta, r.r(), det)
}

pub(crate) fn corr_tmss_lossy_unchecked(
    order: CorrelationOrder,
    alpha: Complex64,
    beta: Complex64,
    r: f64,
    det: DetectorModel,
) -> Result<Complex64> {
    let cot = order_cot(order);
    let u = 2.0 * r.sinh().powi(2);
    let za = Complex64::new(1.0, cot) / det.eta_a();
    let zb = Complex64::new(1.0, cot) / det.eta_b();
    let r_a = u + za;
    let r_b_conj = (u + zb).conj();
    // R_a R_b* - sinh^2 2r with sinh^2 2r = u (u + 2)
    let t = u * (za + zb.conj() - 2.0) + za * zb.conj();
    if t.norm() < 1e-14 {
        return Err(BellError::SingularDenominator(t.norm()));
    }
    let s = (1.0 + cot * cot) / (det.eta_a() * det.eta_b());
    let quad = alpha.norm_sqr() * r_b_conj + beta.norm_sqr() * r_a + cross_term(alpha, beta) * (2.0 * r).sinh();
    Ok(s / t * (-2.0 * quad / t).exp())
}

/// Picks the ideal closed form when both detectors are perfect.
pub(crate) fn corr_for_detector(
    order: CorrelationOrder,
    alpha: Complex64,
    beta: Complex64,
    r: f64,
    det: DetectorModel,
) -> Result<Complex64> {
    if det.is_ideal() {
        Ok(corr_tmss_unchecked(order, alpha, beta, r))
    } else {
        corr_tmss_lossy_unchecked(order, alpha, beta, r, det)
    }
}
