//! Roots of unity, correlation weights and the complex order parameter.
//!
//! Every angle here is a rational multiple of pi built from integers, reduced
//! before any trigonometric call, so weights for large photon numbers are as
//! accurate as those for small ones.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{BellError, Result};
use crate::types::{ComplexAmplitude, CorrelationOrder};

/// `omega^e` with `omega = exp(2 pi i / d)`.
///
/// The exponent is reduced modulo `d` first, so the result is periodic in
/// `e` with period `d` exactly, not just up to rounding.
pub fn omega_power(e: i64, d: u32) -> Complex64 {
    let d = i64::from(d);
    let m = e.rem_euclid(d);
    // Pick the quadrant-exact values where they exist.
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * m == d {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * m == d {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * m == 3 * d {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * PI * (m as f64) / (d as f64);
    Complex64::from_polar(1.0, theta)
}

/// `omega^(p/q)` for a rational exponent, i.e. `exp(2 pi i p / (q d))`.
///
/// Used by the SLK coefficients, which carry quarter powers of `omega`.
pub fn omega_rational_power(p: i64, q: u32, d: u32) -> Complex64 {
    omega_power(p, q * d)
}

/// `cot(pi p / q)`, reducing `p` into `(0, q)` before dividing cos by sin.
///
/// Returns `None` at a pole (`p` a multiple of `q`).
pub fn cot_pi_rational(p: i64, q: u32) -> Option<f64> {
    let q = i64::from(q);
    let m = p.rem_euclid(q);
    if m == 0 {
        return None;
    }
    if 2 * m == q {
        return Some(0.0);
    }
    let theta = PI * (m as f64) / (q as f64);
    Some(theta.cos() / theta.sin())
}

/// `cot(n pi / d)` for a valid correlation order; never at a pole.
pub(crate) fn order_cot(order: CorrelationOrder) -> f64 {
    cot_pi_rational(i64::from(order.n()), order.d())
        .expect("orders 1..d-1 never hit a cotangent pole")
}

/// Correlation weight `omega^{n(k-l)}` assigned to the outcome pair `(k, l)`.
pub fn correlation_weight(k: u64, l: u64, order: CorrelationOrder) -> ComplexAmplitude {
    let d = u64::from(order.d());
    let diff = (k % d) as i64 - (l % d) as i64;
    omega_power(i64::from(order.n()) * diff, order.d())
}

/// Complex order parameter `s_n = -i cot(n pi / d)`.
pub fn order_parameter(order: CorrelationOrder) -> ComplexAmplitude {
    Complex64::new(0.0, -order_cot(order))
}

/// `(s + 1) / (s - 1)`: the per-photon weight carried by an
/// `s`-parameterized quasiprobability. Equals `omega^n` at `s = s_n`.
pub fn quasiprob_ratio(s: ComplexAmplitude) -> Result<ComplexAmplitude> {
    let den = s - 1.0;
    if den.norm() < 1e-14 {
        return Err(BellError::DegenerateOrderParameter(den.norm()));
    }
    Ok((s + 1.0) / den)
}
