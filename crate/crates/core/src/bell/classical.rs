//! Local-realistic bounds by exhaustive enumeration of deterministic strategies.

use num_complex::Complex64;

use super::coefficients::{cglmp_epsilon_with, coefficients, CglmpReading, CoefficientTable};
use super::phase::omega_power;
use crate::error::{BellError, Result};
use crate::types::{check_dimension, BellKind};

/// Largest dimension enumerated (`d^4` strategies).
pub const MAX_ENUMERATION_DIM: u32 = 8;

fn check_enumerable(d: u32) -> Result<()> {
    check_dimension(d)?;
    if d > MAX_ENUMERATION_DIM {
        return Err(BellError::EnumerationTooLarge(d));
    }
    Ok(())
}

/// Iterates all deterministic outcome assignments `(k1, k2, l1, l2)` in `Z_d^4`.
fn strategies(d: u32) -> impl Iterator<Item = [u32; 4]> {
    (0..d.pow(4)).map(move |mut i| {
        let mut s = [0u32; 4];
        for v in s.iter_mut() {
            *v = i % d;
            i /= d;
        }
        s
    })
}

/// Max over deterministic strategies of `sum f_ab(n) omega^{n(k_a - l_b)}`,
/// orders `1..d`. No dimension cap; cost grows as `d^5`.
pub fn deterministic_maximum(table: &CoefficientTable) -> Result<f64> {
    let d = table.d();
    let mut best = f64::NEG_INFINITY;
    for [k1, k2, l1, l2] in strategies(d) {
        let ks = [k1, k2];
        let ls = [l1, l2];
        let mut total = Complex64::new(0.0, 0.0);
        for (a, &k) in ks.iter().enumerate() {
            for (b, &l) in ls.iter().enumerate() {
                let diff = i64::from(k) - i64::from(l);
                for n in 1..d {
                    total += table.get(a, b, n) * omega_power(i64::from(n) * diff, d);
                }
            }
        }
        if total.im.abs() > 1e-9 {
            return Err(BellError::NonRealFunctional(total.im));
        }
        best = best.max(total.re);
    }
    Ok(best)
}

/// Local-realistic bound of the correlation-form functional.
pub fn classical_bound_enumeration(kind: BellKind, d: u32) -> Result<f64> {
    check_enumerable(d)?;
    deterministic_maximum(&coefficients(kind, d)?)
}

/// Local bound of the CGLMP joint-probability form under a coefficient reading.
pub fn cglmp_epsilon_local_bound(reading: CglmpReading, d: u32) -> Result<f64> {
    check_enumerable(d)?;
    let mut best = f64::NEG_INFINITY;
    for [k1, k2, l1, l2] in strategies(d) {
        let ks = [k1, k2];
        let ls = [l1, l2];
        let mut total = 0.0;
        for (a, &k) in ks.iter().enumerate() {
            for (b, &l) in ls.iter().enumerate() {
                total += cglmp_epsilon_with(reading, a as u32 + 1, b as u32 + 1, k, l, d)?;
            }
        }
        best = best.max(total);
    }
    Ok(best)
}

/// First reading whose joint-probability bound is 2 for every `d` in `dims`.
pub fn select_cglmp_reading(dims: &[u32]) -> Result<Option<CglmpReading>> {
    for reading in CglmpReading::ALL {
        let mut consistent = true;
        for &d in dims {
            if (cglmp_epsilon_local_bound(reading, d)? - 2.0).abs() > 1e-9 {
                consistent = false;
                break;
            }
        }
        if consistent {
            return Ok(Some(reading));
        }
    }
    Ok(None)
}
