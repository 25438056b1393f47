//! Coefficient tables of the CGLMP and SLK functionals.
//!
//! Both functionals are written as `sum_{a,b} sum_{n=1}^{d-1} f_ab(n) C_ab^(n)`.
//! The joint-probability coefficients `epsilon_ab(k', l')` depend only on
//! `k' - l'` modulo `d`, so `f_ab(n)` is their discrete Fourier transform.
//! For SLK that transform is the ground truth: the closed-form table used
//! for evaluation is checked against it, and the enumerated local bound of
//! the transformed table fixes the normalization to 2.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::classical::deterministic_maximum;
use super::phase::{cot_pi_rational, omega_power, omega_rational_power};
use crate::error::{BellError, Result};
use crate::types::{check_dimension, BellKind};

/// Tolerance for agreement between coefficient tables built by different routes.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-10;

/// `f_ab(n)` for `a, b` in `{0, 1}` (settings 1 and 2) and `n` in `0..d`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    d: u32,
    f: [[Vec<Complex64>; 2]; 2],
}

impl CoefficientTable {
    pub(crate) fn zeros(d: u32) -> Self {
        let row = || vec![Complex64::new(0.0, 0.0); d as usize];
        Self { d, f: [[row(), row()], [row(), row()]] }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Coefficient of `C_ab^(n)`; `a`, `b` are zero-based setting indices.
    pub fn get(&self, a: usize, b: usize, n: u32) -> Complex64 {
        self.f[a][b][n as usize]
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, n: u32, v: Complex64) {
        self.f[a][b][n as usize] = v;
    }

    pub fn scale(&mut self, k: f64) {
        self.f.iter_mut().flatten().flatten().for_each(|v| *v *= k);
    }

    /// Largest entrywise modulus difference over orders `1..d`.
    pub fn max_deviation(&self, other: &CoefficientTable) -> f64 {
        assert_eq!(self.d, other.d);
        let mut worst = 0.0f64;
        for a in 0..2 {
            for b in 0..2 {
                for n in 1..self.d {
                    worst = worst.max((self.get(a, b, n) - other.get(a, b, n)).norm());
                }
            }
        }
        worst
    }

    /// `sum_{a,b} f_ab(0)`, the constant the zeroth order would contribute.
    pub fn zeroth_order_sum(&self) -> Complex64 {
        (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| self.get(a, b, 0)).sum()
    }
}

/// Readings of the positive-residue marker in the CGLMP joint-probability
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CglmpReading {
    /// Residue of the whole difference; `epsilon_21` carries `k' - l'`, so
    /// that `epsilon_21 = -epsilon_11`.
    DifferenceResidue,
    /// Residue of the whole difference with `epsilon_21` on `l' - k'` as
    /// typeset.
    DifferenceResidueAsTypeset,
    /// Residue applied to `k'` alone, which is a no-op on `0..d`.
    OperandResidue,
}

impl CglmpReading {
    pub const ALL: [CglmpReading; 3] = [
        CglmpReading::DifferenceResidue,
        CglmpReading::DifferenceResidueAsTypeset,
        CglmpReading::OperandResidue,
    ];
}

/// The reading whose local bound is 2 and whose transform matches the
/// correlation-form coefficients.
pub const CGLMP_READING: CglmpReading = CglmpReading::DifferenceResidue;

fn check_setting(a: u32) -> Result<()> {
    if a == 1 || a == 2 {
        Ok(())
    } else {
        Err(BellError::CoefficientIndex(format!("setting {a} not in {{1, 2}}")))
    }
}

fn check_outcome(k: u32, d: u32) -> Result<()> {
    if k < d {
        Ok(())
    } else {
        Err(BellError::CoefficientIndex(format!("outcome {k} not in 0..{d}")))
    }
}

/// CGLMP joint-probability coefficient `epsilon_ab(k', l')` under
/// [`CGLMP_READING`]. Settings `a`, `b` are one-based.
pub fn cglmp_epsilon(a: u32, b: u32, kp: u32, lp: u32, d: u32) -> Result<f64> {
    cglmp_epsilon_with(CGLMP_READING, a, b, kp, lp, d)
}

pub fn cglmp_epsilon_with(reading: CglmpReading, a: u32, b: u32, kp: u32, lp: u32, d: u32) -> Result<f64> {
    check_dimension(d)?;
    check_setting(a)?;
    check_setting(b)?;
    check_outcome(kp, d)?;
    check_outcome(lp, d)?;
    let (k, l, di) = (i64::from(kp), i64::from(lp), i64::from(d));
    let (fwd, back) = match reading {
        CglmpReading::OperandResidue => (k - l, l - k),
        _ => ((k - l).rem_euclid(di), (l - k).rem_euclid(di)),
    };
    let scale = 2.0 / f64::from(d - 1);
    let v = match (a, b, reading) {
        (1, 1, _) | (2, 2, _) => 1.0 - scale * fwd as f64,
        (1, 2, _) => 1.0 - scale * back as f64,
        (2, 1, CglmpReading::DifferenceResidue) => -1.0 + scale * fwd as f64,
        (2, 1, _) => -1.0 + scale * back as f64,
        _ => unreachable!(),
    };
    Ok(v)
}

/// SLK profile `S(x)`; `S(0) = (d - 1)/2`.
pub fn slk_coefficient_s(x: f64, d: u32) -> Result<f64> {
    check_dimension(d)?;
    if x == 0.0 {
        return Ok(f64::from(d - 1) / 2.0);
    }
    let df = f64::from(d);
    let arg = PI * x / df;
    // distance of the cot argument from the nearest multiple of pi
    let k = (arg / PI).round();
    if (arg - k * PI).abs() < 1e-12 {
        return Err(BellError::CotangentPole { x, d });
    }
    let cot = arg.cos() / arg.sin();
    Ok(0.25 * (cot * (2.0 * PI * x).sin() - (2.0 * PI * x).cos() - 1.0))
}

/// Quarter offsets of the SLK coefficients, indexed `[a][b]`.
const SLK_OFFSETS: [[f64; 2]; 2] = [[0.25, -0.25], [0.75, 0.25]];

/// SLK joint-probability coefficient `epsilon_ab(k', l') = S(k' - l' + offset_ab)`.
/// Settings `a`, `b` are one-based.
pub fn slk_epsilon(a: u32, b: u32, kp: u32, lp: u32, d: u32) -> Result<f64> {
    check_dimension(d)?;
    check_setting(a)?;
    check_setting(b)?;
    check_outcome(kp, d)?;
    check_outcome(lp, d)?;
    let x = f64::from(kp) - f64::from(lp) + SLK_OFFSETS[(a - 1) as usize][(b - 1) as usize];
    slk_coefficient_s(x, d)
}

/// Closed-form CGLMP coefficients:
/// `f = 2/(d-1) / (1 - omega^{-n}) * (1, -omega^{-n}, -1, 1)`.
pub fn cglmp_coefficients(d: u32) -> Result<CoefficientTable> {
    check_dimension(d)?;
    let mut t = CoefficientTable::zeros(d);
    let norm = 2.0 / f64::from(d - 1);
    for n in 1..d {
        let w = omega_power(-i64::from(n), d);
        let base = norm / (1.0 - w);
        t.set(0, 0, n, base);
        t.set(0, 1, n, -w * base);
        t.set(1, 0, n, -base);
        t.set(1, 1, n, base);
    }
    Ok(t)
}

/// `R(d) = 3 cot(pi/4d) - cot(3 pi/4d) - 4`; the original SLK local bound is `R(d)/4`.
pub fn slk_normalizer(d: u32) -> f64 {
    let q = 4 * d;
    3.0 * cot_pi_rational(1, q).unwrap() - cot_pi_rational(3, q).unwrap() - 4.0
}

/// Closed-form SLK coefficients normalized to local bound 2:
///
/// - `f_11 = f_22 = (2/R)(omega^{n/4} + omega^{(n-d)/4})`
/// - `f_12 = (2/R)(omega^{-n/4} + omega^{-(n-d)/4})`
/// - `f_21 = (2/R)(omega^{3n/4} + omega^{3(n-d)/4})`
pub fn slk_coefficients(d: u32) -> Result<CoefficientTable> {
    check_dimension(d)?;
    let mut t = CoefficientTable::zeros(d);
    let norm = 2.0 / slk_normalizer(d);
    let di = i64::from(d);
    let q = |p: i64| omega_rational_power(p, 4, d);
    for n in 1..d {
        let n = i64::from(n);
        let f11 = norm * (q(n) + q(n - di));
        let f12 = norm * (q(-n) + q(-(n - di)));
        let f21 = norm * (q(3 * n) + q(3 * (n - di)));
        let n = n as u32;
        t.set(0, 0, n, f11);
        t.set(0, 1, n, f12);
        t.set(1, 0, n, f21);
        t.set(1, 1, n, f11);
    }
    Ok(t)
}

/// SLK coefficients exactly as typeset in the literature, kept only to
/// report how far they sit from the transform-derived table.
pub fn slk_coefficients_as_typeset(d: u32) -> Result<CoefficientTable> {
    check_dimension(d)?;
    let mut t = CoefficientTable::zeros(d);
    let norm = 1.0 / slk_normalizer(d);
    let di = i64::from(d);
    let q = |p: i64| omega_rational_power(p, 4, d);
    for n in 1..d {
        let n = i64::from(n);
        let f11 = norm * (q(n) + q(-(n - di)));
        let f12 = norm * (q(-n) + q(-(n - di)));
        let f21 = norm * (q(3 * n) + q(3 * (n - di)));
        let n = n as u32;
        t.set(0, 0, n, f11);
        t.set(0, 1, n, f12);
        t.set(1, 0, n, f21);
        t.set(1, 1, n, f11);
    }
    Ok(t)
}

/// Fourier transform of a coefficient profile over `m = (k' - l') mod d`:
/// `f(n) = (1/d) sum_m epsilon(m) omega^{-n m}`.
fn transform_profile(profile: &[f64], d: u32) -> Vec<Complex64> {
    (0..d)
        .map(|n| {
            profile
                .iter()
                .enumerate()
                .map(|(m, &e)| e * omega_power(-(i64::from(n) * m as i64), d))
                .sum::<Complex64>()
                / f64::from(d)
        })
        .collect()
}

/// Coefficient table from joint-probability coefficients depending on `k' - l'` only.
fn table_from_epsilon(d: u32, eps: impl Fn(u32, u32, u32, u32) -> Result<f64>) -> Result<CoefficientTable> {
    let mut t = CoefficientTable::zeros(d);
    for a in 0..2usize {
        for b in 0..2usize {
            // epsilon(m, 0) with k' = m, l' = 0 sweeps every residue once
            let profile = (0..d).map(|m| eps(a as u32 + 1, b as u32 + 1, m, 0)).collect::<Result<Vec<_>>>()?;
            for (n, v) in transform_profile(&profile, d).into_iter().enumerate() {
                t.set(a, b, n as u32, v);
            }
        }
    }
    Ok(t)
}

/// Transform of the CGLMP joint-probability coefficients under a reading.
///
/// Only meaningful for the residue readings; under
/// [`CglmpReading::OperandResidue`] the coefficients are not a function of
/// `(k' - l') mod d`.
pub fn cglmp_coefficients_via_dft(reading: CglmpReading, d: u32) -> Result<CoefficientTable> {
    check_dimension(d)?;
    table_from_epsilon(d, |a, b, k, l| cglmp_epsilon_with(reading, a, b, k, l, d))
}

/// SLK coefficients derived by Fourier inversion of the `S(x)` profile.
#[derive(Debug, Clone)]
pub struct DftCoefficients {
    /// Rescaled so the deterministic local maximum is 2.
    pub table: CoefficientTable,
    /// Local maximum of the unscaled, centered transform.
    pub raw_bound: f64,
    /// `sum_{a,b} f_ab(0)` before centering.
    pub zeroth_order_sum: Complex64,
    /// Deviation from the closed-form table used for evaluation.
    pub closed_form_deviation: f64,
    /// Deviation from the typeset table; informational only.
    pub typeset_deviation: f64,
}

/// Fourier-invert the SLK profile, center the zeroth order away, and rescale
/// to local bound 2 by exhaustive enumeration. Errors when the result
/// disagrees with [`slk_coefficients`]; a disagreement with the typeset
/// table is only reported in the returned struct.
pub fn slk_coefficients_via_dft(d: u32) -> Result<DftCoefficients> {
    check_dimension(d)?;
    let mut table = table_from_epsilon(d, |a, b, k, l| slk_epsilon(a, b, k, l, d))?;
    let zeroth_order_sum = table.zeroth_order_sum();
    for a in 0..2 {
        for b in 0..2 {
            table.set(a, b, 0, Complex64::new(0.0, 0.0));
        }
    }
    let raw_bound = deterministic_maximum(&table)?;
    table.scale(2.0 / raw_bound);
    let closed_form_deviation = table.max_deviation(&slk_coefficients(d)?);
    let typeset_deviation = table.max_deviation(&slk_coefficients_as_typeset(d)?);
    if closed_form_deviation > COEFFICIENT_TOLERANCE {
        return Err(BellError::CoefficientMismatch(closed_form_deviation));
    }
    Ok(DftCoefficients { table, raw_bound, zeroth_order_sum, closed_form_deviation, typeset_deviation })
}

/// Coefficients used for evaluation.
pub fn coefficients(kind: BellKind, d: u32) -> Result<CoefficientTable> {
    match kind {
        BellKind::Cglmp => cglmp_coefficients(d),
        BellKind::Slk => slk_coefficients(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cglmp_epsilon_examples() {
        for d in 2..7 {
            for k in 0..d {
                assert_eq!(cglmp_epsilon(1, 1, k, k, d).unwrap(), 1.0);
            }
        }
        assert_eq!(cglmp_epsilon(1, 1, 1, 0, 3).unwrap(), 0.0);
        assert_eq!(cglmp_epsilon(2, 1, 2, 2, 3).unwrap(), -1.0);
    }

    #[test]
    fn cglmp_epsilon_range_checks() {
        assert!(cglmp_epsilon(0, 1, 0, 0, 3).is_err());
        assert!(cglmp_epsilon(1, 3, 0, 0, 3).is_err());
        assert!(cglmp_epsilon(1, 1, 3, 0, 3).is_err());
        assert!(cglmp_epsilon(1, 1, 0, 0, 1).is_err());
    }

    #[test]
    fn slk_s_examples() {
        assert_eq!(slk_coefficient_s(0.0, 3).unwrap(), 1.0);
        let cot_pi_8 = 1.0 / (PI / 8.0).tan();
        let v = slk_coefficient_s(0.25, 2).unwrap();
        assert!((v - (cot_pi_8 - 1.0) / 4.0).abs() < 1e-15);
        assert!((v - 0.35355).abs() < 1e-5);
        let v = slk_coefficient_s(0.75, 2).unwrap();
        let direct = 0.25 * (-1.0 / (3.0 * PI / 8.0).tan() - 1.0);
        assert!((v - direct).abs() < 1e-15);
        assert!((v + 0.35355).abs() < 1e-5);
    }

    #[test]
    fn slk_s_reports_pole() {
        assert!(matches!(slk_coefficient_s(3.0, 3), Err(BellError::CotangentPole { .. })));
        assert!(slk_coefficient_s(-6.0, 3).is_err());
    }

    #[test]
    fn slk_dft_reduces_to_chsh_at_d2() {
        let dft = slk_coefficients_via_dft(2).unwrap();
        let t = &dft.table;
        let expect = [[1.0, 1.0], [-1.0, 1.0]];
        for a in 0..2 {
            for b in 0..2 {
                assert!((t.get(a, b, 1) - Complex64::new(expect[a][b], 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn slk_dft_spectrum_is_conjugate_symmetric() {
        for d in [3, 4, 5, 7] {
            let t = slk_coefficients_via_dft(d).unwrap().table;
            for a in 0..2 {
                for b in 0..2 {
                    for n in 1..d {
                        assert!((t.get(a, b, d - n) - t.get(a, b, n).conj()).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn slk_dft_matches_closed_form_and_original_bound() {
        for d in 2..=8 {
            let dft = slk_coefficients_via_dft(d).unwrap();
            assert!(dft.closed_form_deviation < COEFFICIENT_TOLERANCE, "d={d}");
            assert!(dft.zeroth_order_sum.norm() < 1e-12, "d={d}");
            // unscaled local bound of the transform is the original R(d)/4
            assert!((dft.raw_bound - slk_normalizer(d) / 4.0).abs() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn typeset_slk_table_disagrees() {
        // overall factor 2 and the sign of one exponent in f_11, f_22
        for d in 2..=5 {
            assert!(slk_coefficients_via_dft(d).unwrap().typeset_deviation > 0.1);
        }
    }

    #[test]
    fn cglmp_difference_reading_matches_closed_form() {
        for d in 2..=8 {
            let closed = cglmp_coefficients(d).unwrap();
            let t = cglmp_coefficients_via_dft(CglmpReading::DifferenceResidue, d).unwrap();
            assert!(t.max_deviation(&closed) < 1e-12, "d={d}");
            assert!(t.zeroth_order_sum().norm() < 1e-12);
        }
    }

    #[test]
    fn other_cglmp_readings_do_not_match() {
        for d in 3..=6 {
            let closed = cglmp_coefficients(d).unwrap();
            let t = cglmp_coefficients_via_dft(CglmpReading::DifferenceResidueAsTypeset, d).unwrap();
            assert!(t.max_deviation(&closed) > 1e-3, "d={d}");
        }
    }
}
