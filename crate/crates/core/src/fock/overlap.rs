//! Displaced number-state matrix elements `<m|D(alpha)|j>` with
//! `D(alpha) = exp(alpha a^dag - alpha^* a)`.

use num_complex::Complex64;

use crate::error::{BellError, Result};
use crate::types::{check_finite, ComplexAmplitude};

/// Largest `m + j` accepted by the closed-form overlap.
pub const FACTORIAL_SAFE_LIMIT: usize = 2048;

/// `ln k!` for `k` in `0..=n`.
pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Associated Laguerre `L_n^{(k)}(x)` as `(sign, ln|value|)`, by the
/// three-term recurrence in the degree with running rescaling.
fn laguerre_log(n: usize, k: usize, x: f64) -> (f64, f64) {
    let kf = k as f64;
    let mut prev = 1.0f64;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut cur = 1.0 + kf - x;
    let mut log_scale = 0.0f64;
    for i in 1..n {
        let fi = i as f64;
        let next = ((2.0 * fi + 1.0 + kf - x) * cur - (fi + kf) * prev) / (fi + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e150 {
            prev /= mag;
            cur /= mag;
            log_scale += mag.ln();
        }
    }
    if cur == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    (cur.signum(), cur.abs().ln() + log_scale)
}

/// `<m|D(alpha)|j>` by the associated-Laguerre closed form, evaluated in
/// log-magnitude and phase.
pub fn displaced_fock_overlap(m: usize, j: usize, alpha: ComplexAmplitude) -> Result<ComplexAmplitude> {
    check_finite(alpha, "displacement")?;
    if m + j > FACTORIAL_SAFE_LIMIT {
        return Err(BellError::InvalidCutoff(format!(
            "m + j = {} beyond factorial-safe limit {FACTORIAL_SAFE_LIMIT}",
            m + j
        )));
    }
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return Ok(Complex64::new(if m == j { 1.0 } else { 0.0 }, 0.0));
    }
    let lf = ln_factorials(m.max(j));
    // m >= j: sqrt(j!/m!) alpha^{m-j} L_j^{(m-j)}
    // m <  j: sqrt(m!/j!) (-alpha^*)^{j-m} L_m^{(j-m)}
    let (lo, hi, base) = if m >= j { (j, m, alpha) } else { (m, j, -alpha.conj()) };
    let p = hi - lo;
    let (sign, ln_lag) = laguerre_log(lo, p, x);
    if sign == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_mag = 0.5 * (lf[lo] - lf[hi]) + (p as f64) * 0.5 * x.ln() - 0.5 * x + ln_lag;
    let phase = base.arg() * p as f64;
    Ok(Complex64::from_polar(sign * ln_mag.exp(), phase))
}

/// Block `<m|D(alpha)|j>` for `m <= m_max`, `j <= j_max`.
///
/// Each diagonal `m - j = const` is one Laguerre sequence in the degree, so
/// the block is filled by the degree recurrence on normalized values, one
/// pass per diagonal, with a running log scale. Row-major: entry `(m, j)` at
/// `m * (j_max + 1) + j`.
pub fn displacement_matrix(alpha: ComplexAmplitude, m_max: usize, j_max: usize) -> Result<Vec<Complex64>> {
    check_finite(alpha, "displacement")?;
    if m_max + j_max > FACTORIAL_SAFE_LIMIT {
        return Err(BellError::InvalidCutoff(format!(
            "m_max + j_max = {} beyond factorial-safe limit {FACTORIAL_SAFE_LIMIT}",
            m_max + j_max
        )));
    }
    let cols = j_max + 1;
    let mut out = vec![Complex64::new(0.0, 0.0); (m_max + 1) * cols];
    let x = alpha.norm_sqr();
    if x == 0.0 {
        for k in 0..=m_max.min(j_max) {
            out[k * cols + k] = Complex64::new(1.0, 0.0);
        }
        return Ok(out);
    }
    let lf = ln_factorials(m_max.max(j_max));
    let mut fill = |p: usize, lower: bool| {
        // lower: m = n + p, j = n; upper: m = n, j = n + p
        let len = if lower { (m_max - p).min(j_max) + 1 } else { (j_max - p).min(m_max) + 1 };
        let base = if lower { alpha } else { -alpha.conj() };
        let phase = Complex64::from_polar(1.0, base.arg() * p as f64);
        let pf = p as f64;
        // E_n = sqrt(n!/(n+p)!) L_n^(p)(x), times x^{p/2} e^{-x/2}
        let mut log_scale = 0.5 * pf * x.ln() - 0.5 * x - 0.5 * lf[p];
        let mut prev = 0.0f64;
        let mut cur = 1.0f64;
        for n in 0..len {
            if n > 0 {
                let nf = (n - 1) as f64;
                let ratio = ((nf + 1.0) / (nf + pf + 1.0)).sqrt();
                let ratio2 = if n > 1 { (nf * (nf + 1.0) / ((nf + pf) * (nf + pf + 1.0))).sqrt() } else { 0.0 };
                let next = ((2.0 * nf + 1.0 + pf - x) * cur * ratio - (nf + pf) * prev * ratio2) / (nf + 1.0);
                prev = cur;
                cur = next;
                let mag = cur.abs().max(prev.abs());
                if mag > 1e150 || (mag < 1e-150 && mag > 0.0) {
                    prev /= mag;
                    cur /= mag;
                    log_scale += mag.ln();
                }
            }
            let (m, j) = if lower { (n + p, n) } else { (n, n + p) };
            out[m * cols + j] = phase * (cur * log_scale.exp());
        }
    };
    for p in 0..=m_max {
        fill(p, true);
    }
    for p in 1..=j_max {
        fill(p, false);
    }
    Ok(out)
}
