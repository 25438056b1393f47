//! Truncated joint photon-count statistics of the displaced TMSS and the
//! Bernoulli thinning of lossy detectors.

use num_complex::Complex64;

use super::cutoff::FockCutoff;
use super::overlap::{displacement_matrix, ln_factorials};
use crate::error::{BellError, Result};
use crate::types::{check_finite, ComplexAmplitude, DetectorModel, TmssParams};

/// TMSS Schmidt amplitude `tanh^j(r) / cosh(r)` of `|j, j>`.
pub fn tmss_amplitude(j: usize, r: TmssParams) -> f64 {
    let r = r.r();
    if r == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    r.tanh().powi(j as i32) / r.cosh()
}

/// Compensated (Neumaier) sum.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `p[k][l]` for `0 <= k, l <= k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPhotonDistribution {
    cutoff: FockCutoff,
    table: Vec<f64>,
    tail_bound: f64,
}

impl JointPhotonDistribution {
    /// Wraps an explicit table (row-major, `(k_max+1)^2` entries).
    pub fn from_table(cutoff: FockCutoff, table: Vec<f64>) -> Result<Self> {
        let side = cutoff.k_max() + 1;
        if table.len() != side * side {
            return Err(BellError::InvalidCutoff(format!(
                "table has {} entries, expected {}",
                table.len(),
                side * side
            )));
        }
        if table.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(BellError::NonFinite { what: "probability entry" });
        }
        let mass = neumaier_sum(table.iter().copied());
        Ok(Self { cutoff, table, tail_bound: tail_of(mass) })
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn side(&self) -> usize {
        self.cutoff.k_max() + 1
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.table[k * self.side() + l]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.table.chunks_exact(self.side())
    }

    pub fn total_mass(&self) -> f64 {
        neumaier_sum(self.table.iter().copied())
    }

    /// Upper bound on the probability outside the table.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn ensure_tail(&self, tol: f64) -> Result<()> {
        if self.tail_bound > tol {
            Err(BellError::TruncationTail { tail: self.tail_bound, tol })
        } else {
            Ok(())
        }
    }

    /// Photon counts binned by residue modulo `d`: `P(k mod d, l mod d)`.
    pub fn binned(&self, d: u32) -> Vec<Vec<f64>> {
        let d = d as usize;
        let mut out = vec![vec![0.0; d]; d];
        for (k, row) in self.rows().enumerate() {
            for (l, &p) in row.iter().enumerate() {
                out[k % d][l % d] += p;
            }
        }
        out
    }
}

fn tail_of(mass: f64) -> f64 {
    // rounding allowance for a compensated sum of non-negative terms
    (1.0 - mass).max(0.0) + 4.0 * f64::EPSILON
}

/// Joint photon-count distribution at displaced local measurements.
///
/// `p[k][l] = |sum_j c_j <k|D(alpha)|j> <l|D(-beta)|j>|^2`. Alice's
/// displacement enters with the opposite sign to Bob's; that pairing is the
/// one the closed-form correlations describe.
pub fn joint_photon_distribution(
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
    cutoff: FockCutoff,
) -> Result<JointPhotonDistribution> {
    check_finite(alpha, "alpha")?;
    check_finite(beta, "beta")?;
    let (jm, km) = (cutoff.j_max(), cutoff.k_max());
    let cols = jm + 1;
    let amps: Vec<f64> = (0..=jm).map(|j| tmss_amplitude(j, r)).collect();
    let alice = displacement_matrix(alpha, km, jm)?;
    let bob = displacement_matrix(-beta, km, jm)?;
    // weight Alice's rows by the Schmidt amplitudes once
    let weighted: Vec<Complex64> = alice
        .chunks_exact(cols)
        .flat_map(|row| row.iter().zip(&amps).map(|(v, &c)| v * c))
        .collect();
    let side = km + 1;
    let mut table = vec![0.0; side * side];
    for k in 0..side {
        let wa = &weighted[k * cols..(k + 1) * cols];
        for l in 0..side {
            let wb = &bob[l * cols..(l + 1) * cols];
            let amp: Complex64 = wa.iter().zip(wb).map(|(x, y)| x * y).sum();
            table[k * side + l] = amp.norm_sqr();
        }
    }
    let mass = neumaier_sum(table.iter().copied());
    Ok(JointPhotonDistribution { cutoff, table, tail_bound: tail_of(mass) })
}

/// As [`joint_photon_distribution`], failing when the truncated mass exceeds `tol`.
pub fn joint_photon_distribution_within(
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
    cutoff: FockCutoff,
    tol: f64,
) -> Result<JointPhotonDistribution> {
    let dist = joint_photon_distribution(alpha, beta, r, cutoff)?;
    dist.ensure_tail(tol)?;
    Ok(dist)
}

/// Row-stochastic binomial kernel `K[k][m] = C(k, m) eta^m (1-eta)^{k-m}`
/// for `k <= k_max`, each row renormalized to sum to 1.
fn thinning_kernel(eta: f64, k_max: usize) -> Vec<Vec<f64>> {
    let lf = ln_factorials(k_max);
    let (ln_eta, ln_loss) = (eta.ln(), (1.0 - eta).ln());
    (0..=k_max)
        .map(|k| {
            if eta == 1.0 {
                let mut row = vec![0.0; k + 1];
                row[k] = 1.0;
                return row;
            }
            let mut row: Vec<f64> = (0..=k)
                .map(|m| {
                    let mf = m as f64;
                    let ln = lf[k] - lf[m] - lf[k - m] + mf * ln_eta + (k - m) as f64 * ln_loss;
                    ln.exp()
                })
                .collect();
            let total = neumaier_sum(row.iter().copied());
            if total > 0.0 {
                row.iter_mut().for_each(|v| *v /= total);
            }
            row
        })
        .collect()
}

/// Bernoulli loss applied independently to each party's count.
pub fn apply_bernoulli_loss(dist: &JointPhotonDistribution, det: DetectorModel) -> JointPhotonDistribution {
    if det.is_ideal() {
        return dist.clone();
    }
    let side = dist.side();
    let km = side - 1;
    let ka = thinning_kernel(det.eta_a(), km);
    let kb = thinning_kernel(det.eta_b(), km);
    // thin Bob's index row by row, then Alice's column by column
    let mut half = vec![0.0; side * side];
    for k in 0..side {
        let src = &dist.table[k * side..(k + 1) * side];
        let dst = &mut half[k * side..(k + 1) * side];
        for n in 0..side {
            dst[n] = neumaier_sum((n..side).map(|l| kb[l][n] * src[l]));
        }
    }
    let mut table = vec![0.0; side * side];
    for n in 0..side {
        for m in 0..side {
            table[m * side + n] = neumaier_sum((m..side).map(|k| ka[k][m] * half[k * side + n]));
        }
    }
    JointPhotonDistribution { cutoff: dist.cutoff, table, tail_bound: dist.tail_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tm(r: f64) -> TmssParams {
        TmssParams::new(r).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        assert!((tmss_amplitude(0, tm(1.0)) - 1.0 / 1f64.cosh()).abs() < 1e-15);
        assert!((tmss_amplitude(0, tm(1.0)) - 0.648054).abs() < 1e-6);
        assert_eq!(tmss_amplitude(0, tm(0.0)), 1.0);
        assert_eq!(tmss_amplitude(3, tm(0.0)), 0.0);
    }

    #[test]
    fn amplitude_partial_sums_follow_geometric_tail() {
        let r = tm(0.8);
        let t2 = 0.8f64.tanh().powi(2);
        for big_j in [0usize, 3, 10, 40] {
            let s: f64 = (0..=big_j).map(|j| tmss_amplitude(j, r).powi(2)).sum();
            assert!((s - (1.0 - t2.powi(big_j as i32 + 1))).abs() < 1e-14);
        }
    }

    #[test]
    fn undisplaced_distribution_is_diagonal() {
        let z = Complex64::new(0.0, 0.0);
        let r = 0.6f64;
        let dist = joint_photon_distribution(z, z, tm(r), FockCutoff::new(40, 40).unwrap()).unwrap();
        for k in 0..=40 {
            for l in 0..=40 {
                let expect = if k == l { r.tanh().powi(2 * k as i32) / r.cosh().powi(2) } else { 0.0 };
                assert!((dist.get(k, l) - expect).abs() < 1e-15, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn displaced_vacuum_is_poissonian() {
        let a = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let dist = joint_photon_distribution(a, z, tm(0.0), FockCutoff::new(0, 30).unwrap()).unwrap();
        let mut pois = (-1.0f64).exp();
        for k in 0..=30 {
            if k > 0 {
                pois /= k as f64;
            }
            assert!((dist.get(k, 0) - pois).abs() < 1e-15, "k={k}");
            for l in 1..=30 {
                assert!(dist.get(k, l).abs() < 1e-30);
            }
        }
    }

    #[test]
    fn normalization_at_adequate_cutoff() {
        let a = Complex64::new(0.5, -0.7);
        let b = Complex64::new(-0.3, 0.2);
        let dist = joint_photon_distribution(a, b, tm(0.7), FockCutoff::new(70, 110).unwrap()).unwrap();
        assert!(dist.total_mass() >= 1.0 - 1e-9);
        assert!(dist.total_mass() <= 1.0 + 1e-12);
        assert!(dist.ensure_tail(1e-9).is_ok());
    }

    #[test]
    fn tail_error_reported() {
        let a = Complex64::new(1.0, 0.0);
        let dist = joint_photon_distribution_within(a, a, tm(1.0), FockCutoff::new(3, 3).unwrap(), 1e-6);
        assert!(matches!(dist, Err(BellError::TruncationTail { .. })));
    }

    fn single_pair(k: usize, l: usize, k_max: usize) -> JointPhotonDistribution {
        let side = k_max + 1;
        let mut t = vec![0.0; side * side];
        t[k * side + l] = 1.0;
        JointPhotonDistribution::from_table(FockCutoff::new(0, k_max).unwrap(), t).unwrap()
    }

    #[test]
    fn loss_examples() {
        let p = single_pair(1, 0, 4);
        let out = apply_bernoulli_loss(&p, DetectorModel::new(0.7, 1.0).unwrap());
        assert!((out.get(1, 0) - 0.7).abs() < 1e-15);
        assert!((out.get(0, 0) - 0.3).abs() < 1e-15);
        assert_eq!(apply_bernoulli_loss(&p, DetectorModel::ideal()), p);
        let p = single_pair(3, 2, 4);
        let out = apply_bernoulli_loss(&p, DetectorModel::symmetric(1e-12).unwrap());
        assert!((out.get(0, 0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn loss_preserves_mass() {
        let a = Complex64::new(0.9, 0.4);
        let b = Complex64::new(-0.6, 0.1);
        let dist = joint_photon_distribution(a, b, tm(0.9), FockCutoff::new(60, 90).unwrap()).unwrap();
        for det in [DetectorModel::symmetric(0.4).unwrap(), DetectorModel::new(0.7, 0.2).unwrap()] {
            let out = apply_bernoulli_loss(&dist, det);
            assert!((out.total_mass() - dist.total_mass()).abs() < 1e-15);
        }
    }

    #[test]
    fn binning_conserves_mass() {
        let a = Complex64::new(0.4, 0.0);
        let dist = joint_photon_distribution(a, a, tm(0.5), FockCutoff::new(40, 60).unwrap()).unwrap();
        let bins = dist.binned(3);
        let total: f64 = bins.iter().flatten().sum();
        assert!((total - dist.total_mass()).abs() < 1e-14);
    }
}
