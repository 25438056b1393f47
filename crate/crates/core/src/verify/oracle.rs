use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_amplitude, random_settings, Check, Suite, VerifyConfig};
use crate::bell::phase::omega_power;
use crate::bell::tmss::corr_for_detector;
use crate::bell::BellFunctional;
use crate::error::Result;
use crate::fock::oracle::{oracle_bell_from_probs, oracle_correlation_lossy, oracle_correlation_lossy_weights};
use crate::fock::{
    apply_bernoulli_loss, choose_cutoff, displacement_matrix, joint_photon_distribution, oracle_correlation, FockCutoff,
};
use crate::types::{BellKind, CorrelationOrder, DetectorModel, TmssParams};

const S: Suite = Suite::Oracle;
const EFFICIENCIES: [f64; 3] = [1.0, 0.7, 0.4];

pub(super) fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut corr_worst = 0.0f64;
    let mut bell_worst = 0.0f64;
    let mut path_worst = 0.0f64;
    let mut mass_worst = 0.0f64;
    let mut tail_worst = 0.0f64;

    for _ in 0..cfg.oracle_cases {
        let d = rng.gen_range(2..=6u32);
        let r = TmssParams::new(rng.gen_range(0.0..=1.5))?;
        let settings = random_settings(&mut rng, 1.2);
        let det = DetectorModel::new(
            EFFICIENCIES[rng.gen_range(0..3)],
            EFFICIENCIES[rng.gen_range(0..3)],
        )?;
        let cutoff = choose_cutoff(r, &settings, cfg.cutoff_tol)?;
        let mut lossy = Vec::with_capacity(4);
        for a in 0..2 {
            for b in 0..2 {
                let ideal = joint_photon_distribution(settings.alice(a), settings.bob(b), r, cutoff)?;
                tail_worst = tail_worst.max(ideal.tail_bound());
                let thinned = apply_bernoulli_loss(&ideal, det);
                mass_worst = mass_worst.max((thinned.total_mass() - ideal.total_mass()).abs());
                for order in CorrelationOrder::all(d)? {
                    let closed = corr_for_detector(order, settings.alice(a), settings.bob(b), r.r(), det)?;
                    let thinned_corr = oracle_correlation(order, &thinned);
                    let weighted = oracle_correlation_lossy_weights(order, &ideal, det);
                    corr_worst = corr_worst.max((closed - thinned_corr).norm());
                    path_worst = path_worst.max((thinned_corr - weighted).norm());
                }
                lossy.push(thinned);
            }
        }
        let dists: [_; 4] = lossy.try_into().expect("four setting pairs");
        for kind in [BellKind::Cglmp, BellKind::Slk] {
            let closed = BellFunctional::new(kind, d)?.value(&settings, r, det)?;
            let from_probs = oracle_bell_from_probs(kind, d, &dists)?;
            bell_worst = bell_worst.max((closed - from_probs).abs());
        }
    }

    let n = cfg.oracle_cases;
    let mut checks = vec![
        Check::below(S, format!("correlations vs closed form ({n} cases, d<=6, r<=1.5, |amp|<=1.2)"), corr_worst, cfg.tol),
        Check::below(S, format!("Bell value from binned probabilities, both kinds ({n} cases)"), bell_worst, cfg.tol),
        Check::below(S, "thinning vs lossy weights", path_worst, 1e-12),
        Check::below(S, "mass preserved by thinning", mass_worst, 1e-15),
        Check::new(S, "truncation tail", tail_worst <= cfg.cutoff_tol / 2.0, format!("worst tail {tail_worst:.3e}")),
    ];
    checks.push(unitarity(&mut rng)?);
    checks.push(vacuum_factorization(&mut rng)?);
    checks.push(cutoff_doubling(&mut rng, cfg)?);
    checks.push(checked_lossy_path(&mut rng, cfg)?);
    Ok(checks)
}

/// Column norms of a tall displacement block.
fn unitarity(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let alpha = random_amplitude(rng, 2.0);
        let (m_max, j_max) = (200, 60);
        let block = displacement_matrix(alpha, m_max, j_max)?;
        for j in 0..=j_max {
            let norm: f64 = (0..=m_max).map(|m| block[m * (j_max + 1) + j].norm_sqr()).sum();
            worst = worst.max((norm - 1.0).abs());
        }
    }
    Ok(Check::below(S, "displacement columns unit norm", worst, 1e-12))
}

/// At `r = 0` the correlation is `exp(|a|^2 (w - 1) + |b|^2 (w^* - 1))`.
fn vacuum_factorization(rng: &mut ChaCha8Rng) -> Result<Check> {
    let r = TmssParams::new(0.0)?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = rng.gen_range(2..=8u32);
        let (alpha, beta) = (random_amplitude(rng, 1.5), random_amplitude(rng, 1.5));
        let s = crate::types::MeasurementSettings::new(alpha, alpha, beta, beta)?;
        let dist = joint_photon_distribution(alpha, beta, r, choose_cutoff(r, &s, 1e-13)?)?;
        for order in CorrelationOrder::all(d)? {
            let w = omega_power(i64::from(order.n()), d);
            let expect = (alpha.norm_sqr() * (w - 1.0) + beta.norm_sqr() * (w.conj() - 1.0)).exp();
            worst = worst.max((oracle_correlation(order, &dist) - expect).norm());
        }
    }
    Ok(Check::below(S, "vacuum factorization at r = 0", worst, 1e-10))
}

/// Doubling `k_max` moves no correlation by more than the tolerance.
fn cutoff_doubling(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Check> {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let r = TmssParams::new(rng.gen_range(0.2..=1.5))?;
        let s = random_settings(rng, 1.2);
        let cutoff = choose_cutoff(r, &s, cfg.cutoff_tol)?;
        let doubled = FockCutoff::new(cutoff.j_max(), 2 * cutoff.k_max())?;
        let p1 = joint_photon_distribution(s.alpha1, s.beta1, r, cutoff)?;
        let p2 = joint_photon_distribution(s.alpha1, s.beta1, r, doubled)?;
        for order in CorrelationOrder::all(5)? {
            worst = worst.max((oracle_correlation(order, &p1) - oracle_correlation(order, &p2)).norm());
        }
    }
    Ok(Check::below(S, "cutoff doubling stability", worst, cfg.tol))
}

/// The asserted two-path lossy oracle runs without disagreement.
fn checked_lossy_path(rng: &mut ChaCha8Rng, cfg: &VerifyConfig) -> Result<Check> {
    let r = TmssParams::new(0.9)?;
    let (alpha, beta) = (random_amplitude(rng, 1.0), random_amplitude(rng, 1.0));
    let s = crate::types::MeasurementSettings::new(alpha, alpha, beta, beta)?;
    let ideal = joint_photon_distribution(alpha, beta, r, choose_cutoff(r, &s, cfg.cutoff_tol)?)?;
    let det = DetectorModel::new(0.7, 0.4)?;
    let mut worst = 0.0f64;
    for order in CorrelationOrder::all(4)? {
        let v: Complex64 = oracle_correlation_lossy(order, &ideal, det)?;
        worst = worst.max((v - corr_for_detector(order, alpha, beta, r.r(), det)?).norm());
    }
    Ok(Check::below(S, "asserted lossy oracle", worst, cfg.tol))
}
