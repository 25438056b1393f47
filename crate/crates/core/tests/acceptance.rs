//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasebell_core::bell::{classical_bound_enumeration, chsh_combination, cglmp_value, slk_value};
use phasebell_core::optimize::{bound_efficiency, maximize_bell, EfficiencyMode, OptimizerConfig, VIOLATION_MARGIN};
use phasebell_core::verify::{run_suite, Suite, VerifyConfig};
use phasebell_core::{BellKind, DetectorModel, MeasurementSettings, Result, TmssParams};

const ETA_TOL: f64 = 1e-3;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn run(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; over time limit {limit:?}"));
        }
    }
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("{tag} {id:>2} {name}: {detail} [{:.2}s]", elapsed.as_secs_f64());
    passed
}

fn amplitude(rng: &mut ChaCha8Rng, max_norm: f64) -> Complex64 {
    Complex64::from_polar(max_norm * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn suite(s: Suite) -> Result<Outcome> {
    let report = run_suite(s, &VerifyConfig::default())?;
    let failed: Vec<String> = report.failures().map(|c| c.to_string()).collect();
    let detail = if failed.is_empty() {
        format!("{} checks", report.checks.len())
    } else {
        failed.join(" | ")
    };
    Ok(outcome(report.passed(), detail))
}

fn optimized(kind: BellKind, d: u32, r: f64, det: DetectorModel) -> Result<f64> {
    Ok(maximize_bell(kind, d, TmssParams::new(r)?, det, &OptimizerConfig::default())?.best_value)
}

fn fmt_values(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ")
}

fn oracle() -> Result<Outcome> {
    suite(Suite::Oracle)
}

fn classical_bounds() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for kind in [BellKind::Cglmp, BellKind::Slk] {
        for d in 2..=5 {
            worst = worst.max((classical_bound_enumeration(kind, d)? - 2.0).abs());
        }
    }
    Ok(outcome(worst <= 1e-9, format!("max |bound - 2| = {worst:.3e}")))
}

fn collapse() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut kinds, mut chsh) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let s = MeasurementSettings::new(
            amplitude(&mut rng, 1.5),
            amplitude(&mut rng, 1.5),
            amplitude(&mut rng, 1.5),
            amplitude(&mut rng, 1.5),
        )?;
        let r = TmssParams::new(rng.gen_range(0.0..=2.0))?;
        let det = DetectorModel::new(rng.gen_range(0.05..=1.0), rng.gen_range(0.05..=1.0))?;
        let c = cglmp_value(&s, r, 2, det)?;
        let k = slk_value(&s, r, 2, det)?;
        let x = chsh_combination(&s, r, det)?;
        kinds = kinds.max((c - k).abs());
        chsh = chsh.max((c - x).abs()).max((k - x).abs());
    }
    Ok(outcome(
        kinds < 1e-12 && chsh < 1e-12,
        format!("max |cglmp - slk| = {kinds:.3e}, max |value - chsh| = {chsh:.3e}"),
    ))
}

fn orderings() -> Result<Outcome> {
    let det = DetectorModel::ideal();
    let mut cglmp = Vec::new();
    let mut slk = Vec::new();
    for d in 2..=10 {
        cglmp.push(optimized(BellKind::Cglmp, d, 3.0, det)?);
        slk.push(optimized(BellKind::Slk, d, 3.0, det)?);
    }
    let b = |d: usize| cglmp[d - 2];
    let peak = cglmp.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let d3_max = b(3) == peak;
    let above = (3..=5).all(|d| b(d) > b(2));
    let below = (6..=10).all(|d| b(d) < b(2));
    let decreasing = slk.windows(2).all(|w| w[1] < w[0]);
    Ok(outcome(
        d3_max && above && below && decreasing,
        format!(
            "cglmp d=2..10 [{}]; slk d=2..10 [{}]; d3 max {d3_max}, d3-5 above d2 {above}, d6-10 below d2 {below}, slk decreasing {decreasing}",
            fmt_values(&cglmp),
            fmt_values(&slk)
        ),
    ))
}

fn violation_all_r() -> Result<Outcome> {
    let det = DetectorModel::ideal();
    let mut lowest = f64::INFINITY;
    let mut worst_drop = 0.0f64;
    for kind in [BellKind::Cglmp, BellKind::Slk] {
        for d in [2, 3, 10] {
            let mut prev = f64::NEG_INFINITY;
            for i in 1..=30 {
                let v = optimized(kind, d, f64::from(i) * 0.1, det)?;
                lowest = lowest.min(v);
                worst_drop = worst_drop.max(prev - v);
                prev = v;
            }
        }
    }
    Ok(outcome(
        lowest > 2.0 && worst_drop <= 1e-4,
        format!("lowest optimum {lowest:.9}, largest decrease in r {:.3e}", worst_drop.max(0.0)),
    ))
}

fn efficiency_limits() -> Result<Outcome> {
    let r = TmssParams::new(0.02)?;
    let cfg = OptimizerConfig::default();
    let mut ok = true;
    let mut rows = Vec::new();
    for d in [2, 3, 10] {
        let sym = bound_efficiency(BellKind::Cglmp, d, r, EfficiencyMode::Symmetric, ETA_TOL, &cfg)?.threshold;
        let asym = bound_efficiency(BellKind::Cglmp, d, r, EfficiencyMode::Asymmetric, ETA_TOL, &cfg)?.threshold;
        ok &= (0.66..=0.68).contains(&sym) && (0.49..=0.52).contains(&asym);
        rows.push(format!("d={d} sym {sym:.5} asym {asym:.5}"));
    }
    Ok(outcome(ok, rows.join(", ")))
}

fn dimensional_advantage() -> Result<Outcome> {
    let det = DetectorModel::symmetric(0.8)?;
    let d2 = optimized(BellKind::Cglmp, 2, 0.3, det)?;
    let d10 = optimized(BellKind::Cglmp, 10, 0.3, det)?;
    Ok(outcome(d10 > 2.0 && d2 <= 2.0 + VIOLATION_MARGIN, format!("d=2 {d2:.9}, d=10 {d10:.9}")))
}

fn threshold_growth() -> Result<Outcome> {
    let cfg = OptimizerConfig::default();
    let mut t = Vec::new();
    for r in [0.3, 0.8, 1.5, 2.5] {
        let scan = bound_efficiency(BellKind::Cglmp, 2, TmssParams::new(r)?, EfficiencyMode::Symmetric, ETA_TOL, &cfg)?;
        t.push(scan.threshold);
    }
    let increasing = t.windows(2).all(|w| w[1] > w[0]);
    Ok(outcome(increasing, format!("thresholds at r = 0.3, 0.8, 1.5, 2.5: [{}]", fmt_values(&t))))
}

fn identities() -> Result<Outcome> {
    suite(Suite::Identities)
}

fn fourier() -> Result<Outcome> {
    suite(Suite::Fourier)
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= run(1, "oracle equivalence", Some(secs(60)), oracle);
    ok &= run(2, "classical bounds", Some(secs(5)), classical_bounds);
    ok &= run(3, "d=2 collapse to CHSH", None, collapse);
    ok &= run(4, "orderings at r=3", Some(secs(600)), orderings);
    ok &= run(5, "violation for all r", None, violation_all_r);
    ok &= run(6, "efficiency limits at r=0.02", Some(secs(300)), efficiency_limits);
    ok &= run(7, "d=10 beats d=2 at r=0.3, eta=0.8", None, dimensional_advantage);
    ok &= run(8, "threshold grows with r", None, threshold_growth);
    ok &= run(9, "identity suite", Some(secs(10)), identities);
    ok &= run(10, "Fourier inversion", None, fourier);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
