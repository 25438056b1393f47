use super::{Check, Suite, VerifyConfig};
use crate::bell::BellFunctional;
use crate::error::Result;
use crate::optimize::{maximize_bell, OptimizerConfig};
use crate::types::{BellKind, DetectorModel, MeasurementSettings, TmssParams};

const S: Suite = Suite::Optimizer;

/// Real-restriction regression grid.
const REAL_DIMS: [u32; 3] = [2, 3, 5];
const REAL_SQUEEZING: [f64; 3] = [0.5, 1.5, 3.0];

pub(super) fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let opt = &cfg.optimizer;
    let mut checks = Vec::new();
    let det = DetectorModel::ideal();

    let product = maximize_bell(BellKind::Cglmp, 2, TmssParams::new(0.0)?, det, opt)?;
    checks.push(Check::new(
        S,
        "product state reaches but does not exceed 2",
        (product.best_value - 2.0).abs() <= 1e-6,
        format!("best {:.9}", product.best_value),
    ));

    let r = TmssParams::new(1.0)?;
    let lossy = DetectorModel::symmetric(0.85)?;
    let first = maximize_bell(BellKind::Slk, 3, r, lossy, opt)?;
    let again = maximize_bell(BellKind::Slk, 3, r, lossy, opt)?;
    checks.push(Check::new(S, "bit-identical rerun", first == again, format!("best {:.12}", first.best_value)));

    let f = BellFunctional::new(BellKind::Slk, 3)?;
    let fresh = f.value(&first.best_settings, r, lossy)?;
    let floor = f.value(&MeasurementSettings::zero(), r, lossy)?;
    checks.push(Check::new(
        S,
        "optimum re-evaluates and beats the zero settings",
        first.best_value <= fresh && first.best_value >= floor,
        format!("best {:.12}, fresh {fresh:.12}, zero settings {floor:.12}", first.best_value),
    ));

    let mut gauge = 0.0f64;
    for phi in [0.4, -1.3, 2.7] {
        gauge = gauge.max((f.value(&first.best_settings.phase_gauge(phi), r, lossy)? - first.best_value).abs());
    }
    checks.push(Check::below(S, "phase gauge leaves the optimum unchanged", gauge, 1e-12));

    // conjecture, recorded rather than enforced
    let real_cfg = OptimizerConfig { restrict_real: true, ..opt.clone() };
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for &d in &REAL_DIMS {
        for &r in &REAL_SQUEEZING {
            let r = TmssParams::new(r)?;
            let full = maximize_bell(BellKind::Cglmp, d, r, det, opt)?.best_value;
            let real = maximize_bell(BellKind::Cglmp, d, r, det, &real_cfg)?.best_value;
            worst = worst.max((full - real).abs());
            rows.push(format!("d={d} r={}: {:+.2e}", r.r(), full - real));
        }
    }
    let verdict = if worst <= 1e-4 { "agree within 1e-4" } else { "DISAGREE beyond 1e-4" };
    checks.push(Check::note(
        S,
        "real vs complex settings",
        format!("{verdict} (max gap {worst:.3e}; full - real: {})", rows.join(", ")),
    ));
    Ok(checks)
}
