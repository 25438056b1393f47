//! Multistart maximization of Bell values over the four displacements, and
//! threshold detection efficiencies.

mod bound;
mod coords;
mod simplex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell::BellFunctional;
use crate::error::{BellError, Result};
use crate::types::{BellKind, DetectorModel, MeasurementSettings, TmssParams};

pub use bound::{bound_efficiency, EfficiencyMode, EfficiencyScan, PRESCAN_POINTS, VIOLATION_MARGIN};
pub use coords::SqueezeCoords;
pub use simplex::{nelder_mead, SimplexOutcome};

/// Largest gap allowed between the reported optimum and a fresh evaluation.
pub const REEVALUATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Random starts, drawn in addition to the all-zero and all-0.1 starts.
    pub starts: usize,
    pub seed: u64,
    /// Simplex iterations per start.
    pub max_iters: usize,
    /// Value spread at convergence; vertex spread uses its square root.
    pub simplex_tol: f64,
    pub box_halfwidth: f64,
    pub restrict_real: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { starts: 32, seed: 42, max_iters: 20_000, simplex_tol: 1e-12, box_halfwidth: 1.5, restrict_real: false }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(BellError::InvalidConfig("starts must be at least 1".into()));
        }
        if !(self.simplex_tol > 0.0) || !self.simplex_tol.is_finite() {
            return Err(BellError::InvalidConfig(format!("simplex_tol {} must be positive", self.simplex_tol)));
        }
        if !(self.box_halfwidth > 0.0) || !self.box_halfwidth.is_finite() {
            return Err(BellError::InvalidConfig(format!("box_halfwidth {} must be positive", self.box_halfwidth)));
        }
        if self.max_iters == 0 {
            return Err(BellError::InvalidConfig("max_iters must be at least 1".into()));
        }
        Ok(())
    }

    /// Start points in search coordinates: all zeros, all 0.1, then
    /// `starts` uniform draws from the box, in that order.
    pub fn start_points(&self, dim: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let h = self.box_halfwidth;
        let mut out = vec![vec![0.0; dim], vec![0.1; dim]];
        out.extend((0..self.starts).map(|_| (0..dim).map(|_| rng.gen_range(-h..=h)).collect()));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub best_settings: MeasurementSettings,
    pub starts_converged: usize,
    pub evaluations: u64,
}

struct StartOutcome {
    value: f64,
    settings: MeasurementSettings,
    converged: bool,
    evaluations: u64,
}

/// Maximizes the Bell value over the settings by multistart simplex search.
///
/// Starts run in parallel; the winner is the largest value, ties going to
/// the lowest start index, so the result does not depend on scheduling.
pub fn maximize_bell(
    kind: BellKind,
    d: u32,
    r: TmssParams,
    det: DetectorModel,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    cfg.validate()?;
    let functional = BellFunctional::new(kind, d)?;
    maximize_functional(&functional, r, det, cfg)
}

/// As [`maximize_bell`] with a prebuilt functional.
pub fn maximize_functional(
    functional: &BellFunctional,
    r: TmssParams,
    det: DetectorModel,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    cfg.validate()?;
    let coords = SqueezeCoords::new(r.r(), cfg.restrict_real);
    let starts = cfg.start_points(coords.dim());

    let outcomes: Vec<StartOutcome> = starts
        .par_iter()
        .map(|y0| {
            let objective = |y: &[f64]| match functional.value_unchecked(&coords.settings(y), r.r(), det) {
                Ok(v) if v.is_finite() => -v,
                _ => f64::INFINITY,
            };
            let out = nelder_mead(objective, y0, cfg.max_iters, cfg.simplex_tol);
            StartOutcome {
                value: -out.f,
                settings: coords.settings(&out.x),
                converged: out.converged,
                evaluations: out.evaluations,
            }
        })
        .collect();

    let starts_converged = outcomes.iter().filter(|o| o.converged).count();
    if starts_converged == 0 {
        return Err(BellError::NoConvergence);
    }
    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let mut best = &outcomes[0];
    for o in &outcomes[1..] {
        if o.value > best.value {
            best = o;
        }
    }

    let best_value = functional.value(&best.settings, r, det)?;
    if (best_value - best.value).abs() > REEVALUATION_TOLERANCE {
        return Err(BellError::Irreproducible { reported: best.value, fresh: best_value });
    }
    Ok(OptimizationResult { best_value, best_settings: best.settings, starts_converged, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(r: f64) -> TmssParams {
        TmssParams::new(r).unwrap()
    }

    fn quick() -> OptimizerConfig {
        OptimizerConfig { starts: 6, ..OptimizerConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        assert!(OptimizerConfig { starts: 0, ..OptimizerConfig::default() }.validate().is_err());
        assert!(OptimizerConfig { simplex_tol: 0.0, ..OptimizerConfig::default() }.validate().is_err());
        assert!(OptimizerConfig { box_halfwidth: -1.0, ..OptimizerConfig::default() }.validate().is_err());
    }

    #[test]
    fn start_layout() {
        let cfg = OptimizerConfig { starts: 3, ..OptimizerConfig::default() };
        let pts = cfg.start_points(8);
        assert_eq!(pts.len(), 5);
        assert!(pts[0].iter().all(|&v| v == 0.0));
        assert!(pts[1].iter().all(|&v| v == 0.1));
        assert!(pts[2..].iter().flatten().all(|v| v.abs() <= 1.5));
        assert_eq!(pts, cfg.start_points(8));
    }

    #[test]
    fn product_state_cannot_violate() {
        let res = maximize_bell(BellKind::Cglmp, 2, tm(0.0), DetectorModel::ideal(), &quick()).unwrap();
        assert!((res.best_value - 2.0).abs() < 1e-6, "{}", res.best_value);
    }

    #[test]
    fn entangled_state_violates() {
        let res = maximize_bell(BellKind::Cglmp, 2, tm(1.0), DetectorModel::ideal(), &quick()).unwrap();
        assert!(res.best_value > 2.0);
    }

    #[test]
    fn reproducible() {
        let a = maximize_bell(BellKind::Slk, 3, tm(0.7), DetectorModel::symmetric(0.9).unwrap(), &quick()).unwrap();
        let b = maximize_bell(BellKind::Slk, 3, tm(0.7), DetectorModel::symmetric(0.9).unwrap(), &quick()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
    }

    #[test]
    fn sound_and_gauge_invariant() {
        let r = tm(1.2);
        let det = DetectorModel::ideal();
        let res = maximize_bell(BellKind::Cglmp, 4, r, det, &quick()).unwrap();
        let f = BellFunctional::new(BellKind::Cglmp, 4).unwrap();
        assert_eq!(res.best_value, f.value(&res.best_settings, r, det).unwrap());
        assert!(res.best_value >= f.value(&MeasurementSettings::zero(), r, det).unwrap());
        for phi in [0.3, -1.7, 2.9] {
            let v = f.value(&res.best_settings.phase_gauge(phi), r, det).unwrap();
            assert!((v - res.best_value).abs() < 1e-12);
        }
    }

    #[test]
    fn real_search_uses_real_settings() {
        let cfg = OptimizerConfig { restrict_real: true, ..quick() };
        let res = maximize_bell(BellKind::Cglmp, 3, tm(0.5), DetectorModel::ideal(), &cfg).unwrap();
        let s = res.best_settings;
        assert!([s.alpha1, s.alpha2, s.beta1, s.beta2].iter().all(|z| z.im == 0.0));
        assert!(res.best_value > 2.0);
    }
}
