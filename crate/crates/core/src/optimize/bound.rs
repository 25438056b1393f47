use super::{maximize_functional, OptimizerConfig};
use crate::bell::BellFunctional;
use crate::error::{BellError, Result};
use crate::types::{BellKind, DetectorModel, TmssParams};

/// A value counts as a violation only above `2 + VIOLATION_MARGIN`.
pub const VIOLATION_MARGIN: f64 = 1e-7;

/// Efficiencies `k / PRESCAN_POINTS`, `k = 1..=PRESCAN_POINTS`, checked before bisection.
pub const PRESCAN_POINTS: usize = 16;

/// Which detectors the scanned efficiency applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EfficiencyMode {
    /// `eta_A = eta_B = eta`.
    Symmetric,
    /// `eta_A = 1`, `eta_B = eta`.
    Asymmetric,
}

impl EfficiencyMode {
    pub fn detector(self, eta: f64) -> Result<DetectorModel> {
        match self {
            Self::Symmetric => DetectorModel::symmetric(eta),
            Self::Asymmetric => DetectorModel::new(1.0, eta),
        }
    }
}

impl std::str::FromStr for EfficiencyMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "symmetric" | "sym" => Ok(Self::Symmetric),
            "asymmetric" | "asym" => Ok(Self::Asymmetric),
            other => Err(format!("unknown efficiency mode `{other}`")),
        }
    }
}

/// Threshold efficiency with the evidence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyScan {
    /// Midpoint of the final bracket.
    pub threshold: f64,
    /// Largest efficiency found without violation (0 if none was).
    pub lower: f64,
    /// Smallest efficiency found with violation.
    pub upper: f64,
    /// `(eta, optimized value)` for the pre-scan.
    pub prescan: Vec<(f64, f64)>,
}

/// Smallest efficiency at which the optimized Bell value exceeds
/// `2 + VIOLATION_MARGIN`, bracketed to width `eta_tol`.
///
/// A coarse pre-scan must show the violation switching on exactly once;
/// otherwise the scan is returned as an error.
pub fn bound_efficiency(
    kind: BellKind,
    d: u32,
    r: TmssParams,
    mode: EfficiencyMode,
    eta_tol: f64,
    cfg: &OptimizerConfig,
) -> Result<EfficiencyScan> {
    cfg.validate()?;
    if !(eta_tol > 0.0) || !eta_tol.is_finite() {
        return Err(BellError::InvalidConfig(format!("eta_tol {eta_tol} must be positive")));
    }
    let functional = BellFunctional::new(kind, d)?;
    let value_at = |eta: f64| -> Result<f64> {
        Ok(maximize_functional(&functional, r, mode.detector(eta)?, cfg)?.best_value)
    };
    let violates = |v: f64| v > 2.0 + VIOLATION_MARGIN;

    let mut prescan = Vec::with_capacity(PRESCAN_POINTS);
    for k in 1..=PRESCAN_POINTS {
        let eta = k as f64 / PRESCAN_POINTS as f64;
        prescan.push((eta, value_at(eta)?));
    }
    let top = prescan[PRESCAN_POINTS - 1].1;
    if !violates(top) {
        return Err(BellError::NoViolationAtUnitEfficiency(top));
    }
    let first = prescan.iter().position(|&(_, v)| violates(v)).unwrap_or(PRESCAN_POINTS - 1);
    if prescan[first..].iter().any(|&(_, v)| !violates(v)) {
        return Err(BellError::NonMonotoneRegion(prescan));
    }

    let mut lower = if first == 0 { 0.0 } else { prescan[first - 1].0 };
    let mut upper = prescan[first].0;
    while upper - lower > eta_tol {
        let mid = 0.5 * (lower + upper);
        if violates(value_at(mid)?) {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    Ok(EfficiencyScan { threshold: 0.5 * (lower + upper), lower, upper, prescan })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_parsing_and_detectors() {
        assert_eq!("Symmetric".parse::<EfficiencyMode>().unwrap(), EfficiencyMode::Symmetric);
        assert_eq!("asym".parse::<EfficiencyMode>().unwrap(), EfficiencyMode::Asymmetric);
        assert!("both".parse::<EfficiencyMode>().is_err());
        let det = EfficiencyMode::Asymmetric.detector(0.4).unwrap();
        assert_eq!((det.eta_a(), det.eta_b()), (1.0, 0.4));
    }

    #[test]
    fn no_threshold_without_entanglement() {
        let cfg = OptimizerConfig { starts: 2, ..OptimizerConfig::default() };
        let res = bound_efficiency(BellKind::Cglmp, 2, TmssParams::new(0.0).unwrap(), EfficiencyMode::Symmetric, 1e-2, &cfg);
        assert!(matches!(res, Err(BellError::NoViolationAtUnitEfficiency(_))));
    }

    #[test]
    fn bracket_has_requested_width() {
        let cfg = OptimizerConfig { starts: 4, ..OptimizerConfig::default() };
        let scan =
            bound_efficiency(BellKind::Cglmp, 2, TmssParams::new(0.3).unwrap(), EfficiencyMode::Symmetric, 1e-2, &cfg)
                .unwrap();
        assert!(scan.upper - scan.lower <= 1e-2);
        assert!(scan.lower < scan.threshold && scan.threshold < scan.upper);
        assert_eq!(scan.prescan.len(), PRESCAN_POINTS);
        assert!(scan.threshold > 0.6 && scan.threshold < 1.0);
    }
}
