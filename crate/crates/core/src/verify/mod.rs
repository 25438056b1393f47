//! Self-checks: closed forms against the photon-number oracle, local
//! bounds, analytic identities, optimizer invariants and a numerical
//! Fourier inversion.

mod classical;
mod fourier;
mod identities;
mod optimizer;
mod oracle;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::optimize::OptimizerConfig;
use crate::types::MeasurementSettings;

pub use fourier::{fourier_quasiprob, FourierGrid};

/// A named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Oracle,
    ClassicalBound,
    Identities,
    Optimizer,
    /// Slow; not part of [`Suite::All`].
    Fourier,
    All,
}

impl Suite {
    pub const FAST: [Suite; 4] = [Suite::Oracle, Suite::ClassicalBound, Suite::Identities, Suite::Optimizer];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Oracle => "oracle",
            Self::ClassicalBound => "classical-bound",
            Self::Identities => "identities",
            Self::Optimizer => "optimizer",
            Self::Fourier => "fourier",
            Self::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Self::Oracle, Self::ClassicalBound, Self::Identities, Self::Optimizer, Self::Fourier, Self::All]
            .into_iter()
            .find(|suite| suite.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Recorded finding that does not fail the suite.
    Note,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        let outcome = if passed { Outcome::Pass } else { Outcome::Fail };
        Self { suite, name: name.into(), outcome, detail: detail.into() }
    }

    fn note(suite: Suite, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { suite, name: name.into(), outcome: Outcome::Note, detail: detail.into() }
    }

    /// Pass when `worst < tol`.
    fn below(suite: Suite, name: impl Into<String>, worst: f64, tol: f64) -> Self {
        Self::new(suite, name, worst < tol, format!("max deviation {worst:.3e} (tol {tol:.0e})"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Note => "NOTE",
        };
        write!(f, "{tag} [{}] {}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Oracle agreement tolerance.
    pub tol: f64,
    /// Probability tail allowed when truncating the photon tables.
    pub cutoff_tol: f64,
    pub oracle_cases: usize,
    pub identity_cases: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            tol: 1e-8,
            cutoff_tol: 1e-10,
            oracle_cases: 100,
            identity_cases: 200,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Runs one suite, or every fast suite for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let checks = match suite {
        Suite::Oracle => oracle::run(cfg)?,
        Suite::ClassicalBound => classical::run(cfg)?,
        Suite::Identities => identities::run(cfg)?,
        Suite::Optimizer => optimizer::run(cfg)?,
        Suite::Fourier => fourier::run(cfg)?,
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::FAST {
                all.extend(run_suite(s, cfg)?.checks);
            }
            all
        }
    };
    Ok(Report { checks })
}

pub(crate) fn random_amplitude(rng: &mut ChaCha8Rng, max_norm: f64) -> Complex64 {
    let radius = max_norm * rng.gen::<f64>().sqrt();
    Complex64::from_polar(radius, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub(crate) fn random_settings(rng: &mut ChaCha8Rng, max_norm: f64) -> MeasurementSettings {
    MeasurementSettings {
        alpha1: random_amplitude(rng, max_norm),
        alpha2: random_amplitude(rng, max_norm),
        beta1: random_amplitude(rng, max_norm),
        beta2: random_amplitude(rng, max_norm),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Oracle, Suite::ClassicalBound, Suite::Identities, Suite::Optimizer, Suite::Fourier, Suite::All] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass_on_small_samples() {
        let cfg = VerifyConfig {
            oracle_cases: 8,
            identity_cases: 20,
            optimizer: OptimizerConfig { starts: 4, ..OptimizerConfig::default() },
            ..VerifyConfig::default()
        };
        for suite in [Suite::Oracle, Suite::ClassicalBound, Suite::Identities] {
            let report = run_suite(suite, &cfg).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn notes_do_not_fail() {
        let report = Report {
            checks: vec![
                Check::new(Suite::Oracle, "a", true, ""),
                Check::note(Suite::Optimizer, "b", "finding"),
            ],
        };
        assert!(report.passed());
        let failing = Report { checks: vec![Check::below(Suite::Oracle, "c", 1.0, 0.5)] };
        assert!(!failing.passed());
        assert!(failing.to_string().starts_with("FAIL [oracle] c"));
    }
}
