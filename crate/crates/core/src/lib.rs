//! Phase-space tests of high-dimensional (CGLMP and SLK) Bell inequalities
//! for the two-mode squeezed vacuum, with lossy photon counting.
//!
//! - [`bell`]: closed-form correlations and Bell functionals.
//! - [`fock`]: brute-force photon-number oracle for every closed form.
//! - [`optimize`]: multistart simplex maximization and efficiency thresholds.
//! - [`verify`]: named cross-check suites.

pub mod bell;
pub mod error;
pub mod fock;
pub mod optimize;
pub mod types;
pub mod verify;

pub use error::{BellError, Result};
pub use types::{
    BellKind, BellScenario, ComplexAmplitude, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams,
};
