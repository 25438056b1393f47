//! Closed-form correlations, quasiprobabilities and Bell functionals.

pub mod classical;
pub mod coefficients;
pub mod functional;
pub mod phase;
pub mod tmss;

pub use classical::{classical_bound_enumeration, deterministic_maximum, select_cglmp_reading};
pub use coefficients::{
    cglmp_epsilon, slk_coefficient_s, slk_coefficients_via_dft, slk_epsilon, CglmpReading, CoefficientTable,
    DftCoefficients,
};
pub use functional::{bell_value, chsh_combination, cglmp_value, slk_value, BellFunctional};
pub use phase::{correlation_weight, omega_power, order_parameter};
pub use tmss::{characteristic_tmss, corr_tmss, corr_tmss_lossy, quasiprob_tmss};
