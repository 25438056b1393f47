//! Brute-force photon-number oracle for the closed-form correlations.
//!
//! Everything here is built from the TMSS Schmidt decomposition, displaced
//! number-state overlaps and binomial thinning; nothing reuses the Gaussian
//! closed forms it is meant to check.

pub mod cutoff;
pub mod distribution;
pub mod oracle;
pub mod overlap;

pub use cutoff::{choose_cutoff, FockCutoff};
pub use distribution::{apply_bernoulli_loss, joint_photon_distribution, tmss_amplitude, JointPhotonDistribution};
pub use oracle::{
    oracle_bell_from_correlations, oracle_bell_from_probs, oracle_correlation, oracle_correlation_lossy,
    oracle_distributions,
};
pub use overlap::{displaced_fock_overlap, displacement_matrix};
