use thiserror::Error;

/// Errors raised by the Bell-test library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BellError {
    #[error("outcome dimension d = {0} must be at least 2")]
    InvalidDimension(u32),

    #[error("correlation order n = {n} outside 1..={max} for d = {d}", max = d - 1)]
    OrderOutOfRange { n: u32, d: u32 },

    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    #[error("squeezing parameter r = {0} must be finite and non-negative")]
    InvalidSqueezing(f64),

    #[error("detector efficiency {0} outside (0, 1]")]
    InvalidEfficiency(f64),

    #[error("degenerate order parameter: |1 - s^2| = {0:e}")]
    DegenerateOrderParameter(f64),

    #[error("singular lossy denominator: |T| = {0:e}")]
    SingularDenominator(f64),

    #[error("cotangent pole at x = {x} for d = {d}")]
    CotangentPole { x: f64, d: u32 },

    #[error("coefficient index out of range: {0}")]
    CoefficientIndex(String),

    #[error("dimension d = {0} too large for exhaustive enumeration (max 8)")]
    EnumerationTooLarge(u32),

    /// Imaginary part of a Bell functional above tolerance; an implementation
    /// bug rather than an input error.
    #[error("Bell functional not real: imaginary part {0:e}")]
    NonRealFunctional(f64),

    #[error("coefficient tables disagree: max deviation {0:e}")]
    CoefficientMismatch(f64),

    #[error("invalid Fock cutoff: {0}")]
    InvalidCutoff(String),

    #[error("truncation tail {tail:e} exceeds tolerance {tol:e}")]
    TruncationTail { tail: f64, tol: f64 },

    #[error("tolerance {0:e} unreachable below the factorial-safe photon limit")]
    ToleranceUnreachable(f64),

    #[error("lossy oracle paths disagree by {0:e}")]
    OraclePathMismatch(f64),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("optimum {reported} does not reproduce on re-evaluation ({fresh})")]
    Irreproducible { reported: f64, fresh: f64 },

    #[error("no optimizer start converged")]
    NoConvergence,

    #[error("no violation at unit efficiency (best value {0})")]
    NoViolationAtUnitEfficiency(f64),

    #[error("non-monotone violation region over efficiency scan: {0:?}")]
    NonMonotoneRegion(Vec<(f64, f64)>),
}

pub type Result<T> = std::result::Result<T, BellError>;
