//! Domain types shared by every module and re-exported at the crate root.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{BellError, Result};

/// Phase-space displacements, characteristic variables, correlation values.
pub type ComplexAmplitude = Complex64;

pub(crate) fn check_finite(z: ComplexAmplitude, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(BellError::NonFinite { what })
    }
}

/// Which Bell functional is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    Cglmp,
    Slk,
}

impl BellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BellKind::Cglmp => "cglmp",
            BellKind::Slk => "slk",
        }
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cglmp" => Ok(BellKind::Cglmp),
            "slk" => Ok(BellKind::Slk),
            other => Err(format!("unknown Bell kind '{other}' (expected cglmp or slk)")),
        }
    }
}

/// Inequality kind together with its outcome dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BellScenario {
    kind: BellKind,
    d: u32,
}

impl BellScenario {
    pub fn new(kind: BellKind, d: u32) -> Result<Self> {
        check_dimension(d)?;
        Ok(Self { kind, d })
    }

    pub fn kind(&self) -> BellKind {
        self.kind
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

pub(crate) fn check_dimension(d: u32) -> Result<()> {
    if d < 2 {
        Err(BellError::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// Correlation order `n` paired with the dimension it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrelationOrder {
    n: u32,
    d: u32,
}

impl CorrelationOrder {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        check_dimension(d)?;
        if n == 0 || n >= d {
            return Err(BellError::OrderOutOfRange { n, d });
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The order `d - n`, whose correlation is the complex conjugate of this one.
    pub fn conjugate(&self) -> Self {
        Self { n: self.d - self.n, d: self.d }
    }

    /// All orders `1..d` for a dimension.
    pub fn all(d: u32) -> Result<impl Iterator<Item = CorrelationOrder>> {
        check_dimension(d)?;
        Ok((1..d).map(move |n| CorrelationOrder { n, d }))
    }
}

/// Squeezing of the two-mode squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmssParams {
    r: f64,
}

impl TmssParams {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(BellError::InvalidSqueezing(r));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Per-party photon-detection efficiencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    eta_a: f64,
    eta_b: f64,
}

impl DetectorModel {
    pub fn new(eta_a: f64, eta_b: f64) -> Result<Self> {
        for eta in [eta_a, eta_b] {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(BellError::InvalidEfficiency(eta));
            }
        }
        Ok(Self { eta_a, eta_b })
    }

    pub fn ideal() -> Self {
        Self { eta_a: 1.0, eta_b: 1.0 }
    }

    pub fn symmetric(eta: f64) -> Result<Self> {
        Self::new(eta, eta)
    }

    pub fn eta_a(&self) -> f64 {
        self.eta_a
    }

    pub fn eta_b(&self) -> f64 {
        self.eta_b
    }

    pub fn is_ideal(&self) -> bool {
        self.eta_a == 1.0 && self.eta_b == 1.0
    }
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self::ideal()
    }
}

/// Two displacement settings per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    pub alpha1: ComplexAmplitude,
    pub alpha2: ComplexAmplitude,
    pub beta1: ComplexAmplitude,
    pub beta2: ComplexAmplitude,
}

impl MeasurementSettings {
    pub fn new(
        alpha1: ComplexAmplitude,
        alpha2: ComplexAmplitude,
        beta1: ComplexAmplitude,
        beta2: ComplexAmplitude,
    ) -> Result<Self> {
        let s = Self { alpha1, alpha2, beta1, beta2 };
        s.validate()?;
        Ok(s)
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { alpha1: z, alpha2: z, beta1: z, beta2: z }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite(self.alpha1, "setting alpha1")?;
        check_finite(self.alpha2, "setting alpha2")?;
        check_finite(self.beta1, "setting beta1")?;
        check_finite(self.beta2, "setting beta2")
    }

    /// Alice's displacement for setting `a` (0 or 1).
    pub fn alice(&self, a: usize) -> ComplexAmplitude {
        if a == 0 { self.alpha1 } else { self.alpha2 }
    }

    /// Bob's displacement for setting `b` (0 or 1).
    pub fn bob(&self, b: usize) -> ComplexAmplitude {
        if b == 0 { self.beta1 } else { self.beta2 }
    }

    /// Flat layout `[a1.re, a1.im, a2.re, a2.im, b1.re, b1.im, b2.re, b2.im]`.
    pub fn to_coords(&self) -> [f64; 8] {
        [
            self.alpha1.re,
            self.alpha1.im,
            self.alpha2.re,
            self.alpha2.im,
            self.beta1.re,
            self.beta1.im,
            self.beta2.re,
            self.beta2.im,
        ]
    }

    pub fn from_coords(x: &[f64; 8]) -> Self {
        Self {
            alpha1: Complex64::new(x[0], x[1]),
            alpha2: Complex64::new(x[2], x[3]),
            beta1: Complex64::new(x[4], x[5]),
            beta2: Complex64::new(x[6], x[7]),
        }
    }

    /// Real displacements from `[a1, a2, b1, b2]`.
    pub fn from_real_coords(x: &[f64; 4]) -> Self {
        Self::from_coords(&[x[0], 0.0, x[1], 0.0, x[2], 0.0, x[3], 0.0])
    }

    /// `alpha -> alpha e^{i phi}`, `beta -> beta e^{-i phi}`; leaves every
    /// TMSS correlation unchanged.
    pub fn phase_gauge(&self, phi: f64) -> Self {
        let u = Complex64::from_polar(1.0, phi);
        let v = u.conj();
        Self {
            alpha1: self.alpha1 * u,
            alpha2: self.alpha2 * u,
            beta1: self.beta1 * v,
            beta2: self.beta2 * v,
        }
    }
}
