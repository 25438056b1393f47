//! CGLMP and SLK Bell values in correlation form.

use num_complex::Complex64;

use super::coefficients::{coefficients, slk_coefficients_via_dft, CoefficientTable};
use super::tmss::corr_for_detector;
use crate::error::{BellError, Result};
use crate::types::{BellKind, BellScenario, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams};

/// Largest imaginary part tolerated before a Bell value is declared broken.
pub const REALITY_TOLERANCE: f64 = 1e-10;

/// A Bell functional with its coefficient table built once.
#[derive(Debug, Clone)]
pub struct BellFunctional {
    scenario: BellScenario,
    table: CoefficientTable,
}

impl BellFunctional {
    /// Builds the coefficient table. SLK tables are cross-checked against
    /// the Fourier-inverted `S(x)` profile and rejected on mismatch.
    pub fn new(kind: BellKind, d: u32) -> Result<Self> {
        let scenario = BellScenario::new(kind, d)?;
        let table = match kind {
            BellKind::Cglmp => coefficients(kind, d)?,
            BellKind::Slk => slk_coefficients_via_dft(d)?.table,
        };
        Ok(Self { scenario, table })
    }

    pub fn kind(&self) -> BellKind {
        self.scenario.kind()
    }

    pub fn d(&self) -> u32 {
        self.scenario.d()
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    /// `sum_{a,b} sum_n f_ab(n) C_ab^(n)` for any correlation source.
    /// `corr(a, b, order)` uses zero-based setting indices.
    pub fn evaluate_with<F>(&self, mut corr: F) -> Result<f64>
    where
        F: FnMut(usize, usize, CorrelationOrder) -> Result<Complex64>,
    {
        let mut total = Complex64::new(0.0, 0.0);
        for order in CorrelationOrder::all(self.d())? {
            for a in 0..2 {
                for b in 0..2 {
                    total += self.table.get(a, b, order.n()) * corr(a, b, order)?;
                }
            }
        }
        if total.im.abs() >= REALITY_TOLERANCE {
            return Err(BellError::NonRealFunctional(total.im));
        }
        Ok(total.re)
    }

    /// Bell value for the TMSS with the given settings and detectors.
    pub fn value(&self, settings: &MeasurementSettings, r: TmssParams, det: DetectorModel) -> Result<f64> {
        settings.validate()?;
        self.value_unchecked(settings, r.r(), det)
    }

    pub(crate) fn value_unchecked(&self, settings: &MeasurementSettings, r: f64, det: DetectorModel) -> Result<f64> {
        self.evaluate_with(|a, b, order| corr_for_detector(order, settings.alice(a), settings.bob(b), r, det))
    }
}

/// CGLMP value in correlation form.
pub fn cglmp_value(settings: &MeasurementSettings, r: TmssParams, d: u32, det: DetectorModel) -> Result<f64> {
    BellFunctional::new(BellKind::Cglmp, d)?.value(settings, r, det)
}

/// SLK value in correlation form, normalized to local bound 2.
pub fn slk_value(settings: &MeasurementSettings, r: TmssParams, d: u32, det: DetectorModel) -> Result<f64> {
    BellFunctional::new(BellKind::Slk, d)?.value(settings, r, det)
}

pub fn bell_value(
    kind: BellKind,
    settings: &MeasurementSettings,
    r: TmssParams,
    d: u32,
    det: DetectorModel,
) -> Result<f64> {
    BellFunctional::new(kind, d)?.value(settings, r, det)
}

/// `C_11 + C_12 - C_21 + C_22` with parity (`d = 2`) correlations.
pub fn chsh_combination(settings: &MeasurementSettings, r: TmssParams, det: DetectorModel) -> Result<f64> {
    settings.validate()?;
    let order = CorrelationOrder::new(1, 2)?;
    let c = |a: usize, b: usize| corr_for_detector(order, settings.alice(a), settings.bob(b), r.r(), det);
    let total = c(0, 0)? + c(0, 1)? - c(1, 0)? + c(1, 1)?;
    Ok(total.re)
}
