//! Search coordinates adapted to the squeezing.
//!
//! At large `r` the correlation exponent is stiff along `alpha + beta^*`
//! (scale `e^{r}`) and soft along `alpha - beta^*` (scale `e^{-r}`). Writing
//! the settings as a shared stiff offset plus soft deviations keeps the
//! objective well conditioned for a box of fixed width at every `r`.

use num_complex::Complex64;

use crate::types::MeasurementSettings;

/// Maps search coordinates to settings.
///
/// Full search (8 reals): `m, u1, u2, v2` complex, with
/// `alpha_a = e^{r} m + e^{-r} u_a`, `beta_1^* = -e^{r} m` and
/// `beta_2^* = -e^{r} m + e^{-r} v2`.
/// Real search (4 reals): the same with `m, u1, u2, v2` real.
/// The map is linear and onto, so no setting is out of reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeCoords {
    stiff: f64,
    soft: f64,
    restrict_real: bool,
}

impl SqueezeCoords {
    pub fn new(r: f64, restrict_real: bool) -> Self {
        Self { stiff: r.exp(), soft: (-r).exp(), restrict_real }
    }

    pub fn dim(&self) -> usize {
        if self.restrict_real {
            4
        } else {
            8
        }
    }

    fn split(&self, y: &[f64]) -> [Complex64; 4] {
        if self.restrict_real {
            [0, 1, 2, 3].map(|i| Complex64::new(y[i], 0.0))
        } else {
            [0, 1, 2, 3].map(|i| Complex64::new(y[2 * i], y[2 * i + 1]))
        }
    }

    pub fn settings(&self, y: &[f64]) -> MeasurementSettings {
        let [m, u1, u2, v2] = self.split(y);
        let big = self.stiff * m;
        MeasurementSettings {
            alpha1: big + self.soft * u1,
            alpha2: big + self.soft * u2,
            beta1: (-big).conj(),
            beta2: (-big + self.soft * v2).conj(),
        }
    }
}
