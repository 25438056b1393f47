use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_amplitude, Check, Suite, VerifyConfig};
use crate::bell::{characteristic_tmss, order_parameter, quasiprob_tmss};
use crate::error::{BellError, Result};
use crate::types::{ComplexAmplitude, CorrelationOrder, TmssParams};

const S: Suite = Suite::Fourier;
const TOLERANCE: f64 = 1e-3;

/// Square grid `[-half_width, half_width]` with `points` nodes per real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGrid {
    pub half_width: f64,
    pub points: usize,
}

impl Default for FourierGrid {
    fn default() -> Self {
        Self { half_width: 7.0, points: 43 }
    }
}

impl FourierGrid {
    fn nodes(&self) -> Vec<(f64, f64)> {
        let h = 2.0 * self.half_width / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let w = if i == 0 || i == self.points - 1 { 0.5 * h } else { h };
                (-self.half_width + i as f64 * h, w)
            })
            .collect()
    }
}

/// `W(alpha, beta; s)` by trapezoidal quadrature of the characteristic
/// function over both complex planes, with kernel
/// `exp(alpha xi^* - alpha^* xi) exp(beta eta^* - beta^* eta) / pi^4`.
pub fn fourier_quasiprob(
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
    r: TmssParams,
    s: ComplexAmplitude,
    grid: FourierGrid,
) -> Result<ComplexAmplitude> {
    if grid.points < 2 || !(grid.half_width > 0.0) {
        return Err(BellError::InvalidConfig(format!("bad quadrature grid {grid:?}")));
    }
    let nodes = grid.nodes();
    let plane: Vec<(Complex64, f64)> = nodes
        .iter()
        .flat_map(|&(x, wx)| nodes.iter().map(move |&(y, wy)| (Complex64::new(x, y), wx * wy)))
        .collect();
    let kernel = |a: Complex64, z: Complex64| (a * z.conj() - a.conj() * z).exp();
    let beta_kernel: Vec<Complex64> = plane.iter().map(|&(eta, w)| w * kernel(beta, eta)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for &(xi, wxi) in &plane {
        let mut inner = Complex64::new(0.0, 0.0);
        for (&(eta, _), &kb) in plane.iter().zip(&beta_kernel) {
            inner += characteristic_tmss(xi, eta, r, s)? * kb;
        }
        total += wxi * kernel(alpha, xi) * inner;
    }
    Ok(total / PI.powi(4))
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xf0);
    let r = TmssParams::new(0.2)?;
    let s = order_parameter(CorrelationOrder::new(1, 3)?);
    let grid = FourierGrid::default();
    let mut worst = 0.0f64;
    let mut cases = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))];
    cases.extend((0..3).map(|_| (random_amplitude(&mut rng, 0.5), random_amplitude(&mut rng, 0.5))));
    for (alpha, beta) in cases {
        let numeric = fourier_quasiprob(alpha, beta, r, s, grid)?;
        worst = worst.max((numeric - quasiprob_tmss(alpha, beta, r, s)?).norm());
    }
    Ok(vec![Check::below(
        S,
        format!("characteristic function inverts to W (r=0.2, d=3, n=1, {}^4 grid)", grid.points),
        worst,
        TOLERANCE,
    )])
}
