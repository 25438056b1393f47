use super::distribution::joint_photon_distribution;
use super::overlap::FACTORIAL_SAFE_LIMIT;
use crate::error::{BellError, Result};
use crate::types::{MeasurementSettings, TmssParams};

/// Truncation of the photon-pair sum (`j_max`) and of detected counts (`k_max`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoff {
    j_max: usize,
    k_max: usize,
}

impl FockCutoff {
    pub fn new(j_max: usize, k_max: usize) -> Result<Self> {
        if k_max < j_max {
            return Err(BellError::InvalidCutoff(format!("k_max = {k_max} below j_max = {j_max}")));
        }
        if j_max + k_max > FACTORIAL_SAFE_LIMIT {
            return Err(BellError::InvalidCutoff(format!(
                "j_max + k_max = {} beyond factorial-safe limit {FACTORIAL_SAFE_LIMIT}",
                j_max + k_max
            )));
        }
        Ok(Self { j_max, k_max })
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }
}

/// Smallest `j_max` whose discarded pair amplitude has norm
/// `tanh^{j_max+1}(r) <= tol / 4`.
///
/// The amplitude, not the mass, is what matters: dropping a component of
/// norm `e` moves an expectation of a unitary by up to `2e + e^2`.
pub fn source_cutoff(r: TmssParams, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(BellError::InvalidConfig(format!("tolerance {tol} must be positive")));
    }
    let t = r.r().tanh();
    if t == 0.0 {
        return Ok(0);
    }
    let j = ((tol / 4.0).ln() / t.ln() - 1.0).ceil();
    if !j.is_finite() || j > FACTORIAL_SAFE_LIMIT as f64 {
        return Err(BellError::ToleranceUnreachable(tol));
    }
    Ok(j.max(0.0) as usize)
}

/// Cutoff for which every oracle correlation is within `tol` of its
/// untruncated value: the pair amplitude is cut per [`source_cutoff`] and
/// `k_max` is doubled until each setting pair misses at most `tol / 2` of
/// probability (count weights have modulus <= 1).
pub fn choose_cutoff(r: TmssParams, settings: &MeasurementSettings, tol: f64) -> Result<FockCutoff> {
    settings.validate()?;
    let j_max = source_cutoff(r, tol)?;
    let m = [settings.alpha1, settings.alpha2, settings.beta1, settings.beta2]
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    let mut k_max = j_max + (m * m + 6.0 * m + 10.0).ceil() as usize;
    loop {
        if j_max + k_max > FACTORIAL_SAFE_LIMIT {
            return Err(BellError::ToleranceUnreachable(tol));
        }
        let cutoff = FockCutoff::new(j_max, k_max)?;
        let mut worst = 0.0f64;
        for a in 0..2 {
            for b in 0..2 {
                let dist = joint_photon_distribution(settings.alice(a), settings.bob(b), r, cutoff)?;
                worst = worst.max(dist.tail_bound());
            }
        }
        if worst <= tol / 2.0 {
            return Ok(cutoff);
        }
        k_max *= 2;
    }
}
