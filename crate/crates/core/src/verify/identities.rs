use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{random_amplitude, random_settings, Check, Suite, VerifyConfig};
use crate::bell::functional::REALITY_TOLERANCE;
use crate::bell::phase::omega_power;
use crate::bell::tmss::{corr_for_detector, corr_tmss_unchecked};
use crate::bell::{
    chsh_combination, correlation_weight, corr_tmss, corr_tmss_lossy, order_parameter, quasiprob_tmss, BellFunctional,
};
use crate::error::Result;
use crate::types::{BellKind, CorrelationOrder, DetectorModel, TmssParams};

const S: Suite = Suite::Identities;

#[derive(Default)]
struct Worst {
    quasiprob: f64,
    wigner: f64,
    lossy_reduction: f64,
    conjugate: f64,
    bounded: f64,
    collapse: f64,
    imaginary: f64,
}

fn random_detector(rng: &mut ChaCha8Rng) -> Result<DetectorModel> {
    DetectorModel::new(rng.gen_range(0.05..=1.0), rng.gen_range(0.05..=1.0))
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1d);
    let mut w = Worst::default();

    for _ in 0..cfg.identity_cases {
        let d = rng.gen_range(2..=10u32);
        let r = TmssParams::new(rng.gen_range(0.0..=2.0))?;
        let (alpha, beta) = (random_amplitude(&mut rng, 1.5), random_amplitude(&mut rng, 1.5));
        let det = random_detector(&mut rng)?;

        for order in CorrelationOrder::all(d)? {
            let c = corr_tmss(order, alpha, beta, r)?;
            let s = order_parameter(order);
            let w_s = quasiprob_tmss(alpha, beta, r, s)?;
            let via_w = PI * PI * (1.0 - s * s) / 4.0 * w_s;
            w.quasiprob = w.quasiprob.max((c - via_w).norm() / c.norm().max(f64::MIN_POSITIVE));

            let ideal_limit = corr_tmss_lossy(order, alpha, beta, r, DetectorModel::ideal())?;
            w.lossy_reduction = w.lossy_reduction.max((ideal_limit - c).norm());

            let lossy = corr_tmss_lossy(order, alpha, beta, r, det)?;
            let conj_order = order.conjugate();
            let c_conj = corr_tmss(conj_order, alpha, beta, r)?;
            let lossy_conj = corr_tmss_lossy(conj_order, alpha, beta, r, det)?;
            w.conjugate = w.conjugate.max((c_conj - c.conj()).norm()).max((lossy_conj - lossy.conj()).norm());
            w.bounded = w.bounded.max(c.norm() - 1.0).max(lossy.norm() - 1.0);
        }

        let o = CorrelationOrder::new(1, 2)?;
        let zero = Complex64::new(0.0, 0.0);
        let wigner = PI * PI / 4.0 * quasiprob_tmss(alpha, beta, r, zero)?;
        w.wigner = w.wigner.max((corr_tmss_unchecked(o, alpha, beta, r.r()) - wigner).norm());

        let settings = random_settings(&mut rng, 1.5);
        let cglmp = BellFunctional::new(BellKind::Cglmp, 2)?.value(&settings, r, det)?;
        let slk = BellFunctional::new(BellKind::Slk, 2)?.value(&settings, r, det)?;
        let chsh = chsh_combination(&settings, r, det)?;
        w.collapse = w.collapse.max((cglmp - slk).abs()).max((cglmp - chsh).abs());

        for kind in [BellKind::Cglmp, BellKind::Slk] {
            let f = BellFunctional::new(kind, d)?;
            let mut total = Complex64::new(0.0, 0.0);
            for order in CorrelationOrder::all(d)? {
                for a in 0..2 {
                    for b in 0..2 {
                        let c = corr_for_detector(order, settings.alice(a), settings.bob(b), r.r(), det)?;
                        total += f.table().get(a, b, order.n()) * c;
                    }
                }
            }
            w.imaginary = w.imaginary.max(total.im.abs());
        }
    }

    let n = cfg.identity_cases;
    let mut checks = vec![
        Check::below(S, format!("correlation = pi^2 (1 - s^2)/4 W(s), relative ({n} cases)"), w.quasiprob, 1e-12),
        Check::below(S, "d=2 correlation = pi^2/4 W(0)", w.wigner, 1e-12),
        Check::below(S, "lossy form at unit efficiency", w.lossy_reduction, 1e-12),
        Check::below(S, "conjugate symmetry C(d-n) = C(n)*, ideal and lossy", w.conjugate, 1e-12),
        Check::new(S, "|correlation| <= 1", w.bounded <= 1e-15, format!("largest excess {:.3e}", w.bounded.max(0.0))),
        Check::below(S, "d=2: CGLMP = SLK = CHSH combination", w.collapse, 1e-12),
        Check::below(S, "|Im Bell value|", w.imaginary, REALITY_TOLERANCE),
    ];
    checks.extend(weight_conditions()?);
    Ok(checks)
}

/// Zero sum over one outcome, shift invariance, equal steps, periodicity in `n`.
fn weight_conditions() -> Result<Vec<Check>> {
    let mut sum = 0.0f64;
    let mut shift = 0.0f64;
    let mut steps = 0.0f64;
    let mut period = 0.0f64;
    for d in 2..=10u32 {
        let dd = u64::from(d);
        for order in CorrelationOrder::all(d)? {
            for l in 0..dd {
                let total: Complex64 = (0..dd).map(|k| correlation_weight(k, l, order)).sum();
                sum = sum.max(total.norm());
                for k in 0..dd {
                    let w = correlation_weight(k, l, order);
                    for g in 1..dd {
                        shift = shift.max((correlation_weight(k + g, l + g, order) - w).norm());
                    }
                    let dk = (correlation_weight(k + 1, l, order) - w).norm();
                    let dl = (correlation_weight(k, l + 1, order) - w).norm();
                    steps = steps.max((dk - dl).abs());
                    let diff = k as i64 - l as i64;
                    for m in 1..=3i64 {
                        let extended = omega_power((i64::from(order.n()) + m * i64::from(d)) * diff, d);
                        period = period.max((extended - w).norm());
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::below(S, "weights sum to zero over k", sum, 1e-12),
        Check::below(S, "weights invariant under joint shift", shift, 1e-12),
        Check::below(S, "equal weight steps in k and l", steps, 1e-12),
        Check::below(S, "weights periodic in n with period d", period, 1e-12),
    ])
}
