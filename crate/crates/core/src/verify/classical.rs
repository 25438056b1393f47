use super::{Check, Suite, VerifyConfig};
use crate::bell::classical::{classical_bound_enumeration, select_cglmp_reading};
use crate::bell::coefficients::{cglmp_coefficients, cglmp_coefficients_via_dft, slk_coefficients_via_dft, CGLMP_READING};
use crate::error::Result;
use crate::types::BellKind;

const S: Suite = Suite::ClassicalBound;

pub(super) fn run(_cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for kind in [BellKind::Cglmp, BellKind::Slk] {
        for d in 2..=5 {
            let bound = classical_bound_enumeration(kind, d)?;
            checks.push(Check::new(
                S,
                format!("{kind} local bound d={d}"),
                (bound - 2.0).abs() <= 1e-9,
                format!("enumerated {bound:.12}"),
            ));
        }
    }

    let selected = select_cglmp_reading(&[2, 3, 4, 5])?;
    checks.push(Check::new(
        S,
        "CGLMP outcome convention",
        selected == Some(CGLMP_READING),
        format!("enumeration selects {selected:?}, in use {CGLMP_READING:?}"),
    ));

    let mut cglmp_worst = 0.0f64;
    let mut slk_worst = 0.0f64;
    let mut typeset_worst = 0.0f64;
    for d in 2..=10 {
        let dft = cglmp_coefficients_via_dft(CGLMP_READING, d)?;
        cglmp_worst = cglmp_worst.max(dft.max_deviation(&cglmp_coefficients(d)?));
        let slk = slk_coefficients_via_dft(d)?;
        slk_worst = slk_worst.max(slk.closed_form_deviation);
        typeset_worst = typeset_worst.max(slk.typeset_deviation);
    }
    checks.push(Check::below(S, "CGLMP coefficients from outcome weights, d=2..10", cglmp_worst, 1e-10));
    checks.push(Check::below(S, "SLK coefficients from S(x) profile, d=2..10", slk_worst, 1e-10));
    checks.push(Check::note(
        S,
        "SLK coefficients as typeset",
        format!("printed closed form deviates by up to {typeset_worst:.3} (factor 2 and sign); profile form used"),
    ));
    Ok(checks)
}
