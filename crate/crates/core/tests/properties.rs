use proptest::prelude::*;

use phasebell_core::bell::{corr_tmss, corr_tmss_lossy, BellFunctional};
use phasebell_core::fock::{choose_cutoff, joint_photon_distribution, oracle_correlation};
use phasebell_core::{
    BellKind, ComplexAmplitude, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams,
};

fn amp(max: f64) -> impl Strategy<Value = ComplexAmplitude> {
    (-max..max, -max..max).prop_map(|(re, im)| ComplexAmplitude::new(re, im))
}

fn settings(max: f64) -> impl Strategy<Value = MeasurementSettings> {
    (amp(max), amp(max), amp(max), amp(max))
        .prop_map(|(alpha1, alpha2, beta1, beta2)| MeasurementSettings { alpha1, alpha2, beta1, beta2 })
}

fn kind() -> impl Strategy<Value = BellKind> {
    prop_oneof![Just(BellKind::Cglmp), Just(BellKind::Slk)]
}

proptest! {
    #[test]
    fn lossy_correlation_conjugate_and_bounded(
        d in 2u32..=10,
        n_frac in 0.0f64..1.0,
        a in amp(2.0),
        b in amp(2.0),
        r in 0.0f64..3.0,
        eta_a in 0.05f64..=1.0,
        eta_b in 0.05f64..=1.0,
    ) {
        let n = 1 + ((d - 1) as f64 * n_frac) as u32 % (d - 1);
        let order = CorrelationOrder::new(n, d).unwrap();
        let r = TmssParams::new(r).unwrap();
        let det = DetectorModel::new(eta_a, eta_b).unwrap();
        let c = corr_tmss_lossy(order, a, b, r, det).unwrap();
        let c_conj = corr_tmss_lossy(order.conjugate(), a, b, r, det).unwrap();
        prop_assert!((c_conj - c.conj()).norm() < 1e-12);
        prop_assert!(c.norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn global_phase_gauge_leaves_bell_value(
        k in kind(),
        d in 2u32..=8,
        s in settings(1.5),
        r in 0.0f64..2.5,
        eta in 0.3f64..=1.0,
        phi in -3.0f64..3.0,
    ) {
        let f = BellFunctional::new(k, d).unwrap();
        let r = TmssParams::new(r).unwrap();
        let det = DetectorModel::symmetric(eta).unwrap();
        let v = f.value(&s, r, det).unwrap();
        let g = f.value(&s.phase_gauge(phi), r, det).unwrap();
        prop_assert!((v - g).abs() < 1e-12, "{} vs {}", v, g);
    }

    #[test]
    fn zero_settings_give_local_bound_without_loss(k in kind(), d in 2u32..=10, r in 0.0f64..3.0) {
        let f = BellFunctional::new(k, d).unwrap();
        let v = f.value(&MeasurementSettings::zero(), TmssParams::new(r).unwrap(), DetectorModel::ideal()).unwrap();
        prop_assert!((v - 2.0).abs() < 1e-12, "{}", v);
    }

    #[test]
    fn oracle_matches_closed_form(d in 2u32..=5, a in amp(0.8), b in amp(0.8), r in 0.0f64..1.0) {
        let r = TmssParams::new(r).unwrap();
        let s = MeasurementSettings { alpha1: a, alpha2: a, beta1: b, beta2: b };
        let dist = joint_photon_distribution(a, b, r, choose_cutoff(r, &s, 1e-10).unwrap()).unwrap();
        for order in CorrelationOrder::all(d).unwrap() {
            let closed = corr_tmss(order, a, b, r).unwrap();
            prop_assert!((oracle_correlation(order, &dist) - closed).norm() < 1e-8);
        }
    }
}
