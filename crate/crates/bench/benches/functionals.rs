use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use phasebell_core::bell::{corr_tmss, corr_tmss_lossy, BellFunctional};
use phasebell_core::fock::{choose_cutoff, joint_photon_distribution};
use phasebell_core::optimize::{maximize_bell, OptimizerConfig};
use phasebell_core::{
    BellKind, ComplexAmplitude, CorrelationOrder, DetectorModel, MeasurementSettings, TmssParams,
};

fn settings() -> MeasurementSettings {
    MeasurementSettings {
        alpha1: ComplexAmplitude::new(0.31, -0.12),
        alpha2: ComplexAmplitude::new(-0.44, 0.05),
        beta1: ComplexAmplitude::new(-0.27, 0.18),
        beta2: ComplexAmplitude::new(0.52, 0.09),
    }
}

fn correlations(c: &mut Criterion) {
    let r = TmssParams::new(1.0).unwrap();
    let order = CorrelationOrder::new(2, 5).unwrap();
    let (a, b) = (ComplexAmplitude::new(0.3, -0.2), ComplexAmplitude::new(-0.1, 0.4));
    let det = DetectorModel::new(0.8, 0.7).unwrap();
    c.bench_function("corr_tmss", |bch| bch.iter(|| corr_tmss(black_box(order), black_box(a), black_box(b), r)));
    c.bench_function("corr_tmss_lossy", |bch| {
        bch.iter(|| corr_tmss_lossy(black_box(order), black_box(a), black_box(b), r, det))
    });
}

fn bell_values(c: &mut Criterion) {
    let r = TmssParams::new(1.0).unwrap();
    let s = settings();
    let mut group = c.benchmark_group("bell_value");
    for kind in [BellKind::Cglmp, BellKind::Slk] {
        for d in [2u32, 5, 10] {
            let f = BellFunctional::new(kind, d).unwrap();
            group.bench_with_input(BenchmarkId::new(kind.as_str(), d), &f, |bch, f| {
                bch.iter(|| f.value(black_box(&s), r, DetectorModel::ideal()))
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let r = TmssParams::new(1.0).unwrap();
    let s = settings();
    let cutoff = choose_cutoff(r, &s, 1e-10).unwrap();
    c.bench_function("joint_photon_distribution r=1", |bch| {
        bch.iter(|| joint_photon_distribution(black_box(s.alpha1), black_box(s.beta1), r, cutoff))
    });
}

fn optimizer(c: &mut Criterion) {
    let cfg = OptimizerConfig { starts: 8, ..OptimizerConfig::default() };
    let mut group = c.benchmark_group("maximize_bell");
    group.sample_size(10);
    for d in [2u32, 10] {
        group.bench_with_input(BenchmarkId::new("cglmp r=1", d), &d, |bch, &d| {
            bch.iter(|| maximize_bell(BellKind::Cglmp, d, TmssParams::new(1.0).unwrap(), DetectorModel::ideal(), &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, correlations, bell_values, oracle, optimizer);
criterion_main!(benches);
