use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qreality::scenarios::{apparatus_reality_check, measurement_entropy_bookkeeping, DetectorArraySpec};
use qreality::{
    apply_monitoring, complementarity_ledger, random_observable, random_state_with, reality_change, rng_from_seed,
    von_neumann_entropy, Dims, Intensity, MonitoringMap, Purity, Tolerances,
};

fn entropy(c: &mut Criterion) {
    let mut group = c.benchmark_group("von_neumann_entropy");
    let mut rng = rng_from_seed(1);
    for qubits in [2, 4, 6] {
        let dims = Dims::qubits(qubits);
        let rho = random_state_with(&mut rng, &dims, Purity::Mixed(dims.total())).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dims.total()), &rho, |b, rho| {
            b.iter(|| von_neumann_entropy(black_box(rho)))
        });
    }
    group.finish();
}

fn monitoring(c: &mut Criterion) {
    let mut rng = rng_from_seed(2);
    let dims = Dims::qubits(4);
    let rho = random_state_with(&mut rng, &dims, Purity::Mixed(4)).unwrap();
    let m = MonitoringMap {
        observable: random_observable(&mut rng, 1, 2),
        intensity: Intensity::new(0.3).unwrap(),
    };
    c.bench_function("monitoring_4_qubits", |b| {
        b.iter(|| apply_monitoring(black_box(&m), black_box(&rho)))
    });
    c.bench_function("reality_change_4_qubits", |b| {
        b.iter(|| reality_change(black_box(&m.observable), m.intensity, black_box(&rho)))
    });
}

fn dilation(c: &mut Criterion) {
    let mut rng = rng_from_seed(3);
    let dims = Dims::new(vec![3, 2]).unwrap();
    let rho = random_state_with(&mut rng, &dims, Purity::Mixed(3)).unwrap();
    let m = MonitoringMap {
        observable: random_observable(&mut rng, 0, 3),
        intensity: Intensity::new(0.6).unwrap(),
    };
    c.bench_function("complementarity_ledger_3x2", |b| {
        b.iter(|| complementarity_ledger(black_box(&m), black_box(&rho)))
    });
}

fn detector(c: &mut Criterion) {
    let spec = DetectorArraySpec::default();
    let tol = Tolerances::DEFAULT;
    let mut group = c.benchmark_group("detector_array_32");
    group.sample_size(10);
    group.bench_function("apparatus_reality_check", |b| {
        b.iter(|| apparatus_reality_check(black_box(&spec), &tol))
    });
    group.bench_function("measurement_entropy_bookkeeping", |b| {
        b.iter(|| measurement_entropy_bookkeeping(black_box(&spec), &tol))
    });
    group.finish();
}

criterion_group!(benches, entropy, monitoring, dilation, detector);
criterion_main!(benches);
