//! Parallel against sequential execution of the main oracle sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use zdscheme::ball_scheme;
use zdscheme::dual_fourier;
use zdscheme::metric_scheme;
use zdscheme::oracle::WitnessMode;
use zdscheme::par;
use zdscheme::rational;
use zdscheme::{Carrier, GroupSpec};

fn groups() -> Vec<(String, Carrier)> {
    [GroupSpec::padic(2, 6), GroupSpec::vilenkin(&[4, 4, 4]), GroupSpec::padic(3, 5)]
        .iter()
        .map(|s| (s.label(), Carrier::build(s).expect("valid spec")))
        .collect()
}

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn witness_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_tensor");
    group.sample_size(10);
    for (label, carrier) in groups() {
        for (mode, on) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, &label), &carrier, |b, carrier| {
                par::set_parallel(on);
                b.iter(|| {
                    black_box(metric_scheme::intersection_oracle(&carrier.group, WitnessMode::All).unwrap());
                    black_box(ball_scheme::intersection_oracle(&carrier.group, WitnessMode::All).unwrap());
                });
            });
        }
    }
    par::set_parallel(true);
    group.finish();
}

fn eigen_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_transform");
    group.sample_size(10);
    for (label, carrier) in groups() {
        for (mode, on) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, &label), &carrier, |b, carrier| {
                par::set_parallel(on);
                b.iter(|| {
                    black_box(ball_scheme::p_oracle(carrier).unwrap());
                    black_box(ball_scheme::q_oracle(carrier).unwrap());
                });
            });
        }
    }
    par::set_parallel(true);
    group.finish();
}

fn convolution_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution");
    group.sample_size(10);
    for (label, carrier) in groups() {
        let n = carrier.group.order();
        let f: Vec<_> = (0..n).map(|x| rational::ratio((x % 7) as i64 - 3, 1 + (x % 5) as i64)).collect();
        for (mode, on) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, &label), &carrier, |b, carrier| {
                par::set_parallel(on);
                b.iter(|| black_box(dual_fourier::convolve(&carrier.group, &f, &f).unwrap()));
            });
        }
    }
    par::set_parallel(true);
    group.finish();
}

criterion_group!(benches, witness_sweep, eigen_sweep, convolution_sweep);
criterion_main!(benches);
