use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinorlab_core::isotropic::{hamming_distance, pfaffian_chart, psi_kernel, random_skew};
use spinorlab_core::orbit::{orbit_dimension, sample, OrbitLabel};
use spinorlab_core::{clifford_apply, pfaffian, Vector};

fn dense_pure(n: usize, seed: u64) -> spinorlab_core::Spinor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pfaffian_chart(&random_skew(&mut rng, n, 3)).unwrap()
}

fn bench_clifford(c: &mut Criterion) {
    let mut g = c.benchmark_group("clifford_apply");
    for n in [6, 8, 10] {
        let x = dense_pure(n, 1);
        let v = Vector::basis_e(n, 1).add(&Vector::basis_f(n, n));
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| clifford_apply(black_box(&v), x.element()).unwrap())
        });
    }
    g.finish();
}

fn bench_pfaffian(c: &mut Criterion) {
    let mut g = c.benchmark_group("pfaffian");
    for n in [6, 10, 14] {
        let a = random_skew(&mut ChaCha8Rng::seed_from_u64(2), n, 5);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| pfaffian(black_box(a)).unwrap()));
    }
    g.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi_kernel");
    g.sample_size(20);
    for n in [6, 8] {
        let x = dense_pure(n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| b.iter(|| psi_kernel(black_box(x)).unwrap()));
    }
    let a = dense_pure(8, 4);
    let b8 = dense_pure(8, 5);
    g.bench_function("distance/8", |b| b.iter(|| hamming_distance(black_box(&a), black_box(&b8)).unwrap()));
    g.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for (n, label) in [(6, OrbitLabel::Sigma(3)), (6, OrbitLabel::Theta(3)), (8, OrbitLabel::Sigma(2)), (8, OrbitLabel::Sigma(4))] {
        let q = sample(label, n, 7, 2).unwrap().spinor;
        g.bench_with_input(BenchmarkId::new(label.to_string(), n), &q, |b, q| {
            b.iter(|| spinorlab_core::orbit::classify(black_box(q)).unwrap())
        });
    }
    g.finish();
}

fn bench_orbit_dimension(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_dimension");
    g.sample_size(10);
    for n in [6, 8] {
        let q = sample(OrbitLabel::Sigma(n / 2), n, 8, 1).unwrap().spinor;
        g.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| b.iter(|| orbit_dimension(black_box(q)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_clifford, bench_pfaffian, bench_kernel, bench_classify, bench_orbit_dimension);
criterion_main!(benches);
