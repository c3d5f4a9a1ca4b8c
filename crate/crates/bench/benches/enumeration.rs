use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use mapcov::coverings::enumerate_coverings;
use mapcov::maps::{gluing_census, MAX_GLUING_SLOTS};
use mapcov::partitions::sample_rsk;
use mapcov::ribbon::kontsevich_polynomial;
use mapcov::rng::stream;
use mapcov::spectral::{airy_pair, gue_eigenvalues, rho_laplace, GueModel, QuadratureSpec};
use mapcov::{jm_trace_direct, ExponentVector};

fn ev(v: &[u32]) -> ExponentVector {
    ExponentVector::new(v.to_vec()).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("gluing_census");
    g.sample_size(10);
    for k in [8u32, 10, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| gluing_census(black_box(&ev(&[k])), MAX_GLUING_SLOTS).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("coverings");
    g.sample_size(10);
    for k in [6u32, 8, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| enumerate_coverings(black_box(&ev(&[k]))).unwrap())
        });
    }
    g.finish();

    c.bench_function("jm_trace_direct n=6 k=(4,2)", |b| {
        b.iter(|| jm_trace_direct(6, black_box(&ev(&[4, 2])), false).unwrap())
    });
    c.bench_function("kontsevich_polynomial (1,2)", |b| {
        b.iter(|| kontsevich_polynomial(1, 2).unwrap())
    });
}

fn spectral(c: &mut Criterion) {
    c.bench_function("airy_pair grid", |b| {
        b.iter(|| {
            (0..200)
                .map(|i| airy_pair(black_box(-30.0 + 0.2 * i as f64)).0)
                .sum::<f64>()
        })
    });
    let mut g = c.benchmark_group("rho_laplace");
    g.sample_size(10);
    for xi in [0.1f64, 1.0] {
        g.bench_with_input(BenchmarkId::from_parameter(xi), &xi, |b, &xi| {
            b.iter(|| rho_laplace(xi, &QuadratureSpec::default()).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("gue_eigenvalues n=200");
    g.sample_size(10);
    for model in [GueModel::Dense, GueModel::Tridiagonal] {
        g.bench_function(format!("{model:?}"), |b| {
            let mut rng = stream(1, 0);
            b.iter(|| gue_eigenvalues(200, model, &mut rng).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("sample_rsk");
    g.sample_size(10);
    g.bench_function("n=10000", |b| b.iter(|| sample_rsk(10_000, black_box(3))));
    g.finish();
}

criterion_group!(benches, enumeration, spectral);
criterion_main!(benches);
