//! Benchmarks for the exact pipeline: row reduction, realization, EKR
//! construction (which includes all its consistency verification), and the
//! LP bound.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leonard_bench::{hamming_array, johnson_array, q_racah_array};
use leonard_core::ekr::EkrSystem;
use leonard_core::lp::dual_vector;
use leonard_core::{realize, Matrix, Scalar};

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [8usize, 16, 32] {
        // A structured full-rank rational matrix.
        let m = Matrix::from_fn(n, n, |r, col| {
            Scalar::ratio((r * col) as i64 + 1, (r + col + 1) as i64)
        });
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rref()))
        });
    }
    group.finish();
}

fn bench_realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize");
    for d in [3usize, 5, 8] {
        let p = johnson_array(d);
        group.bench_with_input(BenchmarkId::new("johnson", d), &p, |b, p| {
            b.iter(|| realize(black_box(p)).unwrap())
        });
    }
    for d in [3usize, 5] {
        let p = q_racah_array(d);
        group.bench_with_input(BenchmarkId::new("q_racah", d), &p, |b, p| {
            b.iter(|| realize(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn bench_ekr_system(c: &mut Criterion) {
    let mut group = c.benchmark_group("ekr_system");
    group.sample_size(20);
    for d in [3usize, 5] {
        let r = realize(&hamming_array(d)).unwrap();
        group.bench_with_input(BenchmarkId::new("hamming", d), &r, |b, r| {
            b.iter(|| EkrSystem::new(black_box(r)).unwrap())
        });
    }
    group.finish();
}

fn bench_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("bound_all_t");
    group.sample_size(20);
    for d in [3usize, 5] {
        let sys = EkrSystem::new(&realize(&johnson_array(d)).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("johnson", d), &sys, |b, sys| {
            b.iter(|| {
                for t in 0..=sys.d() {
                    black_box(dual_vector(sys, t).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_rref, bench_realize, bench_ekr_system, bench_bound);
criterion_main!(benches);
