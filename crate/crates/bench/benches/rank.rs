use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcoh_bench::{low_rank_matrix, random_matrix};
use nilcoh_core::linalg::{rank, rref};

fn full_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_dense");
    for size in [8, 16, 32] {
        let m = random_matrix(size as u64, size, size);
        group.bench_with_input(BenchmarkId::new("bareiss", size), &m, |b, m| b.iter(|| rank(m)));
        group.bench_with_input(BenchmarkId::new("rref", size), &m, |b, m| b.iter(|| rref(m).1.len()));
    }
    group.finish();
}

fn deficient(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_deficient");
    for size in [16, 32] {
        let m = low_rank_matrix(size as u64, size, size, size / 4);
        group.bench_with_input(BenchmarkId::new("bareiss", size), &m, |b, m| b.iter(|| rank(m)));
        group.bench_with_input(BenchmarkId::new("rref", size), &m, |b, m| b.iter(|| rref(m).1.len()));
    }
    group.finish();
}

criterion_group!(benches, full_rank, deficient);
criterion_main!(benches);
