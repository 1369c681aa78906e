use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcoh_bench::bench_specs;
use nilcoh_core::{Bicomplex, Theory};

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("hodge_table");
    group.sample_size(10);
    for (key, spec) in bench_specs() {
        let bc = Bicomplex::new(&spec).unwrap();
        for theory in [Theory::BottChern, Theory::Aeppli] {
            group.bench_with_input(BenchmarkId::new(theory.key(), &key), &bc, |b, bc| {
                b.iter(|| bc.hodge_table(theory).unwrap())
            });
        }
    }
    group.finish();
}

fn derham(c: &mut Criterion) {
    let mut group = c.benchmark_group("derham");
    group.sample_size(10);
    for (key, spec) in bench_specs() {
        let bc = Bicomplex::new(&spec).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&key), &bc, |b, bc| b.iter(|| bc.derham_table().unwrap()));
    }
    group.finish();
}

criterion_group!(benches, tables, derham);
criterion_main!(benches);
