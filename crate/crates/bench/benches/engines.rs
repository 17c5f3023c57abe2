use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use dlmeta_bench::{chain, theories};
use dlmeta_core::conformance::{run_suite, GenConfig, GenMode};
use dlmeta_core::semantics::{kunen_fixpoint, stable_models};
use dlmeta_core::translate::{to_default_theory, translate};
use dlmeta_core::fixpoint;

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("fixpoint");
    for n in [10, 50, 200] {
        let d = chain(n);
        g.bench_with_input(BenchmarkId::new("chain", n), &d, |b, d| b.iter(|| fixpoint(black_box(d))));
    }
    let ds = theories(8, 50, GenMode::Any);
    g.bench_function("random_8", |b| b.iter(|| ds.iter().map(|d| fixpoint(d).0.len()).sum::<usize>()));
    g.finish();
}

fn embeddings(c: &mut Criterion) {
    let ds = theories(5, 20, GenMode::Any);
    let progs: Vec<_> = ds.iter().map(translate).collect();
    let mut g = c.benchmark_group("embeddings");
    g.bench_function("translate", |b| b.iter(|| ds.iter().map(|d| translate(d).len()).sum::<usize>()));
    g.bench_function("stable_models", |b| {
        b.iter(|| progs.iter().map(|p| stable_models(p, None).len()).sum::<usize>())
    });
    g.bench_function("kunen", |b| b.iter(|| progs.iter().map(|p| kunen_fixpoint(p).1).sum::<usize>()));
    let dts: Vec<_> = ds.iter().map(to_default_theory).collect();
    g.bench_function("extensions", |b| b.iter(|| dts.iter().map(|t| t.extensions().len()).sum::<usize>()));
    g.finish();
}

fn suite(c: &mut Criterion) {
    let cfg = GenConfig::default();
    let mut g = c.benchmark_group("conformance");
    g.sample_size(10);
    g.bench_function("suite_30", |b| b.iter(|| run_suite(&cfg, 30).summary.total.fail));
    g.finish();
}

criterion_group!(benches, engine, embeddings, suite);
criterion_main!(benches);
