//! Criterion benches comparing the sequential and rayon-parallel execution
//! of the table sweeps.
//!
//! Run with `cargo bench -p prehom-core`. Building with
//! `--no-default-features` compiles rayon out entirely, in which case the
//! `parallel` lanes fall back to the sequential path and the two lanes
//! should coincide.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use prehom_core::sweep::{
    pairwise_table_comparison, reconstruction_round_trip, rep_laws, verify_table, ExecMode,
};

fn bench_verify_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_table");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify_table(ExecMode::Sequential).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(verify_table(ExecMode::Parallel).unwrap()))
    });
    group.finish();
}

fn bench_rep_laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("rep_laws");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(rep_laws(ExecMode::Sequential).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(rep_laws(ExecMode::Parallel).unwrap()))
    });
    group.finish();
}

fn bench_round_trip(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruction_round_trip");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(reconstruction_round_trip(ExecMode::Sequential).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(reconstruction_round_trip(ExecMode::Parallel).unwrap()))
    });
    group.finish();
}

fn bench_pairwise(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairwise_comparison");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(pairwise_table_comparison(ExecMode::Sequential).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(pairwise_table_comparison(ExecMode::Parallel).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_verify_table,
    bench_rep_laws,
    bench_round_trip,
    bench_pairwise
);
criterion_main!(benches);
