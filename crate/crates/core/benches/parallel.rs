//! Compares the data-parallel and sequential implementations of the two
//! hot paths: the confined dynamic program and the signed reflection sum
//! driving free-endpoint totals.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chamber_walks::count::{
    confined_final_layer, confined_final_layer_seq, confined_total_reflection, reflection_count,
};
use chamber_walks::{ChamberPoint, Model};

fn pt(coords: &[i64]) -> ChamberPoint {
    ChamberPoint::new(coords.to_vec()).unwrap()
}

fn bench_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("confined_dp");
    for (model, u, n) in [
        (Model::lock_step(2).unwrap(), pt(&[0, 2]), 120u64),
        (Model::random_turns(2).unwrap(), pt(&[0, 1]), 120),
        (Model::random_turns(3).unwrap(), pt(&[0, 1, 2]), 40),
    ] {
        let label = format!("{:?}_k{}_n{}", model.kind, model.k, n);
        group.bench_with_input(BenchmarkId::new("parallel", &label), &n, |b, &n| {
            b.iter(|| confined_final_layer(model, &u, n).total())
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &n, |b, &n| {
            b.iter(|| confined_final_layer_seq(model, &u, n).total())
        });
    }
    group.finish();
}

fn bench_reflection(c: &mut Criterion) {
    let mut group = c.benchmark_group("reflection_sum");
    let model = Model::random_turns(3).unwrap();
    let u = pt(&[0, 1, 2]);
    group.bench_function("fixed_endpoint_n512", |b| {
        b.iter(|| reflection_count(model, &u, &u, 512).unwrap())
    });
    group.bench_function("free_total_n16", |b| {
        b.iter(|| confined_total_reflection(model, &u, 16).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_dp, bench_reflection);
criterion_main!(benches);
