use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ddccmckp::eval::EvaluatorKind;
use ddccmckp::search::{ddals, DdalsParams};
use ddccmckp_bench::lab_instance;

fn bench_ddals(c: &mut Criterion) {
    let inst = lab_instance(3, 5, 30, 14.0, 3);
    let mut group = c.benchmark_group("ddals_ss1_shape");
    group.sample_size(20);
    group.bench_function("exact_evaluator", |b| {
        b.iter(|| black_box(ddals(&inst, &DdalsParams::new(EvaluatorKind::ExactHeap, 1))))
    });
    group.bench_function("amc_evaluator_10k", |b| {
        b.iter(|| {
            black_box(ddals(
                &inst,
                &DdalsParams::new(EvaluatorKind::AcceleratedMc { draws: 10_000 }, 1),
            ))
        })
    });
    group.finish();
}

criterion_group!(benches, bench_ddals);
criterion_main!(benches);
