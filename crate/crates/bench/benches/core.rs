use confblocks::blocks::{cb_dim_generic, evaluate_all_q};
use confblocks::exact::rank_over_rationals;
use confblocks::localization::{build_p, seeded_rng};
use confblocks::{Partition, ZAssignment};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn lambdas() -> Vec<Partition> {
    [vec![3, 3], vec![4, 3], vec![2, 2, 2], vec![3, 2, 1]]
        .into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_p");
    for l in lambdas() {
        group.bench_with_input(BenchmarkId::from_parameter(&l), &l, |b, l| b.iter(|| build_p(l)));
    }
    group.finish();
}

fn bench_evaluate(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate");
    let mut rng = seeded_rng(1);
    for l in lambdas() {
        let s = build_p(&l);
        let z = ZAssignment::random(l.size(), &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(&l), &l, |b, _| b.iter(|| s.evaluate(&z).unwrap()));
    }
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(20);
    let mut rng = seeded_rng(2);
    for (parts, level) in [(vec![3, 3], 2), (vec![4, 3], 3), (vec![4, 4], 2)] {
        let l = Partition::new(parts).unwrap();
        let z = ZAssignment::random(l.size(), &mut rng);
        let qs = evaluate_all_q(&l, level, &z).unwrap();
        let id = format!("{l} level {level}");
        group.bench_function(BenchmarkId::new("q_span", &id), |b| b.iter(|| rank_over_rationals(&qs)));
        group.bench_function(BenchmarkId::new("kernel", &id), |b| b.iter(|| cb_dim_generic(&l, level, &z).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_build, bench_evaluate, bench_rank);
criterion_main!(benches);
