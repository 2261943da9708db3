use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rrmo_core::individual::random_bits;
use rrmo_core::nsga3::{associate_fast, non_dominated_sort, normalize, NormalizationState, ReferenceLattice};
use rrmo_core::{
    evaluate, f_max, gsemo_run, nsga3_run, BitMutation, CrossoverKind, FitnessVector, GsemoConfig, Nsga3, Nsga3Config,
    ProblemSpec, RandomSource,
};

fn spec(s: &str) -> ProblemSpec {
    s.parse().unwrap()
}

fn random_fitnesses(spec: &ProblemSpec, count: usize, seed: u64) -> Vec<FitnessVector> {
    let mut rng = RandomSource::new(seed);
    (0..count)
        .map(|_| evaluate(&random_bits(spec.n(), &mut rng), spec).unwrap())
        .collect()
}

fn evaluation(c: &mut Criterion) {
    for s in ["rrmo:n=40,m=4", "rrmo-uni:n=64,m=2"] {
        let spec = spec(s);
        let mut rng = RandomSource::new(1);
        let xs: Vec<_> = (0..256).map(|_| random_bits(spec.n(), &mut rng)).collect();
        c.bench_function(&format!("evaluate {s} x256"), |b| {
            b.iter(|| xs.iter().for_each(|x| { black_box(evaluate(black_box(x), &spec).unwrap()); }))
        });
    }
}

fn mutation(c: &mut Criterion) {
    let op = BitMutation::new(64);
    let x = rrmo_core::BitString::zeros(64);
    let mut rng = RandomSource::new(2);
    c.bench_function("mutate n=64", |b| b.iter(|| op.mutate(black_box(&x), &mut rng)));
}

fn sorting(c: &mut Criterion) {
    let s = spec("rrmo:n=40,m=4");
    let points = random_fitnesses(&s, 1460, 3);
    c.bench_function("non-dominated sort 1460 x m=4", |b| {
        b.iter(|| non_dominated_sort(black_box(&points)).unwrap())
    });
}

fn association(c: &mut Criterion) {
    let s = spec("rrmo:n=40,m=4");
    let points = random_fitnesses(&s, 512, 4);
    let state = NormalizationState::from_population(&points, 4, f_max(&s));
    let lattice = ReferenceLattice::new(4, 576).unwrap();
    let normalized: Vec<_> = points.iter().map(|f| normalize(f, &state)).collect();
    let mut rng = RandomSource::new(5);
    c.bench_function("fast association m=4 p=576 x512", |b| {
        b.iter(|| {
            for f in &normalized {
                black_box(associate_fast(f, &lattice, 1, &mut rng).unwrap());
            }
        })
    });
}

fn generations(c: &mut Criterion) {
    let config = Nsga3Config::new(spec("rrmo:n=35,m=2"), 32, 0.9, CrossoverKind::OnePoint, 6, u64::MAX);
    c.bench_function("nsga3 generation rrmo n=35 mu=32", |b| {
        b.iter_batched(
            || Nsga3::new(config.clone()).unwrap(),
            |mut run| run.step().unwrap(),
            BatchSize::SmallInput,
        )
    });
    let config = Nsga3Config::new(spec("rrmo:n=40,m=4"), 730, 0.9, CrossoverKind::OnePoint, 7, u64::MAX);
    let mut group = c.benchmark_group("large");
    group.sample_size(10);
    group.bench_function("nsga3 generation rrmo n=40 m=4 mu=730", |b| {
        b.iter_batched(
            || Nsga3::new(config.clone()).unwrap(),
            |mut run| run.step().unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn full_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("runs");
    group.sample_size(10);
    group.bench_function("gsemo rrmo n=10 m=2 to cover", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            gsemo_run(&GsemoConfig::new(spec("rrmo:n=10,m=2"), 0.5, CrossoverKind::OnePoint, seed, 1_000_000)).unwrap()
        })
    });
    group.bench_function("nsga3 rrmo n=10 m=2 mu=8 to cover", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            nsga3_run(&Nsga3Config::new(spec("rrmo:n=10,m=2"), 8, 0.9, CrossoverKind::OnePoint, seed, 1_000_000)).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, evaluation, mutation, sorting, association, generations, full_runs);
criterion_main!(benches);
