use criterion::{criterion_group, criterion_main, Criterion};
use splitrank::engine::{enumerate_piece_vertices, CutSystem, HalfspaceSide, SplitDisjunction};
use splitrank::model::{induced_body, phi_from_body};
use splitrank::oracle::{closure_round, ClosureApprox};
use splitrank::synth::{synthesize, SynthOptions};
use splitrank_bench::{example_instance, slow_t2b_instance};

fn bench_phi(c: &mut Criterion) {
    let (model, goal) = example_instance();
    let body = induced_body(&model, &goal);
    c.bench_function("phi_from_body", |b| {
        b.iter(|| phi_from_body(&model, &body).unwrap())
    });
}

fn bench_piece_enumeration(c: &mut Criterion) {
    let (model, goal) = example_instance();
    let sys = CutSystem::with_cuts(model, vec![goal]);
    let disj = SplitDisjunction::new(0, 1, 0);
    c.bench_function("enumerate_piece_vertices", |b| {
        b.iter(|| {
            enumerate_piece_vertices(&sys, &disj, HalfspaceSide::Le).unwrap();
            enumerate_piece_vertices(&sys, &disj, HalfspaceSide::Ge).unwrap();
        })
    });
}

fn bench_synthesize_t2b(c: &mut Criterion) {
    let (model, goal) = slow_t2b_instance();
    let opts = SynthOptions::default();
    c.bench_function("synthesize_t2b", |b| {
        b.iter(|| synthesize(&model, &goal, &opts).unwrap())
    });
}

fn bench_closure_round(c: &mut Criterion) {
    let (model, _) = example_instance();
    let approx = ClosureApprox::initial(1);
    c.bench_function("closure_round_b1", |b| {
        b.iter(|| closure_round(&model, &approx).unwrap())
    });
}

criterion_group!(
    benches,
    bench_phi,
    bench_piece_enumeration,
    bench_synthesize_t2b,
    bench_closure_round
);
criterion_main!(benches);
