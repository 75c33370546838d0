use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ozonelab_core::central::center;
use ozonelab_core::families::{corpus_case, run_case};
use ozonelab_core::ncalg::GradedAlgebra;
use ozonelab_core::CycNum;

fn arithmetic(c: &mut Criterion) {
    let a = &CycNum::zeta(12) + &CycNum::from_int(3);
    let b = &CycNum::zeta(4) - &CycNum::zeta(3);
    c.bench_function("cyclo mul+inv", |bch| bch.iter(|| (black_box(&a) * black_box(&b)).inv().unwrap()));
}

fn groebner(c: &mut Criterion) {
    let pres = corpus_case("sklyanin_111m1").unwrap().presentation;
    c.bench_function("sklyanin basis to degree 7", |b| b.iter(|| GradedAlgebra::new(pres.clone(), 7).unwrap()));
}

fn centers(c: &mut Criterion) {
    let alg = GradedAlgebra::new(corpus_case("heisenberg_m1").unwrap().presentation, 7).unwrap();
    c.bench_function("heisenberg center to degree 6", |b| b.iter(|| center(&alg, 6).unwrap()));
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus case");
    g.sample_size(10);
    for id in ["skew_q3", "heisenberg_m1", "downup_0_m1"] {
        let spec = corpus_case(id).unwrap();
        g.bench_function(id, |b| b.iter(|| run_case(&spec)));
    }
    g.finish();
}

criterion_group!(benches, arithmetic, groebner, centers, pipeline);
criterion_main!(benches);
