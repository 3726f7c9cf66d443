//! Benchmarks for the expensive paths: fan construction, balancing,
//! projection complexes, Gröbner bases, and the lattice routines.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use tropmat_bench::{k4, twisted_cubic};
use tropmat_core::bergman::bergman_fan;
use tropmat_core::fan::{balancing_weight_space, fan_independence_complex, is_balanced};
use tropmat_core::groebner::{algebraic_matroid, buchberger, Budget, MonomialOrder};
use tropmat_core::linalg::quotient_primitive_generator;
use tropmat_core::{Matroid, Rational};

fn bench_bergman(c: &mut Criterion) {
    let vamos = Matroid::vamos();
    c.bench_function("bergman_fan/vamos", |b| {
        b.iter(|| bergman_fan(black_box(&vamos)).unwrap())
    });
    let u36 = Matroid::uniform(3, 6).unwrap();
    c.bench_function("bergman_fan/u36", |b| {
        b.iter(|| bergman_fan(black_box(&u36)).unwrap())
    });
}

fn bench_balance(c: &mut Criterion) {
    let u35 = bergman_fan(&Matroid::uniform(3, 5).unwrap()).unwrap().fan;
    c.bench_function("is_balanced/u35", |b| {
        b.iter(|| is_balanced(black_box(&u35)).unwrap())
    });
    let k4_fan = bergman_fan(&k4()).unwrap().fan;
    c.bench_function("weight_space/k4", |b| {
        b.iter(|| balancing_weight_space(black_box(&k4_fan)).unwrap())
    });
}

fn bench_projections(c: &mut Criterion) {
    let u36 = bergman_fan(&Matroid::uniform(3, 6).unwrap()).unwrap().fan;
    c.bench_function("fan_independence_complex/u36", |b| {
        b.iter(|| fan_independence_complex(black_box(&u36)))
    });
}

fn bench_groebner(c: &mut Criterion) {
    let cubic = twisted_cubic();
    c.bench_function("buchberger/twisted_cubic_lex", |b| {
        b.iter(|| buchberger(black_box(&cubic), &MonomialOrder::Lex, Budget::default()).unwrap())
    });
    c.bench_function("algebraic_matroid/twisted_cubic", |b| {
        b.iter(|| algebraic_matroid(black_box(&cubic), Budget::default()))
    });
}

fn bench_lattice(c: &mut Criterion) {
    // a facet/ridge pair shaped like the ones Bergman balancing produces
    let q = |x: i64| Rational::from_integer(x.into());
    let facet: Vec<Vec<Rational>> = vec![
        vec![q(1), q(0), q(0), q(0)],
        vec![q(1), q(1), q(0), q(0)],
        vec![q(1), q(1), q(1), q(1)],
    ];
    let ridge: Vec<Vec<Rational>> =
        vec![vec![q(1), q(0), q(0), q(0)], vec![q(1), q(1), q(1), q(1)]];
    c.bench_function("quotient_primitive_generator/4d", |b| {
        b.iter(|| quotient_primitive_generator(black_box(&facet), black_box(&ridge)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_bergman, bench_balance, bench_projections, bench_groebner, bench_lattice
}
criterion_main!(benches);
