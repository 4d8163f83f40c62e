use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rctour::catalog::verify_theorem3;
use rctour::{make_circulant, paper_construction, rainbow_certificate, rc_exact, CirculantSpec};

fn certificate(c: &mut Criterion) {
    let cd = paper_construction(40).unwrap();
    c.bench_function("rainbow_certificate/n40", |b| b.iter(|| rainbow_certificate(black_box(&cd))));
}

fn solver(c: &mut Criterion) {
    let c5 = make_circulant(&CirculantSpec::new(5, [1, 2]).unwrap());
    c.bench_function("rc_exact/c5_12", |b| b.iter(|| rc_exact(black_box(&c5), None)));
    let c7 = make_circulant(&CirculantSpec::new(7, [1, 2, 4]).unwrap());
    c.bench_function("rc_exact/c7_124", |b| b.iter(|| rc_exact(black_box(&c7), None)));
}

fn sweep(c: &mut Criterion) {
    c.bench_function("verify_theorem3/n20", |b| b.iter(|| verify_theorem3(black_box(20))));
}

criterion_group!(benches, certificate, solver, sweep);
criterion_main!(benches);
