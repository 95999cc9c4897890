use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tricycle::cycles::{product, verify_cycle, VerifyOptions};
use tricycle::homology::{gorenstein, min_proj_resolution, serre_image};
use tricycle::module::simple;
use tricycle::{PrimeField, Rationals};
use tricycle_bench::{a_cycle, b_cycle, q1};

fn resolutions(c: &mut Criterion) {
    let a = q1(Rationals);
    let s1 = simple(&a, 0).unwrap();
    c.bench_function("resolve S(1) over Q1 to length 16", |b| {
        b.iter(|| min_proj_resolution(black_box(&s1), 16).unwrap())
    });
    let res = min_proj_resolution(&s1, 9).unwrap();
    c.bench_function("Ext^0..8(S(1), S(1)) from a resolution", |b| {
        b.iter(|| res.ext_dims(black_box(&s1), 8).unwrap())
    });
    let p4 = a_cycle(Rationals).modules()[0].clone();
    c.bench_function("Serre image of P(4)", |b| {
        b.iter(|| serre_image(black_box(&p4), 32).unwrap())
    });
    c.bench_function("Gorenstein dimensions of Q1", |b| {
        b.iter(|| gorenstein(black_box(&a), 32).unwrap())
    });
}

fn cycles(c: &mut Criterion) {
    let opts = VerifyOptions::default();
    let e = a_cycle(Rationals);
    let f = b_cycle(Rationals);
    c.bench_function("verify A-cycle", |b| b.iter(|| verify_cycle(black_box(&e), &opts).unwrap()));
    c.bench_function("verify B-cycle", |b| b.iter(|| verify_cycle(black_box(&f), &opts).unwrap()));

    let mut group = c.benchmark_group("product and verify");
    group.sample_size(10);
    group.bench_function("rational", |b| {
        b.iter(|| {
            let p = product(&e, &f, &opts).unwrap();
            verify_cycle(&p.cycle(), &opts).unwrap()
        })
    });
    let fp = PrimeField::new(101).unwrap();
    let (e101, f101) = (a_cycle(fp), b_cycle(fp));
    group.bench_function("F_101", |b| {
        b.iter(|| {
            let p = product(&e101, &f101, &opts).unwrap();
            verify_cycle(&p.cycle(), &opts).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, resolutions, cycles);
criterion_main!(benches);
