use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use isosieve_bench::{curve_over_cubic, curve_over_q_i, frobenius_poly};
use isosieve_core::criteria::{sieve_prime, DirectTraces};
use isosieve_core::intpoly::{adams, star, star_sylvester};
use std::hint::black_box;

fn bench_star(c: &mut Criterion) {
    let mut group = c.benchmark_group("star");
    let p = adams(&frobenius_poly(-3, 17), 12).unwrap();
    let q = adams(&frobenius_poly(5, 19), 12).unwrap();
    let pq = star(&p, &q).unwrap();
    group.bench_function("quadratic x quadratic", |b| b.iter(|| star(black_box(&p), black_box(&q))));
    group.bench_function("quartic x quadratic", |b| b.iter(|| star(black_box(&pq), black_box(&q))));
    group.bench_function("sylvester quadratic x quadratic", |b| {
        b.iter(|| star_sylvester(black_box(&p), black_box(&q)))
    });
    group.finish();
}

fn bench_adams(c: &mut Criterion) {
    let mut group = c.benchmark_group("adams");
    let p = frobenius_poly(-12, 49);
    for r in [12usize, 24, 48] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| b.iter(|| adams(black_box(&p), r)));
    }
    group.finish();
}

fn bench_point_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_of_frobenius");
    let e = curve_over_q_i();
    for ell in [101u64, 1009, 10007] {
        let q = e.field().factor_prime(ell).unwrap().remove(0);
        group.bench_with_input(BenchmarkId::from_parameter(ell), &q, |b, q| {
            b.iter(|| e.trace_of_frobenius(black_box(q)))
        });
    }
    group.finish();
}

fn bench_sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve_prime");
    let e = curve_over_q_i();
    group.bench_function("quadratic ell=5", |b| b.iter(|| sieve_prime(&e, black_box(5), &DirectTraces)));
    let e = curve_over_cubic();
    group.bench_function("cubic ell=17", |b| b.iter(|| sieve_prime(&e, black_box(17), &DirectTraces)));
    group.finish();
}

criterion_group!(benches, bench_star, bench_adams, bench_point_count, bench_sieve);
criterion_main!(benches);
