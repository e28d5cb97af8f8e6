use criterion::{criterion_group, criterion_main, Criterion};

use crepant_core::a1::{potential_y_orders, verify_corollary, BranchSign};
use crepant_core::series::{pade_auto, SeriesRing, TruncatedSeries};
use crepant_core::symhilb::{quantum_mult_matrix, resum_series};
use crepant_core::{GaussianRational, Poly2, RatFunc};

fn sample_ratfunc(k: i64) -> RatFunc {
    let num = Poly2::monomial(2, 0, GaussianRational::from_int(k))
        + Poly2::monomial(0, 1, GaussianRational::from_ratio(1, k));
    let den = Poly2::t1() + Poly2::monomial(1, 1, GaussianRational::from_int(k + 1));
    RatFunc::new(num, den).unwrap()
}

fn bench_ratfunc_mul(c: &mut Criterion) {
    let a = sample_ratfunc(3);
    let b = sample_ratfunc(5);
    c.bench_function("ratfunc_mul_reduce", |bch| {
        bch.iter(|| std::hint::black_box(a.clone() * b.clone()))
    });
}

fn bench_series_mul(c: &mut Criterion) {
    let ring = SeriesRing::univariate("u", 24);
    let mut f = TruncatedSeries::zero(ring.clone());
    for k in 1..=24u32 {
        f.add_term(vec![k], RatFunc::from_ratio(1, k as i64) * RatFunc::t1());
    }
    c.bench_function("series_mul_univariate_24", |bch| {
        bch.iter(|| f.mul(std::hint::black_box(&f)).unwrap())
    });
}

fn bench_pade(c: &mut Criterion) {
    let f = potential_y_orders(9, 18);
    let slice = f.derive(1, 3).set_var_zero(0).univariate_slice(2, &[0, 4, 0]);
    c.bench_function("pade_auto_deg4_slice", |bch| {
        bch.iter(|| pade_auto(std::hint::black_box(&slice), 6, 5).unwrap())
    });
}

fn bench_quantum_matrix(c: &mut Criterion) {
    c.bench_function("quantum_matrix_n5_order12", |bch| {
        bch.iter(|| quantum_mult_matrix(5, 12).unwrap())
    });
    let m = quantum_mult_matrix(4, 12).unwrap();
    c.bench_function("resum_diag_n4", |bch| {
        bch.iter(|| resum_series(m.entry(0, 0)).unwrap())
    });
}

fn bench_a1(c: &mut Criterion) {
    let mut group = c.benchmark_group("a1");
    group.sample_size(10);
    group.bench_function("verify_corollary_order8", |bch| {
        bch.iter(|| verify_corollary(8, BranchSign::PlusI).unwrap())
    });
    group.finish();
}

criterion_group!(
    kernels,
    bench_ratfunc_mul,
    bench_series_mul,
    bench_pade,
    bench_quantum_matrix,
    bench_a1
);
criterion_main!(kernels);
