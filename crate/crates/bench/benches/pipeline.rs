use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use logclass_bench::{field, FIELDS};
use logclass_core::arith::padic::log_of_int;
use logclass_core::logclass::{log_class_group_from, LogClassOptions};
use logclass_core::numberfield::{maximal_order, ClassGroup, ClassGroupOptions};
use logclass_core::ZPoly;

fn maximal_orders(c: &mut Criterion) {
    let mut g = c.benchmark_group("maximal_order");
    for (name, poly, _) in FIELDS {
        let f = ZPoly::from_i64(poly);
        g.bench_function(*name, |b| b.iter(|| maximal_order(black_box(&f)).unwrap()));
    }
    g.finish();
}

fn class_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_group");
    g.sample_size(10);
    for (name, poly, _) in FIELDS {
        let ctx = field(poly);
        g.bench_function(*name, |b| b.iter(|| ClassGroup::compute(&ctx, &ClassGroupOptions::default()).unwrap()));
    }
    g.finish();
}

fn log_class_groups(c: &mut Criterion) {
    let mut g = c.benchmark_group("log_class_group");
    g.sample_size(10);
    for (name, poly, ell) in FIELDS {
        let ctx = field(poly);
        let cg = ClassGroup::compute(&ctx, &ClassGroupOptions::default()).unwrap();
        let opts = LogClassOptions::default();
        g.bench_function(*name, |b| b.iter(|| log_class_group_from(&ctx, &cg, *ell, &opts).unwrap()));
    }
    g.finish();
}

fn padic_log(c: &mut Criterion) {
    let a = BigInt::from(123_456_789u64);
    c.bench_function("log_of_int p=3 k=60", |b| b.iter(|| log_of_int(black_box(&a), 3, 60).unwrap()));
}

criterion_group!(benches, maximal_orders, class_groups, log_class_groups, padic_log);
criterion_main!(benches);
