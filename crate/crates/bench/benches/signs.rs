use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rootsign::arith::sgn_eps_bruteforce;
use rootsign::signchar::SignContext;
use rootsign::tables::{tables, TableFilter};
use rootsign::{sgn_minus, sgn_plus, Sign};
use rootsign_bench::workloads;

fn legendre(c: &mut Criterion) {
    let mut g = c.benchmark_group("legendre");
    g.bench_function("closed n=997", |b| {
        b.iter(|| (1..997).map(|q| sgn_plus(997, q).unwrap() * sgn_minus(997, q).unwrap()).product::<Sign>())
    });
    g.bench_function("brute n=997", |b| {
        b.iter(|| {
            (1..997)
                .step_by(97)
                .map(|q| sgn_eps_bruteforce(black_box(997), q, Sign::Plus).unwrap())
                .product::<Sign>()
        })
    });
    g.finish();
}

fn symbols(c: &mut Criterion) {
    let mut g = c.benchmark_group("sign");
    for w in workloads().expect("fixtures resolve") {
        g.bench_function(format!("context {}", w.name), |b| {
            b.iter(|| SignContext::new(&w.class.sys, black_box(&w.class.w)).unwrap())
        });
        let ctx = SignContext::new(&w.class.sys, &w.class.w).unwrap();
        g.bench_function(format!("evaluate {}", w.name), |b| b.iter(|| ctx.sign(black_box(&w.v)).unwrap().sign));
    }
    g.finish();
}

fn all_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    g.bench_function("F4", |b| b.iter(|| tables(TableFilter::Exceptional(rootsign::Label::F4)).unwrap()));
    g.bench_function("all", |b| b.iter(|| tables(TableFilter::All).unwrap()));
    g.finish();
}

criterion_group!(benches, legendre, symbols, all_tables);
criterion_main!(benches);
