use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stairgf::exactnum::{int, rat};
use stairgf::polygons::{enumerate_punctured, enumerate_staircase, enumerate_three_choice, Convention};
use stairgf::special::{hyp_series, Builder, HypParams};
use stairgf::{DiffOp, LaurentSeries, Verifier};
use stairgf_bench::{central_binomials, operators};

fn bench_series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [20i64, 40, 60] {
        let s = central_binomials(order);
        let inner = LaurentSeries::from_integers(1, &[1, 3, -2], order);
        g.bench_with_input(BenchmarkId::new("mul", order), &s, |b, s| b.iter(|| s.mul(s)));
        g.bench_with_input(BenchmarkId::new("cube_root", order), &s, |b, s| b.iter(|| s.pow(&rat(1, 3)).unwrap()));
        g.bench_with_input(BenchmarkId::new("compose", order), &s, |b, s| b.iter(|| s.compose(&inner).unwrap()));
    }
    g.finish();
}

fn bench_special(c: &mut Criterion) {
    let p = HypParams::new(vec![rat(1, 8), rat(3, 8)], vec![int(1)]).unwrap();
    c.bench_function("2F1(1/8,3/8;1) order 60", |b| b.iter(|| hyp_series(&p, 60).unwrap()));
    c.bench_function("SolV2_plusU order 40", |b| b.iter(|| Builder::default().get("SolV2_plusU", 40).unwrap()));
}

fn bench_operators(c: &mut Criterion) {
    let ops = operators(&["N3", "N2", "N1"]);
    let refs: Vec<&DiffOp<_>> = ops.iter().collect();
    let sol2 = Builder::default().get("Sol2_toplog", 48).unwrap();
    let mut g = c.benchmark_group("operators");
    g.sample_size(10);
    g.bench_function("N2.N1 applied, order 48", |b| b.iter(|| ops[1].apply(&ops[2].apply(&sol2).unwrap()).unwrap()));
    g.bench_function("N3.N2.N1 expanded to x^48", |b| b.iter(|| DiffOp::product_series(&refs, 48).unwrap()));
    g.bench_function("N3.N2.N1 Frobenius basis, 40 terms", |b| {
        b.iter(|| DiffOp::product_frobenius_basis(&refs, 40).unwrap())
    });
    g.finish();
}

fn bench_polygons(c: &mut Criterion) {
    let mut g = c.benchmark_group("polygons");
    g.sample_size(10);
    g.bench_function("staircase n<=12", |b| b.iter(|| enumerate_staircase(12).unwrap()));
    g.bench_function("punctured n<=11", |b| b.iter(|| enumerate_punctured(11).unwrap()));
    g.bench_function("three-choice n<=7", |b| b.iter(|| enumerate_three_choice(7, Convention::default()).unwrap()));
    g.finish();
}

fn bench_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    for id in ["R4", "M4", "E1", "F1"] {
        g.bench_function(id, |b| b.iter(|| Verifier::default().run_check(id, 40).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_series, bench_special, bench_operators, bench_polygons, bench_checks);
criterion_main!(benches);
