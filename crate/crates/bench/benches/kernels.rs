use cmtwist::analytic::{weierstrass_values, LatticePoint};
use cmtwist::classifier::{density_estimate, is_cubic_special};
use cmtwist::eisenstein::{factor, residue_symbol};
use cmtwist::lseries::{hecke_l_value, l_value_rational, TwistKind, TwistSpec};
use cmtwist::phi::{phi_from_lvalues, phi_from_wp, PhiSpec};
use cmtwist::{EisensteinInt, PrecisionContext};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn e(a: i64, b: i64) -> EisensteinInt {
    EisensteinInt::new(a, b)
}

fn ring(c: &mut Criterion) {
    let (a, b) = (e(1234, -567), e(28, 27) * e(13, 12));
    c.bench_function("factor", |bch| bch.iter(|| factor(black_box(&(a * b))).unwrap()));
    for m in [2, 3, 6] {
        c.bench_function(&format!("residue_symbol_m{m}"), |bch| bch.iter(|| residue_symbol(black_box(&a), &b, m).unwrap()));
    }
}

fn classifier(c: &mut Criterion) {
    c.bench_function("is_cubic_special", |bch| bch.iter(|| is_cubic_special(black_box(&e(28, 27))).unwrap()));
    let mut g = c.benchmark_group("density");
    g.sample_size(10);
    g.bench_function("density_1e5", |bch| bch.iter(|| density_estimate(black_box(100_000))));
    g.finish();
}

fn analytic(c: &mut Criterion) {
    let ctx = PrecisionContext::new(128, 1e-25).unwrap();
    let z = LatticePoint::new(EisensteinInt::ONE, e(4, 1));
    c.bench_function("weierstrass_values", |bch| bch.iter(|| weierstrass_values(black_box(&z), &ctx).unwrap()));
}

fn lvalues(c: &mut Criterion) {
    let ctx = PrecisionContext::new(128, 1e-25).unwrap();
    let mut g = c.benchmark_group("lvalue");
    g.sample_size(10);
    let quad = TwistSpec::new(TwistKind::Quadratic, EisensteinInt::rational(157)).unwrap();
    g.bench_function("rational_quadratic_157", |bch| bch.iter(|| l_value_rational(black_box(&quad), &ctx).unwrap()));
    let cubic = TwistSpec::new(TwistKind::Cubic, e(28, 27)).unwrap();
    g.bench_function("hecke_cubic_28+27w", |bch| bch.iter(|| hecke_l_value(black_box(&cubic), &[], &ctx).unwrap()));
    g.finish();
}

fn phi(c: &mut Criterion) {
    let ctx = PrecisionContext::new(128, 1e-25).unwrap();
    let spec = PhiSpec::new(TwistKind::Cubic, &[e(1, 9)]).unwrap();
    let mut g = c.benchmark_group("phi");
    g.sample_size(10);
    g.bench_function("from_lvalues", |bch| bch.iter(|| phi_from_lvalues(black_box(&spec), None, &ctx).unwrap()));
    g.bench_function("from_wp", |bch| bch.iter(|| phi_from_wp(black_box(&spec), None, &ctx).unwrap()));
    g.finish();
}

criterion_group!(benches, ring, classifier, analytic, lvalues, phi);
criterion_main!(benches);
