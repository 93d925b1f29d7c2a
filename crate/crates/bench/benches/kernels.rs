use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperleg_core::braid::{orbit_enumerate, seed_zeta5, seed_zeta8};
use hyperleg_core::curves::{build_fibre_rational, humbert8_test, i_pm};
use hyperleg_core::genfun::{check_theorem_th1, check_wan_identity};
use hyperleg_core::holonomic::catalog::Sign;
use hyperleg_core::monodromy::{density_certificate, verify_proposition_matrices};
use hyperleg_core::rug::Rational;
use hyperleg_core::HPComplex;

fn exact(c: &mut Criterion) {
    c.bench_function("th1 n=60", |b| b.iter(|| check_theorem_th1(black_box(60)).unwrap()));
    c.bench_function("wan order 12", |b| b.iter(|| check_wan_identity(black_box(12)).unwrap()));
    c.bench_function("proposition matrices", |b| b.iter(verify_proposition_matrices));
}

fn numeric(c: &mut Criterion) {
    let u = HPComplex::real(Rational::from((1, 3)));
    let x = HPComplex::real(Rational::from((1, 5)));
    c.bench_function("I+ at 128 bits", |b| b.iter(|| i_pm(&u, &x, Sign::Plus, 0, 128).unwrap()));
    let f = build_fibre_rational(&Rational::from((1, 2)), &Rational::from(1), 128).unwrap();
    c.bench_function("humbert base fibre", |b| b.iter(|| humbert8_test(&f)));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("orbit zeta8", |b| b.iter(|| orbit_enumerate(&seed_zeta8(), 1000).unwrap()));
    g.bench_function("orbit zeta5", |b| b.iter(|| orbit_enumerate(&seed_zeta5(), 1000).unwrap()));
    g.bench_function("density depth 12", |b| b.iter(|| density_certificate(12).unwrap()));
    g.finish();
}

criterion_group!(benches, exact, numeric, search);
criterion_main!(benches);
