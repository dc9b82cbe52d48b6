use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qaskey_core::ortho_continuous::{j_integral, psi_bilateral};
use qaskey_core::ortho_discrete::{discrete_inner, DiscreteOrthoSpec};
use qaskey_core::poch::qpoch_infinite;
use qaskey_core::polys::eval_poly;
use qaskey_core::{creal, Family, QContext, Rep, ZPoint};

fn bench_qpoch_infinite(c: &mut Criterion) {
    let ctx = QContext::real(0.7).unwrap();
    c.bench_function("qpoch_infinite_q0.7", |b| {
        b.iter(|| qpoch_infinite(black_box(creal(0.37)), &ctx))
    });
}

fn bench_eval_poly(c: &mut Criterion) {
    let ctx = QContext::real(0.4).unwrap();
    let fam = Family::askey_wilson(creal(0.2), creal(0.3), creal(0.4), creal(0.5)).unwrap();
    let pt = ZPoint::new(creal(1.3)).unwrap();
    c.bench_function("eval_poly_aw_n6", |b| {
        b.iter(|| eval_poly(&fam, 6, black_box(pt), &ctx, Rep::Canonical).unwrap())
    });
}

fn bench_discrete_inner(c: &mut Criterion) {
    let ctx = QContext::real(0.5).unwrap();
    let hermite = DiscreteOrthoSpec::new(Family::hermite(), creal(1.0), 4, ctx.clone()).unwrap();
    c.bench_function("discrete_inner_hermite_44", |b| {
        b.iter(|| discrete_inner(&hermite, 4, 4).unwrap())
    });
    let aw = Family::askey_wilson(creal(0.2), creal(0.3), creal(0.4), creal(0.45)).unwrap();
    let aw_spec = DiscreteOrthoSpec::new(aw, creal(1.0), 2, ctx).unwrap();
    c.bench_function("discrete_inner_aw_22", |b| {
        b.iter(|| discrete_inner(&aw_spec, 2, 2).unwrap())
    });
}

fn bench_continuous(c: &mut Criterion) {
    let ctx = QContext::real(0.5).unwrap();
    c.bench_function("j_integral_alpha1", |b| b.iter(|| j_integral(1.0, &ctx).unwrap()));
    let asc = Family::al_salam_chihara(creal(0.2), creal(0.3)).unwrap();
    c.bench_function("psi_bilateral_asc_11", |b| {
        b.iter(|| psi_bilateral(&asc, black_box(0.9), 1, 1, &ctx).unwrap())
    });
}

criterion_group!(
    benches,
    bench_qpoch_infinite,
    bench_eval_poly,
    bench_discrete_inner,
    bench_continuous
);
criterion_main!(benches);
