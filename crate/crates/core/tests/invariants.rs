//! Cross-module invariants: algebraic identities of the q-arithmetic under
//! random inputs, representation equivalence across the polynomial
//! families, and the orthogonality relations on mixed grids.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaskey_core::ortho_discrete::{discrete_inner, gram, DiscreteOrthoSpec};
use qaskey_core::poch::{qpoch_bilateral, qpoch_finite, qpoch_infinite};
use qaskey_core::polys::{eval_poly, eval_via_limit_chain};
use qaskey_core::{creal, Family, FamilyKind, LogComplex, ParamMultiset, QContext, Rep, ZPoint};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // (a;q)_{m+n} = (a;q)_m (a q^m; q)_n
    #[test]
    fn poch_splitting(
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        q in 0.1f64..0.9,
        m in 0u32..10,
        n in 0u32..10,
    ) {
        let ctx = QContext::real(q).unwrap();
        let a = Complex64::new(re, im);
        let lhs = qpoch_finite(a, &ctx, m + n);
        let rhs = qpoch_finite(a, &ctx, m) * qpoch_finite(a * ctx.q_pow(m as i64), &ctx, n);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    // (a;q)_inf / (a q^n; q)_inf = (a;q)_n
    #[test]
    fn poch_infinite_finite_consistency(
        re in -2.0f64..2.0,
        q in 0.1f64..0.9,
        n in 0u32..8,
    ) {
        let ctx = QContext::real(q).unwrap();
        let a = creal(re);
        let num = qpoch_infinite(a, &ctx);
        let den = qpoch_infinite(a * ctx.q_pow(n as i64), &ctx);
        prop_assume!(den.value.norm() > 1e-8);
        let lhs = num.value / den.value;
        let rhs = qpoch_finite(a, &ctx, n);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-6));
    }

    // (a;q)_k (a q^k; q)_{-k} = 1 for k in [-8, 8]
    #[test]
    fn poch_bilateral_inverse(
        re in 0.05f64..1.5,
        im in -0.5f64..0.5,
        q in 0.2f64..0.8,
        k in -8i64..=8,
    ) {
        let ctx = QContext::real(q).unwrap();
        let a = Complex64::new(re, im);
        let lhs = qpoch_bilateral(a, &ctx, k);
        let shifted = qpoch_bilateral(a * ctx.q_pow(k), &ctx, -k);
        if let (Ok(x), Ok(y)) = (lhs, shifted) {
            prop_assert!((x * y - creal(1.0)).norm() <= 1e-11);
        }
    }

    // 50-factor products through LogComplex match the direct product
    #[test]
    fn log_complex_long_products(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut direct = Complex64::new(1.0, 0.0);
        let mut logged = LogComplex::ONE;
        for _ in 0..50 {
            let f = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            direct *= f;
            logged *= LogComplex::from_complex(f);
        }
        if direct.norm() > 1e-280 && direct.norm() < 1e280 {
            prop_assert!((logged.to_complex() - direct).norm() <= 1e-10 * direct.norm());
        }
    }
}

#[test]
fn representation_equivalence_over_random_samples() {
    // 100 seeded samples per family with two representations
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let q = rng.gen_range(0.2..0.8);
        let ctx = QContext::real(q).unwrap();
        let z = rng.gen_range(0.5..2.0);
        let pt = ZPoint::new(creal(z)).unwrap();
        let p: Vec<f64> = (0..4).map(|_| rng.gen_range(0.01..0.6)).collect();
        let n = rng.gen_range(0..=6u32);

        let aw = Family::askey_wilson(creal(p[0]), creal(p[1]), creal(p[2]), creal(p[3])).unwrap();
        let v1 = eval_poly(&aw, n, pt, &ctx, Rep::Alternate).unwrap();
        let v2 = eval_poly(&aw, n, pt, &ctx, Rep::Canonical).unwrap();
        assert!(rel(v1, v2) < 1e-10, "aw q={q} z={z} n={n} p={p:?}: {v1} vs {v2}");

        let dh = Family::dual_hahn(creal(p[0]), creal(p[1]), creal(p[2])).unwrap();
        let v1 = eval_poly(&dh, n, pt, &ctx, Rep::Alternate).unwrap();
        let v2 = eval_poly(&dh, n, pt, &ctx, Rep::Canonical).unwrap();
        assert!(rel(v1, v2) < 1e-10, "dh q={q} z={z} n={n}");
    }
}

#[test]
fn involution_invariance_all_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ctx = QContext::real(0.45).unwrap();
    let fams = [
        Family::askey_wilson(creal(0.2), creal(0.3), creal(0.4), creal(0.5)).unwrap(),
        Family::dual_hahn(creal(0.2), creal(0.3), creal(0.4)).unwrap(),
        Family::al_salam_chihara(creal(0.2), creal(0.3)).unwrap(),
        Family::big_hermite(creal(0.3)).unwrap(),
        Family::hermite(),
    ];
    for fam in &fams {
        for n in 0..=8u32 {
            let z = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
            let pt = ZPoint::new(z).unwrap();
            let v1 = eval_poly(fam, n, pt, &ctx, Rep::Canonical).unwrap();
            let v2 = eval_poly(fam, n, pt.involution(), &ctx, Rep::Canonical).unwrap();
            assert!(rel(v1, v2) < 1e-11, "{} n={n}", fam.kind());
        }
    }
}

#[test]
fn limit_chain_every_step() {
    // family_k(params ∪ {h}) approximates family_{k-1}(params) at h = 1e-6
    let ctx = QContext::real(0.5).unwrap();
    let pt = ZPoint::new(creal(1.6)).unwrap();
    let lowers = [
        Family::dual_hahn(creal(0.2), creal(0.3), creal(0.4)).unwrap(),
        Family::al_salam_chihara(creal(0.2), creal(0.3)).unwrap(),
        Family::big_hermite(creal(0.2)).unwrap(),
        Family::hermite(),
    ];
    for lower in &lowers {
        for n in 0..=4u32 {
            let direct = eval_poly(lower, n, pt, &ctx, Rep::Canonical).unwrap();
            let lifted = eval_via_limit_chain(lower, n, pt, &ctx, 1e-6).unwrap();
            assert!(
                rel(lifted, direct) < 1e-4,
                "{} n={n}: {lifted} vs {direct}",
                lower.kind()
            );
        }
    }
}

#[test]
fn discrete_gram_dual_hahn_and_big_hermite() {
    // families not already covered by module unit tests, incl. alpha = 1.5
    for (q, alpha) in [(0.3, 1.0), (0.5, 1.5)] {
        let ctx = QContext::real(q).unwrap();
        let dh = Family::dual_hahn(creal(0.22), creal(0.31), creal(0.43)).unwrap();
        let g = gram(&DiscreteOrthoSpec::new(dh, creal(alpha), 4, ctx.clone()).unwrap());
        assert!(g.all_converged(), "dh q={q}");
        assert!(g.worst_offdiag < 1e-8, "dh q={q} offdiag {}", g.worst_offdiag);
        assert!(g.worst_diag < 1e-8, "dh q={q} diag {}", g.worst_diag);

        let bh = Family::big_hermite(creal(0.37)).unwrap();
        let g = gram(&DiscreteOrthoSpec::new(bh, creal(alpha), 4, ctx).unwrap());
        assert!(g.all_converged(), "bh q={q}");
        assert!(g.worst_offdiag < 1e-8, "bh q={q} offdiag {}", g.worst_offdiag);
        assert!(g.worst_diag < 1e-8, "bh q={q} diag {}", g.worst_diag);
    }
}

#[test]
fn closed_norms_positive_for_all_families_on_real_grid() {
    // q in (0,1), alpha = 1, small positive real params: positive real norms
    for q in [0.3, 0.6] {
        let ctx = QContext::real(q).unwrap();
        let fams = [
            Family::askey_wilson(creal(0.15), creal(0.2), creal(0.25), creal(0.3)).unwrap(),
            Family::dual_hahn(creal(0.2), creal(0.3), creal(0.4)).unwrap(),
            Family::al_salam_chihara(creal(0.2), creal(0.3)).unwrap(),
            Family::big_hermite(creal(0.3)).unwrap(),
            Family::hermite(),
        ];
        for fam in &fams {
            let adm = DiscreteOrthoSpec::admissible_degree(fam, &ctx).unwrap();
            let nmax = adm.unwrap_or(4).min(4);
            let spec = DiscreteOrthoSpec::new(fam.clone(), creal(1.0), nmax, ctx.clone()).unwrap();
            for n in 0..=nmax {
                let v = qaskey_core::ortho_discrete::closed_norm(&spec, n).unwrap();
                assert!(v.re > 0.0, "{} q={q} n={n}: {v}", fam.kind());
                assert!(v.im.abs() <= 1e-12 * v.re, "{} q={q} n={n}", fam.kind());
            }
        }
    }
}

#[test]
fn discrete_inner_complex_alpha_formal_identity() {
    // complex alpha off the positive axis: the identity is a formal
    // bilinear statement and still holds
    let ctx = QContext::real(0.5).unwrap();
    let fam = Family::new(
        FamilyKind::AlSalamChihara,
        ParamMultiset::from_reals(&[0.3, 0.4]).unwrap(),
    )
    .unwrap();
    let alpha = Complex64::new(1.1, 0.3);
    let spec = DiscreteOrthoSpec::new(fam, alpha, 3, ctx).unwrap();
    let off = discrete_inner(&spec, 0, 3).unwrap();
    let diag = discrete_inner(&spec, 3, 3).unwrap();
    let closed = qaskey_core::ortho_discrete::closed_norm(&spec, 3).unwrap();
    assert!(off.value.norm() / closed.norm() < 1e-9);
    assert!(rel(diag.value, closed) < 1e-9);
}

#[test]
fn readme_example_compiles_and_passes() {
    // mirrors the library example in README.md
    fn body() -> Result<(), qaskey_core::QError> {
        use qaskey_core::ortho_discrete::{gram, DiscreteOrthoSpec};
        use qaskey_core::{creal, Family, QContext, Rep, ZPoint};

        let ctx = QContext::real(0.5)?;
        let fam = Family::al_salam_chihara(creal(0.3), creal(0.4))?;

        let pt = ZPoint::new(creal(1.7))?;
        let value = qaskey_core::polys::eval_poly(&fam, 3, pt, &ctx, Rep::Canonical)?;
        assert!(value.norm() > 0.0);

        let spec = DiscreteOrthoSpec::new(fam, creal(1.0), 5, ctx)?;
        let report = gram(&spec);
        assert!(report.worst_offdiag < 1e-9 && report.worst_diag < 1e-9);
        Ok(())
    }
    body().unwrap();
}
