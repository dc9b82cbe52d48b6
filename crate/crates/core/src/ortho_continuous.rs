//! Continuous analogues of the discrete relations: Gaussian-type weights
//! q^{2x²−x}, the J(α|q) integral, continuous orthogonality for every
//! family, the q-beta integral, and the q → 1⁻ beta integral with its
//! Fourier/Dougall verification apparatus.
//!
//! All public entry points here take real q ∈ (0,1) and a positive real
//! lattice offset α: α^{4x} and exp(2(log α)²/log q⁻¹) are branch-
//! sensitive, and the correspondence substitutions are real. Parameters
//! may be complex.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::gamma::{ln_gamma, recip_gamma_pair, sin_pi};
use crate::hyper::{bilateral_sum, dougall_5h5, BilateralTermGen};
use crate::log_complex::{one_plus, LogComplex};
use crate::ortho_discrete::norm_degree_log;
use crate::params::ParamMultiset;
use crate::poch::{ln_qpoch_infinite_real, qpoch_infinite, qpoch_infinite_log};
use crate::polys::{eval_poly_log, Family, FamilyKind, Rep, ZPoint};
use crate::quad::{
    integrate_oscillatory_even, integrate_real_line, integrate_unit_periodic, QuadratureSpec,
};
use crate::series::SeriesResult;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest argument magnitude fed into an infinite product before the
/// evaluation refuses (the factors would leave the double range).
const MAX_PRODUCT_ARG: f64 = 1e280;

/// Context for per-node product evaluation: truncation at least 100×
/// tighter than the verification tolerance, so node-level error cannot
/// pollute the quadrature gate. Products are re-evaluated at every node,
/// never cached across x.
fn node_ctx(ctx: &QContext) -> QContext {
    let eps = (ctx.eps_verify * 1e-2).min(ctx.eps_term);
    ctx.clone().with_eps_term(eps).expect("tolerances are positive")
}

/// The family weight on the real line:
/// (1 + q^{2x}α²) · ∏_p (−q^{x+1}αp, q^{1−x}p/α; q)_∞ · q^{2x²−x} α^{4x}.
///
/// Real and positive on ℝ for q ∈ (0,1), α > 0, positive real parameters.
/// At α = 1 with the Hermite family it reduces to (1+q^{2x}) q^{2x²−x}.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    family: Family,
    alpha: f64,
}

impl WeightSpec {
    pub fn new(family: Family, alpha: f64, ctx: &QContext) -> Result<Self> {
        ctx.q_real()?;
        if !(alpha > 0.0) {
            return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
        }
        Ok(WeightSpec { family, alpha })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The weight value at x.
    pub fn evaluate(&self, x: f64, ctx: &QContext) -> Result<Complex64> {
        let q = ctx.q_real()?;
        let lq = q.ln();
        let qx = (x * lq).exp();
        let mut w = Complex64::new(1.0 + qx * qx * self.alpha * self.alpha, 0.0);
        w *= product_weight(&self.family, self.alpha, x, ctx)?;
        w *= gaussian_factor(q, self.alpha, x);
        Ok(w)
    }
}

/// ∏_p (−q^{x+1} α p; q)_∞ (q^{1−x} p/α; q)_∞ at real x.
fn product_weight(family: &Family, alpha: f64, x: f64, ctx: &QContext) -> Result<Complex64> {
    let q = ctx.q_real()?;
    let nctx = node_ctx(ctx);
    let lq = q.ln();
    let up = ((x + 1.0) * lq).exp();
    let down = ((1.0 - x) * lq).exp();
    if !(up < MAX_PRODUCT_ARG && down < MAX_PRODUCT_ARG) {
        return Err(QError::Constraint(format!(
            "product argument at x = {x} outside double range"
        )));
    }
    let mut w = ONE;
    for &p in family.params().iter() {
        let r1 = qpoch_infinite(-up * alpha * p, &nctx);
        let r2 = qpoch_infinite(down * p / alpha, &nctx);
        if !(r1.converged && r2.converged) {
            return Err(QError::Divergent("weight product did not converge".into()));
        }
        w *= r1.value * r2.value;
    }
    Ok(w)
}

/// q^{2x²−x} α^{4x}.
#[inline]
fn gaussian_factor(q: f64, alpha: f64, x: f64) -> f64 {
    ((2.0 * x * x - x) * q.ln() + 4.0 * x * alpha.ln()).exp()
}

/// √(2π) α exp(2(log α)²/log q⁻¹) / (q^{1/8} √(log q⁻¹)): the Gaussian
/// total-mass constant every continuous closed form shares.
pub fn gaussian_norm_constant(alpha: f64, q: f64) -> f64 {
    let l = -q.ln();
    (2.0 * PI).sqrt() * alpha * (2.0 * alpha.ln().powi(2) / l).exp()
        / (q.powf(0.125) * l.sqrt())
}

/// Window spec centered on the integrand's Gaussian vertex.
fn k_integrand_spec(
    q: f64,
    alpha: f64,
    degree_sum: usize,
    ctx: &QContext,
) -> Result<QuadratureSpec> {
    let l = -q.ln();
    let center = 0.25 * (1.0 + degree_sum as f64) + alpha.ln() / l;
    let spec = QuadratureSpec::gaussian(q, center, 1e-18, ctx.eps_verify * 1e-2)?;
    Ok(spec.widen(0.3 * degree_sum as f64 + (alpha.ln() / l).abs()))
}

/// Trapezoidal evaluation of ∫_ℝ f for a Gaussian-envelope integrand,
/// with the step-halving gate. Exposed so callers outside the module can
/// drive their own integrands through the same engine policy.
pub fn integrate_gaussian_type<F: Fn(f64) -> Result<Complex64>>(
    f: F,
    q: f64,
    center: f64,
    ctx: &QContext,
) -> Result<SeriesResult<Complex64>> {
    let spec = QuadratureSpec::gaussian(q, center, 1e-18, ctx.eps_verify * 1e-2)?;
    integrate_real_line(f, &spec)
}

/// ∫ e^{−x²} α^{ax} dx = √π exp(¼ a² (log α)²), the rewritten Gaussian
/// integral behind J(α|q); valid for all real a and α > 0.
pub fn gaussian_power_integral(a: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    Ok(PI.sqrt() * (0.25 * a * a * alpha.ln().powi(2)).exp())
}

/// Quadrature cross-check of [`gaussian_power_integral`].
pub fn gaussian_power_integral_quad(a: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    let la = alpha.ln();
    let spec = QuadratureSpec {
        center: 0.5 * a * la,
        half_width: (18.0f64 * std::f64::consts::LN_10).sqrt() + 2.0,
        step: 0.25,
        refine_limit: 8,
        eps_gate: 1e-12,
        eps_envelope: 1e-18,
        max_extensions: 20,
    };
    let r = integrate_real_line(
        |x| Ok(Complex64::new((-x * x + a * la * x).exp(), 0.0)),
        &spec,
    )?;
    Ok(r.value.re)
}

/// The three evaluations of J(α|q).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JIntegral {
    /// ∫₀¹ (−q^{2x}α², −q^{1−2x}/α²; q)_∞ q^{2x²−x} α^{4x} dx.
    pub unit_product: f64,
    /// (1/(q;q)_∞) ∫_ℝ (1+q^{2x}α²) q^{2x²−x} α^{4x} dx.
    pub real_line: f64,
    /// √(2π) α exp(2(log α)²/log q⁻¹) / (q^{1/8} √(log q⁻¹) (q;q)_∞).
    pub closed: f64,
}

/// Evaluate J(α|q) three ways; the mutual agreement of the three is the
/// test contract.
pub fn j_integral(alpha: f64, ctx: &QContext) -> Result<JIntegral> {
    let q = ctx.q_real()?;
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    let lq = q.ln();
    let a2 = alpha * alpha;

    let nctx = node_ctx(ctx);
    let unit = integrate_unit_periodic(
        |x| {
            let r1 = qpoch_infinite(Complex64::new(-(2.0 * x * lq).exp() * a2, 0.0), &nctx);
            let r2 = qpoch_infinite(
                Complex64::new(-((1.0 - 2.0 * x) * lq).exp() / a2, 0.0),
                &nctx,
            );
            Ok(r1.value * r2.value * gaussian_factor(q, alpha, x))
        },
        ctx.eps_verify * 1e-2,
        0.0,
        10,
    )?;

    let real = integrate_gaussian_type(
        |x| {
            let qx2 = (2.0 * x * lq).exp();
            Ok(Complex64::new(
                (1.0 + qx2 * a2) * gaussian_factor(q, alpha, x),
                0.0,
            ))
        },
        q,
        0.25 + alpha.ln() / (-lq),
        ctx,
    )?;
    let (ln_phi, _) = ln_qpoch_infinite_real(q, q, ctx.eps_term.min(1e-18))?;
    let phi = ln_phi.exp();

    Ok(JIntegral {
        unit_product: unit.value.re,
        real_line: real.value.re / phi,
        closed: gaussian_norm_constant(alpha, q) / phi,
    })
}

/// Enforce the Askey–Wilson continuous-correspondence degree bound
/// |abcd| < |q|^{2N−1} for N = max(m,n).
fn check_aw_continuous_bound(family: &Family, m: usize, n: usize, ctx: &QContext) -> Result<()> {
    if family.kind() != FamilyKind::AskeyWilson {
        return Ok(());
    }
    let nn = m.max(n) as i32;
    let bound = ctx.q_abs().powi(2 * nn - 1);
    let t = family.param_product().norm();
    if t >= bound {
        return Err(QError::Constraint(format!(
            "|abcd| = {t} >= |q|^(2N-1) = {bound} at N = {nn}"
        )));
    }
    Ok(())
}

/// The full K integrand at x, assembled in log space: far into the
/// window extensions the weight products and polynomial values separately
/// leave the double range while their product (bounded by the Gaussian
/// envelope) does not.
fn k_integrand_log(
    family: &Family,
    alpha: f64,
    lo: u32,
    hi: u32,
    x: f64,
    ctx: &QContext,
    nctx: &QContext,
) -> Result<Complex64> {
    let q = ctx.q_real()?;
    let lq = q.ln();
    let qx = Complex64::new((x * lq).exp(), 0.0);
    if !((x * lq).abs() < 340.0) {
        return Err(QError::Constraint(format!(
            "lattice argument q^x at x = {x} outside the safe double range"
        )));
    }
    let pt = ZPoint::new(qx * alpha)?;
    let plo = eval_poly_log(family, lo, pt, ctx, Rep::Canonical)?;
    let phi = if lo == hi {
        plo
    } else {
        eval_poly_log(family, hi, pt, ctx, Rep::Canonical)?
    };
    let mut w = LogComplex::ONE;
    for &p in family.params().iter() {
        let up = qpoch_infinite_log(-qx * q * alpha * p, nctx);
        let down = qpoch_infinite_log(Complex64::new((1.0 - x) * lq, 0.0).exp() * p / alpha, nctx);
        if !(up.converged && down.converged) {
            return Err(QError::Divergent("weight product did not converge".into()));
        }
        w *= up.value * down.value;
    }
    let front = one_plus(
        LogComplex::new(2.0 * x * lq, 0.0) * LogComplex::from_real(alpha * alpha),
    );
    let gauss = LogComplex::new((2.0 * x * x - x) * lq + 4.0 * x * alpha.ln(), 0.0);
    Ok((front * plo * phi * w * gauss).to_complex())
}

/// The continuous inner product
/// K_{m,n} = ∫_ℝ (1+q^{2x}α²) p_m[q^x α] p_n[q^x α] ·
///           ∏_p (−q^{x+1}αp, q^{1−x}p/α; q)_∞ · q^{2x²−x} α^{4x} dx.
pub fn continuous_inner(
    family: &Family,
    alpha: f64,
    m: usize,
    n: usize,
    ctx: &QContext,
) -> Result<Complex64> {
    let q = ctx.q_real()?;
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    check_aw_continuous_bound(family, m, n, ctx)?;
    let nctx = node_ctx(ctx);
    let (lo, hi) = (m.min(n) as u32, m.max(n) as u32);
    let f = |x: f64| k_integrand_log(family, alpha, lo, hi, x, ctx, &nctx);
    let spec = k_integrand_spec(q, alpha, m + n, ctx)?;
    Ok(integrate_real_line(f, &spec)?.value)
}

/// Closed form of the diagonal continuous inner product:
/// gaussian constant × pair products × family degree part.
pub fn continuous_closed_norm(
    family: &Family,
    alpha: f64,
    n: usize,
    ctx: &QContext,
) -> Result<Complex64> {
    let q = ctx.q_real()?;
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    let mut v = LogComplex::from_real(gaussian_norm_constant(alpha, q));
    v *= continuous_pairs_log(family, ctx)?;
    v *= norm_degree_log(family, n, ctx)?;
    Ok(v.to_complex())
}

/// ∏ pairs (−q p_i p_j; q)_∞ [ / (qabcd;q)_∞ for Askey–Wilson ].
fn continuous_pairs_log(family: &Family, ctx: &QContext) -> Result<LogComplex> {
    let q = ctx.q();
    let mut v = LogComplex::ONE;
    for pp in family.params().pair_products() {
        v *= qpoch_infinite_log(-q * pp, ctx).value;
    }
    if family.kind() == FamilyKind::AskeyWilson {
        let den = qpoch_infinite_log(q * family.param_product(), ctx).value;
        if den.is_zero() {
            return Err(QError::Pole("(qabcd;q)_inf vanished".into()));
        }
        v /= den;
    }
    Ok(v)
}

/// Ψ_{m,n}(β) = Σ_k (1+q^{2k}β²) p_m[q^k β] p_n[q^k β] ·
///              ∏_p (−q^{k+1}βp, q^{1−k}p/β; q)_∞ · q^{2k²−k} β^{4k},
/// the discrete bilateral sum with infinite-factorial weights that the
/// correspondence integrals fold over the unit interval.
pub fn psi_bilateral(
    family: &Family,
    beta: f64,
    m: usize,
    n: usize,
    ctx: &QContext,
) -> Result<Complex64> {
    if !(beta > 0.0) {
        return Err(QError::InvalidConfig(format!("beta = {beta} must be > 0")));
    }
    let q = ctx.q();
    let nctx = node_ctx(ctx);
    let ql = LogComplex::from_complex(q);
    let beta_log = LogComplex::from_real(beta);
    let beta2 = LogComplex::from_real(beta * beta);
    let (lo, hi) = (m.min(n) as u32, m.max(n) as u32);

    let term = |k: i64| -> Result<Complex64> {
        let qk = ctx.q_pow(k);
        if !(qk.norm().ln().abs() < 340.0) {
            return Err(QError::Constraint(format!(
                "lattice point q^{k} outside the safe double range"
            )));
        }
        let z = qk * beta;
        let pt = ZPoint::new(z)?;
        let plo = eval_poly_log(family, lo, pt, ctx, Rep::Canonical)?;
        let phi = if lo == hi {
            plo
        } else {
            eval_poly_log(family, hi, pt, ctx, Rep::Canonical)?
        };
        let mut w = LogComplex::ONE;
        for &p in family.params().iter() {
            let up = qpoch_infinite_log(-q * qk * beta * p, &nctx);
            let down = qpoch_infinite_log(ctx.q_pow(1 - k) * p / beta, &nctx);
            if !(up.converged && down.converged) {
                return Err(QError::Divergent("psi weight product did not converge".into()));
            }
            w *= up.value * down.value;
        }
        let gauss = ql.powi(2 * k * k - k) * beta_log.powi(4 * k);
        let front = one_plus(ql.powi(2 * k) * beta2);
        Ok((front * plo * phi * w * gauss).to_complex())
    };
    let r = bilateral_sum(&BilateralTermGen::new(term), ctx)?;
    if !r.converged {
        return Err(QError::Divergent("psi bilateral sum did not converge".into()));
    }
    Ok(r.value)
}

/// Both sides of the correspondence: the real-line K integral and the
/// unit-interval integral of the lattice-shifted Ψ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceCheck {
    /// ∫_ℝ of the full integrand.
    pub real_line: Complex64,
    /// ∫₀¹ Ψ_{m,n}(q^x α) q^{2x²−x} α^{4x} dx.
    pub unit_interval: Complex64,
    /// The closed form (diagonal entries only).
    pub closed: Option<Complex64>,
}

/// The Ismail–Rahman periodic-weight argument with ω(x;q) ≡ 1 made
/// computational: both integration paths must agree.
pub fn discrete_to_continuous_check(
    family: &Family,
    alpha: f64,
    m: usize,
    n: usize,
    ctx: &QContext,
) -> Result<CorrespondenceCheck> {
    let q = ctx.q_real()?;
    check_aw_continuous_bound(family, m, n, ctx)?;
    let real_line = continuous_inner(family, alpha, m, n, ctx)?;
    // off-diagonal: the folded integrand vanishes pointwise, so give the
    // gate an absolute floor tied to the norm scale
    let norm_scale = (continuous_closed_norm(family, alpha, m, ctx)?.norm()
        * continuous_closed_norm(family, alpha, n, ctx)?.norm())
    .sqrt();
    let gate = ctx.eps_verify * 1e-2;
    let unit = integrate_unit_periodic(
        |x| {
            let beta = (x * q.ln()).exp() * alpha;
            let psi = psi_bilateral(family, beta, m, n, ctx)?;
            Ok(psi * gaussian_factor(q, alpha, x))
        },
        gate,
        gate * norm_scale,
        8,
    )?;
    let closed = if m == n {
        Some(continuous_closed_norm(family, alpha, n, ctx)?)
    } else {
        None
    };
    Ok(CorrespondenceCheck { real_line, unit_interval: unit.value, closed })
}

/// The q-beta integral: quadrature of
/// ∫_ℝ (1+q^{2x}α²) ∏_p (−q^{x+1}αp, q^{1−x}p/α; q)_∞ q^{2x²−x} α^{4x} dx
/// against its closed form
/// G(α,q) (−qab, −qac, −qad, −qbc, −qbd, −qcd; q)_∞ / (qabcd; q)_∞.
/// Requires |abcd| < |q|⁻¹.
pub fn qbeta_integral(
    alpha: f64,
    params: &ParamMultiset,
    ctx: &QContext,
) -> Result<(Complex64, Complex64)> {
    let q = ctx.q_real()?;
    if params.len() != 4 {
        return Err(QError::InvalidConfig("q-beta integral needs 4 parameters".into()));
    }
    let family = Family::new(FamilyKind::AskeyWilson, params.clone())?;
    if !(alpha > 0.0) {
        return Err(QError::InvalidConfig(format!("alpha = {alpha} must be > 0")));
    }
    check_aw_continuous_bound(&family, 0, 0, ctx)?;
    let nctx = node_ctx(ctx);
    let spec = k_integrand_spec(q, alpha, 0, ctx)?;
    let quad = integrate_real_line(
        |x| k_integrand_log(&family, alpha, 0, 0, x, ctx, &nctx),
        &spec,
    )?
    .value;
    let closed = continuous_closed_norm(&family, alpha, 0, ctx)?;
    Ok((quad, closed))
}

/// The three evaluations of the symmetric beta integral
/// ∫ dx / Γ(2x, −2x, 1+a±x, 1+b±x, 1+c±x, 1+d±x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaIntegralCheck {
    /// Direct oscillatory quadrature of −(2/π) x sin(2πx) ∏ 1/Γ(1+a_j±x);
    /// the integrand decays only algebraically, so this path is the least
    /// accurate of the three (expected ~1e-4 relative at desk scale).
    pub quadrature: f64,
    /// The bilateral-sum (Dougall) evaluation.
    pub dougall: f64,
    /// −(1/2π²) Γ(a+b+c+d+1) / ∏_{i<j} Γ(1+a_i+a_j).
    pub closed: f64,
}

/// Evaluate the beta integral three ways. Requires a+b+c+d > −1.
pub fn beta_integral_check(a: f64, b: f64, c: f64, d: f64) -> Result<BetaIntegralCheck> {
    let prm = [a, b, c, d];
    let s: f64 = prm.iter().sum();
    if s + 1.0 <= 0.0 {
        return Err(QError::Divergent(format!(
            "beta integral needs a+b+c+d+1 > 0, got {}",
            s + 1.0
        )));
    }
    let dg = dougall_5h5(prm)?;

    // reflection turns 1/[Γ(2x)Γ(−2x)] into −(2/π) x sin(2πx)
    let f = move |x: f64| -> f64 {
        let mut v = -(2.0 / PI) * x * sin_pi(2.0 * x);
        for &aj in &prm {
            v *= recip_gamma_pair(aj, x);
        }
        v
    };
    // truncation: the non-oscillatory tail component decays like
    // x^{-(2+2s)}; X is sized for a ~1e-7 absolute tail
    let x_max = ((0.02 / 1e-7_f64).powf(1.0 / (2.0 + 2.0 * s.max(0.0)))).clamp(60.0, 1500.0);
    let quad = integrate_oscillatory_even(f, x_max, 1.0 / 16.0, 1e-7, 6)?;

    Ok(BetaIntegralCheck { quadrature: quad.value, dougall: dg.direct, closed: dg.closed })
}

/// Im ∫ e^{2iπx} sin⁴(πx)/x³ dx — the a,b,c,d → 0 reduction of the beta
/// integral via the reflection formula; the exact value is π³/4. The real
/// part vanishes by oddness.
pub fn sin4_over_x3_integral() -> Result<f64> {
    let f = |x: f64| -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let s = sin_pi(x);
        sin_pi(2.0 * x) * s * s * s * s / (x * x * x)
    };
    let r = integrate_oscillatory_even(f, 2000.0, 1.0 / 16.0, 1e-9, 6)?;
    Ok(r.value)
}

/// The Fourier pair behind the beta integral's first proof:
/// quadrature of ∫ e^{−ixt} / [Γ(1+a+x)Γ(1+a−x)] dx against the closed
/// form (2 cos(t/2))^{2a} / Γ(2a+1) on (−π, π), 0 outside.
/// Requires a > −1/2. Returns (quadrature, closed).
pub fn ramanujan_fourier_pair(a: f64, t: f64) -> Result<(f64, f64)> {
    if !(a > -0.5) {
        return Err(QError::InvalidConfig(format!("need a > -1/2, got {a}")));
    }
    // the integrand is even in x, so the transform reduces to a cosine one
    let f = move |x: f64| -> f64 { (x * t).cos() * recip_gamma_pair(a, x) };
    let quad = integrate_oscillatory_even(f, 1000.0, 1.0 / 32.0, 1e-8, 6)?;
    let closed = if t.abs() < PI {
        (2.0 * a * (2.0 * (0.5 * t).cos()).ln() - ln_gamma(2.0 * a + 1.0)).exp()
    } else {
        0.0
    };
    Ok((quad.value, closed))
}

/// T(q) = exp(−π²/(2 log q⁻¹)) / ((q;q)_∞³ (1−q)^{3/2}) along a sequence
/// of q → 1⁻; the values approach 1/(2π)^{3/2}. Evaluated in log space —
/// (q;q)_∞ underflow near q = 1 is the point of this probe.
pub fn t_constant_probe(qs: &[f64]) -> Result<Vec<f64>> {
    qs.iter()
        .map(|&q| {
            if !(q > 0.0 && q < 1.0) {
                return Err(QError::InvalidBase(Complex64::new(q, 0.0)));
            }
            let l = -q.ln();
            let (ln_phi, sign) = ln_qpoch_infinite_real(q, q, 1e-18)?;
            debug_assert!(sign > 0.0);
            let ln_t = -PI * PI / (2.0 * l) - 3.0 * ln_phi - 1.5 * (1.0 - q).ln();
            Ok(ln_t.exp())
        })
        .collect()
}

/// The limit 1/(2π)^{3/2} the T-probe approaches.
pub fn t_constant_limit() -> f64 {
    (2.0 * PI).powf(-1.5)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values
mod tests {
    use super::*;
    use crate::creal;

    fn ctx(q: f64) -> QContext {
        QContext::real(q).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn crel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn weight_reduces_to_hermite_form_at_alpha_one() {
        let c = ctx(0.5);
        let w = WeightSpec::new(Family::hermite(), 1.0, &c).unwrap();
        for x in [-1.5, 0.0, 0.7, 2.3] {
            let v = w.evaluate(x, &c).unwrap();
            let lq = 0.5f64.ln();
            let expect = (1.0 + (2.0 * x * lq).exp()) * ((2.0 * x * x - x) * lq).exp();
            assert!(rel(v.re, expect) < 1e-14);
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn weight_real_everywhere_positive_for_hermite() {
        // the Hermite weight (no product factors) is pointwise positive;
        // parameterized weights are real but change sign where
        // q^{1-x} p/α crosses q^{-m}
        let c = ctx(0.4);
        for &alpha in &[0.8, 1.0, 1.3] {
            let wh = WeightSpec::new(Family::hermite(), alpha, &c).unwrap();
            let fam =
                Family::askey_wilson(creal(0.2), creal(0.3), creal(0.4), creal(0.5)).unwrap();
            let wa = WeightSpec::new(fam, alpha, &c).unwrap();
            let mut saw_negative = false;
            for i in 0..60 {
                let x = -5.0 + 0.25 * i as f64;
                let vh = wh.evaluate(x, &c).unwrap();
                assert!(vh.re > 0.0 && vh.im == 0.0, "hermite x = {x}");
                let va = wa.evaluate(x, &c).unwrap();
                assert!(va.im.abs() <= 1e-13 * va.re.abs(), "aw x = {x}");
                saw_negative |= va.re < 0.0;
            }
            assert!(saw_negative, "the parameterized weight is signed");
        }
    }

    #[test]
    fn gaussian_power_integral_cases() {
        assert!(rel(gaussian_power_integral(0.0, 3.7).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gaussian_power_integral(5.0, 1.0).unwrap(), PI.sqrt()) < 1e-15);
        // a = 2, alpha = e: sqrt(pi) * e
        let v = gaussian_power_integral(2.0, std::f64::consts::E).unwrap();
        assert!(rel(v, PI.sqrt() * std::f64::consts::E) < 1e-15);
        let q = gaussian_power_integral_quad(2.0, std::f64::consts::E).unwrap();
        assert!(rel(q, v) < 1e-12, "{q} vs {v}");
    }

    #[test]
    fn j_integral_at_alpha_one() {
        // J(1|q) = q^{-1/8} sqrt(2π/log q^{-1}) / (q;q)_inf
        let c = ctx(0.5);
        let j = j_integral(1.0, &c).unwrap();
        let expect = 11.369115199601739;
        assert!(rel(j.closed, expect) < 1e-12, "{}", j.closed);
        assert!(rel(j.unit_product, j.closed) < 1e-9, "{} vs {}", j.unit_product, j.closed);
        assert!(rel(j.real_line, j.closed) < 1e-9);
    }

    #[test]
    fn j_integral_off_center_alpha() {
        let c = ctx(0.3);
        let j = j_integral(2.0, &c).unwrap();
        assert!(rel(j.unit_product, j.closed) < 1e-9, "{} vs {}", j.unit_product, j.closed);
        assert!(rel(j.real_line, j.closed) < 1e-9);
    }

    #[test]
    fn hermite_continuous_orthogonality() {
        let c = ctx(0.5);
        let h = Family::hermite();
        // off-diagonal vanishes against the norm scale
        let v01 = continuous_inner(&h, 1.0, 0, 1, &c).unwrap();
        let n1 = continuous_closed_norm(&h, 1.0, 1, &c).unwrap();
        assert!(v01.norm() / n1.norm() < 1e-9);
        // diagonal n = 2: q^{-1}(q;q)_2 / q^{2+1/8} sqrt(2π/log 2)
        let v22 = continuous_inner(&h, 1.0, 2, 2, &c).unwrap();
        let q: f64 = 0.5;
        let expect = (1.0 / q) * ((1.0 - q) * (1.0 - q * q)) / q.powf(2.125)
            * (2.0 * PI / (1.0f64 / q).ln()).sqrt();
        assert!(rel(v22.re, expect) < 1e-10, "{} vs {expect}", v22.re);
        let n2 = continuous_closed_norm(&h, 1.0, 2, &c).unwrap();
        assert!(crel(n2, creal(expect)) < 1e-13);
    }

    #[test]
    fn aw_continuous_inner_matches_closed_norm() {
        let c = ctx(0.5);
        let fam = Family::askey_wilson(creal(0.2), creal(0.3), creal(0.4), creal(0.45)).unwrap();
        let v = continuous_inner(&fam, 1.0, 1, 1, &c).unwrap();
        let n = continuous_closed_norm(&fam, 1.0, 1, &c).unwrap();
        assert!(crel(v, n) < 1e-7, "{v} vs {n}");
    }

    #[test]
    fn aw_continuous_bound_enforced() {
        // |abcd| = 0.6^4 = 0.1296 >= |q|^{2*3-1} = 0.5^5 = 0.03125 at N = 3
        let c = ctx(0.5);
        let fam = Family::askey_wilson(creal(0.6), creal(0.6), creal(0.6), creal(0.6)).unwrap();
        assert!(continuous_inner(&fam, 1.0, 3, 3, &c).is_err());
        // N = 0 needs only |abcd| < 1/q = 2
        assert!(continuous_inner(&fam, 1.0, 0, 0, &c).is_ok());
    }

    #[test]
    fn correspondence_hermite_total_mass() {
        let c = ctx(0.5);
        let r = discrete_to_continuous_check(&Family::hermite(), 1.0, 0, 0, &c).unwrap();
        let k00 = 3.2832651213131238; // q^{-1/8} sqrt(2π/ln 2)
        assert!(rel(r.real_line.re, k00) < 1e-8);
        assert!(crel(r.unit_interval, r.real_line) < 1e-8);
        assert!(crel(r.closed.unwrap(), r.real_line) < 1e-8);
    }

    #[test]
    fn correspondence_big_hermite_offdiagonal() {
        let c = ctx(0.5);
        let fam = Family::big_hermite(creal(0.3)).unwrap();
        let r = discrete_to_continuous_check(&fam, 1.0, 0, 2, &c).unwrap();
        let scale = continuous_closed_norm(&fam, 1.0, 2, &c).unwrap().norm();
        assert!(r.real_line.norm() / scale < 1e-8);
        assert!(r.unit_interval.norm() / scale < 1e-8);
    }

    #[test]
    fn correspondence_asc_diagonal() {
        let c = ctx(0.5);
        let fam = Family::al_salam_chihara(creal(0.2), creal(0.3)).unwrap();
        let r = discrete_to_continuous_check(&fam, 1.0, 1, 1, &c).unwrap();
        let closed = r.closed.unwrap();
        assert!(crel(r.real_line, closed) < 1e-7, "{} vs {closed}", r.real_line);
        assert!(crel(r.unit_interval, closed) < 1e-7);
    }

    #[test]
    fn qbeta_integral_matches_closed_form() {
        let c = ctx(0.4);
        let params = ParamMultiset::from_reals(&[0.2, 0.3, 0.4, 0.5]).unwrap();
        let (quad, closed) = qbeta_integral(1.0, &params, &c).unwrap();
        assert!(crel(quad, closed) < 1e-8, "{quad} vs {closed}");
    }

    #[test]
    fn qbeta_degenerates_to_hermite_mass() {
        // params scaled to zero: the integral tends to G(α,q) linearly
        let c = ctx(0.5);
        let alpha = 1.3;
        let k00 = gaussian_norm_constant(alpha, 0.5);
        let mut errs = Vec::new();
        for s in [1e-2, 1e-3] {
            let params =
                ParamMultiset::from_reals(&[0.2 * s, 0.3 * s, 0.4 * s, 0.5 * s]).unwrap();
            let (quad, _) = qbeta_integral(alpha, &params, &c).unwrap();
            errs.push(rel(quad.re, k00));
        }
        assert!(errs[0] < 2e-2, "{errs:?}");
        assert!(errs[1] < errs[0] / 3.0, "{errs:?}");
    }

    #[test]
    fn qbeta_is_the_zero_degree_aw_inner_product() {
        // same integrand with unit polynomials: the two entry points agree
        let c = ctx(0.4);
        let params = ParamMultiset::from_reals(&[0.2, 0.3, 0.4, 0.5]).unwrap();
        let fam = Family::new(FamilyKind::AskeyWilson, params.clone()).unwrap();
        let (quad, closed) = qbeta_integral(1.0, &params, &c).unwrap();
        let k00 = continuous_inner(&fam, 1.0, 0, 0, &c).unwrap();
        assert!(crel(quad, k00) < 1e-10);
        let n0 = continuous_closed_norm(&fam, 1.0, 0, &c).unwrap();
        assert_eq!(closed, n0);
    }

    #[test]
    fn qbeta_constraint_enforced() {
        let c = ctx(0.4);
        let params = ParamMultiset::from_reals(&[1.3, 1.3, 1.3, 1.3]).unwrap();
        // |abcd| = 2.86 >= 1/q = 2.5
        assert!(qbeta_integral(1.0, &params, &c).is_err());
    }

    #[test]
    fn beta_integral_three_paths() {
        let r = beta_integral_check(0.1, 0.2, 0.3, 0.4).unwrap();
        assert!(rel(r.dougall, r.closed) < 1e-9, "{} vs {}", r.dougall, r.closed);
        assert!(rel(r.quadrature, r.closed) < 1e-4, "{} vs {}", r.quadrature, r.closed);
        // all-zeros closed value
        let r0 = beta_integral_check(0.0, 0.0, 0.0, 0.0).unwrap();
        let expect = -1.0 / (2.0 * PI * PI);
        assert!(rel(r0.closed, expect) < 1e-14);
        assert!(rel(r0.dougall, expect) < 1e-9);
        assert!(rel(r0.quadrature, expect) < 1e-4);
        // divergent inputs rejected
        assert!(beta_integral_check(-0.3, -0.3, -0.3, -0.3).is_err());
    }

    #[test]
    fn sin4_special_case() {
        let v = sin4_over_x3_integral().unwrap();
        let expect = PI.powi(3) / 4.0;
        assert!((v - expect).abs() < 1e-6, "{v} vs {expect}");
    }

    #[test]
    fn fourier_pair_values() {
        // t = 0, a = 1/2: closed form 2
        let (quad, closed) = ramanujan_fourier_pair(0.5, 0.0).unwrap();
        assert!(rel(closed, 2.0) < 1e-14);
        assert!((quad - closed).abs() < 1e-6, "{quad}");
        // t = π/2, a = 1: closed form 1
        let (quad, closed) = ramanujan_fourier_pair(1.0, PI / 2.0).unwrap();
        assert!(rel(closed, 1.0) < 1e-14);
        assert!((quad - closed).abs() < 1e-6, "{quad}");
        // outside the support: 0
        let (quad, closed) = ramanujan_fourier_pair(1.0, 3.5).unwrap();
        assert_eq!(closed, 0.0);
        assert!(quad.abs() < 1e-6, "{quad}");
    }

    #[test]
    fn t_probe_approaches_limit() {
        let ts = t_constant_probe(&[0.9, 0.99, 0.999]).unwrap();
        let lim = t_constant_limit();
        assert!(rel(lim, 0.06349363593424097) < 1e-14);
        // monotone-ish approach from above
        assert!(ts[0] > ts[1] && ts[1] > ts[2]);
        assert!((ts[2] - lim).abs() < 5e-3, "{}", ts[2]);
        assert!((ts[2] - lim).abs() < (ts[0] - lim).abs());
    }

    #[test]
    fn diagonal_alpha_independence() {
        // K_{n,n} / G(α,q) is independent of α
        let c = ctx(0.5);
        let fam = Family::al_salam_chihara(creal(0.25), creal(0.35)).unwrap();
        let base = continuous_inner(&fam, 1.0, 2, 2, &c).unwrap().re
            / gaussian_norm_constant(1.0, 0.5);
        for &alpha in &[0.8, 1.3] {
            let v = continuous_inner(&fam, alpha, 2, 2, &c).unwrap().re
                / gaussian_norm_constant(alpha, 0.5);
            assert!(rel(v, base) < 1e-7, "alpha = {alpha}: {v} vs {base}");
        }
    }
}
