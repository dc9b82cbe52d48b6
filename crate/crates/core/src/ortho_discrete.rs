//! Infinite discrete bilateral orthogonality on the lattice q^k α, k ∈ ℤ:
//! Gram matrices for all five families, closed-form norms, and the
//! total-mass summation.
//!
//! The summand of the inner product is
//!
//! ```text
//! (1 + q^{2k} α²) · p_m[q^k α] · p_n[q^k α] · w(k)
//! w(k) = (α/a, …; q)_k / (−qαa, …; q)_k · q^{c·binom(k,2)} β^k
//! ```
//!
//! with (c, β) per family: Askey–Wilson (0, qabcd), dual Hahn (1, −qαabc),
//! Al-Salam–Chihara (2, qα²ab), big Hermite (3, −qα³a), Hermite (4, qα⁴).
//! Negative-index factorials follow the bilateral convention from
//! [`crate::poch`]. Weights are driven by the one-step ratio
//! w(k+1)/w(k) = ∏_p (1 − (α/p)q^k) / (1 + qαp q^{k+1}) · q^{ck} β in
//! log-magnitude form; on the k < 0 side each parenthesis is rewritten as
//! (q^j − α/p)/(q^j + qαp) so no intermediate leaves the double range
//! even when the series needs hundreds of lattice points.

use std::cell::RefCell;

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::hyper::{bilateral_sum, BilateralTermGen};
use crate::log_complex::{one_plus, LogComplex};
use crate::params::ParamMultiset;
use crate::poch::{binom2, qpoch_finite_log, qpoch_infinite_log};
use crate::polys::{eval_poly_log, Family, FamilyKind, Rep, ZPoint};
use crate::series::BilateralResult;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative threshold below which a weight denominator factor is a pole.
const POLE_TOL: f64 = 1e-13;

/// Specification of a discrete orthogonality computation.
#[derive(Debug, Clone)]
pub struct DiscreteOrthoSpec {
    family: Family,
    alpha: Complex64,
    max_degree: usize,
    ctx: QContext,
}

impl DiscreteOrthoSpec {
    /// Validate the lattice offset and, for Askey–Wilson, the degree bound
    /// n, m ≤ N with |qabcd| < |q|^{2N}; larger requests are rejected with
    /// the largest admissible N in the message.
    pub fn new(family: Family, alpha: Complex64, max_degree: usize, ctx: QContext) -> Result<Self> {
        if alpha.re == 0.0 && alpha.im == 0.0 {
            return Err(QError::ZeroParameter("lattice offset alpha"));
        }
        if let Some(nmax) = Self::admissible_degree(&family, &ctx)? {
            if max_degree > nmax {
                return Err(QError::Constraint(format!(
                    "askey-wilson degree {max_degree} exceeds admissible N = {nmax} \
                     (|qabcd| < |q|^(2N) fails)"
                )));
            }
        }
        Ok(DiscreteOrthoSpec { family, alpha, max_degree, ctx })
    }

    /// The largest admissible degree for the family under `ctx`, or `None`
    /// when the relation holds for all m, n ∈ ℕ₀ (every family but
    /// Askey–Wilson).
    pub fn admissible_degree(family: &Family, ctx: &QContext) -> Result<Option<usize>> {
        if family.kind() != FamilyKind::AskeyWilson {
            return Ok(None);
        }
        let t = (ctx.q() * family.param_product()).norm();
        if t >= 1.0 {
            return Err(QError::Constraint(format!(
                "|qabcd| = {t} >= 1: no admissible degree"
            )));
        }
        let qn = ctx.q_abs();
        let mut n = 0usize;
        while t < qn.powi(2 * (n as i32 + 1)) && n < 64 {
            n += 1;
        }
        Ok(Some(n))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }
}

/// (c, β): the exponent of q^{binom(k,2)} and the geometric base of the
/// family's weight factor.
fn weight_shape(family: &Family, alpha: Complex64, ctx: &QContext) -> (i64, Complex64) {
    let q = ctx.q();
    let prod = family.param_product();
    match family.kind() {
        FamilyKind::AskeyWilson => (0, q * prod),
        FamilyKind::DualHahn => (1, -q * alpha * prod),
        FamilyKind::AlSalamChihara => (2, q * alpha * alpha * prod),
        FamilyKind::BigHermite => (3, -q * alpha.powu(3) * prod),
        FamilyKind::Hermite => (4, q * alpha.powu(4)),
    }
}

/// Incremental log-space weight evaluator, stepped outward from w(0) = 1.
struct WeightLadder {
    params: Vec<Complex64>,
    alpha: Complex64,
    q: Complex64,
    ql: LogComplex,
    c: i64,
    beta_log: LogComplex,
    pos: RefCell<(i64, LogComplex)>,
    neg: RefCell<(i64, LogComplex)>,
}

impl WeightLadder {
    fn new(family: &Family, alpha: Complex64, ctx: &QContext) -> Self {
        let (c, beta) = weight_shape(family, alpha, ctx);
        WeightLadder {
            params: family.params().entries().to_vec(),
            alpha,
            q: ctx.q(),
            ql: LogComplex::from_complex(ctx.q()),
            c,
            beta_log: LogComplex::from_complex(beta),
            pos: RefCell::new((0, LogComplex::ONE)),
            neg: RefCell::new((0, LogComplex::ONE)),
        }
    }

    /// w(j+1)/w(j) for j ≥ 0 in log form; pole on a vanishing denominator.
    fn step_up(&self, j: i64) -> Result<LogComplex> {
        let qj = self.q.powi(j as i32);
        let mut r = self.ql.powi(self.c * j) * self.beta_log;
        for &p in &self.params {
            let den = ONE + self.q * self.alpha * p * qj;
            if den.norm() < POLE_TOL {
                return Err(QError::LatticePole {
                    k: j + 1,
                    detail: format!("weight denominator (1 + αp q^{}) vanished, p = {p}", j + 1),
                });
            }
            r *= LogComplex::from_complex((ONE - (self.alpha / p) * qj) / den);
        }
        Ok(r)
    }

    /// w(−m)/w(−m+1) = 1/ρ(−m) for m ≥ 1 in log form, with the parameter
    /// factors rewritten as (q^m + qαp)/(q^m − α/p).
    fn step_down(&self, m: i64) -> Result<LogComplex> {
        let qm = self.q.powi(m as i32);
        let mut r = self.ql.powi(self.c * m) / self.beta_log;
        for &p in &self.params {
            let den = qm - self.alpha / p;
            if den.norm() < POLE_TOL * (self.alpha / p).norm().max(1.0) {
                return Err(QError::LatticePole {
                    k: -m,
                    detail: format!("weight pole: α/p = q^{m} for p = {p}"),
                });
            }
            r *= LogComplex::from_complex((qm + self.q * self.alpha * p) / den);
        }
        Ok(r)
    }

    /// w(k) in log form. O(1) when called with |k| increasing by one (the
    /// bilateral evaluator's access pattern), O(|k|) after a reset.
    fn weight(&self, k: i64) -> Result<LogComplex> {
        if k == 0 {
            return Ok(LogComplex::ONE);
        }
        if k > 0 {
            let mut slot = self.pos.borrow_mut();
            if k <= slot.0 {
                *slot = (0, LogComplex::ONE);
            }
            while slot.0 < k {
                let r = self.step_up(slot.0)?;
                slot.1 *= r;
                slot.0 += 1;
            }
            Ok(slot.1)
        } else {
            let mut slot = self.neg.borrow_mut();
            if k >= slot.0 && slot.0 != 0 {
                *slot = (0, LogComplex::ONE);
            }
            while slot.0 > k {
                let r = self.step_down(-(slot.0 - 1))?;
                slot.1 *= r;
                slot.0 -= 1;
            }
            Ok(slot.1)
        }
    }
}

/// The bilateral inner product ⟨p_m, p_n⟩ for the family in `spec`.
///
/// Diagnostics (per-tail empirical ratios, term counts) come back in the
/// [`BilateralResult`]; non-convergence is flagged there, lattice poles
/// are errors carrying the offending k.
pub fn discrete_inner(spec: &DiscreteOrthoSpec, m: usize, n: usize) -> Result<BilateralResult> {
    if m > spec.max_degree || n > spec.max_degree {
        return Err(QError::Constraint(format!(
            "degrees ({m},{n}) exceed the spec bound N = {}",
            spec.max_degree
        )));
    }
    let ctx = &spec.ctx;
    let alpha = spec.alpha;
    let ladder = WeightLadder::new(&spec.family, alpha, ctx);
    let alpha2 = LogComplex::from_complex(alpha * alpha);
    let ql = LogComplex::from_complex(ctx.q());
    let ln_q_abs = ctx.q_abs().ln();
    let ln_alpha = alpha.norm().ln();

    let term = |k: i64| -> Result<Complex64> {
        // lattice point z = q^k α must keep the series factors inside the
        // range where complex reciprocals stay exact (|1 - a q^j| < 1e154)
        if (k as f64 * ln_q_abs + ln_alpha).abs() > 340.0 {
            return Err(QError::Constraint(format!(
                "lattice point q^{k} α outside the safe double range"
            )));
        }
        let z = ctx.q_pow(k) * alpha;
        let pt = ZPoint::new(z)?;
        // evaluate in degree order so (m,n) and (n,m) run identically
        let (lo, hi) = (m.min(n), m.max(n));
        let pm = eval_poly_log(&spec.family, lo as u32, pt, ctx, Rep::Canonical)?;
        let pn = if lo == hi {
            pm
        } else {
            eval_poly_log(&spec.family, hi as u32, pt, ctx, Rep::Canonical)?
        };
        let w = ladder.weight(k)?;
        let front = one_plus(ql.powi(2 * k) * alpha2);
        Ok((front * pm * pn * w).to_complex())
    };
    let gen = BilateralTermGen::new(term);
    bilateral_sum(&gen, ctx)
}

/// The closed-form norm: α-dependent infinite-product prefactor times the
/// degree part, assembled in log space.
pub fn closed_norm(spec: &DiscreteOrthoSpec, n: usize) -> Result<Complex64> {
    if n > spec.max_degree {
        return Err(QError::Constraint(format!(
            "degree {n} exceeds the spec bound N = {}",
            spec.max_degree
        )));
    }
    let pref = norm_prefactor_log(&spec.family, spec.alpha, &spec.ctx)?;
    let deg = norm_degree_log(&spec.family, n, &spec.ctx)?;
    Ok((pref * deg).to_complex())
}

/// (q, −α², −q/α², −q·p_i p_j …; q)_∞ / ((−qα·p, q·p/α, …; q)_∞ [· (qabcd;q)_∞])
pub(crate) fn norm_prefactor_log(
    family: &Family,
    alpha: Complex64,
    ctx: &QContext,
) -> Result<LogComplex> {
    let q = ctx.q();
    let mut num = qpoch_infinite_log(q, ctx).value
        * qpoch_infinite_log(-alpha * alpha, ctx).value
        * qpoch_infinite_log(-q / (alpha * alpha), ctx).value;
    for pp in family.params().pair_products() {
        num *= qpoch_infinite_log(-q * pp, ctx).value;
    }
    let mut den = LogComplex::ONE;
    for &p in family.params().iter() {
        den *= qpoch_infinite_log(-q * alpha * p, ctx).value;
        den *= qpoch_infinite_log(q * p / alpha, ctx).value;
    }
    if family.kind() == FamilyKind::AskeyWilson {
        den *= qpoch_infinite_log(q * family.param_product(), ctx).value;
    }
    if den.is_zero() {
        return Err(QError::Pole("norm denominator infinite product vanished".into()));
    }
    Ok(num / den)
}

/// The degree-n part of the closed norm.
pub(crate) fn norm_degree_log(family: &Family, n: usize, ctx: &QContext) -> Result<LogComplex> {
    let q = ctx.q();
    let ql = LogComplex::from_complex(q);
    let ni = n as i64;
    let nu = n as u32;
    let prod = family.param_product();
    let (c, base): (i64, Complex64) = match family.kind() {
        FamilyKind::AskeyWilson => (6, -(prod * prod)),
        FamilyKind::DualHahn => (4, prod * prod / q),
        FamilyKind::AlSalamChihara => (2, prod / q),
        FamilyKind::BigHermite | FamilyKind::Hermite => (1, q.inv()),
    };
    let mut v = ql.powi(-c * binom2(ni))
        * LogComplex::from_complex(base).powi(ni)
        * qpoch_finite_log(q, ctx, nu);
    for pp in family.params().pair_products() {
        v *= qpoch_finite_log(-pp.inv(), ctx, nu);
    }
    if family.kind() == FamilyKind::AskeyWilson {
        let u = (q * prod).inv();
        let w = prod.inv();
        let den = qpoch_finite_log(u, ctx, nu) * qpoch_finite_log(w, ctx, 2 * nu);
        if den.is_zero() {
            return Err(QError::Pole("norm degree denominator vanished".into()));
        }
        v = v * qpoch_finite_log(u, ctx, 2 * nu) / den;
    }
    Ok(v)
}

/// A per-entry failure inside a Gram computation.
#[derive(Debug, Clone)]
pub struct GramFailure {
    pub m: usize,
    pub n: usize,
    pub error: QError,
}

/// Computed Gram matrix with closed-form diagonal and defect metrics.
///
/// Off-diagonal defects are |value| / √(|norm_m|·|norm_n|) — the norms
/// vary over many orders of magnitude with n, so absolute comparisons
/// would be meaningless. Diagonal defects are |value − norm_n| / |norm_n|.
/// Failed entries carry `None` and a NaN defect, and are listed in
/// `failures`; the report is still produced.
#[derive(Debug, Clone)]
pub struct GramReport {
    pub computed: Vec<Vec<Option<Complex64>>>,
    pub closed_form_diag: Vec<Option<Complex64>>,
    pub defect: Vec<Vec<f64>>,
    pub worst_offdiag: f64,
    pub worst_diag: f64,
    pub failures: Vec<GramFailure>,
}

impl GramReport {
    pub fn size(&self) -> usize {
        self.computed.len()
    }

    pub fn all_converged(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Fill the full (N+1)×(N+1) Gram matrix for `spec`, with defects judged
/// against the closed norms.
#[allow(clippy::needless_range_loop)]
pub fn gram(spec: &DiscreteOrthoSpec) -> GramReport {
    let size = spec.max_degree + 1;
    let mut computed = vec![vec![None; size]; size];
    let mut defect = vec![vec![f64::NAN; size]; size];
    let mut closed_diag = vec![None; size];
    let mut failures = Vec::new();

    for n in 0..size {
        match closed_norm(spec, n) {
            Ok(v) => closed_diag[n] = Some(v),
            Err(e) => failures.push(GramFailure { m: n, n, error: e }),
        }
    }
    for m in 0..size {
        for n in 0..size {
            match discrete_inner(spec, m, n) {
                Ok(r) if r.converged => computed[m][n] = Some(r.value),
                Ok(_) => failures.push(GramFailure {
                    m,
                    n,
                    error: QError::Divergent("bilateral sum did not converge".into()),
                }),
                Err(e) => failures.push(GramFailure { m, n, error: e }),
            }
        }
    }

    let mut worst_offdiag = 0.0f64;
    let mut worst_diag = 0.0f64;
    for m in 0..size {
        for n in 0..size {
            let (Some(v), Some(cm), Some(cn)) = (computed[m][n], closed_diag[m], closed_diag[n])
            else {
                continue;
            };
            if m == n {
                let d = (v - cm).norm() / cm.norm();
                defect[m][n] = d;
                worst_diag = worst_diag.max(d);
            } else {
                let scale = (cm.norm() * cn.norm()).sqrt();
                let d = v.norm() / scale;
                defect[m][n] = d;
                worst_offdiag = worst_offdiag.max(d);
            }
        }
    }
    GramReport { computed, closed_form_diag: closed_diag, defect, worst_offdiag, worst_diag, failures }
}

/// Total mass of the Askey–Wilson relation: the (m,n) = (0,0) bilateral
/// sum and its closed-form product, returned as (direct, closed) for
/// external comparison. Requires |qabcd| < 1.
pub fn total_mass(
    params: &ParamMultiset,
    alpha: Complex64,
    ctx: &QContext,
) -> Result<(Complex64, Complex64)> {
    if params.len() != 4 {
        return Err(QError::InvalidConfig("total mass needs 4 parameters".into()));
    }
    let family = Family::new(FamilyKind::AskeyWilson, params.clone())?;
    let spec = DiscreteOrthoSpec::new(family, alpha, 0, ctx.clone())?;
    let direct = discrete_inner(&spec, 0, 0)?;
    if !direct.converged {
        return Err(QError::Divergent("total-mass bilateral sum did not converge".into()));
    }
    let closed = closed_norm(&spec, 0)?;
    Ok((direct.value, closed))
}
