//! q-shifted factorials: finite, infinite, multiset, and bilateral-index
//! variants, plus the modified theta function.
//!
//! Conventions:
//!
//! - `(a;q)_n = (1-a)(1-qa)···(1-q^{n-1}a)`, ascending factor order.
//! - `(a;q)_∞` truncated once `|a q^n| < eps_term`, with tail bound
//!   `|a q^n| / (1 - |q|)` on `|log Π (1 - a q^n)|`.
//! - Negative index by the unique extension satisfying the one-step
//!   recurrence: `(a;q)_{-m} = 1 / (a q^{-m}; q)_m`.
//! - `ϑ(z;q) = (z;q)_∞ (q/z;q)_∞`.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::log_complex::LogComplex;
use crate::params::ParamMultiset;
use crate::series::SeriesResult;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative threshold below which a denominator factor counts as a pole.
const POLE_TOL: f64 = 1e-13;

/// Finite q-shifted factorial (a;q)_n = ∏_{j=0}^{n-1} (1 − a q^j).
pub fn qpoch_finite(a: Complex64, ctx: &QContext, n: u32) -> Complex64 {
    let q = ctx.q();
    let mut p = ONE;
    let mut aqj = a;
    for _ in 0..n {
        p *= ONE - aqj;
        aqj *= q;
    }
    p
}

/// Finite q-shifted factorial accumulated in log space. Needed when the
/// argument is huge (e.g. (−1/(cz); q)_n at lattice points z = q^k α with
/// large |k|), where the plain product would overflow.
pub fn qpoch_finite_log(a: Complex64, ctx: &QContext, n: u32) -> LogComplex {
    let q = ctx.q();
    let mut p = LogComplex::ONE;
    let mut aqj = a;
    for _ in 0..n {
        p *= LogComplex::from_complex(ONE - aqj);
        aqj *= q;
    }
    p
}

/// q⁻¹-base Pochhammer via (a;q⁻¹)_n = q^{-binom(n,2)} (−a)^n (1/a;q)_n.
///
/// This is the identity the terminating q⁻¹-family representations are
/// built on; `a` must be nonzero.
pub fn qpoch_finite_negbase(a: Complex64, ctx: &QContext, n: u32) -> Result<Complex64> {
    if a.re == 0.0 && a.im == 0.0 {
        return Err(QError::ZeroParameter("qpoch_finite_negbase argument"));
    }
    let ql = LogComplex::from_complex(ctx.q());
    let pref = ql.powi(-(binom2(n as i64))) * LogComplex::from_complex(-a).powi(n as i64);
    let tail = qpoch_finite_log(a.inv(), ctx, n);
    Ok((pref * tail).to_complex())
}

/// binom(k, 2) = k(k−1)/2 for any integer k.
#[inline]
pub fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Infinite product (a;q)_∞, truncated when |a qⁿ| < eps_term.
///
/// Non-convergence within `max_terms` is reported through
/// `converged = false`, never by halting. An exactly-vanishing factor
/// short-circuits to zero.
pub fn qpoch_infinite(a: Complex64, ctx: &QContext) -> SeriesResult<Complex64> {
    let q = ctx.q();
    let qn = ctx.q_abs();
    if a.re == 0.0 && a.im == 0.0 {
        return SeriesResult::exact(ONE);
    }
    let mut p = ONE;
    let mut aqn = a;
    let mut n = 0u32;
    while n < ctx.max_terms {
        if aqn.norm() < ctx.eps_term {
            return SeriesResult {
                value: p,
                n_used: n,
                tail_bound: aqn.norm() / (1.0 - qn),
                converged: true,
            };
        }
        let f = ONE - aqn;
        if f.re == 0.0 && f.im == 0.0 {
            return SeriesResult { value: Complex64::new(0.0, 0.0), n_used: n + 1, tail_bound: 0.0, converged: true };
        }
        p *= f;
        aqn *= q;
        n += 1;
    }
    SeriesResult { value: p, n_used: n, tail_bound: aqn.norm() / (1.0 - qn), converged: false }
}

/// Infinite product (a;q)_∞ accumulated in log space.
pub fn qpoch_infinite_log(a: Complex64, ctx: &QContext) -> SeriesResult<LogComplex> {
    let q = ctx.q();
    let qn = ctx.q_abs();
    if a.re == 0.0 && a.im == 0.0 {
        return SeriesResult::exact(LogComplex::ONE);
    }
    let mut p = LogComplex::ONE;
    let mut aqn = a;
    let mut n = 0u32;
    while n < ctx.max_terms {
        if aqn.norm() < ctx.eps_term {
            return SeriesResult {
                value: p,
                n_used: n,
                tail_bound: aqn.norm() / (1.0 - qn),
                converged: true,
            };
        }
        let f = LogComplex::from_complex(ONE - aqn);
        if f.is_zero() {
            return SeriesResult { value: LogComplex::ZERO, n_used: n + 1, tail_bound: 0.0, converged: true };
        }
        p *= f;
        aqn *= q;
        n += 1;
    }
    SeriesResult { value: p, n_used: n, tail_bound: aqn.norm() / (1.0 - qn), converged: false }
}

/// Finite multiset factorial: ∏ over entries of (e;q)_n, in entry order.
pub fn qpoch_multiset_finite(ms: &ParamMultiset, ctx: &QContext, n: u32) -> Complex64 {
    ms.iter().fold(ONE, |acc, &e| acc * qpoch_finite(e, ctx, n))
}

/// Finite multiset factorial in log space.
pub fn qpoch_multiset_finite_log(ms: &ParamMultiset, ctx: &QContext, n: u32) -> LogComplex {
    ms.iter().fold(LogComplex::ONE, |acc, &e| acc * qpoch_finite_log(e, ctx, n))
}

/// Infinite multiset factorial: ∏ over entries of (e;q)_∞.
pub fn qpoch_multiset_infinite(ms: &ParamMultiset, ctx: &QContext) -> SeriesResult<Complex64> {
    let mut value = ONE;
    let mut n_used = 0u32;
    let mut tail = 0.0;
    let mut ok = true;
    for &e in ms.iter() {
        let r = qpoch_infinite(e, ctx);
        value *= r.value;
        n_used = n_used.max(r.n_used);
        tail += r.tail_bound;
        ok &= r.converged;
    }
    SeriesResult { value, n_used, tail_bound: tail, converged: ok }
}

/// Infinite multiset factorial in log space.
pub fn qpoch_multiset_infinite_log(ms: &ParamMultiset, ctx: &QContext) -> SeriesResult<LogComplex> {
    let mut value = LogComplex::ONE;
    let mut n_used = 0u32;
    let mut tail = 0.0;
    let mut ok = true;
    for &e in ms.iter() {
        let r = qpoch_infinite_log(e, ctx);
        value *= r.value;
        n_used = n_used.max(r.n_used);
        tail += r.tail_bound;
        ok &= r.converged;
    }
    SeriesResult { value, n_used, tail_bound: tail, converged: ok }
}

/// Bilateral-index q-shifted factorial (a;q)_k for any k ∈ ℤ.
///
/// For k < 0 this is 1/(a q^k; q)_{-k}; it satisfies
/// (a;q)_{k+1} = (1 − a q^k)(a;q)_k for all integers k. A pole (some
/// required factor a q^{k+j} = 1, i.e. a = q^m with 1 ≤ m ≤ −k) is an error.
pub fn qpoch_bilateral(a: Complex64, ctx: &QContext, k: i64) -> Result<Complex64> {
    if k >= 0 {
        return Ok(qpoch_finite(a, ctx, k as u32));
    }
    let q = ctx.q();
    let m = (-k) as u32;
    let mut p = ONE;
    let mut aqj = a * ctx.q_pow(k);
    for j in 0..m {
        let f = ONE - aqj;
        if f.norm() < POLE_TOL * aqj.norm().max(1.0) {
            return Err(QError::Pole(format!(
                "(a;q)_k pole: a q^{} = 1 for a = {a}, k = {k}",
                k + j as i64
            )));
        }
        p *= f;
        aqj *= q;
    }
    Ok(p.inv())
}

/// Modified theta function ϑ(z;q) = (z;q)_∞ (q/z;q)_∞ for z ≠ 0.
pub fn theta(z: Complex64, ctx: &QContext) -> Result<SeriesResult<Complex64>> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(QError::ZeroParameter("theta argument"));
    }
    let r1 = qpoch_infinite(z, ctx);
    let r2 = qpoch_infinite(ctx.q() / z, ctx);
    Ok(SeriesResult {
        value: r1.value * r2.value,
        n_used: r1.n_used.max(r2.n_used),
        tail_bound: r1.tail_bound + r2.tail_bound,
        converged: r1.converged && r2.converged,
    })
}

/// ln|(a;q)_∞| with sign, for real a and real q in (0,1).
///
/// Summed term-by-term in log space so values like (q;q)_∞ at q = 0.999
/// (which underflow f64) stay usable. The factor count is driven by the
/// requested eps, not the context cap, because q near 1 legitimately
/// needs ~ln(eps)/ln(q) factors.
pub fn ln_qpoch_infinite_real(a: f64, q: f64, eps: f64) -> Result<(f64, f64)> {
    if !(q > 0.0 && q < 1.0) {
        return Err(QError::InvalidBase(Complex64::new(q, 0.0)));
    }
    if a == 0.0 {
        return Ok((0.0, 1.0));
    }
    let needed = ((eps / a.abs()).ln() / q.ln()).ceil();
    if !(needed < 50_000_000.0) {
        return Err(QError::InvalidConfig(format!(
            "(a;q)_inf at q = {q} needs {needed:.0} factors"
        )));
    }
    let n = needed.max(1.0) as u64;
    let mut ln_abs = 0.0f64;
    let mut sign = 1.0f64;
    let mut aqn = a;
    for _ in 0..n {
        let f = 1.0 - aqn;
        if f == 0.0 {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln_abs += f.abs().ln();
        aqn *= q;
    }
    Ok((ln_abs, sign))
}
