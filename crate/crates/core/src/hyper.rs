//! Series engines: the general ₍r₎φ₍s₎ basic hypergeometric series, a
//! two-tail bilateral summation evaluator, and the Dougall bilateral sum.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::gamma::{ln_gamma, recip_gamma_pair};
use crate::params::ParamMultiset;
use crate::series::{BilateralResult, SeriesResult};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance for detecting a terminating parameter q^{-n} and
/// for the Ω_q denominator check.
const TERMINATION_TOL: f64 = 1e-12;

/// Consecutive sub-threshold terms required before a bilateral tail stops.
const TAIL_STREAK: u32 = 5;

/// Parameter block of a basic hypergeometric series
/// ₍r₎φ₍s₎(a₁..a_r; b₁..b_s; q, z).
#[derive(Debug, Clone)]
pub struct PhiSpec {
    numerator: ParamMultiset,
    denominator: ParamMultiset,
    z: Complex64,
    /// Smallest n ≥ 0 with a numerator entry equal to q^{-n}, if any.
    terminating: Option<u32>,
}

impl PhiSpec {
    /// Validate parameters against the base in `ctx`.
    ///
    /// Denominator entries must avoid Ω_q = {q^{-m} : m ≥ 0} (which would
    /// zero a denominator factorial); the first `max_terms` indices are
    /// checked. Zero entries are allowed ((0;q)_k ≡ 1).
    pub fn new(
        numerator: ParamMultiset,
        denominator: ParamMultiset,
        z: Complex64,
        ctx: &QContext,
    ) -> Result<Self> {
        for &b in denominator.iter() {
            if let Some(m) = match_neg_q_power(b, ctx) {
                return Err(QError::Pole(format!(
                    "denominator parameter {b} = q^-{m} lies in Omega_q"
                )));
            }
        }
        let terminating = numerator
            .iter()
            .filter_map(|&a| match_neg_q_power(a, ctx))
            .min();
        Ok(PhiSpec { numerator, denominator, z, terminating })
    }

    /// The detected terminating degree, if any.
    pub fn terminating(&self) -> Option<u32> {
        self.terminating
    }

    pub fn numerator(&self) -> &ParamMultiset {
        &self.numerator
    }

    pub fn denominator(&self) -> &ParamMultiset {
        &self.denominator
    }

    pub fn argument(&self) -> Complex64 {
        self.z
    }
}

/// Smallest m ≥ 0 with a = q^{-m} within 1e-12 relative, scanning at most
/// `max_terms` indices. Exact float equality is too brittle here: callers
/// routinely pass computed parameters.
fn match_neg_q_power(a: Complex64, ctx: &QContext) -> Option<u32> {
    if a.re == 0.0 && a.im == 0.0 {
        return None;
    }
    let q = ctx.q();
    let mut aqm = a;
    for m in 0..ctx.max_terms {
        // a q^m = 1 <=> a = q^{-m}; |q^{-m}| only grows, so stop early
        if (aqm - ONE).norm() <= TERMINATION_TOL {
            return Some(m);
        }
        if aqm.norm() < 0.5 {
            return None;
        }
        aqm *= q;
    }
    None
}

/// Evaluate ₍r₎φ₍s₎(**a**; **b**; q, z) per the defining series, with the
/// sign/power factor ((−1)^k q^{binom(k,2)})^{1+s−r} exactly as written.
///
/// Terminating series are summed over exactly k = 0..n. Non-terminating
/// series require s + 1 > r (entire) or s + 1 = r with |z| < 1; anything
/// else is divergent and rejected.
pub fn phi_rs(spec: &PhiSpec, ctx: &QContext) -> Result<SeriesResult<Complex64>> {
    let r = spec.numerator.len() as i64;
    let s = spec.denominator.len() as i64;
    let excess = 1 + s - r;

    if let Some(n) = spec.terminating {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = ONE;
        for k in 0..=n {
            sum += term;
            if k < n {
                term *= term_ratio(spec, ctx, k as i64, excess);
            }
        }
        return Ok(SeriesResult { value: sum, n_used: n + 1, tail_bound: 0.0, converged: true });
    }

    if excess < 1 {
        return Err(QError::Divergent(format!(
            "non-terminating {r}phi{s} with s+1 {} r",
            if excess == 0 { "=" } else { "<" }
        )));
    }
    if excess == 1 && r == s + 1 && spec.z.norm() >= 1.0 {
        return Err(QError::Divergent(format!(
            "{r}phi{s} needs |z| < 1, got |z| = {}",
            spec.z.norm()
        )));
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = ONE;
    let mut peak = 0.0f64;
    let mut streak = 0u32;
    let mut k = 0u32;
    while k < ctx.max_terms {
        sum += term;
        peak = peak.max(term.norm());
        if term.norm() < ctx.eps_term * peak.max(f64::MIN_POSITIVE) {
            streak += 1;
            if streak >= 3 {
                return Ok(SeriesResult {
                    value: sum,
                    n_used: k + 1,
                    tail_bound: term.norm(),
                    converged: true,
                });
            }
        } else {
            streak = 0;
        }
        term *= term_ratio(spec, ctx, k as i64, excess);
        k += 1;
    }
    Ok(SeriesResult { value: sum, n_used: k, tail_bound: term.norm(), converged: false })
}

/// T_{k+1}/T_k for the φ series.
///
/// Numerator and denominator factors are consumed pairwise with explicit
/// reciprocals: the terminating representations carry z-proportional
/// parameters in matching numerator/denominator slots, and the naive
/// complex division would overflow its internal products at lattice
/// arguments around 1e105 even though every quotient is representable.
fn term_ratio(spec: &PhiSpec, ctx: &QContext, k: i64, excess: i64) -> Complex64 {
    let q = ctx.q();
    let qk = ctx.q_pow(k);
    let num = spec.numerator.entries();
    let den = spec.denominator.entries();
    let paired = num.len().min(den.len());
    let mut ratio = ONE;
    for i in 0..paired {
        ratio *= (ONE - num[i] * qk) * (ONE - den[i] * qk).inv();
    }
    for &a in &num[paired..] {
        ratio *= ONE - a * qk;
    }
    for &b in &den[paired..] {
        ratio *= (ONE - b * qk).inv();
    }
    ratio *= (ONE - q * qk).inv();
    if excess != 0 {
        ratio *= (-qk).powi(excess as i32);
    }
    ratio * spec.z
}

/// Term generator for a bilateral sum over k ∈ ℤ.
///
/// `term(k)` must be finite for every index the evaluator visits; poles
/// propagate as errors. `decay_hint` is the expected two-sided geometric
/// tail ratio; when provided, the evaluator compares the empirical ratios
/// against it.
pub struct BilateralTermGen<F> {
    pub term: F,
    pub decay_hint: Option<f64>,
}

impl<F> BilateralTermGen<F>
where
    F: Fn(i64) -> Result<Complex64>,
{
    pub fn new(term: F) -> Self {
        BilateralTermGen { term, decay_hint: None }
    }

    pub fn with_decay_hint(mut self, hint: f64) -> Self {
        self.decay_hint = Some(hint);
        self
    }
}

/// Sum term(k) over k ∈ ℤ, outward from 0 (k = 0, +1, −1, +2, −2, …).
///
/// Each tail stops after five consecutive terms below
/// `eps_term · max |term|`; a factor like (1 + q^{2k}α²) makes single-term
/// tests unsafe near sign cancellations. Accumulation is plain floating
/// addition in the fixed outward order, or compensated (Kahan) when
/// `ctx.compensated` is set. Failure of either tail within `max_terms` is
/// reported via `converged = false`, never by halting.
pub fn bilateral_sum<F>(gen: &BilateralTermGen<F>, ctx: &QContext) -> Result<BilateralResult>
where
    F: Fn(i64) -> Result<Complex64>,
{
    let mut acc = Accumulator::new(ctx.compensated);
    let t0 = (gen.term)(0)?;
    acc.add(t0);
    let mut peak = t0.norm();

    let mut pos_done = false;
    let mut neg_done = false;
    let mut pos_streak = 0u32;
    let mut neg_streak = 0u32;
    let mut n_pos = 0u32;
    let mut n_neg = 0u32;
    let mut last_pos = [t0.norm(), 0.0];
    let mut last_neg = [t0.norm(), 0.0];

    let mut k = 1u32;
    while (!pos_done || !neg_done) && k <= ctx.max_terms {
        if !pos_done {
            let t = (gen.term)(k as i64)?;
            acc.add(t);
            n_pos = k;
            peak = peak.max(t.norm());
            last_pos = [last_pos[1], t.norm()];
            if t.norm() < ctx.eps_term * peak.max(f64::MIN_POSITIVE) {
                pos_streak += 1;
                if pos_streak >= TAIL_STREAK {
                    pos_done = true;
                }
            } else {
                pos_streak = 0;
            }
        }
        if !neg_done {
            let t = (gen.term)(-(k as i64))?;
            acc.add(t);
            n_neg = k;
            peak = peak.max(t.norm());
            last_neg = [last_neg[1], t.norm()];
            if t.norm() < ctx.eps_term * peak.max(f64::MIN_POSITIVE) {
                neg_streak += 1;
                if neg_streak >= TAIL_STREAK {
                    neg_done = true;
                }
            } else {
                neg_streak = 0;
            }
        }
        k += 1;
    }

    let ratio_of = |pair: [f64; 2]| -> Option<f64> {
        if pair[0] > 0.0 && pair[1] > 0.0 {
            Some(pair[1] / pair[0])
        } else {
            None
        }
    };
    let ratio_pos = ratio_of(last_pos);
    let ratio_neg = ratio_of(last_neg);
    let tail_of = |last: f64, ratio: Option<f64>| -> f64 {
        let r = ratio.unwrap_or(0.5).min(0.99);
        last * r / (1.0 - r)
    };
    let hint_consistent = gen.decay_hint.map(|h| {
        [ratio_pos, ratio_neg]
            .iter()
            .flatten()
            .all(|&r| r <= 2.0 * h && h <= 2.0 * r)
    });
    Ok(BilateralResult {
        value: acc.value(),
        n_pos,
        n_neg,
        tail_bound: tail_of(last_pos[1], ratio_pos) + tail_of(last_neg[1], ratio_neg),
        converged: pos_done && neg_done,
        ratio_pos,
        ratio_neg,
        hint_consistent,
    })
}

/// Plain or Kahan-compensated complex accumulator.
struct Accumulator {
    sum: Complex64,
    comp: Complex64,
    kahan: bool,
}

impl Accumulator {
    fn new(kahan: bool) -> Self {
        Accumulator { sum: Complex64::new(0.0, 0.0), comp: Complex64::new(0.0, 0.0), kahan }
    }

    #[inline]
    fn add(&mut self, t: Complex64) {
        if self.kahan {
            let y = t - self.comp;
            let s = self.sum + y;
            self.comp = (s - self.sum) - y;
            self.sum = s;
        } else {
            self.sum += t;
        }
    }

    fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Both evaluations of the Dougall bilateral sum
/// J = −(1/4π) Σ_{n∈ℤ} (4n+1) f(n+1/4), f(x) = ∏_j 1/[Γ(1+a_j+x)Γ(1+a_j−x)].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DougallEval {
    /// Direct bilateral summation.
    pub direct: f64,
    /// Closed form −(1/2π²) Γ(Σa_j+1) / ∏_{i<j} Γ(1+a_i+a_j).
    pub closed: f64,
    /// Summation diagnostics for the direct path.
    pub n_terms: u32,
    pub converged: bool,
}

/// Evaluate the Dougall ₅H₅-type bilateral sum directly and in closed form.
///
/// Convergence requires Σ a_j + 1 > 0. The terms decay only algebraically
/// (|n|^{-3-2Σa}); summation is outward-symmetric so the ±n cancellation
/// is realized, and runs under a local high-cap context independent of any
/// caller context.
pub fn dougall_5h5(a: [f64; 4]) -> Result<DougallEval> {
    let s: f64 = a.iter().sum();
    if s + 1.0 <= 0.0 {
        return Err(QError::Divergent(format!(
            "Dougall sum needs a+b+c+d+1 > 0, got {}",
            s + 1.0
        )));
    }

    let f = |x: f64| -> f64 { a.iter().map(|&aj| recip_gamma_pair(aj, x)).product() };
    let gen = BilateralTermGen::new(move |n: i64| -> Result<Complex64> {
        let x = n as f64 + 0.25;
        Ok(Complex64::new((4.0 * n as f64 + 1.0) * f(x), 0.0))
    });
    let ctx = QContext::real(0.5)
        .unwrap()
        .with_eps_term(1e-13)
        .unwrap()
        .with_max_terms(400_000)
        .unwrap();
    let sum = bilateral_sum(&gen, &ctx)?;
    let direct = -sum.value.re / (4.0 * std::f64::consts::PI);

    let mut ln_den = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            ln_den += ln_gamma(1.0 + a[i] + a[j]);
        }
    }
    let closed = -(ln_gamma(s + 1.0) - ln_den).exp() / (2.0 * std::f64::consts::PI.powi(2));

    Ok(DougallEval {
        direct,
        closed,
        n_terms: sum.n_pos + sum.n_neg + 1,
        converged: sum.converged,
    })
}
