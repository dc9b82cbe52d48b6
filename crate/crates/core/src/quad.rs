//! Quadrature engines for the three integrand classes of the continuous
//! relations:
//!
//! - [`integrate_real_line`]: equal-step trapezoid over a finite window
//!   for Gaussian-envelope integrands (spectrally accurate for analytic
//!   q^{2x²}-type decay), with envelope verification, automatic window
//!   extension, and a step-halving convergence gate;
//! - [`integrate_unit_periodic`]: trapezoid on [0,1] for smooth
//!   unit-periodic integrands (the period-folded correspondence
//!   integrals), node-doubling with the same gate;
//! - [`integrate_oscillatory_even`]: composite Simpson on [0, X] for even
//!   oscillatory integrands with algebraic decay (the beta-integral
//!   apparatus), truncated at X with the same gate.
//!
//! An accepted result has passed two successive refinements agreeing
//! within the gate tolerance; failures are errors, never silent. Node
//! sums run left to right, so results are bit-stable regardless of how
//! callers schedule the node evaluations.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::series::SeriesResult;

/// Window, step, and refinement policy for [`integrate_real_line`].
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Center of the integration window.
    pub center: f64,
    /// Half-width L; the window is [center − L, center + L].
    pub half_width: f64,
    /// Initial step.
    pub step: f64,
    /// Maximum number of step halvings.
    pub refine_limit: u32,
    /// Convergence-gate tolerance.
    pub eps_gate: f64,
    /// Envelope threshold: |f| at the window edges must fall below
    /// eps_envelope · peak.
    pub eps_envelope: f64,
    /// Cap on +2-unit window extensions. Family weights with many
    /// parameters decay only geometrically (the products cancel most of
    /// the Gaussian), so the analytic window estimate can be short.
    pub max_extensions: u32,
}

impl QuadratureSpec {
    /// Window for an integrand with Gaussian envelope q^{2(x−center)²}:
    /// L solves q^{2L²} = eps_envelope analytically, plus two safety units.
    pub fn gaussian(q: f64, center: f64, eps_envelope: f64, eps_gate: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidBase(Complex64::new(q, 0.0)));
        }
        let log_q_inv = -q.ln();
        let l = ((1.0 / eps_envelope).ln() / (2.0 * log_q_inv)).sqrt() + 2.0;
        Ok(QuadratureSpec {
            center,
            half_width: l,
            step: 0.25,
            refine_limit: 8,
            eps_gate,
            eps_envelope,
            max_extensions: 20,
        })
    }

    /// Widen the window by `extra` units on both sides.
    pub fn widen(mut self, extra: f64) -> Self {
        self.half_width += extra;
        self
    }
}

/// Trapezoid sum of f over [a, b] at n subintervals, plus the companion
/// sum of |f|.
fn trapezoid<F: Fn(f64) -> Result<Complex64>>(
    f: &F,
    a: f64,
    b: f64,
    n: usize,
) -> Result<(Complex64, f64)> {
    let h = (b - a) / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut acc_abs = 0.0f64;
    for i in 0..=n {
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        let x = a + i as f64 * h;
        let v = f(x)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(QError::Quadrature(format!("non-finite integrand value at x = {x}")));
        }
        acc += w * v;
        acc_abs += w * v.norm();
    }
    Ok((acc * h, acc_abs * h))
}

/// Integrate a Gaussian-envelope integrand over the real line.
///
/// The envelope is verified by sampling: while |f| at either edge exceeds
/// eps_envelope · peak, the window is extended by 2 units (up to 8 times)
/// before refinement starts. Step halving continues until two successive
/// refinements agree within eps_gate relative to max(|I|, 1e-3·∫|f|).
pub fn integrate_real_line<F: Fn(f64) -> Result<Complex64>>(
    f: F,
    spec: &QuadratureSpec,
) -> Result<SeriesResult<Complex64>> {
    let mut lo = spec.center - spec.half_width;
    let mut hi = spec.center + spec.half_width;

    // envelope check on a coarse sampling
    let mut extensions = 0u32;
    loop {
        let n = ((hi - lo) / spec.step).ceil() as usize;
        let mut peak = 0.0f64;
        for i in 0..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            peak = peak.max(f(x)?.norm());
        }
        if peak == 0.0 {
            return Ok(SeriesResult { value: Complex64::new(0.0, 0.0), n_used: n as u32, tail_bound: 0.0, converged: true });
        }
        let edge = f(lo)?.norm().max(f(hi)?.norm());
        if edge <= spec.eps_envelope * peak {
            break;
        }
        if extensions >= spec.max_extensions {
            return Err(QError::Quadrature(format!(
                "integrand envelope still {edge:.3e} (peak {peak:.3e}) at window \
                 [{lo}, {hi}] after {extensions} extensions"
            )));
        }
        lo -= 2.0;
        hi += 2.0;
        extensions += 1;
    }

    let mut n = ((hi - lo) / spec.step).ceil() as usize;
    let (mut prev, _) = trapezoid(&f, lo, hi, n)?;
    let mut evals = n as u32 + 1;
    let mut good_streak = 0u32;
    let mut last_delta = f64::INFINITY;
    for _ in 0..spec.refine_limit {
        n *= 2;
        let (cur, cur_abs) = trapezoid(&f, lo, hi, n)?;
        evals += n as u32 + 1;
        let scale = cur.norm().max(1e-3 * cur_abs);
        last_delta = (cur - prev).norm();
        if last_delta <= spec.eps_gate * scale.max(f64::MIN_POSITIVE) {
            good_streak += 1;
            if good_streak >= 2 {
                return Ok(SeriesResult { value: cur, n_used: evals, tail_bound: last_delta, converged: true });
            }
        } else {
            good_streak = 0;
        }
        prev = cur;
    }
    Err(QError::Quadrature(format!(
        "step-halving gate not met within {} refinements (last delta {last_delta:.3e})",
        spec.refine_limit
    )))
}

/// Integrate a smooth unit-periodic integrand over one period.
///
/// The n-point rectangle rule (= trapezoid, by periodicity) converges
/// spectrally; n doubles from 16 until the gate passes. `abs_floor` is an
/// absolute acceptance level for integrands that vanish identically up to
/// rounding noise (a relative gate cannot terminate on noise); pass 0.0
/// when the integral is known to be of full scale.
pub fn integrate_unit_periodic<F: Fn(f64) -> Result<Complex64>>(
    f: F,
    eps_gate: f64,
    abs_floor: f64,
    refine_limit: u32,
) -> Result<SeriesResult<Complex64>> {
    let mut n = 16usize;
    let periodic_sum = |n: usize| -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut acc_abs = 0.0;
        for i in 0..n {
            let v = f(i as f64 / n as f64)?;
            acc += v;
            acc_abs += v.norm();
        }
        Ok((acc / n as f64, acc_abs / n as f64))
    };
    let (mut prev, _) = periodic_sum(n)?;
    let mut evals = n as u32;
    let mut good_streak = 0u32;
    let mut last_delta = f64::INFINITY;
    for _ in 0..refine_limit {
        n *= 2;
        let (cur, cur_abs) = periodic_sum(n)?;
        evals += n as u32;
        let scale = cur.norm().max(1e-3 * cur_abs);
        last_delta = (cur - prev).norm();
        if last_delta <= (eps_gate * scale).max(abs_floor).max(f64::MIN_POSITIVE) {
            good_streak += 1;
            if good_streak >= 2 {
                return Ok(SeriesResult { value: cur, n_used: evals, tail_bound: last_delta, converged: true });
            }
        } else {
            good_streak = 0;
        }
        prev = cur;
    }
    Err(QError::Quadrature(format!(
        "periodic rule gate not met at {n} nodes (last delta {last_delta:.3e})"
    )))
}

/// 2·∫₀^X f for an even real integrand with oscillatory algebraic decay,
/// by composite Simpson with step halving.
///
/// The tail beyond X is excluded; callers choose X from the integrand's
/// decay exponent and own the (documented) tail error.
pub fn integrate_oscillatory_even<F: Fn(f64) -> f64>(
    f: F,
    x_max: f64,
    init_step: f64,
    eps_gate: f64,
    refine_limit: u32,
) -> Result<SeriesResult<f64>> {
    let simpson = |n: usize| -> (f64, f64) {
        // n subintervals (even); weights 1,4,2,...,4,1 (h/3)
        let h = x_max / n as f64;
        let mut acc = 0.0f64;
        let mut acc_abs = 0.0f64;
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = f(i as f64 * h);
            acc += w * v;
            acc_abs += w * v.abs();
        }
        (acc * h / 3.0 * 2.0, acc_abs * h / 3.0 * 2.0)
    };
    let mut n = ((x_max / init_step).ceil() as usize).next_multiple_of(2);
    let mut prev = simpson(n).0;
    let mut evals = n as u32 + 1;
    let mut last_delta = f64::INFINITY;
    let mut good_streak = 0u32;
    for _ in 0..refine_limit {
        n *= 2;
        let (cur, cur_abs) = simpson(n);
        evals += n as u32 + 1;
        let scale = cur.abs().max(1e-3 * cur_abs);
        last_delta = (cur - prev).abs();
        if last_delta <= eps_gate * scale.max(f64::MIN_POSITIVE) {
            good_streak += 1;
            if good_streak >= 2 {
                return Ok(SeriesResult { value: cur, n_used: evals, tail_bound: last_delta, converged: true });
            }
        } else {
            good_streak = 0;
        }
        prev = cur;
    }
    Err(QError::Quadrature(format!(
        "oscillatory Simpson gate not met at {n} subintervals (last delta {last_delta:.3e})"
    )))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values
mod tests {
    use super::*;
    use crate::creal;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_integral() {
        let spec = QuadratureSpec::gaussian(0.5, 0.0, 1e-18, 1e-12).unwrap();
        // exp(-x²) has envelope wider than q^{2x²} at q=0.5 (c = 1 < 2 ln 2);
        // the window auto-extends as needed
        let r = integrate_real_line(|x| Ok(creal((-x * x).exp())), &spec).unwrap();
        assert!(r.converged);
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12, "{}", r.value.re);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let spec = QuadratureSpec::gaussian(0.5, 0.0, 1e-18, 1e-12).unwrap();
        let r = integrate_real_line(|x| Ok(creal((-x * x).exp() * x)), &spec).unwrap();
        assert!(r.value.re.abs() < 1e-13);
    }

    #[test]
    fn hermite_weight_total_mass() {
        // ∫ (1+q^{2x}) q^{2x²-x} dx = q^{-1/8} sqrt(2π / log(1/q)) at q = 0.5
        let q: f64 = 0.5;
        let lq = q.ln();
        let spec = QuadratureSpec::gaussian(q, 0.25, 1e-18, 1e-11).unwrap();
        let f = move |x: f64| {
            Ok(creal((1.0 + (2.0 * x * lq).exp()) * ((2.0 * x * x - x) * lq).exp()))
        };
        let r = integrate_real_line(f, &spec).unwrap();
        let expect = 3.2832651213131238; // q^{-1/8} sqrt(2π/ln 2)
        assert!((r.value.re - expect).abs() / expect < 1e-11, "{}", r.value.re);
    }

    #[test]
    fn envelope_violation_detected() {
        // constant integrand never satisfies the envelope check
        let spec = QuadratureSpec::gaussian(0.5, 0.0, 1e-18, 1e-10).unwrap();
        assert!(matches!(
            integrate_real_line(|_| Ok(creal(1.0)), &spec),
            Err(QError::Quadrature(_))
        ));
    }

    #[test]
    fn periodic_rule_is_spectral() {
        // ∫₀¹ exp(sin 2πx) dx = I₀(1) (modified Bessel)
        let r = integrate_unit_periodic(
            |x| Ok(creal((2.0 * PI * x).sin().exp())),
            1e-12,
            0.0,
            10,
        )
        .unwrap();
        let i0 = 1.2660658777520084; // I_0(1)
        assert!((r.value.re - i0).abs() < 1e-12, "{}", r.value.re);
    }

    #[test]
    fn oscillatory_dirichlet_kernel() {
        // 2∫₀^X sin(x)/x dx -> π with X at a zero crossing far out; the
        // truncation error ~2/X is the dominant term, so compare loosely
        let x_max = 4000.0 * PI;
        let r = integrate_oscillatory_even(
            |x| if x == 0.0 { 1.0 } else { x.sin() / x },
            x_max,
            0.5,
            1e-10,
            12,
        )
        .unwrap();
        assert!((r.value - PI).abs() < 2e-4, "{}", r.value);
    }

    #[test]
    fn oscillatory_gaussian_exact() {
        let r = integrate_oscillatory_even(|x| (-x * x).exp(), 10.0, 0.25, 1e-12, 10).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-12);
    }
}
