//! Gamma-function kernel: Lanczos log-gamma, the entire reciprocal gamma
//! (with reflection), stable two-sided reciprocal pairs, and the q-gamma
//! function Γ_q.

use std::f64::consts::PI;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::poch::ln_qpoch_infinite_real;

// Lanczos g = 7, n = 9 coefficients (GSL set).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published digits kept verbatim
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    if x < 0.5 {
        // ln Γ(x) = ln π − ln|sin πx| − ln Γ(1−x); x ∈ (0, 0.5) keeps sin > 0
        return PI.ln() - (PI * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let t = x - 1.0;
    let mut acc = LANCZOS_P[0];
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (t + i as f64);
    }
    let w = t + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (t + 0.5) * w.ln() - w + acc.ln()
}

/// sin(πx) with exact zeros at integers and accurate range reduction.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.floor() {
        return 0.0;
    }
    let r = x.rem_euclid(2.0); // [0, 2)
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

/// Γ(x) for real x; ±inf at the poles.
pub fn gamma(x: f64) -> f64 {
    if x >= 0.5 {
        return ln_gamma(x).exp();
    }
    // reflection: Γ(x) Γ(1−x) = π / sin(πx)
    PI / (sin_pi(x) * gamma(1.0 - x))
}

/// 1/Γ(x): entire, exactly 0 at the poles x = 0, −1, −2, …
///
/// Stable up to |x| ≈ 170 (beyond that the reflected magnitude leaves the
/// double range); two-sided products at large argument should go through
/// [`recip_gamma_pair`].
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x >= 0.5 {
        return (-ln_gamma(x)).exp();
    }
    // 1/Γ(x) = Γ(1−x) sin(πx) / π
    sin_pi(x) * ln_gamma(1.0 - x).exp() / PI
}

/// The even pair 1/[Γ(1+a+x) Γ(1+a−x)], stable for all real x.
///
/// For |x| beyond the switch point the two factors separately overflow
/// and underflow; the reflected form
/// Γ(|x|−a)/Γ(1+a+|x|) · sin(π(|x|−a))/π keeps everything in range.
pub fn recip_gamma_pair(a: f64, x: f64) -> f64 {
    let w = x.abs();
    if w <= 30.0 {
        return recip_gamma(1.0 + a + w) * recip_gamma(1.0 + a - w);
    }
    let s = sin_pi(w - a);
    if s == 0.0 {
        return 0.0;
    }
    (ln_gamma(w - a) - ln_gamma(1.0 + a + w)).exp() * s / PI
}

/// q-gamma function Γ_q(x) = (q;q)_∞ (1−q)^{1−x} / (q^x;q)_∞ for real
/// q ∈ (0,1).
///
/// Evaluated in log space so it stays usable arbitrarily close to q = 1
/// (where (q;q)_∞ underflows); Γ_q(x) → Γ(x) as q → 1⁻.
pub fn qgamma(x: f64, ctx: &QContext) -> Result<f64> {
    let q = ctx.q_real()?;
    if x <= 0.5 && (x - x.round()).abs() < 1e-12 {
        return Err(QError::Pole(format!("q-gamma pole at x = {x}")));
    }
    let eps = ctx.eps_term.min(1e-18);
    let (ln_num, s_num) = ln_qpoch_infinite_real(q, q, eps)?;
    let (ln_den, s_den) = ln_qpoch_infinite_real(q.powf(x), q, eps)?;
    if s_den == 0.0 {
        return Err(QError::Pole(format!("(q^x;q)_inf vanished at x = {x}")));
    }
    let ln_val = ln_num - ln_den + (1.0 - x) * (1.0 - q).ln();
    Ok(s_num / s_den * ln_val.exp())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn ln_gamma_reference_values() {
        assert!(rel(ln_gamma(0.5), PI.sqrt().ln()) < 1e-14);
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(rel(ln_gamma(10.0), 362880.0f64.ln()) < 1e-14);
        assert!(rel(ln_gamma(12.3), 18.238983407092243696) < 1e-14);
    }

    #[test]
    fn gamma_small_and_negative() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-13);
        assert!(rel(gamma(5.0), 24.0) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-13);
    }

    #[test]
    fn recip_gamma_values_and_poles() {
        assert!(rel(recip_gamma(1.0), 1.0) < 1e-14);
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-1.0), 0.0);
        assert_eq!(recip_gamma(-7.0), 0.0);
        assert!(rel(recip_gamma(0.5), 0.56418958354775628695) < 1e-13);
        assert!(rel(recip_gamma(-0.5), -0.28209479177387814347) < 1e-13);
    }

    #[test]
    fn sin_pi_accuracy() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-41.0), 0.0);
        assert!(rel(sin_pi(0.25), (PI * 0.25).sin()) < 1e-15);
        assert!(rel(sin_pi(100.25), (0.25 * PI).sin()) < 1e-14);
        assert!(rel(sin_pi(-0.75), -(0.75f64 * PI).sin()) < 1e-14);
    }

    #[test]
    fn pair_matches_reference() {
        // inside the direct branch
        assert!(rel(recip_gamma_pair(0.3, 12.4), 0.0017524739674204175998) < 1e-12);
        // reflected branch
        assert!(rel(recip_gamma_pair(0.3, 45.7), -0.00066867049335521379271) < 1e-12);
        assert!(rel(recip_gamma_pair(1.0, 100.3), -2.5523965270100361194e-7) < 1e-12);
        // even in x
        assert_eq!(recip_gamma_pair(0.3, 45.7), recip_gamma_pair(0.3, -45.7));
        // zero at the poles of Gamma(1+a-x)
        assert_eq!(recip_gamma_pair(1.0, 100.0), 0.0);
    }

    #[test]
    fn pair_branch_continuity() {
        // both branches evaluated just around the switch agree
        let a = 0.27;
        let direct = recip_gamma(1.0 + a + 29.9) * recip_gamma(1.0 + a - 29.9);
        let refl = (ln_gamma(29.9 - a) - ln_gamma(1.0 + a + 29.9)).exp() * sin_pi(29.9 - a) / PI;
        assert!(rel(direct, refl) < 1e-11);
    }

    #[test]
    fn qgamma_fixed_points() {
        let ctx = QContext::real(0.5).unwrap();
        assert!(rel(qgamma(1.0, &ctx).unwrap(), 1.0) < 1e-12);
        assert!(rel(qgamma(2.0, &ctx).unwrap(), 1.0) < 1e-12);
        assert!(qgamma(0.0, &ctx).is_err());
        assert!(qgamma(-3.0, &ctx).is_err());
    }

    #[test]
    fn qgamma_classical_limit() {
        // Γ_q(x) → Γ(x) as q → 1⁻
        let ctx = QContext::real(0.999).unwrap();
        for &x in &[0.5, 1.5, 2.5] {
            let gq = qgamma(x, &ctx).unwrap();
            assert!(rel(gq, gamma(x)) < 5e-3, "x = {x}: {gq} vs {}", gamma(x));
        }
        assert!(rel(qgamma(0.5, &ctx).unwrap(), PI.sqrt()) < 5e-3);
    }
}
