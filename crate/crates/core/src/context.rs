//! Evaluation context: the base q and global tolerances.

use num_complex::Complex64;

use crate::error::{QError, Result};

/// Default relative magnitude threshold for series/product truncation.
pub const DEFAULT_EPS_TERM: f64 = 1e-16;
/// Default verification tolerance.
pub const DEFAULT_EPS_VERIFY: f64 = 1e-8;
/// Default cap on summation/product length.
pub const DEFAULT_MAX_TERMS: u32 = 10_000;
/// Default cap on polynomial degree; double precision keeps at least
/// eight significant digits across the property grids at this cap.
pub const DEFAULT_MAX_POLY_DEGREE: u32 = 12;

/// The base q together with truncation and verification tolerances.
///
/// Immutable after construction; all operations taking a `&QContext` are
/// pure functions of their inputs, so a context may be shared freely
/// across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct QContext {
    q: Complex64,
    /// Relative magnitude threshold for truncating series and products.
    pub eps_term: f64,
    /// Cap on the number of terms/factors in any summation or product.
    pub max_terms: u32,
    /// Default tolerance used by verification-style checks.
    pub eps_verify: f64,
    /// Use compensated (Kahan) accumulation in bilateral sums.
    pub compensated: bool,
    /// Cap on polynomial degree accepted by the family evaluators.
    pub max_poly_degree: u32,
}

impl QContext {
    /// Build a context for complex q with 0 < |q| < 1 and default tolerances.
    pub fn new(q: Complex64) -> Result<Self> {
        let n = q.norm();
        if !(n > 0.0 && n < 1.0) || !n.is_finite() {
            return Err(QError::InvalidBase(q));
        }
        Ok(QContext {
            q,
            eps_term: DEFAULT_EPS_TERM,
            max_terms: DEFAULT_MAX_TERMS,
            eps_verify: DEFAULT_EPS_VERIFY,
            compensated: false,
            max_poly_degree: DEFAULT_MAX_POLY_DEGREE,
        })
    }

    /// Build a context for real q in (0, 1).
    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// Replace the truncation threshold (must be positive).
    pub fn with_eps_term(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(QError::InvalidConfig(format!("eps_term = {eps} must be > 0")));
        }
        self.eps_term = eps;
        Ok(self)
    }

    /// Replace the verification tolerance (must be positive).
    pub fn with_eps_verify(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(QError::InvalidConfig(format!("eps_verify = {eps} must be > 0")));
        }
        self.eps_verify = eps;
        Ok(self)
    }

    /// Replace the term cap (must be at least 16).
    pub fn with_max_terms(mut self, max_terms: u32) -> Result<Self> {
        if max_terms < 16 {
            return Err(QError::InvalidConfig(format!(
                "max_terms = {max_terms} must be >= 16"
            )));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    /// Toggle compensated accumulation in bilateral sums.
    pub fn with_compensated(mut self, on: bool) -> Self {
        self.compensated = on;
        self
    }

    /// Raise or lower the polynomial degree cap (must be >= 1).
    pub fn with_max_poly_degree(mut self, cap: u32) -> Result<Self> {
        if cap < 1 {
            return Err(QError::InvalidConfig("degree cap must be >= 1".into()));
        }
        self.max_poly_degree = cap;
        Ok(self)
    }

    /// The base q.
    #[inline]
    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// |q|.
    #[inline]
    pub fn q_abs(&self) -> f64 {
        self.q.norm()
    }

    /// Integer power q^k for any k (negative allowed).
    #[inline]
    pub fn q_pow(&self, k: i64) -> Complex64 {
        self.q.powi(k as i32)
    }

    /// The base as a real in (0, 1), or an error if q has an imaginary part.
    pub fn q_real(&self) -> Result<f64> {
        if self.q.im != 0.0 {
            return Err(QError::InvalidConfig(format!(
                "operation requires real q in (0,1), got {}",
                self.q
            )));
        }
        if !(self.q.re > 0.0 && self.q.re < 1.0) {
            return Err(QError::InvalidBase(self.q));
        }
        Ok(self.q.re)
    }

    /// log(1/q) for real q; the constant the continuous weights are built on.
    pub fn log_q_inv(&self) -> Result<f64> {
        Ok(-self.q_real()?.ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_base() {
        assert!(QContext::real(0.0).is_err());
        assert!(QContext::real(1.0).is_err());
        assert!(QContext::real(1.5).is_err());
        assert!(QContext::new(Complex64::new(0.8, 0.7)).is_err()); // |q| > 1
        assert!(QContext::real(0.5).is_ok());
        assert!(QContext::new(Complex64::new(0.3, 0.4)).is_ok()); // |q| = 0.5
    }

    #[test]
    fn rejects_bad_tolerances() {
        let ctx = QContext::real(0.5).unwrap();
        assert!(ctx.clone().with_eps_term(0.0).is_err());
        assert!(ctx.clone().with_max_terms(8).is_err());
        assert!(ctx.clone().with_eps_verify(-1.0).is_err());
        assert!(ctx.with_eps_term(1e-12).is_ok());
    }

    #[test]
    fn shareable_across_threads() {
        // all evaluation state is immutable after construction
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<QContext>();
    }

    #[test]
    fn real_accessor() {
        let ctx = QContext::real(0.25).unwrap();
        assert_eq!(ctx.q_real().unwrap(), 0.25);
        assert!((ctx.log_q_inv().unwrap() - 4.0f64.ln()).abs() < 1e-15);
        let cc = QContext::new(Complex64::new(0.3, 0.1)).unwrap();
        assert!(cc.q_real().is_err());
    }
}
