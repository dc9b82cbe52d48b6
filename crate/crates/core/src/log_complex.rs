//! Log-magnitude/phase representation of complex scalars.
//!
//! Norm prefactors like `q^{-6 binom(n,2)} (a²b²c²d²)^n` leave the double
//! range long before the quantities they multiply bring them back in.
//! `LogComplex` stores ln|z| and arg z so products and integer powers are
//! additions, and only the final materialization can overflow.

use std::f64::consts::PI;
use std::ops::{Div, DivAssign, Mul, MulAssign};

use num_complex::Complex64;

/// A complex scalar as (ln|z|, arg z), with arg z wrapped into (−π, π].
///
/// Zero is representable: `log_mag = -inf`, `phase = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    /// Natural log of the magnitude; `-inf` encodes zero.
    pub log_mag: f64,
    /// Phase in (−π, π].
    pub phase: f64,
}

/// Wrap an angle into (−π, π].
fn wrap_phase(p: f64) -> f64 {
    if p > -PI && p <= PI {
        return p;
    }
    let r = p.rem_euclid(2.0 * PI); // [0, 2π)
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl LogComplex {
    /// The multiplicative identity.
    pub const ONE: LogComplex = LogComplex { log_mag: 0.0, phase: 0.0 };

    /// Zero (absorbing under multiplication).
    pub const ZERO: LogComplex = LogComplex { log_mag: f64::NEG_INFINITY, phase: 0.0 };

    /// Construct from raw fields, wrapping the phase.
    pub fn new(log_mag: f64, phase: f64) -> Self {
        LogComplex { log_mag, phase: wrap_phase(phase) }
    }

    /// Convert a finite complex value.
    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        LogComplex { log_mag: z.norm().ln(), phase: z.arg() }
    }

    /// Convert a positive (or zero) real magnitude.
    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// Materialize to a `Complex64`; overflows to infinity if ln|z| > ~709.
    pub fn to_complex(self) -> Complex64 {
        if self.log_mag == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.log_mag.exp();
        Complex64::new(m * self.phase.cos(), m * self.phase.sin())
    }

    /// True if this encodes exact zero.
    #[inline]
    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// Integer power; exponent may be negative (error-free on zero only
    /// for non-negative exponents).
    pub fn powi(self, e: i64) -> Self {
        if self.is_zero() {
            return if e == 0 { Self::ONE } else { Self::ZERO };
        }
        LogComplex::new(self.log_mag * e as f64, self.phase * e as f64)
    }

    /// Multiplicative inverse.
    pub fn recip(self) -> Self {
        LogComplex::new(-self.log_mag, -self.phase)
    }

    /// Magnitude |z| (may overflow to +inf).
    #[inline]
    pub fn abs(self) -> f64 {
        self.log_mag.exp()
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl MulAssign for LogComplex {
    fn mul_assign(&mut self, rhs: LogComplex) {
        *self = *self * rhs;
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }
}

impl DivAssign for LogComplex {
    fn div_assign(&mut self, rhs: LogComplex) {
        *self = *self / rhs;
    }
}

impl From<Complex64> for LogComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

/// log-scaled 1 + W, stable when |W| is outside the double range: for
/// huge |W| it is W·(1 + 1/W) with 1/W materialized instead.
pub fn one_plus(w: LogComplex) -> LogComplex {
    if w.log_mag < 300.0 {
        LogComplex::from_complex(Complex64::new(1.0, 0.0) + w.to_complex())
    } else {
        let small = w.recip().to_complex();
        w * LogComplex::from_complex(Complex64::new(1.0, 0.0) + small)
    }
}

/// Sum of log-scaled terms, stable when the common magnitude is outside
/// the double range: the largest magnitude is factored out before the
/// terms are materialized and added (in slice order).
pub fn log_sum(terms: &[LogComplex]) -> LogComplex {
    let max_mag = terms
        .iter()
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_mag == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let scale = LogComplex::new(max_mag, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms {
        acc += (*t / scale).to_complex();
    }
    LogComplex::from_complex(acc) * scale
}
