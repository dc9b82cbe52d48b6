//! Numerical q-series and the q⁻¹-symmetric families of orthogonal polynomials.
//!
//! The crate is organized bottom-up:
//!
//! - [`context`]: the base `q` with truncation/verification tolerances, threaded
//!   through every evaluation
//! - [`log_complex`]: sign/phase + log-magnitude complex scalars for
//!   overflow-safe products such as `q^{-6 binom(n,2)} (a²b²c²d²)^n`
//! - [`poch`]: finite, infinite, multiset, and bilateral-index q-shifted
//!   factorials, plus the modified theta function
//! - [`gamma`]: Lanczos log-gamma, the entire reciprocal gamma, and Γ_q
//! - [`hyper`]: the general ₍r₎φ₍s₎ series, a two-tail bilateral summation
//!   engine, and the Dougall ₅H₅ evaluation
//! - [`polys`]: the five polynomial families (Askey–Wilson down to Hermite)
//!   with their terminating representations and normalization cross-maps
//! - [`ortho_discrete`]: infinite discrete bilateral orthogonality — Gram
//!   matrices, closed-form norms, and the total-mass summation
//! - [`quad`]: trapezoidal/Simpson engines for Gaussian-envelope, periodic,
//!   and oscillatory integrands
//! - [`ortho_continuous`]: continuous orthogonality, the J(α|q) and q-beta
//!   integrals, and the classical beta-integral limit with its Fourier and
//!   Dougall verification apparatus

// `!(x > 0.0)` is used deliberately throughout: unlike `x <= 0.0` it also
// rejects NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod context;
pub mod error;
pub mod gamma;
pub mod hyper;
pub mod log_complex;
pub mod ortho_continuous;
pub mod ortho_discrete;
pub mod params;
pub mod poch;
pub mod polys;
pub mod quad;
pub mod series;

pub use context::QContext;
pub use error::{QError, Result};
pub use log_complex::LogComplex;
pub use params::ParamMultiset;
pub use polys::{Family, FamilyKind, Rep, ZPoint};
pub use series::{BilateralResult, SeriesResult};

/// The scalar type used throughout: double-precision complex.
pub type Complex64 = num_complex::Complex64;

/// Shorthand for a real complex scalar.
#[inline]
pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Shorthand for embedding a real into the complex scalar type.
#[inline]
pub fn creal(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
