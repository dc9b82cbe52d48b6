//! Error type shared by every module.
//!
//! Singular inputs (poles, vanishing denominator products, violated
//! convergence constraints) surface as structured errors, never as NaN;
//! the verification harness needs to distinguish "singular input" from
//! "bug". Slow convergence is not an error: series evaluators report it
//! through `converged = false` on their result.

use num_complex::Complex64;

/// Errors produced by q-series evaluation and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QError {
    /// The base q must satisfy 0 < |q| < 1.
    #[error("base q = {0} outside 0 < |q| < 1")]
    InvalidBase(Complex64),

    /// A context or spec field violated its invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A parameter that must be nonzero was zero.
    #[error("zero parameter: {0}")]
    ZeroParameter(&'static str),

    /// A pole was hit: a denominator factor or denominator infinite
    /// product vanished.
    #[error("pole: {0}")]
    Pole(String),

    /// A lattice point of a bilateral sum hit a weight pole.
    #[error("pole on lattice at k = {k}: {detail}")]
    LatticePole { k: i64, detail: String },

    /// The requested series is divergent for the given inputs.
    #[error("divergent series: {0}")]
    Divergent(String),

    /// A convergence constraint stated by an orthogonality relation was
    /// violated (e.g. |qabcd| >= |q|^{2N}).
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A quadrature rule failed its convergence gate or envelope check.
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, QError>;
