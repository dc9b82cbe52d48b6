//! Result carriers for truncated series, products, and bilateral sums.

use num_complex::Complex64;

/// Value of a truncated infinite sum or product together with its
/// truncation diagnostics.
///
/// `T` is `Complex64` for sums and [`crate::LogComplex`] for log-scaled
/// products. `converged = true` asserts `tail_bound <= eps_term *
/// max(|value|, floor)` under the evaluator's truncation rule, and
/// `n_used <= max_terms` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    /// The accumulated value.
    pub value: T,
    /// Number of terms or factors consumed.
    pub n_used: u32,
    /// Estimated bound on the dropped tail (log-magnitude bound for
    /// products).
    pub tail_bound: f64,
    /// Whether the truncation rule was satisfied within `max_terms`.
    pub converged: bool,
}

impl<T> SeriesResult<T> {
    /// Wrap an exactly-known value (no truncation).
    pub fn exact(value: T) -> Self {
        SeriesResult { value, n_used: 0, tail_bound: 0.0, converged: true }
    }
}

/// Result of a two-tail bilateral sum over k ∈ ℤ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilateralResult {
    /// The accumulated value, summed outward from k = 0.
    pub value: Complex64,
    /// Largest positive index evaluated.
    pub n_pos: u32,
    /// Largest |negative| index evaluated.
    pub n_neg: u32,
    /// Geometric estimate of the dropped two-sided tail.
    pub tail_bound: f64,
    /// Whether both tails met the truncation rule within `max_terms`.
    pub converged: bool,
    /// Empirical magnitude ratio of the last terms on the k → +∞ side.
    pub ratio_pos: Option<f64>,
    /// Empirical magnitude ratio of the last terms on the k → −∞ side.
    pub ratio_neg: Option<f64>,
    /// When the generator supplied a decay hint: whether the observed
    /// tail ratios lie within a factor of two of it.
    pub hint_consistent: Option<bool>,
}
