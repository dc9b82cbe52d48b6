//! Ordered multisets of complex parameters.
//!
//! The multiset shorthand `(α a; q)_k` over `a = {a, b, c, d}` means the
//! product of per-entry factorials in entry order; everything here keeps
//! that order so results are reproducible bit-for-bit.

use num_complex::Complex64;

use crate::error::{QError, Result};

/// Maximum arity used by the polynomial families.
pub const MAX_ARITY: usize = 4;

/// Ordered multiset of complex parameters (length 0–4).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParamMultiset {
    entries: Vec<Complex64>,
}

impl ParamMultiset {
    /// Build from entries, rejecting zeros (family parameters live in ℂ*).
    pub fn new(entries: &[Complex64]) -> Result<Self> {
        if entries.len() > MAX_ARITY {
            return Err(QError::InvalidConfig(format!(
                "multiset length {} exceeds {MAX_ARITY}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.re == 0.0 && e.im == 0.0) {
            return Err(QError::ZeroParameter("multiset entry"));
        }
        Ok(ParamMultiset { entries: entries.to_vec() })
    }

    /// Build from real entries, rejecting zeros.
    pub fn from_reals(entries: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(&v)
    }

    /// Build without the nonzero check. Series parameter lists may
    /// legitimately contain 0 (e.g. a vanishing denominator entry of a
    /// ₁φ₁, for which (0;q)_k ≡ 1).
    pub fn with_zeros(entries: &[Complex64]) -> Result<Self> {
        if entries.len() > MAX_ARITY {
            return Err(QError::InvalidConfig(format!(
                "multiset length {} exceeds {MAX_ARITY}",
                entries.len()
            )));
        }
        Ok(ParamMultiset { entries: entries.to_vec() })
    }

    /// The empty multiset.
    pub fn empty() -> Self {
        ParamMultiset { entries: Vec::new() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.entries.iter()
    }

    /// Apply a scaling/mapping entrywise, preserving order. This is how
    /// callers express shorthands like α/**a** = {α/a, α/b, …}.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ParamMultiset {
        ParamMultiset { entries: self.entries.iter().map(|&e| f(e)).collect() }
    }

    /// Product of all entries (1 for the empty multiset).
    pub fn product(&self) -> Complex64 {
        self.entries.iter().fold(Complex64::new(1.0, 0.0), |acc, &e| acc * e)
    }

    /// Products over unordered pairs {e_i e_j : i < j}, in lexicographic
    /// index order. The norm prefactors (−q ab, −q ac, …; q)_∞ iterate these.
    pub fn pair_products(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for i in 0..self.entries.len() {
            for j in (i + 1)..self.entries.len() {
                out.push(self.entries[i] * self.entries[j]);
            }
        }
        out
    }
}

impl std::ops::Index<usize> for ParamMultiset {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}
