//! Gröbner bases and the ideal-theoretic operations built on them.

mod buchberger;
mod hilbert;
mod ideal;

pub use buchberger::{
    first_nonzero_spair, groebner_basis, posthoc_checks_enabled, posthoc_checks_performed, reduce_by,
    set_posthoc_checks, GbStats,
};
pub use hilbert::{binomial, k_polynomial, HilbertData};
pub use ideal::IdealHandle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::RingError;

pub const BUDGET_PAIRS_ENV: &str = "REES_BUDGET_PAIRS";
pub const BUDGET_TERMS_ENV: &str = "REES_BUDGET_TERMS";

/// Resource ceilings for one Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// S-pairs reduced before giving up.
    pub max_pairs: u64,
    /// Total terms held in the basis (and in any single intermediate remainder).
    pub max_terms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_pairs: 2_000_000, max_terms: 200_000_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { max_pairs: u64::MAX, max_terms: u64::MAX }
    }

    /// Defaults overridden by `REES_BUDGET_PAIRS` / `REES_BUDGET_TERMS` when set.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(v) = std::env::var(BUDGET_PAIRS_ENV).ok().and_then(|s| s.parse().ok()) {
            b.max_pairs = v;
        }
        if let Some(v) = std::env::var(BUDGET_TERMS_ENV).ok().and_then(|s| s.parse().ok()) {
            b.max_terms = v;
        }
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("resource budget exhausted after {pairs} pairs ({terms} basis terms)")]
    Timeout { pairs: u64, terms: u64 },
    #[error("exponent exceeds the packed monomial range")]
    ExponentOverflow,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("operation requires a proper ideal")]
    UnitIdeal,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl GbError {
    /// True for resource limits: the pair/term budget or the exponent range.
    pub fn is_timeout(&self) -> bool {
        matches!(self, GbError::Timeout { .. } | GbError::ExponentOverflow)
    }
}

#[cfg(test)]
mod tests;
