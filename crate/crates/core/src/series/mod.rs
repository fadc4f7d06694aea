//! Series evaluation: the generalized Struve function, the Fox-Wright
//! function, the generalized hypergeometric pFq, the Gauss 2F1 kernel
//! fast path, and the Appell F3 double series.
//!
//! All series share one termination contract (see [`SeriesResult`]):
//! summation uses compensated (Kahan) accumulation and stops once three
//! consecutive terms are each smaller than `tol` times the magnitude of
//! the partial sum — a guard against alternating-term false stops — and
//! the reported truncation estimate is the first omitted term inflated
//! by a geometric tail bound.

mod appell;
mod fox_wright;
mod pfq;
mod struve;

pub use appell::appell_f3;
pub use fox_wright::{convergence_index, fox_wright, fox_wright_with_k_max, FoxWrightSpec};
pub use pfq::{gauss_2f1, hypergeometric_pfq};
pub use struve::{struve_generalized, StruveParams};

use num_complex::Complex64;

/// Default term budget; covers |z| ≤ 50 for every series in the
/// verification suites.
pub const K_MAX_DEFAULT: usize = 2000;

/// Number of consecutive sub-tolerance terms required before a series
/// is allowed to stop.
pub(crate) const CONSECUTIVE_SMALL: u32 = 3;

/// Outcome of a truncated series evaluation.
///
/// `truncation_estimate` is the magnitude of the first omitted term
/// scaled by a geometric tail bound and normalized by |value| (absolute
/// when the sum is exactly zero), so `converged` means the tail estimate
/// is below the requested tolerance in the same relative sense the stop
/// rule uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub truncation_estimate: f64,
    pub converged: bool,
}

/// Compensated complex accumulator (Kahan–Babuška style).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Shared stop-rule bookkeeping: counts consecutive sub-tolerance terms
/// and assembles the final [`SeriesResult`] from the first omitted term.
pub(crate) struct TailRule {
    tol: f64,
    small_run: u32,
}

impl TailRule {
    pub(crate) fn new(tol: f64) -> Self {
        TailRule { tol, small_run: 0 }
    }

    /// Feed the term just added (and the updated partial sum); returns
    /// true once the stop rule is satisfied. Terms annihilated by a
    /// denominator-gamma pole must not be fed (they carry no tail
    /// information).
    pub(crate) fn observe(&mut self, term_mag: f64, partial_mag: f64) -> bool {
        if term_mag < self.tol * partial_mag {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= CONSECUTIVE_SMALL
    }

    /// Build the result given the first omitted term and its predecessor.
    pub(crate) fn finish(
        &self,
        value: Complex64,
        terms_used: usize,
        omitted_mag: f64,
        last_mag: f64,
    ) -> SeriesResult {
        let ratio = if last_mag > 0.0 {
            (omitted_mag / last_mag).min(0.9)
        } else {
            0.0
        };
        let raw = omitted_mag / (1.0 - ratio);
        let scale = value.norm();
        let truncation_estimate = if scale > 0.0 { raw / scale } else { raw };
        SeriesResult {
            value,
            terms_used,
            truncation_estimate,
            converged: truncation_estimate <= self.tol,
        }
    }
}
