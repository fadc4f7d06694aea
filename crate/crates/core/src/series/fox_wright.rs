//! The Fox-Wright function pΨq and its convergence index.
//!
//! The implemented sum is the UNNORMALIZED convention
//!
//! ```text
//! pΨq(z) = Σ_k  Π_i Γ(a_i + α_i k) / Π_j Γ(b_j + β_j k) · z^k / k!
//! ```
//!
//! with no gamma prefactor. (A normalization prefactor over the *weight*
//! parameters Π Γ(β_j)/Π Γ(α_i) appears in some statements of the
//! definition; it is inconsistent with the term-wise derivations of the
//! image theorems this library reconstructs, and is deliberately not
//! applied. The reduction to pFq therefore carries the constant
//! Π Γ(a_i)/Π Γ(b_j) — see the tests.)
//!
//! Convergence is governed by Δ = Σ β_j − Σ α_i: the series defines an
//! entire function for Δ > −1 and converges on |z| < 1 for Δ = −1.

use super::{KahanSum, SeriesResult, TailRule, K_MAX_DEFAULT};
use crate::error::{Error, Result};
use crate::gamma::{log_gamma_unchecked, nearest_pole};
use num_complex::Complex64;

/// Parameter list of pΨq: upper pairs (a_i, α_i), lower pairs (b_j, β_j);
/// the weights α_i, β_j are positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxWrightSpec {
    pub upper: Vec<(Complex64, f64)>,
    pub lower: Vec<(Complex64, f64)>,
}

impl FoxWrightSpec {
    pub fn new(upper: Vec<(Complex64, f64)>, lower: Vec<(Complex64, f64)>) -> Self {
        FoxWrightSpec { upper, lower }
    }
}

/// Δ = Σ β_j − Σ α_i, the Wright convergence index.
pub fn convergence_index(spec: &FoxWrightSpec) -> f64 {
    let sum_beta: f64 = spec.lower.iter().map(|&(_, b)| b).sum();
    let sum_alpha: f64 = spec.upper.iter().map(|&(_, a)| a).sum();
    sum_beta - sum_alpha
}

/// Tolerance used to classify Δ as exactly −1 (the boundary case).
const INDEX_TOL: f64 = 1e-12;

/// Evaluates pΨq(z) with the default term budget.
pub fn fox_wright(spec: &FoxWrightSpec, z: Complex64, tol: f64) -> Result<SeriesResult> {
    fox_wright_with_k_max(spec, z, tol, K_MAX_DEFAULT)
}

/// Evaluates pΨq(z) with an explicit term budget.
///
/// Terms are computed in log-domain (the gamma arguments grow like
/// α_i k, so value-domain products overflow near k ≈ 80 for the theorem
/// bundles). A lower-parameter pole at some k kills that term (the
/// reciprocal-gamma convention); an upper-parameter pole is an error.
pub fn fox_wright_with_k_max(
    spec: &FoxWrightSpec,
    z: Complex64,
    tol: f64,
    k_max: usize,
) -> Result<SeriesResult> {
    let delta = convergence_index(spec);
    if delta < -1.0 - INDEX_TOL {
        return Err(Error::Divergence {
            context: "fox_wright",
            detail: format!("convergence index {delta} < -1"),
        });
    }
    if (delta + 1.0).abs() <= INDEX_TOL && z.norm() >= 1.0 {
        return Err(Error::Divergence {
            context: "fox_wright",
            detail: format!("index -1 requires |z| < 1, got |z| = {}", z.norm()),
        });
    }

    let term = |k: usize| -> Result<Complex64> {
        let kf = k as f64;
        let mut log_t = Complex64::new(0.0, 0.0);
        for &(a, alpha) in &spec.upper {
            let arg = a + alpha * kf;
            if nearest_pole(arg).is_some() {
                return Err(Error::Pole {
                    context: "fox_wright upper parameter",
                    z: arg,
                });
            }
            log_t += log_gamma_unchecked(arg);
        }
        for &(b, beta) in &spec.lower {
            let arg = b + beta * kf;
            if nearest_pole(arg).is_some() {
                // Denominator pole: the whole term vanishes.
                return Ok(Complex64::new(0.0, 0.0));
            }
            log_t -= log_gamma_unchecked(arg);
        }
        if k > 0 {
            log_t += kf * z.ln();
        }
        log_t -= log_gamma_unchecked(Complex64::new(kf + 1.0, 0.0));
        Ok(log_t.exp())
    };

    // z = 0 truncates the series to its k = 0 term.
    if z.norm() == 0.0 {
        let t0 = term(0)?;
        return Ok(SeriesResult {
            value: t0,
            terms_used: 1,
            truncation_estimate: 0.0,
            converged: true,
        });
    }

    let mut acc = KahanSum::new();
    let mut rule = TailRule::new(tol);
    let mut last_mag = 0.0;
    for k in 0..k_max {
        let t = term(k)?;
        let mag = t.norm();
        acc.add(t);
        if mag == 0.0 {
            // Pole-killed term (z ≠ 0, so exact zeros only arise from the
            // denominator-pole convention): carries no tail information.
            continue;
        }
        last_mag = mag;
        if rule.observe(mag, acc.value().norm()) {
            let omitted = term(k + 1)?.norm();
            return Ok(rule.finish(acc.value(), k + 1, omitted, mag));
        }
    }
    Err(Error::NonConvergence {
        context: "fox_wright",
        estimate: last_mag,
        requested: tol,
    })
}
