//! Error types shared across the library.
//!
//! Numerical routines distinguish *structural* failures (a pole of the
//! integrand, parameters outside a domain of convergence, an unsatisfied
//! validity condition) from *budget* failures (a series or quadrature that
//! did not reach the requested tolerance within its evaluation budget).
//! Callers that drive verification suites rely on this distinction to
//! classify failures, and the command-line front end maps the variants to
//! distinct exit codes.

use num_complex::Complex64;
use std::fmt;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Error cases surfaced by series evaluation, quadrature, operator
/// assembly and verification.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A gamma factor in a numerator was requested at a non-positive
    /// integer (within the pole tolerance), so the value is genuinely
    /// infinite rather than merely hard to compute.
    Pole { context: &'static str, z: Complex64 },
    /// The series parameters place the argument outside the domain of
    /// convergence (e.g. Fox-Wright convergence index below -1, or a
    /// unit-disc series called with |z| >= 1).
    Divergence { context: &'static str, detail: String },
    /// The evaluation budget (series terms, quadrature nodes) was spent
    /// without meeting the requested tolerance. Carries the best estimate
    /// reached so the caller can decide whether it is usable.
    NonConvergence {
        context: &'static str,
        estimate: f64,
        requested: f64,
    },
    /// Input outside the routine's domain: non-positive quadrature
    /// abscissa, unsupported parameter combination, kernel outside its
    /// evaluable region, and similar.
    Domain { context: &'static str, detail: String },
    /// A quadrature transformation degenerated (for instance the
    /// hypergeometric connection formula at integer exponent difference,
    /// where the closed-form split is singular).
    Transform { context: &'static str, detail: String },
    /// A closed-form image formula was requested outside its printed
    /// validity conditions.
    Validity { context: &'static str, detail: String },
    /// Richardson extrapolation of a finite-difference stencil failed to
    /// reduce the error estimate (step size too large or too small for the
    /// inner evaluation noise).
    Step { context: &'static str, estimate: f64 },
    /// Rejection sampling could not produce a parameter draw satisfying a
    /// suite's validity predicate within the attempt budget.
    SamplingExhausted { suite: String, attempts: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { context, z } => {
                write!(f, "{context}: gamma pole at z = {z}")
            }
            Error::Divergence { context, detail } => {
                write!(f, "{context}: series diverges ({detail})")
            }
            Error::NonConvergence {
                context,
                estimate,
                requested,
            } => write!(
                f,
                "{context}: budget exhausted, error estimate {estimate:.3e} > requested {requested:.3e}"
            ),
            Error::Domain { context, detail } => {
                write!(f, "{context}: domain error ({detail})")
            }
            Error::Transform { context, detail } => {
                write!(f, "{context}: degenerate transformation ({detail})")
            }
            Error::Validity { context, detail } => {
                write!(f, "{context}: validity condition violated ({detail})")
            }
            Error::Step { context, estimate } => write!(
                f,
                "{context}: extrapolation stalled at error estimate {estimate:.3e}"
            ),
            Error::SamplingExhausted { suite, attempts } => write!(
                f,
                "suite {suite}: no admissible parameter draw in {attempts} attempts"
            ),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Convenience constructor for [`Error::Domain`].
    pub fn domain(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            context,
            detail: detail.into(),
        }
    }

    /// Convenience constructor for [`Error::Validity`].
    pub fn validity(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Validity {
            context,
            detail: detail.into(),
        }
    }

    /// True for failures that indicate a *structural* problem with the
    /// parameters (poles, divergence, domain, validity), false for budget
    /// failures that might succeed with more work.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Divergence { .. }
                | Error::Domain { .. }
                | Error::Transform { .. }
                | Error::Validity { .. }
        )
    }
}
