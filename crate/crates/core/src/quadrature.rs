//! Weighted Gauss–Jacobi quadrature for the fractional-integral kernels.
//!
//! Everything here reduces to integrals over [0, 1] of the shape
//!
//! ```text
//! ∫₀¹ (1−s)^{γ−1} · K(s) · φ(s) ds,       K(s) = 2F1(λ, ξ₁; γ; 1−s)
//! ```
//!
//! with Re γ > 0 and |φ(s)| = O(s^η) as s → 0. Two endpoint behaviors
//! must be absorbed by the quadrature weight rather than sampled: the
//! (1−s)^{γ−1} singularity at s = 1, and at s = 0 both the φ power and
//! the kernel's argument-1 singularity, which the connection formula
//!
//! ```text
//! 2F1(λ,ξ₁;γ;1−s) = C1·2F1(λ,ξ₁;1−d;s) + C2·s^d·2F1(γ−λ,γ−ξ₁;1+d;s),
//! d = γ−λ−ξ₁
//! ```
//!
//! makes explicit (an exact s^d power). The integral is therefore split
//! at s = 1/2 into a right piece with Jacobi weight (1−s)^{Re γ−1} and
//! two left pieces with weights s^η and s^{η+Re d}; on each piece the
//! remaining factor is smooth, so a Gauss–Jacobi ladder converges
//! geometrically. When λ or ξ₁ vanishes the kernel is identically 1 and
//! a single two-sided Jacobi rule suffices.
//!
//! Two degenerate parameter configurations get their own plans. When λ
//! or ξ₁ is a non-positive integer the kernel is a polynomial in 1−s,
//! evaluable at any argument by its terminating series, and one
//! two-sided rule again suffices. When d is an integer the connection
//! coefficients blow up and the kernel instead satisfies a logarithmic
//! expansion K(s) = s^{−shift}·P(s) + pref·Σ cₙ s^{n+off}(ln s + δₙ)
//! with digamma constants δₙ; the analytic part joins the Gauss–Jacobi
//! ladder while the ln s part is integrated once over geometrically
//! shrinking panels [2^{−j−1}, 2^{−j}] with a fixed Gauss–Legendre rule
//! (the singularity sits one panel-length away, so each panel converges
//! geometrically, and panel sums decay like 2^{−j(1+β)}). Arguments
//! within 1e-9 of an integer d are treated as exactly integral, an
//! approximation of the same order.
//!
//! A second engine handles the full Appell-F3 kernel, which is only
//! series-evaluable for s ∈ (1/2, 1); it integrates over [lo, 1] with
//! lo bounded away from 1/2 so the F3 diagonal budget stays small.
//!
//! Error estimates are the absolute difference of consecutive ladder
//! levels; `converged` means that difference reached the requested
//! absolute tolerance.

use crate::error::{Error, Result};
use crate::gamma::{digamma, gamma_ratio, nearest_pole, GammaRatioBundle};
use crate::series::{appell_f3, hypergeometric_pfq, KahanSum};
use gauss_quad::GaussJacobi;
use num_complex::Complex64;

/// Node counts for the adaptive ladder (≈ ×1.5 per level).
pub const NODE_LADDER: &[usize] = &[8, 12, 18, 27, 40, 60, 90, 135];

/// Relative tolerance for per-node kernel series evaluations.
const KERNEL_SERIES_TOL: f64 = 1e-14;

/// Distance below which γ−λ−ξ₁ counts as an integer (degenerate
/// connection formula, handled by the logarithmic expansion).
const NEAR_INTEGER_TOL: f64 = 1e-9;

/// Coefficient count for the logarithmic kernel expansion (arguments
/// stay ≤ 1/2, so truncation is below 1e-20 of the lead).
const LOG_SERIES_LEN: usize = 96;

/// Gauss–Legendre degree used on each logarithmic panel.
const LOG_PANEL_DEG: usize = 24;

/// Maximum number of geometric panels for the logarithmic piece.
const LOG_PANEL_MAX: usize = 600;

/// Magnitude below which a kernel upper parameter counts as zero,
/// collapsing 2F1 to 1.
pub(crate) const TRIVIAL_KERNEL_TOL: f64 = 1e-12;

/// Outcome of an adaptive quadrature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// Estimated integral (or derived operator) value.
    pub value: Complex64,
    /// Absolute difference of the last two refinement levels.
    pub abs_error_estimate: f64,
    /// Total integrand evaluations consumed.
    pub nodes: usize,
    /// True when `abs_error_estimate` reached the requested tolerance.
    pub converged: bool,
}

/// Gauss–Jacobi rule recentred on [0, 1]: integrates
/// ∫₀¹ (1−s)^α s^β g(s) ds as Σ vᵢ g(sᵢ).
pub struct JacobiRule {
    points: Vec<(f64, f64)>,
    alpha: f64,
    beta: f64,
}

impl JacobiRule {
    /// Builds a `deg`-point rule for weight (1−s)^α s^β; requires
    /// α > −1, β > −1 (otherwise the weight is not integrable).
    pub fn new(deg: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::Divergence {
                context: "jacobi_rule",
                detail: format!("weight exponents ({alpha}, {beta}) must exceed −1"),
            });
        }
        let raw = GaussJacobi::new(deg.max(2), alpha, beta).map_err(|e| {
            Error::domain("jacobi_rule", format!("rule construction failed: {e}"))
        })?;
        let scale = 2.0f64.powf(-(alpha + beta + 1.0));
        let points = raw
            .into_iter()
            .map(|(x, w)| ((x + 1.0) / 2.0, scale * w))
            .collect();
        Ok(JacobiRule {
            points,
            alpha,
            beta,
        })
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True if the rule has no nodes (never happens for constructed rules).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// ∫_a^b (b−s)^α (s−a)^β g(s) ds for the rule's (α, β), with g
    /// allowed to fail.
    pub fn try_integrate_on(
        &self,
        a: f64,
        b: f64,
        mut g: impl FnMut(f64) -> Result<Complex64>,
    ) -> Result<Complex64> {
        let h = b - a;
        let scale = h.powf(self.alpha + self.beta + 1.0);
        let mut acc = KahanSum::new();
        for &(s, v) in &self.points {
            acc.add(g(a + h * s)? * v);
        }
        Ok(acc.value() * scale)
    }

    /// Infallible version of [`Self::try_integrate_on`].
    pub fn integrate_on(
        &self,
        a: f64,
        b: f64,
        mut g: impl FnMut(f64) -> Complex64,
    ) -> Complex64 {
        self.try_integrate_on(a, b, |s| Ok(g(s)))
            .expect("infallible integrand")
    }
}

/// s^e for s > 0 and complex e (principal branch).
#[inline]
pub(crate) fn real_powc(s: f64, e: Complex64) -> Complex64 {
    (e * s.ln()).exp()
}

/// Specification of the collapsed-kernel unit integral
/// ∫₀¹ (1−s)^{γ−1} 2F1(λ, ξ₁; γ; 1−s) φ(s) ds.
pub(crate) struct KernelIntegral<'a> {
    pub gamma: Complex64,
    pub lam: Complex64,
    pub xi1: Complex64,
    /// Declared power of φ at 0: |φ(s)| = O(s^η).
    pub eta: f64,
    pub phi: &'a (dyn Fn(f64) -> Complex64 + Sync),
}

/// Split-path constants reused across ladder levels.
struct SplitPlan {
    d: Complex64,
    c1: Complex64,
    c2: Complex64,
}

/// Logarithmic-case constants: for integer d = γ−λ−ξ₁ the kernel obeys
///
/// ```text
/// K(s) = s^{−shift}·P(s) + pref·Σₙ cₙ s^{n+off} (ln s + δₙ)
/// ```
///
/// with (shift, off) = (0, m) for d = m ≥ 0 and (m, 0) for d = −m < 0,
/// P a polynomial of degree < m with the gamma prefactor folded in, and
/// δₙ sums of four digamma values.
struct LogPlan {
    shift: usize,
    off: usize,
    finite: Vec<Complex64>,
    pref_log: Complex64,
    log_c: Vec<Complex64>,
    log_d: Vec<Complex64>,
}

impl LogPlan {
    /// The analytic bracket [P(s) + s^{shift}·pref·Σ cₙ δₙ s^{n+off}];
    /// the full kernel minus its ln s part equals s^{−shift} times this.
    fn analytic_factor(&self, s: f64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut sn = 1.0;
        for &f in &self.finite {
            p += f * sn;
            sn *= s;
        }
        if !self.log_c.is_empty() {
            let mut acc = KahanSum::new();
            let mut sn = s.powi((self.shift + self.off) as i32);
            for (&c, &dl) in self.log_c.iter().zip(&self.log_d) {
                acc.add(c * dl * sn);
                sn *= s;
            }
            p += self.pref_log * acc.value();
        }
        p
    }

    /// Σ cₙ sⁿ, the series multiplying pref·s^{off}·ln s.
    fn log_series(&self, s: f64) -> Complex64 {
        let mut acc = KahanSum::new();
        let mut sn = 1.0;
        for &c in &self.log_c {
            acc.add(c * sn);
            sn *= s;
        }
        acc.value()
    }

    /// Full kernel value (used by tests to validate the expansion).
    #[cfg(test)]
    fn kernel(&self, s: f64) -> Complex64 {
        let mut v = self.analytic_factor(s) * s.powi(-(self.shift as i32));
        if !self.log_c.is_empty() {
            v += self.pref_log * s.ln() * s.powi(self.off as i32) * self.log_series(s);
        }
        v
    }
}

/// Evaluation strategy for one collapsed-kernel integral.
enum KernelPlan {
    /// λ or ξ₁ ≈ 0: kernel ≡ 1.
    Trivial,
    /// λ or ξ₁ a non-positive integer: kernel is a terminating series.
    Polynomial,
    /// Generic d: connection-formula split.
    Split(SplitPlan),
    /// Integer d: logarithmic expansion.
    Log(LogPlan),
}

/// Builds the logarithmic plan for d ≈ m ≥ 0
/// (2F1(λ, ξ₁; λ+ξ₁+m; 1−s), the c − a − b = m expansion).
fn log_plan_direct(g: Complex64, l: Complex64, x1: Complex64, m: usize) -> Result<LogPlan> {
    let base = gamma_ratio(&GammaRatioBundle::new(vec![g], vec![l, x1]))?;
    let pref_log = if m % 2 == 0 { -base } else { base };
    let mut finite = Vec::with_capacity(m);
    if m >= 1 {
        let mut f = gamma_ratio(&GammaRatioBundle::new(
            vec![Complex64::new(m as f64, 0.0), g],
            vec![l + m as f64, x1 + m as f64],
        ))?;
        for n in 0..m {
            finite.push(f);
            let nf = n as f64;
            if n + 1 < m {
                f *= (l + nf) * (x1 + nf) / ((nf + 1.0) * (1.0 - m as f64 + nf));
            }
        }
    }
    let (log_c, log_d) = if pref_log.norm() > 0.0 {
        log_arrays(m, l + m as f64, x1 + m as f64)?
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(LogPlan {
        shift: 0,
        off: m,
        finite,
        pref_log,
        log_c,
        log_d,
    })
}

/// Builds the logarithmic plan for d ≈ −m < 0
/// (2F1(λ, ξ₁; λ+ξ₁−m; 1−s), the c − a − b = −m expansion).
fn log_plan_negative(g: Complex64, l: Complex64, x1: Complex64, m: usize) -> Result<LogPlan> {
    let base = gamma_ratio(&GammaRatioBundle::new(
        vec![g],
        vec![l - m as f64, x1 - m as f64],
    ))?;
    let pref_log = if m % 2 == 0 { -base } else { base };
    let mut finite = Vec::with_capacity(m);
    let mut f = gamma_ratio(&GammaRatioBundle::new(
        vec![Complex64::new(m as f64, 0.0), g],
        vec![l, x1],
    ))?;
    for n in 0..m {
        finite.push(f);
        let nf = n as f64;
        if n + 1 < m {
            f *= (l - m as f64 + nf) * (x1 - m as f64 + nf) / ((nf + 1.0) * (1.0 - m as f64 + nf));
        }
    }
    let (log_c, log_d) = if pref_log.norm() > 0.0 {
        log_arrays(m, l, x1)?
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(LogPlan {
        shift: m,
        off: 0,
        finite,
        pref_log,
        log_c,
        log_d,
    })
}

/// Coefficients cₙ = (A)ₙ(B)ₙ / (n! (n+m)!) and digamma sums
/// δₙ = ψ(A+n) + ψ(B+n) − ψ(n+1) − ψ(n+m+1) for the log series.
fn log_arrays(m: usize, a: Complex64, b: Complex64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let mut log_c = Vec::with_capacity(LOG_SERIES_LEN);
    let mut log_d = Vec::with_capacity(LOG_SERIES_LEN);
    let mut c = Complex64::new(
        crate::gamma::reciprocal_gamma(Complex64::new(m as f64 + 1.0, 0.0)).re,
        0.0,
    );
    let mut pa = digamma(a)?;
    let mut pb = digamma(b)?;
    let mut p1 = digamma(Complex64::new(1.0, 0.0))?;
    let mut pm = digamma(Complex64::new(m as f64 + 1.0, 0.0))?;
    for n in 0..LOG_SERIES_LEN {
        log_c.push(c);
        log_d.push(pa + pb - p1 - pm);
        let nf = n as f64;
        c *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0 + m as f64));
        pa += 1.0 / (a + nf);
        pb += 1.0 / (b + nf);
        p1 += 1.0 / (nf + 1.0);
        pm += 1.0 / (nf + 1.0 + m as f64);
    }
    Ok((log_c, log_d))
}

/// Chooses the evaluation strategy and precomputes its constants.
fn make_plan(spec: &KernelIntegral<'_>) -> Result<KernelPlan> {
    let (g, l, x1) = (spec.gamma, spec.lam, spec.xi1);
    if l.norm() <= TRIVIAL_KERNEL_TOL || x1.norm() <= TRIVIAL_KERNEL_TOL {
        return Ok(KernelPlan::Trivial);
    }
    if nearest_pole(l).is_some() || nearest_pole(x1).is_some() {
        return Ok(KernelPlan::Polynomial);
    }
    let d = g - l - x1;
    if d.im.abs() <= NEAR_INTEGER_TOL && (d.re - d.re.round()).abs() <= NEAR_INTEGER_TOL {
        let m = d.re.round() as i64;
        if m >= 0 {
            return Ok(KernelPlan::Log(log_plan_direct(g, l, x1, m as usize)?));
        }
        if spec.eta + d.re <= -1.0 {
            return Err(Error::Divergence {
                context: "kernel_unit_integral",
                detail: format!(
                    "endpoint power η + Re(γ−λ−ξ₁) = {} ≤ −1: integral diverges at 0",
                    spec.eta + d.re
                ),
            });
        }
        return Ok(KernelPlan::Log(log_plan_negative(g, l, x1, (-m) as usize)?));
    }
    let c1 = gamma_ratio(&GammaRatioBundle::new(vec![g, d], vec![g - l, g - x1]))?;
    let c2 = gamma_ratio(&GammaRatioBundle::new(vec![g, -d], vec![l, x1]))?;
    if c2.norm() > 0.0 && spec.eta + d.re <= -1.0 {
        return Err(Error::Divergence {
            context: "kernel_unit_integral",
            detail: format!(
                "endpoint power η + Re(γ−λ−ξ₁) = {} ≤ −1: integral diverges at 0",
                spec.eta + d.re
            ),
        });
    }
    Ok(KernelPlan::Split(SplitPlan { d, c1, c2 }))
}

/// Gauss series at an argument known to lie in [0, 1/2].
fn gauss_series_node(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    Ok(hypergeometric_pfq(&[a, b], &[c], Complex64::new(w, 0.0), KERNEL_SERIES_TOL)?.value)
}

/// One Gauss–Jacobi ladder level of the collapsed-kernel integral
/// (everything except the log-case panel piece, which is level-
/// independent). Returns the level value and integrand evaluations.
fn kernel_level(
    spec: &KernelIntegral<'_>,
    plan: &KernelPlan,
    deg: usize,
) -> Result<(Complex64, usize)> {
    let (g, l, x1) = (spec.gamma, spec.lam, spec.xi1);
    let im_weight = |s: f64| real_powc(1.0 - s, Complex64::new(0.0, g.im));
    match plan {
        KernelPlan::Trivial => {
            // Kernel ≡ 1: one two-sided rule over [0, 1].
            let rule = JacobiRule::new(deg, g.re - 1.0, spec.eta)?;
            let q = rule.integrate_on(0.0, 1.0, |s| {
                (spec.phi)(s) * s.powf(-spec.eta) * im_weight(s)
            });
            Ok((q, deg))
        }
        KernelPlan::Polynomial => {
            // Terminating kernel series, finite at argument 1: one
            // two-sided rule over [0, 1] sampling the kernel directly.
            let rule = JacobiRule::new(deg, g.re - 1.0, spec.eta)?;
            let q = rule.try_integrate_on(0.0, 1.0, |s| {
                Ok(gauss_series_node(l, x1, g, 1.0 - s)?
                    * (spec.phi)(s)
                    * s.powf(-spec.eta)
                    * im_weight(s))
            })?;
            Ok((q, deg))
        }
        KernelPlan::Split(plan) => {
            let right = JacobiRule::new(deg, g.re - 1.0, 0.0)?;
            let qa = right.try_integrate_on(0.5, 1.0, |s| {
                Ok(gauss_series_node(l, x1, g, 1.0 - s)? * (spec.phi)(s) * im_weight(s))
            })?;
            let left1 = JacobiRule::new(deg, 0.0, spec.eta)?;
            let qb = left1.try_integrate_on(0.0, 0.5, |s| {
                Ok(gauss_series_node(l, x1, -plan.d + 1.0, s)?
                    * (spec.phi)(s)
                    * s.powf(-spec.eta)
                    * real_powc(1.0 - s, g - 1.0))
            })? * plan.c1;
            let mut q = qa + qb;
            let mut nodes = 2 * deg;
            if plan.c2.norm() > 0.0 {
                let left2 = JacobiRule::new(deg, 0.0, spec.eta + plan.d.re)?;
                let phase = plan.d - (spec.eta + plan.d.re);
                let qc = left2.try_integrate_on(0.0, 0.5, |s| {
                    Ok(gauss_series_node(g - l, g - x1, plan.d + 1.0, s)?
                        * (spec.phi)(s)
                        * real_powc(s, phase)
                        * real_powc(1.0 - s, g - 1.0))
                })? * plan.c2;
                q += qc;
                nodes += deg;
            }
            Ok((q, nodes))
        }
        KernelPlan::Log(plan) => {
            let right = JacobiRule::new(deg, g.re - 1.0, 0.0)?;
            let qa = right.try_integrate_on(0.5, 1.0, |s| {
                Ok(gauss_series_node(l, x1, g, 1.0 - s)? * (spec.phi)(s) * im_weight(s))
            })?;
            // Analytic (non-ln) part of the expansion; the weight
            // absorbs both φ's s^η and the kernel's s^{−shift}.
            let left = JacobiRule::new(deg, 0.0, spec.eta - plan.shift as f64)?;
            let qb = left.try_integrate_on(0.0, 0.5, |s| {
                Ok(plan.analytic_factor(s)
                    * (spec.phi)(s)
                    * s.powf(-spec.eta)
                    * real_powc(1.0 - s, g - 1.0))
            })?;
            Ok((qa + qb, 2 * deg))
        }
    }
}

/// Integrates the ln s part of the logarithmic case over [0, 1/2] with
/// geometric panels. Returns (value, error estimate, evaluations); the
/// estimate is a geometric-tail bound off the last panel.
fn log_left_piece(
    spec: &KernelIntegral<'_>,
    plan: &LogPlan,
    tol: f64,
) -> Result<(Complex64, f64, usize)> {
    if plan.log_c.is_empty() {
        return Ok((Complex64::new(0.0, 0.0), 0.0, 0));
    }
    let g = spec.gamma;
    let rule = JacobiRule::new(LOG_PANEL_DEG, 0.0, 0.0)?;
    // Integrand magnitude ~ s^β |ln s| near 0; panel sums decay ~ 2^{−(1+β)j}.
    let beta = spec.eta + plan.off as f64;
    let ratio = 2.0f64.powf(-(1.0 + beta)).min(0.75);
    let mut acc = KahanSum::new();
    let mut hi = 0.5;
    let mut nodes = 0usize;
    let mut estimate = f64::INFINITY;
    for _ in 0..LOG_PANEL_MAX {
        let lo = 0.5 * hi;
        let panel = rule.integrate_on(lo, hi, |s| {
            plan.pref_log
                * s.ln()
                * s.powi(plan.off as i32)
                * plan.log_series(s)
                * (spec.phi)(s)
                * real_powc(1.0 - s, g - 1.0)
        });
        acc.add(panel);
        nodes += rule.len();
        estimate = panel.norm() * ratio / (1.0 - ratio);
        hi = lo;
        if estimate <= tol {
            break;
        }
    }
    Ok((acc.value(), estimate, nodes))
}

/// Shared validation for the unit-integral entry points.
fn validate_kernel_spec(spec: &KernelIntegral<'_>) -> Result<()> {
    if !(spec.gamma.re > 0.0) {
        return Err(Error::domain(
            "kernel_unit_integral",
            format!("Re γ must be positive, got γ = {}", spec.gamma),
        ));
    }
    if spec.eta <= -1.0 {
        return Err(Error::Divergence {
            context: "kernel_unit_integral",
            detail: format!(
                "declared endpoint power η = {} ≤ −1: integral diverges",
                spec.eta
            ),
        });
    }
    Ok(())
}

/// Adaptive evaluation of the collapsed-kernel unit integral.
pub(crate) fn kernel_unit_integral(spec: &KernelIntegral<'_>, tol: f64) -> Result<QuadratureResult> {
    validate_kernel_spec(spec)?;
    let plan = make_plan(spec)?;
    let (log_value, log_est, log_nodes) = match &plan {
        KernelPlan::Log(p) => log_left_piece(spec, p, 0.25 * tol)?,
        _ => (Complex64::new(0.0, 0.0), 0.0, 0),
    };

    let mut nodes = log_nodes;
    let mut prev: Option<Complex64> = None;
    let mut estimate = f64::INFINITY;
    for &deg in NODE_LADDER {
        let (q, used) = kernel_level(spec, &plan, deg)?;
        nodes += used;
        if let Some(p) = prev {
            estimate = (q - p).norm() + log_est;
            if estimate <= tol {
                return Ok(QuadratureResult {
                    value: q + log_value,
                    abs_error_estimate: estimate,
                    nodes,
                    converged: true,
                });
            }
        }
        prev = Some(q);
    }
    Err(Error::NonConvergence {
        context: "kernel_unit_integral",
        estimate,
        requested: tol,
    })
}

/// Single fixed-degree evaluation (used by convergence-rate checks).
/// The log-case panel piece, when present, is evaluated to near machine
/// precision regardless of `deg`.
#[cfg(test)]
pub(crate) fn kernel_unit_integral_fixed(
    spec: &KernelIntegral<'_>,
    deg: usize,
) -> Result<Complex64> {
    validate_kernel_spec(spec)?;
    let plan = make_plan(spec)?;
    let log_value = match &plan {
        KernelPlan::Log(p) => log_left_piece(spec, p, 1e-15)?.0,
        _ => Complex64::new(0.0, 0.0),
    };
    kernel_level(spec, &plan, deg).map(|(q, _)| q + log_value)
}

/// Specification of the restricted-support full-kernel integral
/// ∫_{lo}^{1} (1−s)^{γ−1} F3(λ, λ′, ξ₁, ξ₂; γ; 1−s, 1−1/s) φ(s) ds,
/// with lo > 1/2 so both F3 arguments stay inside the unit disc with a
/// margin.
pub(crate) struct F3Integral<'a> {
    pub gamma: Complex64,
    pub lam: Complex64,
    pub lam2: Complex64,
    pub xi1: Complex64,
    pub xi2: Complex64,
    pub lo: f64,
    pub phi: &'a (dyn Fn(f64) -> Complex64 + Sync),
}

/// Relative tolerance for per-node F3 evaluations.
const F3_SERIES_TOL: f64 = 1e-13;

/// Adaptive evaluation of the restricted-support F3-kernel integral.
pub(crate) fn f3_unit_integral(spec: &F3Integral<'_>, tol: f64) -> Result<QuadratureResult> {
    if !(spec.gamma.re > 0.0) {
        return Err(Error::domain(
            "f3_unit_integral",
            format!("Re γ must be positive, got γ = {}", spec.gamma),
        ));
    }
    if !(spec.lo > 0.5 && spec.lo < 1.0) {
        return Err(Error::domain(
            "f3_unit_integral",
            format!("support start lo = {} must lie in (1/2, 1)", spec.lo),
        ));
    }
    let g = spec.gamma;
    let im_weight = |s: f64| real_powc(1.0 - s, Complex64::new(0.0, g.im));
    let mut nodes = 0usize;
    let mut prev: Option<Complex64> = None;
    let mut estimate = f64::INFINITY;
    for &deg in NODE_LADDER {
        let rule = JacobiRule::new(deg, g.re - 1.0, 0.0)?;
        let q = rule.try_integrate_on(spec.lo, 1.0, |s| {
            let kernel = appell_f3(
                spec.lam,
                spec.lam2,
                spec.xi1,
                spec.xi2,
                g,
                Complex64::new(1.0 - s, 0.0),
                Complex64::new(1.0 - 1.0 / s, 0.0),
                F3_SERIES_TOL,
            )?
            .value;
            Ok(kernel * (spec.phi)(s) * im_weight(s))
        })?;
        nodes += deg;
        if let Some(p) = prev {
            estimate = (q - p).norm();
            if estimate <= tol {
                return Ok(QuadratureResult {
                    value: q,
                    abs_error_estimate: estimate,
                    nodes,
                    converged: true,
                });
            }
        }
        prev = Some(q);
    }
    Err(Error::NonConvergence {
        context: "f3_unit_integral",
        estimate,
        requested: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;
    use crate::gamma::gamma;

    #[test]
    fn jacobi_rule_beta_function() {
        // ∫₀¹ s (1−s)^{−1/2} ds = B(2, 1/2) = 4/3.
        let rule = JacobiRule::new(24, -0.5, 1.0).unwrap();
        let q = rule.integrate_on(0.0, 1.0, |_| cx(1.0, 0.0));
        assert!((q.re - 4.0 / 3.0).abs() < 1e-13);
        assert!(q.im.abs() < 1e-15);
    }

    #[test]
    fn jacobi_rule_shifted_interval() {
        // ∫_1^3 (3−s)^{0.3} (s−1)^{0.7} s ds via rule vs. substitution
        // s = 1+2σ: 2^{2} ∫₀¹ (1−σ)^{0.3} σ^{0.7} (1+2σ) dσ
        //         = 4 [B(1.7,1.3) + 2·B(2.7,1.3)].
        let rule = JacobiRule::new(32, 0.3, 0.7).unwrap();
        let q = rule.integrate_on(1.0, 3.0, |s| cx(s, 0.0));
        let beta = |a: f64, b: f64| {
            (gamma(cx(a, 0.0)).unwrap() * gamma(cx(b, 0.0)).unwrap() / gamma(cx(a + b, 0.0)).unwrap())
                .re
        };
        let want = 4.0 * (beta(1.7, 1.3) + 2.0 * beta(2.7, 1.3));
        assert!((q.re - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn trivial_kernel_is_beta_integral() {
        // λ = 0 ⇒ ∫₀¹ (1−s)^{γ−1} s^{q} ds = B(q+1, γ).
        let (ga, q) = (0.6, 1.3);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(0.0, 0.0),
            xi1: cx(0.9, 0.0),
            eta: q,
            phi: &phi,
        };
        let r = kernel_unit_integral(&spec, 1e-12).unwrap();
        let want = (gamma(cx(q + 1.0, 0.0)).unwrap() * gamma(cx(ga, 0.0)).unwrap()
            / gamma(cx(q + 1.0 + ga, 0.0)).unwrap())
        .re;
        assert!(r.converged);
        assert!((r.value.re - want).abs() < 1e-11 * want.abs());
    }

    /// Closed form of ∫₀¹ (1−s)^{γ−1} 2F1(λ,ξ₁;γ;1−s) s^{q} ds obtained
    /// by term-wise Beta integration and Gauss's 2F1(·;1) theorem:
    /// Γ(q+1)Γ(γ)Γ(q+1+γ−λ−ξ₁) / (Γ(q+1+γ−λ)Γ(q+1+γ−ξ₁)).
    fn closed_form(q: f64, ga: f64, la: f64, x1: f64) -> f64 {
        let g = |v: f64| gamma(cx(v, 0.0)).unwrap().re;
        g(q + 1.0) * g(ga) * g(q + 1.0 + ga - la - x1) / (g(q + 1.0 + ga - la) * g(q + 1.0 + ga - x1))
    }

    #[test]
    fn split_kernel_matches_gauss_summation_theorem() {
        let (q, ga, la, x1) = (1.2, 0.7, 0.4, 0.9);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            xi1: cx(x1, 0.0),
            eta: q,
            phi: &phi,
        };
        let r = kernel_unit_integral(&spec, 1e-12).unwrap();
        let want = closed_form(q, ga, la, x1);
        assert!(r.converged);
        assert!(
            (r.value.re - want).abs() < 1e-10 * want.abs(),
            "got {}, want {want}",
            r.value.re
        );
    }

    #[test]
    fn split_kernel_negative_d_branch() {
        // γ−λ−ξ₁ < 0 exercises the singular s^d piece (integrable since
        // η + Re d > −1).
        let (q, ga, la, x1) = (2.0, 0.5, 1.3, 0.8);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            xi1: cx(x1, 0.0),
            eta: q,
            phi: &phi,
        };
        let r = kernel_unit_integral(&spec, 1e-12).unwrap();
        let want = closed_form(q, ga, la, x1);
        assert!((r.value.re - want).abs() < 1e-10 * want.abs());
    }

    #[test]
    fn log_case_kernel_matches_direct_series() {
        // Validate the integer-d expansions against the plain Gauss
        // series at arguments where both converge, and against
        // 30-digit reference values deep in the s → 0 regime where the
        // direct series is out of reach.
        let plan = match make_plan(&KernelIntegral {
            gamma: cx(1.5, 0.0),
            lam: cx(0.3, 0.0),
            xi1: cx(0.2, 0.0),
            eta: 0.0,
            phi: &|_| cx(1.0, 0.0),
        })
        .unwrap()
        {
            KernelPlan::Log(p) => p,
            _ => panic!("expected log plan for d = 1"),
        };
        let direct = gauss_series_node(cx(0.3, 0.0), cx(0.2, 0.0), cx(1.5, 0.0), 0.7).unwrap();
        assert!((plan.kernel(0.3) - direct).norm() < 1e-13 * direct.norm());
        // mpmath hyp2f1(0.3, 0.2, 1.5, 1−1e-4) and at 1−0.05.
        assert!((plan.kernel(1e-4).re - 1.0754181589371069).abs() < 1e-13);
        assert!((plan.kernel(0.05).re - 1.0644141170004762).abs() < 1e-13);

        // d = −3 exercises the s^{−m} finite part.
        let plan = match make_plan(&KernelIntegral {
            gamma: cx(0.7, 0.0),
            lam: cx(1.3, 0.0),
            xi1: cx(2.4, 0.0),
            eta: 3.0,
            phi: &|_| cx(1.0, 0.0),
        })
        .unwrap()
        {
            KernelPlan::Log(p) => p,
            _ => panic!("expected log plan for d = −3"),
        };
        let direct = gauss_series_node(cx(1.3, 0.0), cx(2.4, 0.0), cx(0.7, 0.0), 0.6).unwrap();
        assert!((plan.kernel(0.4) - direct).norm() < 1e-12 * direct.norm());

        // Complex parameters, d = 2: mpmath hyp2f1 at 1−1e-3.
        let (a, b) = (cx(0.3, 0.2), cx(0.9, -0.1));
        let plan = match make_plan(&KernelIntegral {
            gamma: a + b + 2.0,
            lam: a,
            xi1: b,
            eta: 0.0,
            phi: &|_| cx(1.0, 0.0),
        })
        .unwrap()
        {
            KernelPlan::Log(p) => p,
            _ => panic!("expected log plan for complex d = 2"),
        };
        let want = cx(1.1466240131179842, 0.0776808460709759);
        assert!((plan.kernel(1e-3) - want).norm() < 1e-13 * want.norm());
    }

    #[test]
    fn integer_d_quadrature_values() {
        // d = 0 (pure logarithmic kernel) and d = 1 both admit the same
        // closed form as the generic split.
        for (q, ga, la, x1) in [(1.0, 1.5, 0.7, 0.8), (2.0, 1.5, 0.3, 0.2)] {
            let phi = move |s: f64| cx(s.powf(q), 0.0);
            let spec = KernelIntegral {
                gamma: cx(ga, 0.0),
                lam: cx(la, 0.0),
                xi1: cx(x1, 0.0),
                eta: q,
                phi: &phi,
            };
            let r = kernel_unit_integral(&spec, 1e-11).unwrap();
            let want = closed_form(q, ga, la, x1);
            assert!(r.converged);
            assert!(
                (r.value.re - want).abs() < 1e-9 * want.abs(),
                "d = {}: got {}, want {want}",
                ga - la - x1,
                r.value.re
            );
        }
    }

    #[test]
    fn negative_integer_d_quadrature_value() {
        // d = −2: singular s^{−2} kernel component, still integrable
        // against η = 2.
        let (q, ga, la, x1) = (2.0, 0.5, 1.3, 1.2);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            xi1: cx(x1, 0.0),
            eta: q,
            phi: &phi,
        };
        let r = kernel_unit_integral(&spec, 1e-11).unwrap();
        let want = closed_form(q, ga, la, x1);
        assert!(
            (r.value.re - want).abs() < 1e-9 * want.abs(),
            "got {}, want {want}",
            r.value.re
        );
    }

    #[test]
    fn polynomial_kernel_quadrature_value() {
        // λ = −2 terminates the kernel series; d = 2.8 − (−2) − 0.9 is
        // far from integral so the closed form still applies.
        let (q, ga, la, x1) = (0.5, 2.8, -2.0, 0.9);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            xi1: cx(x1, 0.0),
            eta: q,
            phi: &phi,
        };
        let r = kernel_unit_integral(&spec, 1e-12).unwrap();
        let want = closed_form(q, ga, la, x1);
        assert!(r.converged);
        assert!(
            (r.value.re - want).abs() < 1e-10 * want.abs(),
            "got {}, want {want}",
            r.value.re
        );
    }

    #[test]
    fn divergent_endpoint_power_rejected() {
        let phi = |s: f64| cx(s.powf(-1.5), 0.0);
        let spec = KernelIntegral {
            gamma: cx(1.0, 0.0),
            lam: cx(0.0, 0.0),
            xi1: cx(0.0, 0.0),
            eta: -1.5,
            phi: &phi,
        };
        assert!(matches!(
            kernel_unit_integral(&spec, 1e-10),
            Err(Error::Divergence { .. })
        ));
    }

    #[test]
    fn f3_restricted_matches_collapsed_kernel() {
        // With λ′ = 0 the F3 kernel equals 2F1(λ,ξ₁;γ;1−s); compare the
        // F3 engine against a direct fixed rule using the Gauss series.
        let (ga, la, x1) = (0.9, 0.6, 1.1);
        let phi = |s: f64| cx(s * s, 0.0);
        let spec = F3Integral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            lam2: cx(0.0, 0.0),
            xi1: cx(x1, 0.0),
            xi2: cx(0.4, 0.0),
            lo: 0.55,
            phi: &phi,
        };
        let r = f3_unit_integral(&spec, 1e-11).unwrap();
        let rule = JacobiRule::new(80, ga - 1.0, 0.0).unwrap();
        let want = rule
            .try_integrate_on(0.55, 1.0, |s| {
                Ok(gauss_series_node(cx(la, 0.0), cx(x1, 0.0), cx(ga, 0.0), 1.0 - s)?
                    * phi(s))
            })
            .unwrap();
        assert!(r.converged);
        assert!((r.value - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn ladder_error_estimates_shrink_with_degree() {
        let (q, ga, la, x1) = (1.2, 0.7, 0.4, 0.9);
        let phi = move |s: f64| cx(s.powf(q), 0.0);
        let spec = KernelIntegral {
            gamma: cx(ga, 0.0),
            lam: cx(la, 0.0),
            xi1: cx(x1, 0.0),
            eta: q,
            phi: &phi,
        };
        let want = closed_form(q, ga, la, x1);
        let e20 = (kernel_unit_integral_fixed(&spec, 20).unwrap().re - want).abs();
        let e40 = (kernel_unit_integral_fixed(&spec, 40).unwrap().re - want).abs();
        assert!(e40 * 4.0 <= e20.max(1e-14), "e20 = {e20:.3e}, e40 = {e40:.3e}");
    }
}
