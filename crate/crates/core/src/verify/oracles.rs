//! Independent oracles for the image formulas.
//!
//! Each oracle reaches a value through a code path disjoint from the
//! assembled closed forms: term-by-term power images instead of a
//! compiled Fox-Wright spec, direct quadrature instead of gamma
//! ratios, and exact monomial differentiation instead of the
//! derivative templates. Bookkeeping mistakes (swapped offsets, wrong
//! exponent slopes, dropped signs) cannot cancel between such pairs.

use num_complex::Complex64;
use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::gamma::reciprocal_gamma;
use crate::images::{self, LemmaId, TheoremId};
use crate::operators::{
    derivative_inner_left, derivative_inner_right, derivative_order, msm_integral_left,
    msm_integral_right, Integrand, MsmParams,
};
use crate::quadrature::{real_powc, QuadratureResult};
use crate::series::{KahanSum, StruveParams, TailRule};

/// Operator targeted by [`oracle_quadrature`]: the two power-function
/// integral lemmas and the two integral theorems built on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadTarget {
    L1,
    L2,
    T1,
    T2,
}

/// Integrand family fed to [`oracle_quadrature`].
#[derive(Debug, Clone)]
pub enum IntegrandSpec {
    /// t^{ρ−1} for left (ascending) targets, t^{−ρ} for right
    /// (descending) ones.
    Monomial { rho: Complex64 },
    /// The Struve factor truncated at `k_terms` series terms:
    /// t^{ρ−1}·W_K(t) ascending, t^{−ρ}·W_K(1/t) descending. The
    /// omitted tail is folded into the quadrature error estimate.
    TruncatedStruve {
        sp: StruveParams,
        rho: Complex64,
        k_terms: usize,
    },
}

fn require_positive_x(context: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(context, format!("x must be positive, got {x}")));
    }
    Ok(())
}

/// Coefficients c_k with W(z) = Σ_k c_k z^{2k+p+1}: each is
/// (−c/4)^k 2^{−(p+1)} / (Γ(μ+αk) Γ(ν+ak)), built per term from
/// reciprocal gammas.
fn truncated_struve_coeffs(sp: &StruveParams, k_terms: usize) -> Vec<Complex64> {
    let nu = sp.denominator_offset();
    let quarter_c = -sp.c / 4.0;
    let mut scalar = (-(sp.p + 1.0) * LN_2).exp();
    let mut out = Vec::with_capacity(k_terms);
    for k in 0..k_terms {
        let kf = k as f64;
        out.push(
            scalar
                * reciprocal_gamma(sp.mu + sp.alpha * kf)
                * reciprocal_gamma(nu + f64::from(sp.a) * kf),
        );
        scalar *= quarter_c;
    }
    out
}

/// W_K(z) for real z > 0, Horner in z².
fn truncated_struve_value(coeffs: &[Complex64], p: Complex64, z: f64) -> Complex64 {
    let u = z * z;
    let mut acc = Complex64::new(0.0, 0.0);
    for &ck in coeffs.iter().rev() {
        acc = acc * u + ck;
    }
    real_powc(z, p + 1.0) * acc
}

/// Sums a theorem's image series term by term: the Struve coefficient
/// of term k times `power_image` of the underlying lemma at the
/// shifted exponent ρ̃ₖ = ρ + p + 1 + 2k, times the matching power of
/// x. Independent of `theorem_image`/`eval_image`, which compile one
/// Fox-Wright spec and run its log-domain recurrence.
pub fn oracle_termwise(
    theorem_id: TheoremId,
    msm: &MsmParams,
    sp: &StruveParams,
    rho: Complex64,
    x: f64,
    k_max: usize,
    tol: f64,
) -> Result<Complex64> {
    sp.validate()?;
    require_positive_x("oracle_termwise", x)?;
    let lemma = theorem_id.lemma();
    let rho0 = rho + sp.p + 1.0;
    if !images::validity(lemma, msm, rho0) {
        return Err(Error::validity(
            "oracle_termwise",
            format!("{lemma} validity fails at the k = 0 exponent ρ+p+1 = {rho0}"),
        ));
    }
    let nu = sp.denominator_offset();
    let quarter_c = -sp.c / 4.0;
    // Scalar factor (−c)^k 2^{−(2k+p+1)}, carried incrementally.
    let mut scalar = (-(sp.p + 1.0) * LN_2).exp();
    let mut acc = KahanSum::new();
    let mut rule = TailRule::new(tol);
    let mut last_ratio = f64::INFINITY;
    for k in 0..k_max {
        let kf = k as f64;
        let rg = reciprocal_gamma(sp.mu + sp.alpha * kf)
            * reciprocal_gamma(nu + f64::from(sp.a) * kf);
        let mut term = Complex64::new(0.0, 0.0);
        if rg.norm() > 0.0 {
            let (coeff, expo) = images::power_image(lemma, msm, rho0 + 2.0 * kf)?;
            term = scalar * rg * coeff * real_powc(x, expo);
        }
        acc.add(term);
        if rule.observe(term.norm(), acc.value().norm()) {
            return Ok(acc.value());
        }
        last_ratio = term.norm() / acc.value().norm().max(f64::MIN_POSITIVE);
        scalar *= quarter_c;
    }
    Err(Error::NonConvergence {
        context: "oracle_termwise",
        estimate: last_ratio,
        requested: tol,
    })
}

/// Evaluates a lemma or integral theorem by direct quadrature of the
/// operator on a collapsed kernel slice (λ′ ≈ 0 or ξ₂ ≈ 0).
pub fn oracle_quadrature(
    target: QuadTarget,
    msm: &MsmParams,
    f_spec: &IntegrandSpec,
    x: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    require_positive_x("oracle_quadrature", x)?;
    let ascending = matches!(target, QuadTarget::L1 | QuadTarget::T1);
    let f = match f_spec {
        IntegrandSpec::Monomial { rho } => {
            if ascending {
                Integrand::power(*rho - 1.0)
            } else {
                Integrand::power(-*rho)
            }
        }
        IntegrandSpec::TruncatedStruve { sp, rho, k_terms } => {
            sp.validate()?;
            let coeffs = truncated_struve_coeffs(sp, *k_terms);
            let p = sp.p;
            let rho = *rho;
            if ascending {
                Integrand::new(rho + p, move |t| {
                    real_powc(t, rho - 1.0) * truncated_struve_value(&coeffs, p, t)
                })
            } else {
                Integrand::new(-rho - p - 1.0, move |t| {
                    real_powc(t, -rho) * truncated_struve_value(&coeffs, p, 1.0 / t)
                })
            }
        }
    };
    let mut result = if ascending {
        msm_integral_left(msm, &f, x, tol)?
    } else {
        msm_integral_right(msm, &f, x, tol)?
    };
    if let IntegrandSpec::TruncatedStruve { sp, k_terms, .. } = f_spec {
        // The first omitted coefficient at the largest Struve argument
        // on the integration domain bounds the truncation tail
        // relative to the leading term; the series decays factorially,
        // so a factor 2 covers the geometric remainder.
        let zmax = if ascending { x } else { 1.0 / x };
        let all = truncated_struve_coeffs(sp, *k_terms + 1);
        let lead = all[0].norm().max(f64::MIN_POSITIVE);
        let omitted = all[*k_terms].norm() * zmax.powi(2 * *k_terms as i32);
        result.abs_error_estimate += 2.0 * (omitted / lead) * result.value.norm();
    }
    Ok(result)
}

/// Evaluates a fractional-derivative image analytically: the inner
/// integral's power image with the substituted parameters of the
/// derivative definition, then exact n-fold monomial differentiation
/// (d/dx)^n C x^s = C·s(s−1)⋯(s−n+1)·x^{s−n}, with the (−1)^n of the
/// right-sided operator. Agreement with `power_image(D1|D2)` is a pure
/// gamma identity (no quadrature noise).
pub fn oracle_derivative(
    target: LemmaId,
    msm: &MsmParams,
    rho: Complex64,
    x: f64,
) -> Result<Complex64> {
    require_positive_x("oracle_derivative", x)?;
    let (inner_lemma, inner) = match target {
        LemmaId::D1 => (LemmaId::L1, derivative_inner_left(msm)),
        LemmaId::D2 => (LemmaId::L2, derivative_inner_right(msm)),
        other => {
            return Err(Error::domain(
                "oracle_derivative",
                format!("target must be D1 or D2, got {other}"),
            ))
        }
    };
    if !images::validity(inner_lemma, &inner, rho) {
        return Err(Error::validity(
            "oracle_derivative",
            format!("inner {inner_lemma} validity fails at ρ = {rho}"),
        ));
    }
    let n = derivative_order(msm.gamma);
    let (coeff, s) = images::power_image(inner_lemma, &inner, rho)?;
    let mut falling = Complex64::new(1.0, 0.0);
    for j in 0..n {
        falling *= s - f64::from(j);
    }
    let sign = if target == LemmaId::D2 && n % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    Ok(sign * coeff * falling * real_powc(x, s - f64::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;
    use crate::images::{eval_image, power_image, theorem_image};

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn termwise_truncates_to_single_term_when_c_vanishes() {
        // c = 0 kills every k ≥ 1 term: the sum is
        // 2^{−(p+1)}/(Γ(μ)Γ(ν)) times the L1 image of t^{ρ+p}.
        let mut sp = StruveParams::classical(cx(0.5, 0.0));
        sp.c = cx(0.0, 0.0);
        let msm = MsmParams {
            lambda: cx(0.3, 0.1),
            lambda2: cx(-0.2, 0.0),
            xi1: cx(0.4, -0.1),
            xi2: cx(0.1, 0.0),
            gamma: cx(1.2, 0.0),
        };
        let rho = cx(1.5, 0.2);
        let x = 1.7;
        let got = oracle_termwise(TheoremId::T1, &msm, &sp, rho, x, 50, 1e-14).unwrap();
        let rho0 = rho + sp.p + 1.0;
        let (coeff, expo) = power_image(LemmaId::L1, &msm, rho0).unwrap();
        let nu = sp.denominator_offset();
        let want = (-(sp.p + 1.0) * LN_2).exp()
            * reciprocal_gamma(sp.mu)
            * reciprocal_gamma(nu)
            * coeff
            * real_powc(x, expo);
        assert!(rel(got, want) < 1e-14, "got {got}, want {want}");
    }

    #[test]
    fn termwise_matches_eval_image_on_a_fixed_draw() {
        let sp = StruveParams::classical(cx(0.5, 0.0));
        let msm = MsmParams {
            lambda: cx(0.3, 0.0),
            lambda2: cx(0.2, 0.0),
            xi1: cx(-0.1, 0.0),
            xi2: cx(0.6, 0.0),
            gamma: cx(1.1, 0.0),
        };
        let rho = cx(1.0, 0.0);
        let img = theorem_image(TheoremId::T1, &msm, &sp, rho).unwrap();
        for &x in &[0.5, 1.0, 2.0] {
            let oracle = oracle_termwise(TheoremId::T1, &msm, &sp, rho, x, 2000, 1e-13).unwrap();
            let series = eval_image(&img, x, 1e-13).unwrap().value;
            assert!(
                rel(series, oracle) < 1e-12,
                "x = {x}: series {series}, oracle {oracle}"
            );
        }
    }

    #[test]
    fn quadrature_zero_parameters_is_riemann_liouville() {
        // γ = 1, f = t^{ρ−1} with ρ = 1, x = 2: ∫₀² dt = 2.
        let msm = MsmParams::zero(cx(1.0, 0.0));
        let spec = IntegrandSpec::Monomial { rho: cx(1.0, 0.0) };
        let r = oracle_quadrature(QuadTarget::L1, &msm, &spec, 2.0, 1e-10).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9, "got {}", r.value);
    }

    #[test]
    fn quadrature_lemma_slice_matches_power_image() {
        let msm = MsmParams {
            lambda: cx(0.3, 0.0),
            lambda2: cx(0.0, 0.0),
            xi1: cx(0.2, 0.0),
            xi2: cx(0.9, 0.0),
            gamma: cx(1.5, 0.0),
        };
        let rho = cx(2.0, 0.0);
        let x = 1.3;
        let (coeff, expo) = power_image(LemmaId::L1, &msm, rho).unwrap();
        let want = coeff * real_powc(x, expo);
        let spec = IntegrandSpec::Monomial { rho };
        let r = oracle_quadrature(QuadTarget::L1, &msm, &spec, x, 1e-10).unwrap();
        assert!(rel(r.value, want) < 1e-7, "got {}, want {want}", r.value);
    }

    #[test]
    fn quadrature_truncated_struve_closes_t1() {
        // λ′ = 0 slice: the quadrature of t^{ρ−1}·W_30(t) must agree
        // with the assembled image series.
        let sp = StruveParams::classical(cx(0.5, 0.0));
        let msm = MsmParams {
            lambda: cx(0.4, 0.0),
            lambda2: cx(0.0, 0.0),
            xi1: cx(0.3, 0.0),
            xi2: cx(0.7, 0.0),
            gamma: cx(1.2, 0.0),
        };
        let rho = cx(1.4, 0.0);
        let x = 1.0;
        let img = theorem_image(TheoremId::T1, &msm, &sp, rho).unwrap();
        let want = eval_image(&img, x, 1e-13).unwrap().value;
        let spec = IntegrandSpec::TruncatedStruve {
            sp,
            rho,
            k_terms: 30,
        };
        let r = oracle_quadrature(QuadTarget::T1, &msm, &spec, x, 1e-9).unwrap();
        assert!(rel(r.value, want) < 1e-6, "got {}, want {want}", r.value);
    }

    #[test]
    fn derivative_trivial_zero_parameters() {
        // Zero parameters, γ = 0.5, ρ = 1, x = 1: D^{0.5} 1 = 1/Γ(0.5)·x^{−1/2}.
        let msm = MsmParams::zero(cx(0.5, 0.0));
        let rho = cx(1.0, 0.0);
        let got = oracle_derivative(LemmaId::D1, &msm, rho, 1.0).unwrap();
        let want = reciprocal_gamma(cx(0.5, 0.0));
        assert!(rel(got, want) < 1e-14, "got {got}, want {want}");
        let (coeff, expo) = power_image(LemmaId::D1, &msm, rho).unwrap();
        let closed = coeff * real_powc(1.0, expo);
        assert!(rel(got, closed) < 1e-14);
    }

    #[test]
    fn derivative_matches_closed_form_complex_draw() {
        let msm = MsmParams {
            lambda: cx(0.7, 0.2),
            lambda2: cx(-0.3, 0.1),
            xi1: cx(0.2, -0.2),
            xi2: cx(0.5, 0.3),
            gamma: cx(1.7, 0.4),
        };
        let rho = cx(2.3, -0.3);
        let x = 1.6;
        for (lemma, sign_side) in [(LemmaId::D1, "left"), (LemmaId::D2, "right")] {
            let got = oracle_derivative(lemma, &msm, rho, x).unwrap();
            let (coeff, expo) = power_image(lemma, &msm, rho).unwrap();
            let closed = coeff * real_powc(x, expo);
            assert!(
                rel(got, closed) < 1e-12,
                "{sign_side}: got {got}, closed {closed}"
            );
        }
    }

    #[test]
    fn derivative_rejects_integral_lemma_targets() {
        let msm = MsmParams::zero(cx(0.5, 0.0));
        assert!(oracle_derivative(LemmaId::L1, &msm, cx(1.0, 0.0), 1.0).is_err());
    }
}
