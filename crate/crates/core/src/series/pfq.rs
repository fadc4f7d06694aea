//! The generalized hypergeometric series pFq and a Gauss 2F1 evaluator
//! tuned for the operator kernels.
//!
//! pFq uses the classical term recurrence
//! t_{n+1} = t_n · Π (a_j + n) / Π (b_j + n) · z/(n+1),
//! which terminates exactly when an upper parameter is a non-positive
//! integer. 2F1 keeps its term ratio ≤ 1/2 by switching to the
//! connection formula at w > 1/2:
//!
//! ```text
//! 2F1(a,b;c;w) = C1 · 2F1(a,b;a+b−c+1;1−w)
//!              + C2 · (1−w)^{c−a−b} · 2F1(c−a,c−b;c−a−b+1;1−w)
//! ```
//!
//! with C1 = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) and
//! C2 = Γ(c)Γ(a+b−c)/(Γ(a)Γ(b)). The formula degenerates when c−a−b is
//! an integer (logarithmic case); within [`DIRECT_FALLBACK_MAX`] the
//! evaluator then falls back to the plain series, which still converges
//! for every w < 1, and only beyond that reports the degeneracy.

use super::{KahanSum, SeriesResult, TailRule, K_MAX_DEFAULT};
use crate::error::{Error, Result};
use crate::gamma::{gamma_ratio, nearest_pole, GammaRatioBundle};
use num_complex::Complex64;

/// Largest w for which the degenerate-connection fallback to the direct
/// series is accepted (≈ 700 terms at machine precision).
const DIRECT_FALLBACK_MAX: f64 = 0.97;

/// Evaluates pFq(a; b; z).
pub fn hypergeometric_pfq(
    a: &[Complex64],
    b: &[Complex64],
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    for &bj in b {
        if nearest_pole(bj).is_some() {
            return Err(Error::Pole {
                context: "hypergeometric_pfq lower parameter",
                z: bj,
            });
        }
    }
    if z.norm() > 0.0 {
        if a.len() > b.len() + 1 {
            return Err(Error::Divergence {
                context: "hypergeometric_pfq",
                detail: format!("p = {} > q + 1 = {}", a.len(), b.len() + 1),
            });
        }
        if a.len() == b.len() + 1 && z.norm() >= 1.0 {
            return Err(Error::Divergence {
                context: "hypergeometric_pfq",
                detail: format!("p = q + 1 requires |z| < 1, got {}", z.norm()),
            });
        }
    }

    let mut acc = KahanSum::new();
    let mut rule = TailRule::new(tol);
    let mut t = Complex64::new(1.0, 0.0);
    for n in 0..K_MAX_DEFAULT {
        acc.add(t);
        let nf = n as f64;
        let mut next = t * z / (nf + 1.0);
        for &aj in a {
            next *= aj + nf;
        }
        for &bj in b {
            next /= bj + nf;
        }
        let mag = t.norm();
        if next.norm() == 0.0 {
            // Terminating (polynomial) case or z = 0: the sum is exact.
            return Ok(SeriesResult {
                value: acc.value(),
                terms_used: n + 1,
                truncation_estimate: 0.0,
                converged: true,
            });
        }
        if rule.observe(mag, acc.value().norm()) {
            return Ok(rule.finish(acc.value(), n + 1, next.norm(), mag));
        }
        t = next;
    }
    Err(Error::NonConvergence {
        context: "hypergeometric_pfq",
        estimate: t.norm(),
        requested: tol,
    })
}

/// True when z is within `tol` of some integer (any sign).
fn near_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// Direct Gauss series with a fixed machine-precision target.
fn gauss_series(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    hypergeometric_pfq(&[a, b], &[c], Complex64::new(w, 0.0), 1e-15).map(|r| r.value)
}

/// Evaluates 2F1(a, b; c; w) for real w ∈ [0, 1).
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    if nearest_pole(c).is_some() {
        return Err(Error::Pole {
            context: "gauss_2f1 lower parameter",
            z: c,
        });
    }
    if !(0.0..1.0).contains(&w) {
        return Err(Error::domain(
            "gauss_2f1",
            format!("argument w = {w} outside [0, 1)"),
        ));
    }
    // Terminating series: a or b a non-positive integer. Converges for
    // any w since it is a polynomial.
    if nearest_pole(a).is_some() || nearest_pole(b).is_some() {
        return gauss_series(a, b, c, w);
    }
    if w <= 0.5 {
        return gauss_series(a, b, c, w);
    }
    let s = c - a - b;
    if near_integer(s, 1e-9) {
        if w <= DIRECT_FALLBACK_MAX {
            return gauss_series(a, b, c, w);
        }
        return Err(Error::Transform {
            context: "gauss_2f1",
            detail: format!("integer c−a−b = {s} degenerates the connection formula"),
        });
    }
    let c1 = gamma_ratio(&GammaRatioBundle::new(vec![c, s], vec![c - a, c - b]))?;
    let c2 = gamma_ratio(&GammaRatioBundle::new(vec![c, -s], vec![a, b]))?;
    let u = 1.0 - w;
    let f1 = gauss_series(a, b, -s + 1.0, u)?;
    let f2 = gauss_series(c - a, c - b, s + 1.0, u)?;
    let pow = (s * (u.ln())).exp();
    Ok(c1 * f1 + c2 * pow * f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;
    use std::f64::consts::E;

    fn rel(got: Complex64, want: Complex64) -> f64 {
        (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn exp_reduction() {
        let r = hypergeometric_pfq(&[], &[], cx(1.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - E).abs() < 1e-14);
    }

    #[test]
    fn log_identity_2f1() {
        // 2F1(1,1;2;z) = −ln(1−z)/z.
        let r = hypergeometric_pfq(
            &[cx(1.0, 0.0), cx(1.0, 0.0)],
            &[cx(2.0, 0.0)],
            cx(0.5, 0.0),
            1e-14,
        )
        .unwrap();
        assert!((r.value.re - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn lower_pole_rejected() {
        assert!(matches!(
            hypergeometric_pfq(&[cx(1.0, 0.0)], &[cx(-1.0, 0.0)], cx(0.1, 0.0), 1e-10),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn domain_gates() {
        // p > q + 1 diverges for z ≠ 0.
        assert!(hypergeometric_pfq(
            &[cx(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)],
            &[cx(2.0, 0.0)],
            cx(0.1, 0.0),
            1e-10
        )
        .is_err());
        // p = q + 1 at |z| ≥ 1 diverges.
        assert!(hypergeometric_pfq(
            &[cx(0.3, 0.0), cx(0.7, 0.0)],
            &[cx(1.1, 0.0)],
            cx(1.0, 0.0),
            1e-10
        )
        .is_err());
    }

    #[test]
    fn terminating_polynomial() {
        // 2F1(−3, b; c; z) is a cubic; check against Horner.
        let (b, c, z) = (cx(0.7, 0.0), cx(1.9, 0.0), cx(0.8, 0.0));
        let r = hypergeometric_pfq(&[cx(-3.0, 0.0), b], &[c], z, 1e-14).unwrap();
        let mut want = cx(0.0, 0.0);
        let mut t = cx(1.0, 0.0);
        for n in 0..4 {
            want += t;
            let nf = n as f64;
            t *= (cx(-3.0, 0.0) + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        }
        assert!(rel(r.value, want) < 1e-15);
        assert_eq!(r.truncation_estimate, 0.0);
    }

    #[test]
    fn gauss_2f1_at_zero_is_one() {
        let v = gauss_2f1(cx(0.4, 0.1), cx(1.3, 0.0), cx(2.2, 0.0), 0.0).unwrap();
        assert!(rel(v, cx(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn gauss_2f1_log_closed_form_far_argument() {
        // 2F1(1,1;2;0.9) = −ln(0.1)/0.9; c−a−b = 0, so this exercises the
        // degenerate-connection fallback.
        let v = gauss_2f1(cx(1.0, 0.0), cx(1.0, 0.0), cx(2.0, 0.0), 0.9).unwrap();
        let want = -(0.1f64).ln() / 0.9;
        assert!((v.re - want).abs() < 1e-12 * want);
    }

    #[test]
    fn gauss_2f1_transform_matches_raw_series() {
        // Deep-argument value vs. the raw series summed to high depth.
        let (a, b, c) = (cx(0.5, 0.0), cx(1.5, 0.0), cx(2.5, 0.0));
        let v = gauss_2f1(a, b, c, 0.95).unwrap();
        let mut acc = KahanSum::new();
        let mut t = cx(1.0, 0.0);
        for n in 0..100_000u32 {
            acc.add(t);
            let nf = n as f64;
            t *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * 0.95;
            if t.norm() < 1e-20 * acc.value().norm() {
                break;
            }
        }
        assert!(rel(v, acc.value()) < 1e-12);
    }

    #[test]
    fn gauss_2f1_degenerate_far_out_reports_transform() {
        let e = gauss_2f1(cx(1.0, 0.0), cx(1.0, 0.0), cx(2.0, 0.0), 0.99);
        assert!(matches!(e, Err(Error::Transform { .. })));
    }
}
