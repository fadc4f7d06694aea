//! Appell F3 double series, summed by anti-diagonals.
//!
//! ```text
//! F3(a, a′, b, b′; c; w, z) = Σ_{m,n≥0} (a)_m (a′)_n (b)_m (b′)_n
//!                                       / ((c)_{m+n} m! n!) · w^m z^n
//! ```
//!
//! Grouping the sum by diagonals s = m + n turns it into a single series
//! whose tail can be monitored with the shared stop rule. Raw row/column
//! factors such as (a)_m (b)_m w^m overflow long before the diagonal sums
//! do, so the evaluator stores the *normalized* one-dimensional arrays
//!
//! ```text
//! Ã_m = (a)_m (b)_m w^m / ((c)_m m!),   B̃_n = (a′)_n (b′)_n z^n / ((c)_n n!)
//! ```
//!
//! whose term ratios tend to w and z (hence stay bounded), and restores
//! the true coupling through the correction
//!
//! ```text
//! R(m, n) = (c)_m (c)_n / (c)_{m+n},
//! R(0, s) = 1,   R(m+1, n−1) = R(m, n) · (c + m)/(c + n − 1),
//! ```
//!
//! which is O(1) per step along a diagonal and bounded for admissible c.

use super::{KahanSum, SeriesResult, TailRule, K_MAX_DEFAULT};
use crate::error::{Error, Result};
use crate::gamma::nearest_pole;
use num_complex::Complex64;

/// Sums diagonal s = m + n given normalized arrays of length ≥ s + 1.
fn diagonal_sum(s: usize, a_row: &[Complex64], b_row: &[Complex64], c: Complex64) -> Complex64 {
    let mut r = Complex64::new(1.0, 0.0);
    let mut diag = KahanSum::new();
    for m in 0..=s {
        let n = s - m;
        diag.add(a_row[m] * b_row[n] * r);
        if n > 0 {
            r *= (c + m as f64) / (c + (n as f64 - 1.0));
        }
    }
    diag.value()
}

/// Evaluates F3(a, a2, b, b2; c; w, z) for |w| < 1, |z| < 1.
///
/// `terms_used` counts anti-diagonals, i.e. the truncation order in
/// m + n, not individual lattice terms.
#[allow(clippy::too_many_arguments)]
pub fn appell_f3(
    a: Complex64,
    a2: Complex64,
    b: Complex64,
    b2: Complex64,
    c: Complex64,
    w: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult> {
    if nearest_pole(c).is_some() {
        return Err(Error::Pole {
            context: "appell_f3 lower parameter",
            z: c,
        });
    }
    if w.norm() >= 1.0 || z.norm() >= 1.0 {
        return Err(Error::Divergence {
            context: "appell_f3",
            detail: format!(
                "requires |w| < 1 and |z| < 1, got |w| = {}, |z| = {}",
                w.norm(),
                z.norm()
            ),
        });
    }

    let mut a_row = vec![Complex64::new(1.0, 0.0)];
    let mut b_row = vec![Complex64::new(1.0, 0.0)];
    let extend = |a_row: &mut Vec<Complex64>, b_row: &mut Vec<Complex64>| {
        let m = (a_row.len() - 1) as f64;
        let last_a = *a_row.last().expect("non-empty");
        let last_b = *b_row.last().expect("non-empty");
        a_row.push(last_a * (a + m) * (b + m) / ((c + m) * (m + 1.0)) * w);
        b_row.push(last_b * (a2 + m) * (b2 + m) / ((c + m) * (m + 1.0)) * z);
    };

    let mut acc = KahanSum::new();
    let mut rule = TailRule::new(tol);
    let mut last = 0.0f64;
    for s in 0..K_MAX_DEFAULT as usize {
        if s > 0 {
            extend(&mut a_row, &mut b_row);
        }
        let conv = diagonal_sum(s, &a_row, &b_row, c);
        acc.add(conv);
        let mag = conv.norm();
        if rule.observe(mag, acc.value().norm()) {
            extend(&mut a_row, &mut b_row);
            let omitted = diagonal_sum(s + 1, &a_row, &b_row, c).norm();
            return Ok(rule.finish(acc.value(), s + 1, omitted, mag));
        }
        last = mag;
    }
    Err(Error::NonConvergence {
        context: "appell_f3",
        estimate: last / acc.value().norm().max(f64::MIN_POSITIVE),
        requested: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;
    use crate::series::gauss_2f1;

    /// Rectangular reference sum over m, n ≤ cap using per-term
    /// recurrences (no raw Pochhammer products, so no overflow).
    #[allow(clippy::too_many_arguments)]
    fn rectangular(
        a: Complex64,
        a2: Complex64,
        b: Complex64,
        b2: Complex64,
        c: Complex64,
        w: Complex64,
        z: Complex64,
        cap: usize,
    ) -> Complex64 {
        let mut acc = KahanSum::new();
        let mut row_start = cx(1.0, 0.0);
        for m in 0..=cap {
            let mf = m as f64;
            let mut t = row_start;
            for n in 0..=cap {
                let nf = n as f64;
                acc.add(t);
                t *= (a2 + nf) * (b2 + nf) / ((c + mf + nf) * (nf + 1.0)) * z;
            }
            row_start *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * w;
        }
        acc.value()
    }

    #[test]
    fn matches_rectangular_oracle() {
        let (a, a2) = (cx(0.2, 0.0), cx(0.4, 0.0));
        let (b, b2) = (cx(0.6, 0.0), cx(0.8, 0.0));
        let c = cx(1.5, 0.0);
        let (w, z) = (cx(0.3, 0.0), cx(0.2, 0.0));
        let want = rectangular(a, a2, b, b2, c, w, z, 200);
        let got = appell_f3(a, a2, b, b2, c, w, z, 1e-14).unwrap();
        assert!((got.value - want).norm() < 1e-13 * want.norm());
        assert!(got.converged);
    }

    #[test]
    fn matches_rectangular_oracle_complex() {
        let (a, a2) = (cx(0.9, 0.3), cx(-0.4, 0.2));
        let (b, b2) = (cx(1.6, -0.5), cx(0.8, 0.1));
        let c = cx(1.1, 0.4);
        let (w, z) = (cx(0.35, 0.2), cx(-0.3, 0.25));
        let want = rectangular(a, a2, b, b2, c, w, z, 300);
        let got = appell_f3(a, a2, b, b2, c, w, z, 1e-14).unwrap();
        assert!((got.value - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn collapses_to_gauss_when_a2_vanishes() {
        // a2 = 0 kills every n > 0 term, leaving 2F1(a, b; c; w).
        let (a, b, c) = (cx(0.7, 0.0), cx(1.2, 0.0), cx(2.3, 0.0));
        let w = 0.45;
        let got = appell_f3(
            a,
            cx(0.0, 0.0),
            b,
            cx(1.9, 0.0),
            c,
            cx(w, 0.0),
            cx(0.6, 0.0),
            1e-13,
        )
        .unwrap();
        let want = gauss_2f1(a, b, c, w).unwrap();
        assert!((got.value - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn rejects_unit_disc_boundary() {
        let p = cx(0.5, 0.0);
        assert!(matches!(
            appell_f3(p, p, p, p, cx(1.5, 0.0), cx(1.0, 0.0), cx(0.2, 0.0), 1e-10),
            Err(Error::Divergence { .. })
        ));
    }

    #[test]
    fn rejects_pole_in_c() {
        let p = cx(0.5, 0.0);
        assert!(matches!(
            appell_f3(p, p, p, p, cx(-2.0, 0.0), cx(0.2, 0.0), cx(0.2, 0.0), 1e-10),
            Err(Error::Pole { .. })
        ));
    }
}
