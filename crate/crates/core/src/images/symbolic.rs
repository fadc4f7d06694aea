//! Symbolic offset algebra for the image displays.
//!
//! Every gamma-argument offset appearing in the power-function image
//! lemmas and the assembled 4Ψ5 displays is an integer linear
//! combination of a fixed atom set (ρ, p, λ, λ′, ξ₁, ξ₂, γ, μ, 1 and
//! the series composites p/ξ_s, p/μ, (b+2)/2). Carrying offsets
//! exactly in this form lets the derived displays be compared
//! symbol-by-symbol against printed reference transcriptions, so a
//! misprinted sign or dropped term surfaces as a named discrepancy
//! instead of silent numeric drift.

use super::{LemmaId, TheoremId};
use crate::operators::MsmParams;
use crate::series::StruveParams;
use num_complex::Complex64;
use std::fmt;

/// Basis symbols for offset expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    One,
    Rho,
    P,
    Lambda,
    Lambda2,
    Xi1,
    Xi2,
    Gamma,
    Mu,
    /// p/ξ_s, the series denominator composite.
    POverXiS,
    /// p/μ, appearing only in printed misprints.
    POverMu,
    /// (b+2)/2.
    HalfB,
}

/// Number of atoms in [`Atom`].
pub const N_ATOMS: usize = 12;

/// Atoms in rendering order (constants last).
const RENDER_ORDER: [Atom; N_ATOMS] = [
    Atom::Rho,
    Atom::P,
    Atom::Gamma,
    Atom::Lambda,
    Atom::Lambda2,
    Atom::Xi1,
    Atom::Xi2,
    Atom::Mu,
    Atom::POverXiS,
    Atom::POverMu,
    Atom::HalfB,
    Atom::One,
];

impl Atom {
    fn index(self) -> usize {
        match self {
            Atom::One => 0,
            Atom::Rho => 1,
            Atom::P => 2,
            Atom::Lambda => 3,
            Atom::Lambda2 => 4,
            Atom::Xi1 => 5,
            Atom::Xi2 => 6,
            Atom::Gamma => 7,
            Atom::Mu => 8,
            Atom::POverXiS => 9,
            Atom::POverMu => 10,
            Atom::HalfB => 11,
        }
    }

    /// The fixture-file token for this atom.
    pub fn token(self) -> &'static str {
        match self {
            Atom::One => "1",
            Atom::Rho => "rho",
            Atom::P => "p",
            Atom::Lambda => "lambda",
            Atom::Lambda2 => "lambda2",
            Atom::Xi1 => "xi1",
            Atom::Xi2 => "xi2",
            Atom::Gamma => "gamma",
            Atom::Mu => "mu",
            Atom::POverXiS => "p/xi_s",
            Atom::POverMu => "p/mu",
            Atom::HalfB => "halfb",
        }
    }

    /// Parses one token (as produced by [`Atom::token`]).
    pub fn from_token(tok: &str) -> Option<Atom> {
        RENDER_ORDER.iter().copied().find(|a| a.token() == tok)
    }
}

/// An integer linear combination of [`Atom`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymExpr {
    coeffs: [i32; N_ATOMS],
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr {
            coeffs: [0; N_ATOMS],
        }
    }

    /// Builds from (coefficient, atom) terms.
    pub fn from_terms(terms: &[(i32, Atom)]) -> Self {
        let mut e = SymExpr::zero();
        for &(c, a) in terms {
            e.coeffs[a.index()] += c;
        }
        e
    }

    pub fn coeff(&self, a: Atom) -> i32 {
        self.coeffs[a.index()]
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        let mut out = *self;
        for i in 0..N_ATOMS {
            out.coeffs[i] += other.coeffs[i];
        }
        out
    }

    pub fn scaled(&self, k: i32) -> SymExpr {
        let mut out = *self;
        for c in &mut out.coeffs {
            *c *= k;
        }
        out
    }

    /// Substitutes ρ ↦ ρ + p + 1 (the per-term exponent shift of the
    /// assembled series at k = 0).
    pub fn shift_rho_by_p_plus_one(&self) -> SymExpr {
        let r = self.coeff(Atom::Rho);
        let mut out = *self;
        out.coeffs[Atom::P.index()] += r;
        out.coeffs[Atom::One.index()] += r;
        out
    }

    /// Numeric value under an atom assignment.
    pub fn eval(&self, values: &AtomValues) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..N_ATOMS {
            let c = self.coeffs[i];
            if c != 0 {
                acc += (c as f64) * values.0[i];
            }
        }
        acc
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for a in RENDER_ORDER {
            let c = self.coeff(a);
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if a == Atom::One {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", a.token())?;
            } else {
                write!(f, "{mag}*{}", a.token())?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Concrete atom values (indexed like [`Atom::index`]).
pub struct AtomValues(pub [Complex64; N_ATOMS]);

impl AtomValues {
    /// Assignment for lemma expressions (series composites unset).
    pub fn for_lemma(msm: &MsmParams, rho: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut v = [zero; N_ATOMS];
        v[Atom::One.index()] = Complex64::new(1.0, 0.0);
        v[Atom::Rho.index()] = rho;
        v[Atom::Lambda.index()] = msm.lambda;
        v[Atom::Lambda2.index()] = msm.lambda2;
        v[Atom::Xi1.index()] = msm.xi1;
        v[Atom::Xi2.index()] = msm.xi2;
        v[Atom::Gamma.index()] = msm.gamma;
        AtomValues(v)
    }

    /// Full assignment for theorem expressions.
    pub fn for_theorem(msm: &MsmParams, sp: &StruveParams, rho: Complex64) -> Self {
        let mut v = Self::for_lemma(msm, rho);
        v.0[Atom::P.index()] = sp.p;
        v.0[Atom::Mu.index()] = sp.mu;
        v.0[Atom::POverXiS.index()] = sp.p / sp.xi_s;
        v.0[Atom::POverMu.index()] = sp.p / sp.mu;
        v.0[Atom::HalfB.index()] = (sp.b + 2.0) / 2.0;
        v
    }
}

/// Symbolic weight of a display pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSym {
    Two,
    One,
    Alpha,
    A,
}

impl WeightSym {
    pub fn token(self) -> &'static str {
        match self {
            WeightSym::Two => "2",
            WeightSym::One => "1",
            WeightSym::Alpha => "alpha",
            WeightSym::A => "a",
        }
    }

    pub fn from_token(tok: &str) -> Option<WeightSym> {
        [WeightSym::Two, WeightSym::One, WeightSym::Alpha, WeightSym::A]
            .into_iter()
            .find(|w| w.token() == tok)
    }

    /// Numeric weight under concrete series parameters.
    pub fn value(self, sp: &StruveParams) -> f64 {
        match self {
            WeightSym::Two => 2.0,
            WeightSym::One => 1.0,
            WeightSym::Alpha => sp.alpha,
            WeightSym::A => sp.a as f64,
        }
    }
}

impl fmt::Display for WeightSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// Argument rule of an assembled image series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgumentKind {
    /// −c·x²/4 (ascending powers of x).
    Ascending,
    /// −c/(4x²) (descending powers of x).
    Descending,
}

impl ArgumentKind {
    pub fn token(self) -> &'static str {
        match self {
            ArgumentKind::Ascending => "-c*x^2/4",
            ArgumentKind::Descending => "-c/(4*x^2)",
        }
    }

    pub fn from_token(tok: &str) -> Option<ArgumentKind> {
        [ArgumentKind::Ascending, ArgumentKind::Descending]
            .into_iter()
            .find(|k| k.token() == tok)
    }
}

impl fmt::Display for ArgumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// One lemma's gamma arguments and power exponent in symbolic form.
/// All six arguments carry ρ with coefficient +1; the exponent carries
/// ρ with coefficient `rho_sign`.
pub struct LemmaTemplate {
    pub numerators: [SymExpr; 3],
    pub denominators: [SymExpr; 3],
    pub exponent: SymExpr,
    pub rho_sign: i32,
}

/// The four lemma templates, transcribed from the printed image
/// relations (left/right integral images of t^{ρ−1} and t^{−ρ}, and
/// their differential counterparts).
pub fn lemma_template(id: LemmaId) -> LemmaTemplate {
    use Atom::{Gamma, Lambda, Lambda2, One, Rho, Xi1, Xi2};
    let e = SymExpr::from_terms;
    match id {
        LemmaId::L1 => LemmaTemplate {
            numerators: [
                e(&[(1, Rho)]),
                e(&[(1, Rho), (1, Gamma), (-1, Lambda), (-1, Lambda2), (-1, Xi1)]),
                e(&[(1, Rho), (1, Xi2), (-1, Lambda2)]),
            ],
            denominators: [
                e(&[(1, Rho), (1, Xi2)]),
                e(&[(1, Rho), (1, Gamma), (-1, Lambda), (-1, Lambda2)]),
                e(&[(1, Rho), (1, Gamma), (-1, Lambda2), (-1, Xi1)]),
            ],
            exponent: e(&[(1, Rho), (-1, Lambda), (-1, Lambda2), (1, Gamma), (-1, One)]),
            rho_sign: 1,
        },
        LemmaId::L2 => LemmaTemplate {
            numerators: [
                e(&[(-1, Xi1), (1, Rho)]),
                e(&[(1, Lambda), (1, Lambda2), (-1, Gamma), (1, Rho)]),
                e(&[(1, Lambda), (1, Xi2), (-1, Gamma), (1, Rho)]),
            ],
            denominators: [
                e(&[(1, Rho)]),
                e(&[(1, Lambda), (-1, Xi1), (1, Rho)]),
                e(&[(1, Lambda), (1, Lambda2), (1, Xi2), (-1, Gamma), (1, Rho)]),
            ],
            exponent: e(&[(-1, Lambda), (-1, Lambda2), (1, Gamma), (-1, Rho)]),
            rho_sign: -1,
        },
        LemmaId::D1 => LemmaTemplate {
            numerators: [
                e(&[(1, Rho)]),
                e(&[(-1, Xi1), (1, Lambda), (1, Rho)]),
                e(&[(1, Lambda), (1, Lambda2), (1, Xi2), (-1, Gamma), (1, Rho)]),
            ],
            denominators: [
                e(&[(-1, Xi1), (1, Rho)]),
                e(&[(1, Lambda), (1, Lambda2), (-1, Gamma), (1, Rho)]),
                e(&[(1, Lambda), (1, Xi2), (-1, Gamma), (1, Rho)]),
            ],
            exponent: e(&[(1, Lambda), (1, Lambda2), (-1, Gamma), (1, Rho), (-1, One)]),
            rho_sign: 1,
        },
        LemmaId::D2 => LemmaTemplate {
            numerators: [
                e(&[(1, Xi2), (1, Rho)]),
                e(&[(-1, Lambda), (-1, Lambda2), (1, Gamma), (1, Rho)]),
                e(&[(-1, Lambda2), (-1, Xi1), (1, Gamma), (1, Rho)]),
            ],
            denominators: [
                e(&[(1, Rho)]),
                e(&[(-1, Lambda2), (1, Xi2), (1, Rho)]),
                e(&[(-1, Lambda), (-1, Lambda2), (-1, Xi1), (1, Gamma), (1, Rho)]),
            ],
            exponent: e(&[(1, Lambda), (1, Lambda2), (-1, Gamma), (-1, Rho)]),
            rho_sign: -1,
        },
    }
}

/// A fully assembled symbolic 4Ψ5 display.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicImage {
    pub theorem: TheoremId,
    pub upper: Vec<(SymExpr, WeightSym)>,
    pub lower: Vec<(SymExpr, WeightSym)>,
    pub prefactor_exponent: SymExpr,
    pub argument: ArgumentKind,
}

/// Compiles a theorem's symbolic display from its lemma template: the
/// per-term exponent shift ρ ↦ ρ+p+1 in every gamma argument (weight 2
/// from the +2k ascent of the series exponents), the (1,1) pair that
/// cancels the series k!, the two series denominator pairs, and the
/// argument direction read off the lemma's exponent sign.
pub fn symbolic_display(theorem: TheoremId) -> SymbolicImage {
    let tmpl = lemma_template(theorem.lemma());
    let shifted = |x: &SymExpr| (x.shift_rho_by_p_plus_one(), WeightSym::Two);
    let mut upper: Vec<(SymExpr, WeightSym)> = tmpl.numerators.iter().map(shifted).collect();
    upper.push((SymExpr::from_terms(&[(1, Atom::One)]), WeightSym::One));
    let mut lower: Vec<(SymExpr, WeightSym)> = tmpl.denominators.iter().map(shifted).collect();
    lower.push((SymExpr::from_terms(&[(1, Atom::Mu)]), WeightSym::Alpha));
    lower.push((
        SymExpr::from_terms(&[(1, Atom::POverXiS), (1, Atom::HalfB)]),
        WeightSym::A,
    ));
    SymbolicImage {
        theorem,
        upper,
        lower,
        prefactor_exponent: tmpl.exponent.shift_rho_by_p_plus_one(),
        argument: if tmpl.rho_sign > 0 {
            ArgumentKind::Ascending
        } else {
            ArgumentKind::Descending
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx;

    #[test]
    fn display_round_trip_tokens() {
        let e = SymExpr::from_terms(&[
            (1, Atom::Rho),
            (1, Atom::P),
            (1, Atom::One),
            (-1, Atom::Lambda2),
            (2, Atom::Gamma),
        ]);
        assert_eq!(e.to_string(), "rho+p+2*gamma-lambda2+1");
    }

    #[test]
    fn shift_rho_substitution() {
        // (γ − ρ) under ρ ↦ ρ+p+1 becomes γ − ρ − p − 1.
        let e = SymExpr::from_terms(&[(1, Atom::Gamma), (-1, Atom::Rho)]);
        let s = e.shift_rho_by_p_plus_one();
        assert_eq!(s.coeff(Atom::P), -1);
        assert_eq!(s.coeff(Atom::One), -1);
        assert_eq!(s.coeff(Atom::Rho), -1);
        assert_eq!(s.coeff(Atom::Gamma), 1);
    }

    #[test]
    fn eval_matches_hand_computation() {
        let msm = MsmParams {
            lambda: cx(0.2, 0.1),
            lambda2: cx(0.4, 0.0),
            xi1: cx(0.3, -0.2),
            xi2: cx(0.1, 0.0),
            gamma: cx(1.2, 0.0),
        };
        let rho = cx(3.0, 0.5);
        let vals = AtomValues::for_lemma(&msm, rho);
        // L1 numerator 2: ρ + γ − λ − λ′ − ξ₁.
        let tmpl = lemma_template(LemmaId::L1);
        let got = tmpl.numerators[1].eval(&vals);
        let want = rho + msm.gamma - msm.lambda - msm.lambda2 - msm.xi1;
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn theorem_display_shapes() {
        for t in [TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::T4] {
            let d = symbolic_display(t);
            assert_eq!(d.upper.len(), 4);
            assert_eq!(d.lower.len(), 5);
            assert_eq!(d.upper[3].1, WeightSym::One);
            assert_eq!(d.lower[3].1, WeightSym::Alpha);
            assert_eq!(d.lower[4].1, WeightSym::A);
        }
        assert_eq!(symbolic_display(TheoremId::T1).argument, ArgumentKind::Ascending);
        assert_eq!(symbolic_display(TheoremId::T2).argument, ArgumentKind::Descending);
        assert_eq!(symbolic_display(TheoremId::T3).argument, ArgumentKind::Ascending);
        assert_eq!(symbolic_display(TheoremId::T4).argument, ArgumentKind::Descending);
    }

    #[test]
    fn t1_display_offsets() {
        let d = symbolic_display(TheoremId::T1);
        assert_eq!(d.upper[0].0.to_string(), "rho+p+1");
        assert_eq!(
            d.upper[1].0.to_string(),
            "rho+p+gamma-lambda-lambda2-xi1+1"
        );
        assert_eq!(d.lower[4].0.to_string(), "p/xi_s+halfb");
        assert_eq!(d.prefactor_exponent.to_string(), "rho+p+gamma-lambda-lambda2");
    }
}
