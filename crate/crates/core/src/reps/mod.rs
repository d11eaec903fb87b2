//! Concrete representations: operators on polynomials in `x` and diagonal
//! Fock modules, used to check identities independently of the normal forms.

pub mod crosscheck;
mod equations;
mod fock;
mod ops;
mod upoly;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use equations::{check_equation, check_identity_on_basis, equation, Equation, EquationCheck, RepEq};
pub use fock::{fock_matrix, fock_matrix_of_words, sequence_residual, FockMatrix, FockRep, Window, WordPoly};
pub use ops::Op;
pub use upoly::UPoly;

use crate::identities::Verdict;
use crate::scalar::Scalar;
use crate::weyl::{Algebra, Letter, NormalForm, RelationSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("the element lives in `{found}` but the representation satisfies `{expected}`")]
    ParamMismatch { expected: String, found: String },
    #[error("the generator N has no action in this representation")]
    HasN,
    #[error("truncation level {level} is too small for words of length {len}")]
    TruncationTooSmall { level: usize, len: usize },
    #[error("sequence builder needs an affine map, got degree {0}")]
    NotAffine(usize),
    #[error("affine map t -> {0}·t + c is not invertible")]
    NotInvertible(String),
    #[error("unknown representation `{0}`")]
    UnknownRep(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    /// `a = d/dx`, `b = x`
    DiffAb,
    /// `a = x`, `b = d/dx`
    DiffBa,
    /// `a = D` (Jackson), `b = x`
    Jackson,
    /// `a = (e^(δ d/dx) - 1)/δ`, `b = x·e^(-δ d/dx)`
    Delta,
}

impl RepKind {
    pub const ALL: [RepKind; 4] = [RepKind::DiffAb, RepKind::DiffBa, RepKind::Jackson, RepKind::Delta];

    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::DiffAb => "diff_ab",
            RepKind::DiffBa => "diff_ba",
            RepKind::Jackson => "jackson",
            RepKind::Delta => "delta",
        }
    }

    /// Whether the representation acts by finite-order differential operators.
    pub fn is_differential(self) -> bool {
        matches!(self, RepKind::DiffAb | RepKind::DiffBa)
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepKind {
    type Err = RepError;
    fn from_str(s: &str) -> Result<Self, RepError> {
        RepKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| RepError::UnknownRep(s.into()))
    }
}

/// Generators `a, b` realized as operators, with the `(σ, ρ)` of
/// `ab - σ·ba = ρ` that they satisfy.
#[derive(Clone, Debug)]
pub struct PolyRep {
    pub kind: RepKind,
    pub a: Op,
    pub b: Op,
    pub sigma: Scalar,
    pub rho: Scalar,
}

impl PolyRep {
    pub fn diff_ab() -> Self {
        PolyRep { kind: RepKind::DiffAb, a: Op::Deriv, b: Op::X, sigma: Scalar::one(), rho: Scalar::one() }
    }

    pub fn diff_ba() -> Self {
        PolyRep { kind: RepKind::DiffBa, a: Op::X, b: Op::Deriv, sigma: Scalar::one(), rho: Scalar::from_int(-1) }
    }

    /// `a = D`, `b = x` with symbolic `q`: `Dx - q·xD = 1`.
    pub fn jackson() -> Self {
        PolyRep { kind: RepKind::Jackson, a: Op::Jackson(Scalar::q()), b: Op::X, sigma: Scalar::q(), rho: Scalar::one() }
    }

    /// Exponential form: `a = (e^(δ∂) - 1)/δ`, `b = x·e^(-δ∂)`.
    pub fn delta_exp() -> Self {
        let d = Scalar::delta();
        let inv = d.inv().expect("nonzero");
        let a = Op::Sum(vec![Op::Shift(d.clone()).scaled(inv.clone()), Op::Scalar(-inv)]);
        let b = Op::X.then(Op::Shift(-d));
        PolyRep { kind: RepKind::Delta, a, b, sigma: Scalar::one(), rho: Scalar::one() }
    }

    /// Finite-difference form: `a = D+`, `b = x(1 - δ·D-)`, with
    /// `D± f = (f(x ± δ) - f(x))/(±δ)`. Equal to [`PolyRep::delta_exp`].
    pub fn delta_diff() -> Self {
        let d = Scalar::delta();
        let (plus, minus) = (finite_difference(&d), finite_difference(&-&d));
        let b = Op::X.then(Op::identity().minus(minus.scaled(d)));
        PolyRep { kind: RepKind::Delta, a: plus, b, sigma: Scalar::one(), rho: Scalar::one() }
    }

    pub fn of_kind(kind: RepKind) -> Self {
        match kind {
            RepKind::DiffAb => Self::diff_ab(),
            RepKind::DiffBa => Self::diff_ba(),
            RepKind::Jackson => Self::jackson(),
            RepKind::Delta => Self::delta_exp(),
        }
    }

    /// The relation this representation satisfies.
    pub fn relation(&self) -> RelationSpec {
        RelationSpec::hq_with(self.sigma.clone(), self.rho.clone())
    }

    pub fn algebra(&self) -> std::sync::Arc<Algebra> {
        Algebra::shared(&self.relation())
    }

    pub fn generator(&self, l: Letter) -> Result<&Op, RepError> {
        match l {
            Letter::A => Ok(&self.a),
            Letter::B => Ok(&self.b),
            Letter::N => Err(RepError::HasN),
        }
    }

    /// Applies one generator.
    pub fn apply(&self, l: Letter, f: &UPoly) -> Result<UPoly, RepError> {
        Ok(self.generator(l)?.apply(f))
    }

    /// Applies a word letter by letter, rightmost letter first.
    pub fn apply_word(&self, word: &[Letter], f: &UPoly) -> Result<UPoly, RepError> {
        let mut acc = f.clone();
        for &l in word.iter().rev() {
            acc = self.apply(l, &acc)?;
        }
        Ok(acc)
    }

    /// The operator of a normal form: `Σ c·b^i·a^j`.
    pub fn realize(&self, x: &NormalForm) -> Result<Op, RepError> {
        if x.relation() != &self.relation() {
            return Err(RepError::ParamMismatch { expected: self.relation().to_string(), found: x.relation().to_string() });
        }
        let mut terms = Vec::new();
        for (mono, c) in x.terms() {
            if mono.m > 0 {
                return Err(RepError::HasN);
            }
            terms.push(Op::Product(vec![Op::Scalar(c), self.b.clone().pow(mono.i), self.a.clone().pow(mono.j)]));
        }
        Ok(Op::Sum(terms))
    }

    /// Default number of basis vectors for an operator of `m` letters.
    pub fn basis_bound(&self, m: usize) -> usize {
        if self.kind.is_differential() {
            m + 2
        } else {
            2 * m + 4
        }
    }
}

fn finite_difference(h: &Scalar) -> Op {
    let inv = h.inv().expect("nonzero step");
    Op::Sum(vec![Op::Shift(h.clone()).scaled(inv.clone()), Op::Scalar(-inv)])
}

/// First basis index where two operators differ, with the difference.
pub fn compare_on_basis(x: &Op, y: &Op, k_max: usize) -> Option<(usize, UPoly)> {
    (0..=k_max).find_map(|k| {
        let f = UPoly::monomial(k, Scalar::one());
        let d = &x.apply(&f) - &y.apply(&f);
        (!d.is_zero()).then_some((k, d))
    })
}

fn basis_verdict(diff: Option<(usize, UPoly)>, start: Instant) -> Verdict {
    match diff {
        None => Verdict::from_text(true, "0".into(), start.elapsed()),
        Some((k, d)) => Verdict::from_text(false, format!("x^{k} -> {d}"), start.elapsed()),
    }
}

/// `(ab - σ·ba - ρ)·x^k = 0` for `0 ≤ k ≤ k_max`.
pub fn rep_relation_check(rep: &PolyRep, k_max: usize) -> Verdict {
    let start = Instant::now();
    let lhs = Op::Sum(vec![
        rep.a.clone().then(rep.b.clone()),
        rep.b.clone().then(rep.a.clone()).scaled(-&rep.sigma),
        Op::Scalar(-&rep.rho),
    ]);
    basis_verdict(compare_on_basis(&lhs, &Op::constant(0), k_max), start)
}

/// The normal form of `word`, realized, against letter-by-letter application.
pub fn morphism_check(word: &[Letter], rep: &PolyRep, k_max: usize) -> Result<Verdict, RepError> {
    let start = Instant::now();
    let alg = rep.algebra();
    let nf = alg.nf_of_word(word).map_err(|_| RepError::HasN)?;
    let realized = rep.realize(&nf)?;
    for k in 0..=k_max {
        let f = UPoly::monomial(k, Scalar::one());
        let d = &realized.apply(&f) - &rep.apply_word(word, &f)?;
        if !d.is_zero() {
            return Ok(Verdict::from_text(false, format!("x^{k} -> {d}"), start.elapsed()));
        }
    }
    Ok(Verdict::from_text(true, "0".into(), start.elapsed()))
}
