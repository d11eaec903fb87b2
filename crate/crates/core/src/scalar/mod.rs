//! Exact coefficient arithmetic.
//!
//! A [`Scalar`] is a reduced quotient of two [`MPoly`]s in the
//! indeterminates `p, q, A, δ`, where `A` stands for `q^α` and only `q` may
//! appear with negative exponents. Normalization makes equality structural:
//! numerator and denominator share no nontrivial factor, the denominator is
//! free of `q` factors and its leading coefficient is `+1`.

mod gcd;
mod mpoly;
mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use gcd::gcd;
pub use mpoly::{Exp, MPoly, Var};
pub(crate) use mpoly::write_monomial;
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes after substitution")]
    ZeroDenominator,
    #[error("cannot bind q while A (= q^alpha) stays symbolic; bind A as well")]
    UnboundDependent,
}

/// Partial assignment of values to the indeterminates.
pub type Bindings = BTreeMap<Var, Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { num: MPoly::constant(r), den: MPoly::one() }
    }

    pub fn var(v: Var) -> Self {
        Scalar { num: MPoly::var(v), den: MPoly::one() }
    }

    pub fn p() -> Self {
        Self::var(Var::P)
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn alpha_power() -> Self {
        Self::var(Var::A)
    }

    pub fn delta() -> Self {
        Self::var(Var::Delta)
    }

    /// Polynomial scalar (denominator 1).
    pub fn from_poly(num: MPoly) -> Self {
        Scalar { num, den: MPoly::one() }
    }

    /// Reduced quotient `num / den`.
    pub fn from_fraction(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        normalize(num, den)
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert (error on zero).
    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        if self.den.is_one() {
            return Ok(Scalar { num: self.num.pow(e), den: MPoly::one() });
        }
        // coprime numerator and denominator stay coprime under powers
        Ok(from_coprime(self.num.pow(e), self.den.pow(e)))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i32) -> Self {
        Scalar { num: MPoly::monomial(Exp::of(Var::Q, e), Rational::one()), den: MPoly::one() }
    }

    /// Exact substitution. `A` is bound first so a value like `A := q^3` is
    /// itself subject to the binding of `q`.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self, ScalarError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        if bindings.contains_key(&Var::Q) && !bindings.contains_key(&Var::A) && self.contains_var(Var::A) {
            return Err(ScalarError::UnboundDependent);
        }
        let mut current = self.clone();
        if let Some(a) = bindings.get(&Var::A) {
            let mut only_a = Bindings::new();
            only_a.insert(Var::A, a.clone());
            current = current.substitute_simultaneous(&only_a)?;
        }
        let rest: Bindings = bindings.iter().filter(|(v, _)| **v != Var::A).map(|(v, s)| (*v, s.clone())).collect();
        if rest.is_empty() {
            return Ok(current);
        }
        current.substitute_simultaneous(&rest)
    }

    fn substitute_simultaneous(&self, bindings: &Bindings) -> Result<Self, ScalarError> {
        let num = eval_mpoly(&self.num, bindings)?;
        let den = eval_mpoly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        num.checked_div(&den).map_err(|_| ScalarError::ZeroDenominator)
    }

    /// The q-number `{n} = 1 + q + … + q^(n-1)`, built as the explicit sum.
    pub fn qnum(n: u32) -> Self {
        Self::from_poly(MPoly::from_terms((0..n as i32).map(|k| (Exp::of(Var::Q, k), Rational::one()))))
    }

    /// `{n}_t = 1 + t + … + t^(n-1)` for an arbitrary base `t`.
    pub fn qnum_in(base: &Scalar, n: u32) -> Self {
        let mut acc = Scalar::zero();
        let mut pw = Scalar::one();
        for _ in 0..n {
            acc = &acc + &pw;
            pw = &pw * base;
        }
        acc
    }

    /// `{α + shift} = (1 - q^shift·A)/(1 - q)` with `A = q^α`.
    pub fn qnum_alpha(shift: i32) -> Self {
        let num = &MPoly::one() - &MPoly::monomial(Exp([0, shift, 1, 0]), Rational::one());
        let den = &MPoly::one() - &MPoly::var(Var::Q);
        normalize(num, den).expect("1 - q is nonzero")
    }

    /// `{2α + 2} = (1 - q^2·A^2)/(1 - q)`.
    pub fn qnum_two_alpha_plus_two() -> Self {
        let num = &MPoly::one() - &MPoly::monomial(Exp([0, 2, 2, 0]), Rational::one());
        let den = &MPoly::one() - &MPoly::var(Var::Q);
        normalize(num, den).expect("1 - q is nonzero")
    }

    /// Exact division probe: `Some(self / d)` when the quotient is a polynomial multiple.
    pub fn divide_out(&self, d: &MPoly) -> Option<Scalar> {
        let n = self.num.try_div(d)?;
        Some(from_coprime(n, self.den.clone()))
    }
}

fn eval_mpoly(f: &MPoly, bindings: &Bindings) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::zero();
    let mut powers: BTreeMap<(Var, i32), Scalar> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut residual = Exp::ZERO;
        let mut term = Scalar::from_rational(c.clone());
        for v in Var::ALL {
            let k = e.get(v);
            if k == 0 {
                continue;
            }
            match bindings.get(&v) {
                Some(val) => {
                    let pw = match powers.get(&(v, k)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = val.pow(k).map_err(|_| ScalarError::ZeroDenominator)?;
                            powers.insert((v, k), x.clone());
                            x
                        }
                    };
                    term = &term * &pw;
                }
                None => residual.0[v.index()] = k,
            }
        }
        if !residual.is_zero() {
            term = &term * &Scalar::from_poly(MPoly::monomial(residual, Rational::one()));
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Fixes the unit normalization of an already-coprime fraction.
fn from_coprime(mut num: MPoly, mut den: MPoly) -> Scalar {
    let s = den.min_degree_in(Var::Q);
    if s != 0 {
        let sh = Exp::of(Var::Q, -s);
        den = den.shift(&sh);
        num = num.shift(&sh);
    }
    let lc = den.leading_coeff();
    if !lc.is_one() {
        let inv = lc.recip().expect("nonzero denominator");
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    if num.is_zero() {
        den = MPoly::one();
    }
    Scalar { num, den }
}

fn normalize(num: MPoly, den: MPoly) -> Result<Scalar, ScalarError> {
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(Scalar::zero());
    }
    if den.is_monomial() {
        // only p, A, δ powers can remain in a monomial denominator
        let (de, _) = den.leading().unwrap();
        let mut keep = *de;
        keep.0[Var::Q.index()] = 0;
        let common = num.min_exponents().meet(&keep);
        let common = Exp(std::array::from_fn(|i| if i == Var::Q.index() { 0 } else { common.0[i].max(0) }));
        let num = num.shift(&Exp::ZERO.sub(&common));
        let den = den.shift(&Exp::ZERO.sub(&common));
        return Ok(from_coprime(num, den));
    }
    let g = gcd(&num, &den);
    if g.is_one() {
        return Ok(from_coprime(num, den));
    }
    let n = num.try_div(&g).expect("gcd divides numerator");
    let d = den.try_div(&g).expect("gcd divides denominator");
    Ok(from_coprime(n, d))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num + &rhs.num, den: MPoly::one() };
        }
        if self.den == rhs.den {
            return normalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        normalize(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: MPoly::one() };
        }
        // cross-cancel so the product is already reduced
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

fn cancel(n: &MPoly, d: &MPoly) -> (MPoly, MPoly) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.try_div(&g).expect("gcd divides"), d.try_div(&g).expect("gcd divides"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

/// Canonical text form `(num)/(den)`, e.g. `(q^2 + q + 1)/(1)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num.to_spaced_string(), self.den.to_spaced_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
