//! Sparse polynomials in the fixed indeterminates `p, q, A, δ`.
//!
//! Only `q` may carry a negative exponent. Terms are kept sorted in
//! descending graded-lexicographic order (total degree first, then the
//! exponents of `δ`, `A`, `q`, `p` in that order), so the term vector of a
//! polynomial is canonical and the first term is the leading term.

use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::fmt::{self, Write};
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// One of the four coefficient indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P = 0,
    Q = 1,
    A = 2,
    Delta = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::P, Var::Q, Var::A, Var::Delta];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name used for printing and parsing; `δ` is spelled `d`.
    pub fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::Q => "q",
            Var::A => "A",
            Var::Delta => "d",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "p" => Some(Var::P),
            "q" => Some(Var::Q),
            "A" => Some(Var::A),
            "d" | "δ" => Some(Var::Delta),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exp(pub [i32; 4]);

impl Exp {
    pub const ZERO: Exp = Exp([0; 4]);

    pub fn of(var: Var, e: i32) -> Exp {
        let mut x = [0; 4];
        x[var.index()] = e;
        Exp(x)
    }

    pub fn get(&self, var: Var) -> i32 {
        self.0[var.index()]
    }

    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn add(&self, o: &Exp) -> Exp {
        Exp(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Exp) -> Exp {
        Exp(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn meet(&self, o: &Exp) -> Exp {
        Exp(std::array::from_fn(|i| self.0[i].min(o.0[i])))
    }

    /// Whether `o` divides `self` as a monomial; `q` is a unit so it never blocks.
    pub fn divisible_by(&self, o: &Exp) -> bool {
        (0..4).all(|i| i == Var::Q.index() || self.0[i] >= o.0[i])
    }

    /// Whether `o` divides `self` treating every variable as ordinary (non-Laurent).
    pub fn divisible_by_strict(&self, o: &Exp) -> bool {
        (0..4).all(|i| self.0[i] >= o.0[i])
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0[3].cmp(&other.0[3]))
            .then_with(|| self.0[2].cmp(&other.0[2]))
            .then_with(|| self.0[1].cmp(&other.0[1]))
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate Laurent-in-`q` polynomial with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    // descending term order, no zero coefficients
    terms: Vec<(Exp, Rational)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exp::ZERO, c)
    }

    pub fn monomial(e: Exp, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(e, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Exp::of(v, 1), Rational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, Rational)>) -> Self {
        let mut acc: HashMap<Exp, Rational> = HashMap::default();
        for (e, c) in terms {
            match acc.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Exp, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Exp, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Exp, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by the monomial `x^e` (exponents may be negative).
    pub fn shift(&self, e: &Exp) -> Self {
        MPoly { terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect() }
    }

    /// Componentwise minimum exponent over all terms; `Exp::ZERO` for the zero polynomial.
    pub fn min_exponents(&self) -> Exp {
        let mut it = self.terms.iter();
        match it.next() {
            None => Exp::ZERO,
            Some((e0, _)) => it.fold(*e0, |m, (e, _)| m.meet(e)),
        }
    }

    pub fn min_degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(e, _)| e.get(v)).min().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(e, _)| e.get(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.first().map(|(e, _)| e.total()).unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(e, _)| e.get(v) != 0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.iter().any(|(e, _)| e.0.iter().any(|&x| x < 0))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, indexed by exponent.
    /// Requires nonnegative exponents in `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let deg = self.degree_in(v).max(0) as usize;
        let mut buckets: Vec<Vec<(Exp, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.get(v);
            debug_assert!(k >= 0);
            let mut rest = *e;
            rest.0[v.index()] = 0;
            buckets[k as usize].push((rest, c.clone()));
        }
        // each bucket inherits the descending order of the parent (ties on v removed keep order
        // except for the total-degree component, so re-sort)
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: t }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let s = Exp::of(v, k as i32);
            terms.extend(c.terms.iter().map(|(e, x)| (e.add(&s), x.clone())));
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Laurent powers of `q` are units: both operands are shifted to
    /// nonnegative `q`-exponents before the division and the quotient is
    /// shifted back.
    pub fn try_div(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()?));
        }
        let sq = self.min_degree_in(Var::Q);
        let dq = d.min_degree_in(Var::Q);
        let a = self.shift(&Exp::of(Var::Q, -sq));
        let b = d.shift(&Exp::of(Var::Q, -dq));
        let q = a.try_div_poly(&b)?;
        Some(q.shift(&Exp::of(Var::Q, sq - dq)))
    }

    /// Multivariate division with nonnegative exponents; divisibility test is exact since a
    /// single polynomial is a Gröbner basis of the ideal it generates.
    pub(crate) fn try_div_poly(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading()?.clone();
        if d.is_monomial() {
            let inv = dc.recip()?;
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !e.divisible_by_strict(&de) {
                    return None;
                }
                out.push((e.sub(&de), c * &inv));
            }
            return Some(MPoly { terms: out });
        }
        let inv = dc.recip()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Exp, Rational)> = Vec::new();
        while let Some((re, rc)) = rem.leading().cloned() {
            if !re.divisible_by_strict(&de) {
                return None;
            }
            let qe = re.sub(&de);
            let qc = &rc * &inv;
            rem = &rem - &d.shift(&qe).scale(&qc);
            quot.push((qe, qc));
        }
        quot.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Some(MPoly { terms: quot })
    }

    /// Canonical spaced rendering, e.g. `q^2 + q + 1`.
    pub fn to_spaced_string(&self) -> String {
        self.render(" + ", " - ")
    }

    /// Compact rendering used inside normal-form coefficients, e.g. `q^2+q+1`.
    pub fn to_compact_string(&self) -> String {
        self.render("+", "-")
    }

    fn render(&self, plus: &str, minus: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(minus);
            } else {
                s.push_str(plus);
            }
            write_monomial(&mut s, e, &c.abs());
        }
        s
    }
}

/// Writes `|c|·x^e` as `3/2*p*q^-1`, omitting a unit coefficient.
pub(crate) fn write_monomial(s: &mut String, e: &Exp, c: &Rational) {
    let mut first = true;
    if !c.is_one() || e.is_zero() {
        write!(s, "{c}").unwrap();
        first = false;
    }
    for v in Var::ALL {
        let k = e.get(v);
        if k == 0 {
            continue;
        }
        if !first {
            s.push('*');
        }
        first = false;
        s.push_str(v.name());
        if k != 1 {
            write!(s, "^{k}").unwrap();
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spaced_string())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self.to_spaced_string())
    }
}

fn merge(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ea, ca) = &a.terms[i];
        let (eb, cb) = &b.terms[j];
        match ea.cmp(eb) {
            Ordering::Greater => {
                out.push((*ea, ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((*eb, if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ea, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(e, c)| (*e, if negate_b { -c } else { c.clone() })));
    MPoly { terms: out }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return MPoly { terms: self.terms.iter().map(|(x, y)| (x.add(e), y * c)).collect() };
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return MPoly { terms: rhs.terms.iter().map(|(x, y)| (e.add(x), c * y)).collect() };
        }
        if let Some(out) = mul_small(self, rhs) {
            return out;
        }
        let mut acc: HashMap<Exp, Rational> = HashMap::with_capacity_and_hasher(self.terms.len() * rhs.terms.len(), Default::default());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.add(eb);
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }
}

/// Product over machine integers; `None` when a coefficient is not an
/// `i64` integer or an accumulated sum overflows.
fn mul_small(x: &MPoly, y: &MPoly) -> Option<MPoly> {
    let small = |p: &MPoly| p.terms.iter().map(|(e, c)| Some((*e, c.to_i64()?))).collect::<Option<Vec<_>>>();
    let (xs, ys) = (small(x)?, small(y)?);
    let mut acc: HashMap<Exp, i128> = HashMap::with_capacity_and_hasher(xs.len() * ys.len(), Default::default());
    for (ea, ca) in &xs {
        for (eb, cb) in &ys {
            let slot = acc.entry(ea.add(eb)).or_insert(0);
            *slot = slot.checked_add(*ca as i128 * *cb as i128)?;
        }
    }
    let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, Rational::from_int(c))).collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    Some(MPoly { terms })
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }
    fn p() -> MPoly {
        MPoly::var(Var::P)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(n.into())
    }

    #[test]
    fn graded_lex_order() {
        let f = &(&(&q() * &q()) + &q()) + &c(1);
        assert_eq!(f.to_spaced_string(), "q^2 + q + 1");
        let g = &(&p() * &q()) + &p();
        assert_eq!(g.to_compact_string(), "p*q+p");
        // A outranks q outranks p at equal total degree
        let h = &(&MPoly::var(Var::A) + &p()) + &q();
        assert_eq!(h.to_spaced_string(), "A + q + p");
    }

    #[test]
    fn exact_division() {
        let one_minus_q = &c(1) - &q();
        let one_minus_q2 = &c(1) - &(&q() * &q());
        assert_eq!(one_minus_q2.try_div(&one_minus_q).unwrap(), &c(1) + &q());
        assert!(one_minus_q.try_div(&one_minus_q2).is_none());
        let laurent = MPoly::monomial(Exp::of(Var::Q, -2), 1.into());
        assert_eq!((&laurent * &one_minus_q).try_div(&one_minus_q).unwrap(), laurent);
    }

    #[test]
    fn coefficient_views_round_trip() {
        let f = &(&(&p() * &q()) + &(&q() * &q())) + &MPoly::var(Var::A);
        let cs = f.coeffs_in(Var::Q);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_coeffs_in(Var::Q, &cs), f);
    }

    #[test]
    fn negative_rendering() {
        let f = &c(1) - &p();
        assert_eq!(f.to_spaced_string(), "-p + 1");
        let g = MPoly::monomial(Exp::of(Var::Q, -2), Rational::new(-3, 2).unwrap());
        assert_eq!(g.to_compact_string(), "-3/2*q^-2");
    }
}
