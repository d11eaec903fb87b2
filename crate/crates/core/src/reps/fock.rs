use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{RepError, UPoly};
use crate::scalar::Scalar;
use crate::weyl::{Algebra, Letter, NormalForm, WeylError};

/// Diagonal Fock module: `a|n⟩ = s_n|n-1⟩`, `b|n⟩ = |n+1⟩`, `a|0⟩ = 0`,
/// truncated at level `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockRep {
    /// `s_1, …, s_L`.
    seq: Vec<Scalar>,
}

impl FockRep {
    pub fn new(seq: Vec<Scalar>) -> Self {
        FockRep { seq }
    }

    /// `s_n = ρ·{n}_σ`, the module of `ab - σ·ba = ρ`.
    pub fn hq(sigma: &Scalar, rho: &Scalar, level: usize) -> Self {
        FockRep { seq: (1..=level as u32).map(|n| rho * &Scalar::qnum_in(sigma, n)).collect() }
    }

    /// The preimage chain of an affine `f` starting from `s_0 = 0`: the
    /// sequence with `s_n = f(s_(n+1))`, i.e. realizing `ba = f(ab)`.
    pub fn affine(f: &UPoly, level: usize) -> Result<Self, RepError> {
        match f.degree() {
            Some(1) => {}
            Some(d) => return Err(RepError::NotAffine(d)),
            None => return Err(RepError::NotAffine(0)),
        }
        let (c, slope) = (f.coeff(0), f.coeff(1));
        let inv = slope.inv().map_err(|_| RepError::NotInvertible(slope.to_string()))?;
        let mut seq = Vec::with_capacity(level);
        let mut s = Scalar::zero();
        for _ in 0..level {
            s = &(&s - &c) * &inv;
            seq.push(s.clone());
        }
        Ok(FockRep { seq })
    }

    pub fn level(&self) -> usize {
        self.seq.len()
    }

    /// `s_n`, with `s_0 = 0`.
    pub fn s(&self, n: usize) -> Scalar {
        if n == 0 {
            Scalar::zero()
        } else {
            self.seq[n - 1].clone()
        }
    }

    pub fn seq(&self) -> &[Scalar] {
        &self.seq
    }

    /// A word applied to `|n⟩`: `(c, m)` with `w|n⟩ = c|m⟩`, `None` past the truncation.
    pub fn apply_word(&self, word: &[Letter], n: usize) -> Result<Option<(Scalar, usize)>, RepError> {
        let mut c = Scalar::one();
        let mut at = n;
        for &l in word.iter().rev() {
            match l {
                Letter::B => {
                    at += 1;
                    if at > self.level() {
                        return Ok(None);
                    }
                }
                Letter::A => {
                    if at == 0 {
                        return Ok(Some((Scalar::zero(), 0)));
                    }
                    c = &c * &self.s(at);
                    at -= 1;
                }
                Letter::N => return Err(RepError::HasN),
            }
        }
        Ok(Some((c, at)))
    }
}

/// `s_n - f(s_(n+1))` for `n = 0, …, L-1`; all zero iff the sequence
/// realizes `ba = f(ab)` on the truncation.
pub fn sequence_residual(f: &UPoly, rep: &FockRep) -> Vec<Scalar> {
    (0..rep.level()).map(|n| &rep.s(n) - &f.eval(&rep.s(n + 1))).collect()
}

/// Basis indices whose matrix columns are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub n_safe: usize,
}

impl Window {
    pub fn for_length(level: usize, len: usize) -> Result<Self, RepError> {
        if level < len + 2 {
            return Err(RepError::TruncationTooSmall { level, len });
        }
        Ok(Window { n_safe: level - len })
    }
}

/// Noncommutative polynomial in `a, b` kept as words, without reordering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordPoly {
    terms: BTreeMap<Vec<Letter>, Scalar>,
}

impl WordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::word_with(Vec::new(), c)
    }

    pub fn word(w: &[Letter]) -> Self {
        Self::word_with(w.to_vec(), Scalar::one())
    }

    /// Parses `"abba"`-style words.
    pub fn parse(w: &str) -> Result<Self, WeylError> {
        Ok(Self::word(&Letter::parse_word(w)?))
    }

    fn word_with(w: Vec<Letter>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        WordPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], &Scalar)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = WordPoly::zero();
        for (w, x) in &self.terms {
            out.push(w.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(WordPoly::scalar(Scalar::one()), |acc, _| &acc * self)
    }

    fn push(&mut self, w: Vec<Letter>, c: Scalar) {
        let sum = match self.terms.get(&w) {
            Some(x) => x + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    /// Reorders every word in `alg`.
    pub fn normal_form(&self, alg: &Arc<Algebra>) -> Result<NormalForm, WeylError> {
        let mut acc = alg.zero();
        for (w, c) in &self.terms {
            acc = acc.try_add(&alg.nf_of_word(w)?.scale(c))?;
        }
        Ok(acc)
    }
}

impl Add for &WordPoly {
    type Output = WordPoly;
    fn add(self, rhs: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.push(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WordPoly {
    type Output = WordPoly;
    fn sub(self, rhs: &WordPoly) -> WordPoly {
        self + &(-rhs)
    }
}

impl Neg for &WordPoly {
    type Output = WordPoly;
    fn neg(self) -> WordPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &WordPoly {
    type Output = WordPoly;
    fn mul(self, rhs: &WordPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (u, x) in &self.terms {
            for (v, y) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.push(w, x * y);
            }
        }
        out
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (neg, txt) = crate::weyl::scalar_text(c);
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word: Vec<String> = w.iter().map(|l| l.as_char().to_string()).collect();
            match (txt.as_str(), w.is_empty()) {
                (t, true) => f.write_str(t)?,
                ("1", false) => f.write_str(&word.join("*"))?,
                (t, false) => write!(f, "{t}*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Exact matrix `⟨m|x|n⟩` for `0 ≤ n ≤ n_safe`, `0 ≤ m ≤ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockMatrix {
    pub window: Window,
    /// `(m, n)` to nonzero entry.
    entries: BTreeMap<(usize, usize), Scalar>,
    level: usize,
}

impl FockMatrix {
    pub fn get(&self, m: usize, n: usize) -> Scalar {
        self.entries.get(&(m, n)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries `((m, n), value)`, column-major.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&k, c)| (k, c)).collect();
        v.sort_by_key(|&((m, n), _)| (n, m));
        v.into_iter()
    }

    fn add_entry(&mut self, m: usize, n: usize, c: Scalar) {
        let sum = &self.get(m, n) + &c;
        if sum.is_zero() {
            self.entries.remove(&(m, n));
        } else {
            self.entries.insert((m, n), sum);
        }
    }

    /// First entry `(m, n)` inside both windows where the matrices differ.
    pub fn first_difference(&self, other: &FockMatrix) -> Option<(usize, usize)> {
        let n_safe = self.window.n_safe.min(other.window.n_safe);
        let level = self.level.max(other.level);
        (0..=n_safe).flat_map(|n| (0..=level).map(move |m| (m, n))).find(|&(m, n)| self.get(m, n) != other.get(m, n))
    }

    /// Row-major entries over the window columns, as text.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..=self.level)
            .map(|m| {
                (0..=self.window.n_safe)
                    .map(|n| {
                        let (neg, t) = crate::weyl::scalar_text(&self.get(m, n));
                        if neg { format!("-{t}") } else { t }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Matrix of a word polynomial, each word acting letter by letter.
pub fn fock_matrix_of_words(x: &WordPoly, rep: &FockRep) -> Result<FockMatrix, RepError> {
    let window = Window::for_length(rep.level(), x.max_len())?;
    let mut out = FockMatrix { window, entries: BTreeMap::new(), level: rep.level() };
    for (w, c) in x.terms() {
        for n in 0..=window.n_safe {
            if let Some((v, m)) = rep.apply_word(w, n)? {
                if !v.is_zero() {
                    out.add_entry(m, n, c * &v);
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of a normal form, evaluated term by term as `c·b^i·a^j`.
pub fn fock_matrix(x: &NormalForm, rep: &FockRep) -> Result<FockMatrix, RepError> {
    let mut words = WordPoly::zero();
    for (mono, c) in x.terms() {
        if mono.m > 0 {
            return Err(RepError::HasN);
        }
        let mut w = vec![Letter::B; mono.i as usize];
        w.extend(std::iter::repeat_n(Letter::A, mono.j as usize));
        words = &words + &WordPoly::word_with(w, c);
    }
    fock_matrix_of_words(&words, rep)
}
