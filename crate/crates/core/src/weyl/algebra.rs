use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::npoly::NPoly;
use super::relation::RelationSpec;
use super::{Bands, Letter, NormalForm, WeylError};
use crate::scalar::Scalar;

/// A relation together with its reordering table.
///
/// `reorder(j, k)` is the normal form of `a^j·b^k`. The table is filled on
/// demand and behaves as a pure function: concurrent fills of the same key
/// compute identical values and the first insert wins.
pub struct Algebra {
    spec: RelationSpec,
    memo: Option<RwLock<HashMap<(u32, u32), Arc<Bands>>>>,
    // shifts[s] = (τ^s, {s}_τ)
    shifts: RwLock<Vec<(Scalar, Scalar)>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("spec", &self.spec).field("memo", &self.memo.is_some()).finish()
    }
}

impl Algebra {
    pub fn new(spec: RelationSpec) -> Arc<Self> {
        Self::build(spec, true)
    }

    /// Same algebra with the reordering table disabled; every product recomputes.
    pub fn without_memo(spec: RelationSpec) -> Arc<Self> {
        Self::build(spec, false)
    }

    /// The h_q algebra `ab - q·ba = p` with symbolic parameters.
    pub fn hq() -> Arc<Self> {
        Self::new(RelationSpec::hq())
    }

    /// A process-wide engine per relation, so independent callers share one
    /// reordering table.
    pub fn shared(spec: &RelationSpec) -> Arc<Self> {
        static ENGINES: OnceLock<Mutex<HashMap<RelationSpec, Arc<Algebra>>>> = OnceLock::new();
        let engines = ENGINES.get_or_init(Default::default);
        let mut map = engines.lock().unwrap();
        map.entry(spec.clone()).or_insert_with(|| Self::new(spec.clone())).clone()
    }

    fn build(spec: RelationSpec, memo: bool) -> Arc<Self> {
        Arc::new(Algebra {
            spec,
            memo: memo.then(|| RwLock::new(HashMap::new())),
            shifts: RwLock::new(vec![(Scalar::one(), Scalar::zero())]),
        })
    }

    pub fn spec(&self) -> &RelationSpec {
        &self.spec
    }

    pub fn memo_enabled(&self) -> bool {
        self.memo.is_some()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map(|m| m.read().unwrap().len()).unwrap_or(0)
    }

    pub fn zero(self: &Arc<Self>) -> NormalForm {
        NormalForm::from_bands(self.clone(), Bands::new())
    }

    pub fn one(self: &Arc<Self>) -> NormalForm {
        self.scalar(Scalar::one())
    }

    pub fn scalar(self: &Arc<Self>, c: Scalar) -> NormalForm {
        self.monomial(0, 0, 0, c)
    }

    pub fn a(self: &Arc<Self>) -> NormalForm {
        self.monomial(0, 0, 1, Scalar::one())
    }

    pub fn b(self: &Arc<Self>) -> NormalForm {
        self.monomial(1, 0, 0, Scalar::one())
    }

    pub fn n(self: &Arc<Self>) -> Result<NormalForm, WeylError> {
        if !self.spec.has_n() {
            return Err(WeylError::NWithoutExtension);
        }
        Ok(self.monomial(0, 1, 0, Scalar::one()))
    }

    /// `c·b^i·N^m·a^j`. Panics if `m > 0` in an algebra without `N`.
    pub fn monomial(self: &Arc<Self>, i: u32, m: u32, j: u32, c: Scalar) -> NormalForm {
        assert!(m == 0 || self.spec.has_n(), "N used in an algebra without N");
        let mut bands = Bands::new();
        let g = NPoly::monomial(m as usize, c);
        if !g.is_zero() {
            bands.insert((i, j), g);
        }
        NormalForm::from_bands(self.clone(), bands)
    }

    /// Element `g(N)` for a polynomial in `N`.
    pub fn poly_in_n(self: &Arc<Self>, g: NPoly) -> Result<NormalForm, WeylError> {
        if !g.is_constant() && !self.spec.has_n() {
            return Err(WeylError::NWithoutExtension);
        }
        let mut bands = Bands::new();
        if !g.is_zero() {
            bands.insert((0, 0), g);
        }
        Ok(NormalForm::from_bands(self.clone(), bands))
    }

    pub fn generator(self: &Arc<Self>, l: Letter) -> Result<NormalForm, WeylError> {
        match l {
            Letter::A => Ok(self.a()),
            Letter::B => Ok(self.b()),
            Letter::N => self.n(),
        }
    }

    /// Normal form of a product of generators, multiplied left to right.
    pub fn nf_of_word(self: &Arc<Self>, word: &[Letter]) -> Result<NormalForm, WeylError> {
        let mut acc = self.one();
        for &l in word {
            acc = acc.try_mul(&self.generator(l)?)?;
        }
        Ok(acc)
    }

    /// Same as [`Algebra::nf_of_word`] but accumulating from the right.
    pub fn nf_of_word_rtl(self: &Arc<Self>, word: &[Letter]) -> Result<NormalForm, WeylError> {
        let mut acc = self.one();
        for &l in word.iter().rev() {
            acc = self.generator(l)?.try_mul(&acc)?;
        }
        Ok(acc)
    }

    /// Parses a word such as `"abba"` or `"bNa"`.
    pub fn word(self: &Arc<Self>, word: &str) -> Result<NormalForm, WeylError> {
        self.nf_of_word(&Letter::parse_word(word)?)
    }

    /// `(τ^s, {s}_τ)`, so that `g(N)·b^s = b^s·g(τ^s N + {s}_τ)` and
    /// `a^s·g(N) = g(τ^s N + {s}_τ)·a^s`.
    fn shift_coeffs(&self, s: u32) -> (Scalar, Scalar) {
        {
            let cache = self.shifts.read().unwrap();
            if let Some(x) = cache.get(s as usize) {
                return x.clone();
            }
        }
        let tau = self.spec.tau().cloned().unwrap_or_else(Scalar::one);
        let mut cache = self.shifts.write().unwrap();
        while cache.len() <= s as usize {
            let (pw, num) = cache.last().unwrap().clone();
            let next = (&pw * &tau, &num + &pw);
            cache.push(next);
        }
        cache[s as usize].clone()
    }

    pub(crate) fn shift_poly(&self, g: &NPoly, s: u32) -> NPoly {
        if s == 0 || g.is_constant() {
            return g.clone();
        }
        let (slope, offset) = self.shift_coeffs(s);
        g.compose_affine(&slope, &offset)
    }

    /// Normal form of `a^j·b^k`.
    pub(crate) fn reorder(&self, j: u32, k: u32) -> Arc<Bands> {
        if let Some(memo) = &self.memo {
            if let Some(x) = memo.read().unwrap().get(&(j, k)) {
                return x.clone();
            }
        }
        let value = Arc::new(self.compute_reorder(j, k));
        match &self.memo {
            Some(memo) => memo.write().unwrap().entry((j, k)).or_insert(value).clone(),
            None => value,
        }
    }

    fn compute_reorder(&self, j: u32, k: u32) -> Bands {
        let mut acc = Bands::new();
        if j == 0 || k == 0 {
            acc.insert((k, j), NPoly::one());
            return acc;
        }
        if j == 1 {
            // a·b^k = σ·b·(a·b^(k-1)) + F(N)·b^(k-1)
            let prev = self.reorder(1, k - 1);
            for (&(s, t), h) in prev.iter() {
                add_band(&mut acc, (s + 1, t), h.scale(self.spec.sigma()));
            }
            let f = self.spec.remainder_poly();
            add_band(&mut acc, (k - 1, 0), self.shift_poly(&f, k - 1));
            return acc;
        }
        // a^j·b^k = a·(a^(j-1)·b^k)
        let prev = self.reorder(j - 1, k);
        for (&(s, t), h) in prev.iter() {
            let head = self.reorder(1, s);
            for (&(s2, t2), h2) in head.iter() {
                let g = h2 * &self.shift_poly(h, t2);
                add_band(&mut acc, (s2, t2 + t), g);
            }
        }
        acc
    }

    pub(crate) fn mul_bands(&self, x: &Bands, y: &Bands) -> Bands {
        let mut acc = Bands::new();
        for (&(i, j), gx) in x {
            for (&(k, r), gy) in y {
                let middle = self.reorder(j, k);
                for (&(s, t), h) in middle.iter() {
                    // b^i gx(N) b^s h(N) a^t gy(N) a^r
                    let left = self.shift_poly(gx, s);
                    let right = self.shift_poly(gy, t);
                    let g = &(&left * h) * &right;
                    add_band(&mut acc, (i + s, t + r), g);
                }
            }
        }
        acc
    }
}

pub(crate) fn add_band(acc: &mut Bands, key: (u32, u32), g: NPoly) {
    if g.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(g);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &g;
            if sum.is_zero() {
                e.remove();
            } else {
                e.insert(sum);
            }
        }
    }
}
