use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::algebra::add_band;
use super::npoly::NPoly;
use super::relation::RelationSpec;
use super::{render, Algebra, Bands, Grading, Pbw, WeylError};
use crate::scalar::{Bindings, Scalar};

/// An element of the algebra in PBW normal form `Σ c·b^i·N^m·a^j`.
#[derive(Clone)]
pub struct NormalForm {
    alg: Arc<Algebra>,
    bands: Bands,
}

impl NormalForm {
    pub(crate) fn from_bands(alg: Arc<Algebra>, bands: Bands) -> Self {
        NormalForm { alg, bands }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn relation(&self) -> &RelationSpec {
        self.alg.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    /// Terms in descending `(i, m, j)` order.
    pub fn terms(&self) -> Vec<(Pbw, Scalar)> {
        let mut out = Vec::new();
        for (&(i, j), g) in &self.bands {
            for (m, c) in g.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((Pbw::new(i, m as u32, j), c.clone()));
                }
            }
        }
        out.sort_by(|x, y| y.0.cmp(&x.0));
        out
    }

    pub fn len(&self) -> usize {
        self.bands.values().map(|g| g.coeffs().iter().filter(|c| !c.is_zero()).count()).sum()
    }

    pub fn coeff(&self, mono: Pbw) -> Scalar {
        self.bands.get(&(mono.i, mono.j)).map(|g| g.coeff(mono.m as usize)).unwrap_or_else(Scalar::zero)
    }

    /// The `N`-polynomial sitting between `b^i` and `a^j`.
    pub fn band(&self, i: u32, j: u32) -> NPoly {
        self.bands.get(&(i, j)).cloned().unwrap_or_else(NPoly::zero)
    }

    /// Largest power of `a` among the terms.
    pub fn max_a_power(&self) -> Option<u32> {
        self.bands.keys().map(|&(_, j)| j).max()
    }

    fn check(&self, other: &NormalForm) -> Result<(), WeylError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.spec() == other.alg.spec() {
            Ok(())
        } else {
            Err(WeylError::RelationMismatch)
        }
    }

    fn with_bands(&self, bands: Bands) -> NormalForm {
        NormalForm { alg: self.alg.clone(), bands }
    }

    pub fn try_add(&self, other: &NormalForm) -> Result<NormalForm, WeylError> {
        self.check(other)?;
        let mut acc = self.bands.clone();
        for (&k, g) in &other.bands {
            add_band(&mut acc, k, g.clone());
        }
        Ok(self.with_bands(acc))
    }

    pub fn try_sub(&self, other: &NormalForm) -> Result<NormalForm, WeylError> {
        self.check(other)?;
        let mut acc = self.bands.clone();
        for (&k, g) in &other.bands {
            add_band(&mut acc, k, -g);
        }
        Ok(self.with_bands(acc))
    }

    pub fn try_mul(&self, other: &NormalForm) -> Result<NormalForm, WeylError> {
        self.check(other)?;
        Ok(self.with_bands(self.alg.mul_bands(&self.bands, &other.bands)))
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &NormalForm) -> Result<NormalForm, WeylError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: &Scalar) -> NormalForm {
        if c.is_zero() {
            return self.with_bands(Bands::new());
        }
        self.with_bands(self.bands.iter().map(|(&k, g)| (k, g.scale(c))).collect())
    }

    /// `x^n` by repeated multiplication; `x^0` is the unit.
    pub fn pow(&self, n: u32) -> NormalForm {
        let mut acc = self.alg.one();
        for _ in 0..n {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    pub fn grade(&self) -> Grading {
        let mut grades = self.bands.keys().map(|&(i, j)| i as i64 - j as i64);
        match grades.next() {
            None => Grading::Zero,
            Some(g) if grades.all(|h| h == g) => Grading::Homogeneous(g),
            Some(_) => Grading::Inhomogeneous,
        }
    }

    /// Coefficient-wise substitution; the result lives in the specialized algebra.
    pub fn substitute_params(&self, b: &Bindings) -> Result<NormalForm, WeylError> {
        let spec = self.alg.spec().substitute(b)?;
        let alg = if self.alg.memo_enabled() { Algebra::new(spec) } else { Algebra::without_memo(spec) };
        self.substitute_into(&alg, b)
    }

    /// Coefficient-wise substitution into an already specialized algebra.
    pub fn substitute_into(&self, alg: &Arc<Algebra>, b: &Bindings) -> Result<NormalForm, WeylError> {
        let mut bands = Bands::new();
        for (&k, g) in &self.bands {
            add_band(&mut bands, k, g.substitute(b)?);
        }
        Ok(NormalForm { alg: alg.clone(), bands })
    }

    /// Same element viewed in another algebra with an equal relation.
    pub fn rebind(&self, alg: &Arc<Algebra>) -> Result<NormalForm, WeylError> {
        if self.alg.spec() != alg.spec() {
            return Err(WeylError::RelationMismatch);
        }
        Ok(NormalForm { alg: alg.clone(), bands: self.bands.clone() })
    }

    /// Canonical text rendering, e.g. `q^2*b^2*a + p*(q+1)*b`.
    pub fn render(&self) -> String {
        render::render_terms(&self.terms())
    }
}

impl PartialEq for NormalForm {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg.spec() == other.alg.spec()) && self.bands == other.bands
    }
}

impl Eq for NormalForm {}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({})", self.render())
    }
}

// Operator forms panic on a relation mismatch; use the `try_` methods otherwise.
impl<'a> Add<&'a NormalForm> for &'a NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: &'a NormalForm) -> NormalForm {
        self.try_add(rhs).expect("relation mismatch")
    }
}

impl<'a> Sub<&'a NormalForm> for &'a NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: &'a NormalForm) -> NormalForm {
        self.try_sub(rhs).expect("relation mismatch")
    }
}

impl<'a> Mul<&'a NormalForm> for &'a NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: &'a NormalForm) -> NormalForm {
        self.try_mul(rhs).expect("relation mismatch")
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        self.with_bands(self.bands.iter().map(|(&k, g)| (k, -g)).collect())
    }
}
