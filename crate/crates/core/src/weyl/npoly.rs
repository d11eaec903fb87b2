use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Bindings, Scalar, ScalarError};

/// Dense polynomial in the central-ish generator `N` with [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NPoly {
    // coeffs[m] multiplies N^m; no trailing zeros
    coeffs: Vec<Scalar>,
}

impl NPoly {
    pub fn zero() -> Self {
        NPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `N`.
    pub fn n() -> Self {
        Self::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn monomial(m: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); m + 1];
        coeffs[m] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        NPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `g(slope·N + offset)` by Horner's rule.
    pub fn compose_affine(&self, slope: &Scalar, offset: &Scalar) -> Self {
        if self.is_constant() {
            return self.clone();
        }
        let lin = NPoly::from_coeffs(vec![offset.clone(), slope.clone()]);
        let mut acc = NPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &NPoly::constant(c.clone());
        }
        acc
    }

    /// `g(h(N))` for an arbitrary polynomial `h`.
    pub fn compose(&self, inner: &NPoly) -> Self {
        let mut acc = NPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &NPoly::constant(c.clone());
        }
        acc
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, ScalarError> {
        Ok(Self::from_coeffs(self.coeffs.iter().map(|c| c.substitute(b)).collect::<Result<_, _>>()?))
    }
}

impl<'a> Add<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NPoly::from_coeffs((0..n).map(|m| &self.coeff(m) + &rhs.coeff(m)).collect())
    }
}

impl<'a> Sub<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NPoly::from_coeffs((0..n).map(|m| &self.coeff(m) - &rhs.coeff(m)).collect())
    }
}

impl<'a> Mul<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        if self.is_zero() || rhs.is_zero() {
            return NPoly::zero();
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        NPoly::from_coeffs(out)
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NPoly[")?;
        for (m, c) in self.coeffs.iter().enumerate() {
            if m > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_composition() {
        // (N^2)(2N + 1) = 4N^2 + 4N + 1
        let sq = NPoly::monomial(2, Scalar::one());
        let c = sq.compose_affine(&Scalar::from_int(2), &Scalar::one());
        assert_eq!(c, NPoly::from_coeffs(vec![1.into(), 4.into(), 4.into()]));
        assert_eq!(c.eval(&Scalar::from_int(1)), Scalar::from_int(9));
    }

    #[test]
    fn trims_trailing_zeros() {
        let x = &NPoly::n() - &NPoly::n();
        assert!(x.is_zero());
        assert_eq!(x.degree(), None);
    }
}
