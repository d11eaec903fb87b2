use std::fmt;

use super::npoly::NPoly;
use super::WeylError;
use crate::scalar::{Bindings, Scalar};

/// Right-hand remainder of the reordering rule `ab = σ·ba + remainder`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Remainder {
    /// A central scalar `ρ`.
    Central(Scalar),
    /// A polynomial `F(N)`; only meaningful when `N` is present.
    Polynomial(NPoly),
}

/// Defining relation of the algebra.
///
/// The slots are named by role, not by letter: for `ab - q·ba = p` the swap
/// coefficient is `q` and the remainder `p`, while for `ab - p·ba = F(N)`
/// the swap coefficient is `p`, the remainder `F(N)` and the `N`-shift base `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSpec {
    sigma: Scalar,
    remainder: Remainder,
    tau: Option<Scalar>,
}

impl RelationSpec {
    /// `ab - q·ba = p` with symbolic `p, q`.
    pub fn hq() -> Self {
        Self::hq_with(Scalar::q(), Scalar::p())
    }

    /// `ab - σ·ba = ρ` without `N`.
    pub fn hq_with(sigma: Scalar, rho: Scalar) -> Self {
        RelationSpec { sigma, remainder: Remainder::Central(rho), tau: None }
    }

    /// `ab - σ·ba = F(N)`, `aN = (τN + 1)a`, `Nb = b(τN + 1)`.
    pub fn extended(sigma: Scalar, f: NPoly, tau: Scalar) -> Self {
        RelationSpec { sigma, remainder: Remainder::Polynomial(f), tau: Some(tau) }
    }

    /// The extended relation with symbolic `σ = p`, `τ = q`.
    pub fn extended_default(f: NPoly) -> Self {
        Self::extended(Scalar::p(), f, Scalar::q())
    }

    pub fn new(sigma: Scalar, remainder: Remainder, tau: Option<Scalar>) -> Result<Self, WeylError> {
        if tau.is_none() {
            if let Remainder::Polynomial(f) = &remainder {
                if !f.is_constant() {
                    return Err(WeylError::NWithoutExtension);
                }
            }
        }
        Ok(RelationSpec { sigma, remainder, tau })
    }

    pub fn sigma(&self) -> &Scalar {
        &self.sigma
    }

    pub fn remainder(&self) -> &Remainder {
        &self.remainder
    }

    /// `N`-shift base; `None` for algebras without `N`.
    pub fn tau(&self) -> Option<&Scalar> {
        self.tau.as_ref()
    }

    pub fn has_n(&self) -> bool {
        self.tau.is_some()
    }

    /// Remainder viewed as a polynomial in `N` (constant for a central remainder).
    pub fn remainder_poly(&self) -> NPoly {
        match &self.remainder {
            Remainder::Central(r) => NPoly::constant(r.clone()),
            Remainder::Polynomial(f) => f.clone(),
        }
    }

    /// Central remainder `ρ`, if the remainder is central.
    pub fn rho(&self) -> Option<&Scalar> {
        match &self.remainder {
            Remainder::Central(r) => Some(r),
            Remainder::Polynomial(_) => None,
        }
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Self, WeylError> {
        Ok(RelationSpec {
            sigma: self.sigma.substitute(b)?,
            remainder: match &self.remainder {
                Remainder::Central(r) => Remainder::Central(r.substitute(b)?),
                Remainder::Polynomial(f) => Remainder::Polynomial(f.substitute(b)?),
            },
            tau: self.tau.as_ref().map(|t| t.substitute(b)).transpose()?,
        })
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ab = {}*ba + ", self.sigma)?;
        match &self.remainder {
            Remainder::Central(r) => write!(f, "{r}")?,
            Remainder::Polynomial(p) => write!(f, "F(N) = {p:?}")?,
        }
        if let Some(t) = &self.tau {
            write!(f, "; aN = ({t}*N + 1)a")?;
        }
        Ok(())
    }
}
