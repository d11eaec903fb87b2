use std::sync::Arc;

use super::IdentityError;
use crate::scalar::Scalar;
use crate::weyl::{Algebra, Grading, NPoly, NormalForm};

/// `x = Σ c_k(N)·(ab)^k`; each `c_k` is constant unless the algebra has `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPowerExpansion {
    pub coeffs: Vec<NPoly>,
}

impl AbPowerExpansion {
    /// Coefficients as scalars, when none of them involves `N`.
    pub fn scalar_coeffs(&self) -> Option<Vec<Scalar>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }

    pub fn reconstruct(&self, alg: &Arc<Algebra>) -> Result<NormalForm, IdentityError> {
        let ab = alg.word("ab")?;
        let mut acc = alg.zero();
        let mut pw = alg.one();
        for c in &self.coeffs {
            acc = acc.try_add(&alg.poly_in_n(c.clone())?.try_mul(&pw)?)?;
            pw = pw.try_mul(&ab)?;
        }
        Ok(acc)
    }
}

/// Triangular back-substitution from the top band `b^k·…·a^k` downwards.
pub fn expand_in_ab_powers(x: &NormalForm) -> Result<AbPowerExpansion, IdentityError> {
    match x.grade() {
        Grading::Zero => return Ok(AbPowerExpansion { coeffs: Vec::new() }),
        Grading::Homogeneous(0) => {}
        _ => return Err(IdentityError::NotExpressible(format!("{x} is not of grade 0"))),
    }
    let alg = x.algebra().clone();
    let d = x.max_a_power().unwrap_or(0);
    let ab = alg.word("ab")?;
    let mut powers = vec![alg.one()];
    for k in 1..=d as usize {
        let next = powers[k - 1].try_mul(&ab)?;
        powers.push(next);
    }
    let tau = alg.spec().tau().cloned();
    let mut rem = x.clone();
    let mut coeffs = vec![NPoly::zero(); d as usize + 1];
    for k in (0..=d).rev() {
        let g = rem.band(k, k);
        if g.is_zero() {
            continue;
        }
        let lead = powers[k as usize]
            .band(k, k)
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| IdentityError::NotExpressible(format!("leading band of (ab)^{k} depends on N")))?;
        let inv_lead = lead.inv()?;
        // c(τ^k N + {k}_τ)·lead = g(N)
        let c = match &tau {
            Some(t) if k > 0 && !g.is_constant() => {
                let slope = t.pow(-(k as i32))?;
                let offset = -(&Scalar::qnum_in(t, k) * &slope);
                g.compose_affine(&slope, &offset).scale(&inv_lead)
            }
            _ => g.scale(&inv_lead),
        };
        rem = rem.try_sub(&alg.poly_in_n(c.clone())?.try_mul(&powers[k as usize])?)?;
        coeffs[k as usize] = c;
    }
    if !rem.is_zero() {
        return Err(IdentityError::NotExpressible(rem.render()));
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(AbPowerExpansion { coeffs })
}
