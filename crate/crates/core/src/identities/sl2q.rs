use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use super::{IdentityError, Tag, Variant, Verdict};
use crate::scalar::Scalar;
use crate::weyl::{Algebra, NormalForm};

/// Returns `c` with `x = c·y`, if such a scalar exists. For `y = 0` the
/// answer is `1` when `x = 0` as well and absent otherwise.
pub fn solve_scalar_factor(x: &NormalForm, y: &NormalForm) -> Option<Scalar> {
    let (c, residual) = proportionality(x, y);
    residual.is_zero().then_some(c)
}

/// Best candidate `c` (read off the leading term of `y`) and `x - c·y`.
fn proportionality(x: &NormalForm, y: &NormalForm) -> (Scalar, NormalForm) {
    let Some((mono, cy)) = y.terms().into_iter().next() else {
        return (Scalar::one(), x.clone());
    };
    let c = x.coeff(mono).checked_div(&cy).expect("nonzero coefficient");
    let residual = x.try_sub(&y.scale(&c)).expect("same algebra");
    (c, residual)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaMode {
    /// `α` kept symbolic through `A = q^α`.
    Symbolic,
    Integer(u32),
}

/// `j+ = b^2 a - {α} b`, `j0 = ba - {α}{α+1}/{2α+2}`, `j- = a`.
#[derive(Clone, Debug)]
pub struct Sl2qTriple {
    pub jplus: NormalForm,
    pub jzero: NormalForm,
    pub jminus: NormalForm,
    pub alpha: AlphaMode,
    pub variant: Variant,
}

pub fn sl2q_triple(alg: &Arc<Algebra>, alpha: AlphaMode, variant: Variant) -> Result<Sl2qTriple, IdentityError> {
    let spec = alg.spec();
    let rho = match (spec.has_n(), spec.rho()) {
        (false, Some(r)) => r.clone(),
        _ => return Err(IdentityError::Unsupported { tag: Tag::Lem3, why: "needs the relation ab - q·ba = p" }),
    };
    let sigma = spec.sigma();
    let (qa, qa1, q2a2) = match alpha {
        AlphaMode::Symbolic => {
            if *sigma != Scalar::q() {
                return Err(IdentityError::Unsupported { tag: Tag::Lem3, why: "symbolic alpha needs a symbolic q" });
            }
            (Scalar::qnum_alpha(0), Scalar::qnum_alpha(1), Scalar::qnum_two_alpha_plus_two())
        }
        AlphaMode::Integer(n) => {
            (Scalar::qnum_in(sigma, n), Scalar::qnum_in(sigma, n + 1), Scalar::qnum_in(sigma, 2 * n + 2))
        }
    };
    let mut c_plus = qa.clone();
    let mut c_zero = (&qa * &qa1).checked_div(&q2a2)?;
    if variant == Variant::PScaled {
        c_plus = &rho * &c_plus;
        c_zero = &rho * &c_zero;
    }
    Ok(Sl2qTriple {
        jplus: &alg.word("bba")? - &alg.b().scale(&c_plus),
        jzero: &alg.word("ba")? - &alg.scalar(c_zero),
        jminus: alg.a(),
        alpha,
        variant,
    })
}

/// Factors with `j~+ = c_plus·j+`, `j~0 = c_zero·j0`, `j~- = c_minus·j-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2qFactors {
    pub c_plus: Scalar,
    pub c_zero: Scalar,
    pub c_minus: Scalar,
}

impl fmt::Display for Sl2qFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |s: &Scalar| {
            let (neg, txt) = crate::weyl::scalar_text(s);
            format!("{}{}", if neg { "-" } else { "" }, txt)
        };
        write!(f, "c+ = {}, c0 = {}, c- = {}", t(&self.c_plus), t(&self.c_zero), t(&self.c_minus))
    }
}

/// The first of the three relations that could not be satisfied.
#[derive(Clone, Debug)]
pub struct Sl2qFailure {
    pub relation: u8,
    pub residual: NormalForm,
    pub reason: String,
}

impl fmt::Display for Sl2qFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} fails: {}; residual {}", self.relation, self.reason, self.residual)
    }
}

/// Finds scalings making
/// `q·j0·j- - j-·j0 = -j-`, `q^2·j+·j- - j-·j+ = -(q+1)·j0`, `j0·j+ - q·j+·j0 = j+`
/// hold, with the normalization `c- = 1`.
pub fn sl2q_solve(t: &Sl2qTriple) -> Result<Sl2qFactors, Sl2qFailure> {
    let alg = t.jplus.algebra().clone();
    let q = alg.spec().sigma().clone();
    let q2 = &q * &q;
    let (jp, j0, jm) = (&t.jplus, &t.jzero, &t.jminus);
    let fail = |relation: u8, residual: NormalForm, reason: &str| Sl2qFailure { relation, residual, reason: reason.into() };

    // relation 1 fixes c0: c0·(q j0 j- - j- j0) = -j-
    let r1 = &(j0 * jm).scale(&q) - &(jm * j0);
    let (lambda, res) = proportionality(&r1, jm);
    if !res.is_zero() || lambda.is_zero() {
        return Err(fail(1, res, "q·j0·j- - j-·j0 is not a multiple of j-"));
    }
    let c_zero = -lambda.inv().expect("nonzero");

    // relation 3 must agree: c0·(j0 j+ - q j+ j0) = j+
    let r3 = &(j0 * jp) - &(jp * j0).scale(&q);
    let (mu, res) = proportionality(&r3, jp);
    if !res.is_zero() {
        return Err(fail(3, res, "j0·j+ - q·j+·j0 is not a multiple of j+"));
    }
    let check3 = &(&c_zero * &mu) - &Scalar::one();
    if !check3.is_zero() {
        return Err(fail(3, alg.scalar(check3), "the j0 factor from relation 1 does not satisfy relation 3"));
    }

    // relation 2 fixes c+: c+·(q^2 j+ j- - j- j+) = -(q+1)·c0·j0
    let r2 = &(jp * jm).scale(&q2) - &(jm * jp);
    let (nu, res) = proportionality(&r2, j0);
    if !res.is_zero() || nu.is_zero() {
        return Err(fail(2, res, "q^2·j+·j- - j-·j+ is not a multiple of j0"));
    }
    let c_plus = (-(&(&q + &Scalar::one()) * &c_zero)).checked_div(&nu).expect("nonzero");

    // final exact check of all three relations with the scaled generators
    let (tp, t0, tm) = (jp.scale(&c_plus), j0.scale(&c_zero), jm.clone());
    let rels = [
        &(&(&t0 * &tm).scale(&q) - &(&tm * &t0)) + &tm,
        &(&(&tp * &tm).scale(&q2) - &(&tm * &tp)) + &t0.scale(&(&q + &Scalar::one())),
        &(&(&t0 * &tp) - &(&tp * &t0).scale(&q)) - &tp,
    ];
    for (k, r) in rels.iter().enumerate() {
        if !r.is_zero() {
            return Err(fail(k as u8 + 1, r.clone(), "scaled generators violate the relation"));
        }
    }
    Ok(Sl2qFactors { c_plus, c_zero, c_minus: Scalar::one() })
}

/// Action on the vacuum module spanned by `b^k|0>`, where `a|0> = 0`.
/// States map `k` to the coefficient of `b^k|0>`.
pub fn vacuum_action(x: &NormalForm, state: &BTreeMap<u32, Scalar>) -> Result<BTreeMap<u32, Scalar>, IdentityError> {
    let spec = x.relation();
    let rho = match (spec.has_n(), spec.rho()) {
        (false, Some(r)) => r.clone(),
        _ => return Err(IdentityError::Unsupported { tag: Tag::Ann, why: "needs the relation ab - q·ba = p" }),
    };
    let sigma = spec.sigma().clone();
    let mut out: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (mono, c) in x.terms() {
        for (&k, v) in state {
            if mono.j > k {
                continue;
            }
            // a^j b^k|0> = Π_{t<j} ρ{k-t} · b^(k-j)|0>
            let mut coeff = &c * v;
            for t in 0..mono.j {
                coeff = &coeff * &(&rho * &Scalar::qnum_in(&sigma, k - t));
            }
            let slot = out.entry(k - mono.j + mono.i).or_insert_with(Scalar::zero);
            *slot = &*slot + &coeff;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `(j+)^(n+1)` at `α = n` applied to `1, b, …, b^n`; passes iff every image is zero.
pub fn annihilation_check(alg: &Arc<Algebra>, n: u32, variant: Variant) -> Result<Verdict, IdentityError> {
    let start = Instant::now();
    let t = sl2q_triple(alg, AlphaMode::Integer(n), variant)?;
    let power = t.jplus.pow(n + 1);
    for k in 0..=n {
        let image = vacuum_action(&power, &BTreeMap::from([(k, Scalar::one())]))?;
        if !image.is_empty() {
            let mut residual = alg.zero();
            for (s, c) in image {
                residual = &residual + &alg.monomial(s, 0, 0, c);
            }
            let v = Verdict::from_residual(residual, start.elapsed());
            return Ok(v.with_note(format!("image of b^{k}|0>")));
        }
    }
    Ok(Verdict::from_text(true, "0".into(), start.elapsed()))
}
