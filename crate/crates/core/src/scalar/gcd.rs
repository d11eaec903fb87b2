//! Polynomial gcd by content/primitive-part recursion and primitive
//! pseudo-remainder sequences on a recursive one-variable view.

use super::mpoly::{Exp, MPoly, Var};

/// Monic gcd of two Laurent polynomials. Powers of `q` are units, so the
/// result never contains `q` as a monomial factor and has nonnegative exponents.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let a = a.shift(&Exp::of(Var::Q, -a.min_degree_in(Var::Q)));
    let b = b.shift(&Exp::of(Var::Q, -b.min_degree_in(Var::Q)));
    let g = gcd_poly(&a, &b);
    let q0 = g.min_degree_in(Var::Q);
    if q0 > 0 {
        g.shift(&Exp::of(Var::Q, -q0))
    } else {
        g
    }
}

fn monic(a: MPoly) -> MPoly {
    let lc = a.leading_coeff();
    if lc.is_zero() || lc.is_one() {
        a
    } else {
        a.scale(&lc.recip().expect("nonzero leading coefficient"))
    }
}

fn monomial_content(a: &MPoly) -> Exp {
    a.min_exponents()
}

/// gcd of polynomials with nonnegative exponents.
pub(crate) fn gcd_poly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return monic(b.clone());
    }
    if b.is_zero() {
        return monic(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return monic(a.clone());
    }
    // split off monomial contents: gcd = gcd(ma, mb) * gcd(a/ma, b/mb)
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let mg = ma.meet(&mb);
    let a_red = if ma.is_zero() { a.clone() } else { a.shift(&Exp::ZERO.sub(&ma)) };
    let b_red = if mb.is_zero() { b.clone() } else { b.shift(&Exp::ZERO.sub(&mb)) };
    let rest = gcd_no_monomial(&a_red, &b_red);
    if mg.is_zero() {
        rest
    } else {
        rest.shift(&mg)
    }
}

fn gcd_no_monomial(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() || a.is_monomial() || b.is_monomial() {
        // a monomial without monomial content is a constant
        return MPoly::one();
    }
    if a == b {
        return monic(a.clone());
    }
    let v = match Var::ALL.iter().rev().find(|&&v| a.contains_var(v) || b.contains_var(v)) {
        Some(&v) => v,
        None => return MPoly::one(),
    };
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 {
        return gcd_poly(a, &content(b, v));
    }
    if db == 0 {
        return gcd_poly(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.try_div_poly(&ca).expect("content divides");
    let pb = b.try_div_poly(&cb).expect("content divides");
    let c = gcd_poly(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    monic(&c * &g)
}

/// gcd of the coefficients of `a` viewed as a polynomial in `v`.
fn content(a: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = gcd_poly(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(a: &MPoly, v: Var) -> MPoly {
    let c = content(a, v);
    monic(a.try_div_poly(&c).expect("content divides"))
}

fn primitive_prs(mut a: MPoly, mut b: MPoly, v: Var) -> MPoly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return MPoly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// Sparse pseudo-remainder of `a` by `b` in the variable `v`.
fn pseudo_remainder(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let bc = b.coeffs_in(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coeffs_in(v);
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in bc.iter().enumerate() {
            let t = bk * &lr;
            r[k + shift] = &r[k + shift] - &t;
        }
        trim(&mut r);
    }
    MPoly::from_coeffs_in(v, &r)
}

fn trim(r: &mut Vec<MPoly>) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn v(x: Var) -> MPoly {
        MPoly::var(x)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(Rational::from(n))
    }

    #[test]
    fn univariate_gcd() {
        let q = v(Var::Q);
        let a = &(&q * &q) - &c(1); // (q-1)(q+1)
        let b = &(&q * &q) - &(&q.scale(&2.into()) - &c(1)); // (q-1)^2
        assert_eq!(gcd(&a, &b), &q - &c(1));
    }

    #[test]
    fn multivariate_gcd_recovers_common_factor() {
        let (p, q, a) = (v(Var::P), v(Var::Q), v(Var::A));
        let common = &(&(&p * &q) - &a) + &c(3);
        let f = &common * &(&(&q * &q) + &p);
        let g = &common * &(&(&a * &p) - &c(2));
        let h = gcd(&f, &g);
        let expected = monic(common);
        assert_eq!(h, expected);
    }

    #[test]
    fn laurent_units_are_ignored() {
        let q = v(Var::Q);
        let qinv = MPoly::monomial(Exp::of(Var::Q, -3), Rational::one());
        let a = &(&q - &c(1)) * &qinv;
        let b = &(&q * &q) - &c(1);
        assert_eq!(gcd(&a, &b), &q - &c(1));
        assert_eq!(gcd(&q, &(&q * &q)), MPoly::one());
    }

    #[test]
    fn coprime_gives_one() {
        let (p, q) = (v(Var::P), v(Var::Q));
        assert!(gcd(&(&p + &c(1)), &(&q + &c(1))).is_one());
        assert!(gcd(&(&p - &q), &(&p + &q)).is_one());
    }
}
