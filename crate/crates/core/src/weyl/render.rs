//! Canonical text rendering of normal forms, e.g. `q^2*b^2*a + p*(q+1)*b`.

use crate::scalar::{Exp, MPoly, Rational, Scalar};

use super::Pbw;

fn power(s: &mut Vec<String>, name: &str, k: u32) {
    match k {
        0 => {}
        1 => s.push(name.to_string()),
        _ => s.push(format!("{name}^{k}")),
    }
}

/// `b^i*N^m*a^j`, or `1` for the unit monomial.
pub(crate) fn monomial_text(i: u32, m: u32, j: u32) -> String {
    let mut parts = Vec::new();
    power(&mut parts, "b", i);
    power(&mut parts, "N", m);
    power(&mut parts, "a", j);
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial_factor(e: &Exp, c: &Rational) -> String {
    let mut s = String::new();
    crate::scalar::write_monomial(&mut s, e, c);
    s
}

/// Numerator text without sign; returns `(negative, text, is_single_factor)`.
fn numerator_text(num: &MPoly) -> (bool, String, bool) {
    let content = num.min_exponents();
    let rest = if content.is_zero() { num.clone() } else { num.shift(&Exp::ZERO.sub(&content)) };
    let negative = rest.leading_coeff().is_negative();
    let rest = if negative { -&rest } else { rest };
    if let Some(c) = rest.as_constant() {
        let single = content.is_zero() || c.is_one();
        return (negative, monomial_factor(&content, &c), single);
    }
    let inner = format!("({})", rest.to_compact_string());
    if content.is_zero() {
        (negative, inner, true)
    } else {
        (negative, format!("{}*{inner}", monomial_factor(&content, &Rational::one())), false)
    }
}

/// Sign and magnitude text of a nonzero scalar, e.g. `(false, "p*(q+1)")`.
pub fn scalar_text(c: &Scalar) -> (bool, String) {
    let (negative, mut s, _) = numerator_text(c.numer());
    let den = c.denom();
    if !den.is_one() {
        s.push('/');
        let single_power = den.is_monomial() && den.leading_coeff().is_one() && den.total_degree() > 0 && {
            let e = den.min_exponents();
            crate::scalar::Var::ALL.iter().filter(|&&v| e.get(v) != 0).count() == 1
        };
        if single_power {
            s.push_str(&den.to_compact_string());
        } else {
            s.push('(');
            s.push_str(&den.to_compact_string());
            s.push(')');
        }
    }
    (negative, s)
}

/// Renders a sorted (descending) list of terms.
pub(crate) fn render_terms(terms: &[(Pbw, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (mono, c)) in terms.iter().enumerate() {
        let (negative, coeff) = scalar_text(c);
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = mono.i == 0 && mono.m == 0 && mono.j == 0;
        if unit {
            out.push_str(&coeff);
        } else if coeff == "1" {
            out.push_str(&mono.to_string());
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&mono.to_string());
        }
    }
    out
}
