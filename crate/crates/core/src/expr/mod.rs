//! Expression language for operator words and identity scripts.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' ['-'] NAT)?
//! atom   := a | b | N | p | q | A | d | NAT | qnum(NAT) | comm(expr, expr) | (expr)
//! ```
//!
//! Division and negative powers only apply to scalars.

mod parser;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

pub use parser::{parse, parse_bindings, parse_equation, parse_script, ParseError};

use crate::identities::{expand_in_ab_powers, AbPowerExpansion, IdentityError, Verdict};
use crate::scalar::{Bindings, Rational, Scalar, ScalarError, Var};
use crate::weyl::{Algebra, Letter, NPoly, NormalForm, Pbw, RelationSpec, WeylError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Gen(Letter),
    Param(Var),
    Int(BigInt),
    QNum(u32),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
    Comm(Box<Ast>, Box<Ast>),
    Group(Box<Ast>),
}

/// Source text; parsing it gives back the same tree.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Gen(l) => write!(f, "{}", l.as_char()),
            Ast::Param(v) => f.write_str(v.name()),
            Ast::Int(n) => write!(f, "{n}"),
            Ast::QNum(k) => write!(f, "qnum({k})"),
            Ast::Add(x, y) => write!(f, "{x} + {y}"),
            Ast::Sub(x, y) => write!(f, "{x} - {y}"),
            Ast::Neg(x) => write!(f, "-{x}"),
            Ast::Mul(x, y) => write!(f, "{x}*{y}"),
            Ast::Div(x, y) => write!(f, "{x}/{y}"),
            Ast::Pow(x, e) => write!(f, "{x}^{e}"),
            Ast::Comm(x, y) => write!(f, "comm({x}, {y})"),
            Ast::Group(x) => write!(f, "({x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Normalize(Ast),
    Verify(Ast, Ast),
    Expand(Ast),
    /// Replaces the active bindings; `None` leaves the variable symbolic.
    With(Vec<(Var, Option<Rational>)>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0} only applies to scalars")]
    NotScalar(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("`{0}` is not a polynomial in N")]
    NotPolyInN(String),
}

fn as_scalar(x: &NormalForm) -> Option<Scalar> {
    match x.terms().as_slice() {
        [] => Some(Scalar::zero()),
        [(m, c)] if *m == Pbw::new(0, 0, 0) => Some(c.clone()),
        _ => None,
    }
}

/// Evaluates in `alg`; parameter leaves are specialized with `bindings`.
pub fn eval_with(ast: &Ast, alg: &Arc<Algebra>, bindings: &Bindings) -> Result<NormalForm, EvalError> {
    let ev = |x: &Ast| eval_with(x, alg, bindings);
    Ok(match ast {
        Ast::Gen(l) => alg.generator(*l)?,
        Ast::Param(v) => alg.scalar(Scalar::var(*v).substitute(bindings)?),
        Ast::Int(n) => alg.scalar(Scalar::from_rational(Rational::from(n.clone()))),
        Ast::QNum(k) => alg.scalar(Scalar::qnum(*k).substitute(bindings)?),
        Ast::Add(x, y) => ev(x)?.try_add(&ev(y)?)?,
        Ast::Sub(x, y) => ev(x)?.try_sub(&ev(y)?)?,
        Ast::Neg(x) => ev(x)?.scale(&Scalar::from_int(-1)),
        Ast::Mul(x, y) => ev(x)?.try_mul(&ev(y)?)?,
        Ast::Div(x, y) => {
            let d = as_scalar(&ev(y)?).ok_or(EvalError::NotScalar("division"))?;
            if d.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            ev(x)?.scale(&d.inv()?)
        }
        Ast::Pow(x, e) if *e >= 0 => ev(x)?.pow(*e as u32),
        Ast::Pow(x, e) => {
            let c = as_scalar(&ev(x)?).ok_or(EvalError::NotScalar("a negative exponent"))?;
            if c.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            alg.scalar(c.pow(*e)?)
        }
        Ast::Comm(x, y) => ev(x)?.commutator(&ev(y)?)?,
        Ast::Group(x) => ev(x)?,
    })
}

pub fn eval(ast: &Ast, alg: &Arc<Algebra>) -> Result<NormalForm, EvalError> {
    eval_with(ast, alg, &Bindings::new())
}

/// The canonical text of a normal form; parsing it evaluates back to the same element.
pub fn print_canonical(x: &NormalForm) -> String {
    x.render()
}

/// Parses a polynomial in `N` with scalar coefficients, e.g. `2*N` or `q*N^2 - 1`.
pub fn parse_npoly(text: &str) -> Result<NPoly, String> {
    let ast = parse(text).map_err(|e| e.to_string())?;
    let alg = Algebra::shared(&RelationSpec::extended_default(NPoly::one()));
    let x = eval(&ast, &alg).map_err(|e| e.to_string())?;
    if x.terms().iter().any(|(m, _)| m.i > 0 || m.j > 0) {
        return Err(EvalError::NotPolyInN(text.into()).to_string());
    }
    Ok(x.band(0, 0))
}

/// Parses a scalar expression, e.g. `q^-1*(p+1)`.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let ast = parse(text).map_err(|e| e.to_string())?;
    let x = eval(&ast, &Algebra::hq()).map_err(|e| e.to_string())?;
    as_scalar(&x).ok_or_else(|| format!("`{text}` is not a scalar"))
}

fn coefficient_text(alg: &Arc<Algebra>, c: &NPoly) -> Result<String, EvalError> {
    let x = alg.poly_in_n(c.clone())?;
    let s = x.render();
    Ok(if x.len() > 1 || s.contains('/') { format!("({s})") } else { s })
}

/// `Σ c_k*(a*b)^k` as parseable text.
pub fn expansion_text(alg: &Arc<Algebra>, e: &AbPowerExpansion) -> Result<String, EvalError> {
    let mut parts = Vec::new();
    for (k, c) in e.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let ab = match k {
            0 => None,
            1 => Some("(a*b)".to_string()),
            _ => Some(format!("(a*b)^{k}")),
        };
        let coeff = coefficient_text(alg, c)?;
        parts.push(match (coeff.as_str(), ab) {
            (c, None) => c.to_string(),
            ("1", Some(ab)) => ab,
            ("-1", Some(ab)) => format!("-{ab}"),
            (c, Some(ab)) => format!("{c}*{ab}"),
        });
    }
    Ok(if parts.is_empty() { "0".into() } else { parts.join(" + ") })
}

/// Outcome of one script statement.
#[derive(Clone, Debug)]
pub enum Outcome {
    Normalized(NormalForm),
    Verified { lhs: NormalForm, rhs: NormalForm, verdict: Verdict },
    Expanded { expansion: AbPowerExpansion, text: String },
    Bound(Bindings),
}

#[derive(Clone, Debug)]
pub struct StatementResult {
    pub statement: Statement,
    pub params: Bindings,
    pub outcome: Result<Outcome, EvalError>,
}

/// Runs statements in order against `spec`; `with` changes the bindings of later statements.
pub fn run_statements(statements: &[Statement], spec: &RelationSpec, initial: &Bindings) -> Vec<StatementResult> {
    let mut bindings = initial.clone();
    let mut out = Vec::new();
    for st in statements {
        if let Statement::With(b) = st {
            bindings = b.iter().filter_map(|(v, r)| r.clone().map(|r| (*v, Scalar::from_rational(r)))).collect();
        }
        let outcome = run_one(st, spec, &bindings);
        out.push(StatementResult { statement: st.clone(), params: bindings.clone(), outcome });
    }
    out
}

fn run_one(st: &Statement, spec: &RelationSpec, bindings: &Bindings) -> Result<Outcome, EvalError> {
    let alg = Algebra::shared(&spec.substitute(bindings)?);
    match st {
        Statement::Normalize(x) => Ok(Outcome::Normalized(eval_with(x, &alg, bindings)?)),
        Statement::Verify(l, r) => {
            let start = Instant::now();
            let lhs = eval_with(l, &alg, bindings)?;
            let rhs = eval_with(r, &alg, bindings)?;
            let verdict = Verdict::from_residual(lhs.try_sub(&rhs)?, start.elapsed());
            Ok(Outcome::Verified { lhs, rhs, verdict })
        }
        Statement::Expand(x) => {
            let expansion = expand_in_ab_powers(&eval_with(x, &alg, bindings)?)?;
            let text = expansion_text(&alg, &expansion)?;
            Ok(Outcome::Expanded { expansion, text })
        }
        Statement::With(_) => Ok(Outcome::Bound(bindings.clone())),
    }
}
