use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::{compare_on_basis, basis_verdict, Op, PolyRep, RepKind, UPoly};
use crate::identities::{verify, Args, IdentityCase, Tag, Variant, Verdict};
use crate::scalar::Scalar;

/// Operator identities in `x` and `d/dx` (or their deformations).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepEq {
    /// `(x^2 d - n x)^(n+1) = x^(2n+2) d^(n+1)`
    E1a,
    /// `(d^2 x - n d)^(n+1) = d^(2n+2) x^(n+1)`, sign as printed
    E1b,
    /// `(d^2 x + n d)^(n+1) = d^(2n+2) x^(n+1)`
    E1bFixed,
    /// `(x d x)^n = x^n d^n x^n`
    E2a,
    /// `(d x d)^n = d^n x^n d^n`
    E2b,
    /// `x d (x d - 1)…(x d - n) = x^(n+1) d^(n+1)`
    E3,
    /// `Π_k [x(1 - e^(-δd)) - kδ] = x^(n+1, falling) (1 - e^(-δd))^(n+1)`
    E4,
    /// `xD(xD - {1})…(xD - {n}) = q^(n(n+1)/2) x^(n+1) D^(n+1)`
    E20,
    /// `xD-(xD- - 1)…(xD- - n) = c·x^(n+1, falling) D-^(n+1)`; `c` is searched for
    E22,
}

impl RepEq {
    pub const ALL: [RepEq; 9] =
        [RepEq::E1a, RepEq::E1b, RepEq::E1bFixed, RepEq::E2a, RepEq::E2b, RepEq::E3, RepEq::E4, RepEq::E20, RepEq::E22];

    pub fn as_str(self) -> &'static str {
        match self {
            RepEq::E1a => "1a",
            RepEq::E1b => "1b",
            RepEq::E1bFixed => "1b-fixed",
            RepEq::E2a => "2a",
            RepEq::E2b => "2b",
            RepEq::E3 => "3",
            RepEq::E4 => "4",
            RepEq::E20 => "20",
            RepEq::E22 => "22",
        }
    }

    /// Representations the equation can be checked in; the first is the default.
    pub fn reps(self) -> &'static [RepKind] {
        match self {
            RepEq::E1a | RepEq::E3 => &[RepKind::DiffAb],
            RepEq::E1b | RepEq::E1bFixed => &[RepKind::DiffBa],
            RepEq::E2a | RepEq::E2b => &[RepKind::DiffAb, RepKind::Jackson],
            RepEq::E4 | RepEq::E22 => &[RepKind::Delta],
            RepEq::E20 => &[RepKind::Jackson],
        }
    }

    /// Whether the printed form is expected to hold.
    pub fn expected_pass(self) -> bool {
        self != RepEq::E1b
    }
}

impl fmt::Display for RepEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepEq {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        RepEq::ALL.into_iter().find(|e| e.as_str() == s).ok_or_else(|| {
            format!("unknown equation `{s}` (expected one of {})", RepEq::ALL.map(|e| e.as_str()).join(", "))
        })
    }
}

/// Both sides as operators, the representation they live in and the
/// algebraic identity they are an image of.
#[derive(Clone, Debug)]
pub struct Equation {
    pub eq: RepEq,
    pub n: u32,
    pub rep: PolyRep,
    pub lhs: Op,
    pub rhs: Op,
    pub counterpart: Option<IdentityCase>,
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `x(x - δ)…(x - nδ)` as a multiplication operator.
fn falling(n: u32) -> Op {
    let d = Scalar::delta();
    let mut g = UPoly::one();
    for k in 0..=n {
        g = &g * &UPoly::from_coeffs(vec![-&(&d * &int(k as i64)), Scalar::one()]);
    }
    Op::MulPoly(g)
}

/// `D- = (1 - e^(-δd))/δ`.
fn backward_difference() -> Op {
    let d = Scalar::delta();
    let inv = d.inv().expect("nonzero");
    Op::Sum(vec![Op::Scalar(inv.clone()), Op::Shift(-d).scaled(-inv)])
}

fn counterpart(tag: Tag, n: u32, rep: &PolyRep, variant: Variant) -> Option<IdentityCase> {
    Some(IdentityCase::new(tag, Args::N(n)).relation(rep.relation()).variant(variant))
}

pub fn equation(eq: RepEq, n: u32, kind: Option<RepKind>) -> Result<Equation, String> {
    let kind = kind.unwrap_or(eq.reps()[0]);
    if !eq.reps().contains(&kind) {
        return Err(format!("equation {eq} is not defined in the {kind} representation"));
    }
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    let rep = PolyRep::of_kind(kind);
    let x = Op::X;
    let ni = int(n as i64);
    let (lhs, rhs, cp) = match eq {
        RepEq::E1a => (
            Op::Sum(vec![Op::Product(vec![x.clone(), x.clone(), Op::Deriv]), x.clone().scaled(-&ni)]).pow(n + 1),
            Op::Product(vec![x.clone().pow(2 * n + 2), Op::Deriv.pow(n + 1)]),
            counterpart(Tag::Thm4a, n, &rep, Variant::AsStated),
        ),
        RepEq::E1b | RepEq::E1bFixed => {
            let sign = if eq == RepEq::E1b { -&ni } else { ni.clone() };
            let variant = if eq == RepEq::E1b { Variant::AsStated } else { Variant::PScaled };
            (
                Op::Sum(vec![Op::Product(vec![Op::Deriv, Op::Deriv, x.clone()]), Op::Deriv.scaled(sign)]).pow(n + 1),
                Op::Product(vec![Op::Deriv.pow(2 * n + 2), x.clone().pow(n + 1)]),
                counterpart(Tag::Thm4a, n, &rep, variant),
            )
        }
        RepEq::E2a | RepEq::E2b => {
            let d = if kind == RepKind::Jackson { rep.a.clone() } else { Op::Deriv };
            // with a = d, b = x: x d x = bab and d x d = aba
            let (l, r, tag) = if eq == RepEq::E2a {
                (
                    Op::Product(vec![x.clone(), d.clone(), x.clone()]).pow(n),
                    Op::Product(vec![x.clone().pow(n), d.clone().pow(n), x.clone().pow(n)]),
                    Tag::Thm1b,
                )
            } else {
                (
                    Op::Product(vec![d.clone(), x.clone(), d.clone()]).pow(n),
                    Op::Product(vec![d.clone().pow(n), x.clone().pow(n), d.clone().pow(n)]),
                    Tag::Thm1a,
                )
            };
            (l, r, counterpart(tag, n, &rep, Variant::AsStated))
        }
        RepEq::E3 | RepEq::E20 => {
            let d = if eq == RepEq::E20 { rep.a.clone() } else { Op::Deriv };
            let xd = x.clone().then(d.clone());
            let q = rep.sigma.clone();
            let mut factors = vec![xd.clone()];
            for k in 1..=n {
                factors.push(xd.clone().minus(Op::Scalar(Scalar::qnum_in(&q, k))));
            }
            let c = q.pow((n * (n + 1) / 2) as i32).expect("nonnegative");
            (
                Op::Product(factors),
                Op::Product(vec![Op::Scalar(c), x.clone().pow(n + 1), d.pow(n + 1)]),
                counterpart(Tag::Thm5, n, &rep, Variant::AsStated),
            )
        }
        RepEq::E4 => {
            let d = Scalar::delta();
            let one_minus_shift = Op::identity().minus(Op::Shift(-&d));
            let base = x.clone().then(one_minus_shift.clone());
            let factors = (0..=n).map(|k| base.clone().minus(Op::Scalar(&d * &int(k as i64)))).collect();
            (
                Op::Product(factors),
                Op::Product(vec![falling(n), one_minus_shift.pow(n + 1)]),
                counterpart(Tag::Thm5, n, &rep, Variant::AsStated),
            )
        }
        RepEq::E22 => {
            let xd = x.clone().then(backward_difference());
            let mut factors = vec![xd.clone()];
            for k in 1..=n {
                factors.push(xd.clone().minus(Op::Scalar(int(k as i64))));
            }
            let printed = Scalar::delta().pow((n + 1) as i32).expect("nonnegative");
            (
                Op::Product(factors),
                Op::Product(vec![Op::Scalar(printed), falling(n), backward_difference().pow(n + 1)]),
                counterpart(Tag::Thm5, n, &rep, Variant::AsStated),
            )
        }
    };
    Ok(Equation { eq, n, rep, lhs, rhs, counterpart: cp })
}

/// Compares both operators on `x^0..x^k_max`.
pub fn check_identity_on_basis(lhs: &Op, rhs: &Op, k_max: usize) -> Verdict {
    basis_verdict(compare_on_basis(lhs, rhs, k_max), Instant::now())
}

/// Result of checking one equation in its representation.
#[derive(Clone, Debug)]
pub struct EquationCheck {
    pub equation: Equation,
    pub basis_max: usize,
    pub verdict: Verdict,
    /// Verdict of the algebraic identity this equation is an image of.
    pub counterpart: Option<Verdict>,
    /// For the `D-` identity: the constant actually relating the two sides.
    pub factor: Option<Scalar>,
}

/// `c` with `x(f) = c·y(f)` for every basis vector, if one exists.
fn common_factor(x: &Op, y: &Op, k_max: usize) -> Result<Option<Scalar>, String> {
    let mut found: Option<Scalar> = None;
    for k in 0..=k_max {
        let f = UPoly::monomial(k, Scalar::one());
        let (u, v) = (x.apply(&f), y.apply(&f));
        match (u.is_zero(), v.is_zero()) {
            (true, true) => continue,
            (false, true) | (true, false) => return Err(format!("x^{k}: one side vanishes and the other does not")),
            _ => {}
        }
        let top = v.degree().expect("nonzero");
        let c = u.coeff(top).checked_div(&v.coeff(top)).map_err(|e| e.to_string())?;
        if u != v.scale(&c) {
            return Err(format!("x^{k}: images are not proportional"));
        }
        match &found {
            None => found = Some(c),
            Some(prev) if *prev != c => return Err(format!("x^{k}: factor changes with the basis vector")),
            _ => {}
        }
    }
    Ok(found)
}

pub fn check_equation(eq: RepEq, n: u32, kind: Option<RepKind>, k_max: Option<usize>) -> Result<EquationCheck, String> {
    let start = Instant::now();
    let e = equation(eq, n, kind)?;
    let m = e.lhs.size().max(e.rhs.size());
    let k_max = k_max.unwrap_or_else(|| e.rep.basis_bound(m));
    let counterpart = match &e.counterpart {
        Some(c) => Some(verify(c).map_err(|err| err.to_string())?),
        None => None,
    };
    let mut factor = None;
    let mut verdict = if eq == RepEq::E22 {
        let unscaled = match &e.rhs {
            Op::Product(xs) => Op::Product(xs[1..].to_vec()),
            _ => unreachable!(),
        };
        match common_factor(&e.lhs, &unscaled, k_max) {
            Ok(Some(c)) => {
                let printed = Scalar::delta().pow((n + 1) as i32).expect("nonnegative");
                let (neg, txt) = crate::weyl::scalar_text(&c);
                let mut note = format!("factor {}{} on x^0..x^{k_max}, independent of the basis vector", if neg { "-" } else { "" }, txt);
                if c != printed {
                    note.push_str(&format!("; printed constant d^{} disagrees", n + 1));
                }
                factor = Some(c);
                Verdict::from_text(true, "0".into(), start.elapsed()).with_note(note)
            }
            Ok(None) => Verdict::from_text(false, "both sides vanish on the basis".into(), start.elapsed()),
            Err(why) => Verdict::from_text(false, why, start.elapsed()),
        }
    } else {
        check_identity_on_basis(&e.lhs, &e.rhs, k_max)
    };
    if eq == RepEq::E1b && !verdict.passed() {
        // (d^2 x - n d) = d(x d + 1 - n); at n = 1 the left side is (dxd)^2
        let nn = n + 1;
        let alt = Op::Product(vec![Op::Deriv.pow(nn), Op::X.pow(nn), Op::Deriv.pow(nn)]);
        if compare_on_basis(&e.lhs, &alt, k_max).is_none() {
            verdict = verdict.with_note(format!("left side equals d^{nn}*x^{nn}*d^{nn} on the basis"));
        }
    }
    if let Some(cv) = &counterpart {
        if cv.passed() != verdict.passed() && eq != RepEq::E22 {
            verdict = verdict.with_note("representation and algebra disagree");
            verdict.status = crate::identities::Status::Fail;
        }
    }
    verdict.elapsed = start.elapsed();
    Ok(EquationCheck { equation: e, basis_max: k_max, verdict, counterpart, factor })
}
