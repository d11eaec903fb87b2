use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use super::expand::expand_in_ab_powers;
use super::sl2q::{annihilation_check, sl2q_solve, sl2q_triple, AlphaMode};
use super::{IdentityError, Verdict};
use crate::scalar::{Bindings, Scalar};
use crate::weyl::{Algebra, NPoly, NormalForm, RelationSpec};

/// Catalog tag of an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// `(aba)^n = a^n b^n a^n`
    Thm1a,
    /// `(bab)^n = b^n a^n b^n`
    Thm1b,
    /// `(abab…a)^n = a^n b^n … a^n` with `2k+1` letters
    Cor1,
    /// `[T(n)_k, T(m)_k] = 0`
    Cor2a,
    /// commutator of products of `T(n_i)_k`
    Cor2b,
    /// `[a^n b^n, a^m b^m] = 0`
    Thm2a,
    /// `[a^n b^n, b^m a^m] = 0`
    Thm2b,
    /// `[b^n a^n, b^m a^m] = 0`
    Thm2c,
    /// commutator of products of `a^n b^n` / `b^n a^n` factors
    Cor3,
    /// `a b^n - q^n b^n a = p{n} b^(n-1)`
    Lem1a,
    /// `a^n b - q^n b a^n = p{n} a^(n-1)`
    Lem1b,
    /// `a^n b^n` is a polynomial in `ab` of degree at most `n`
    Lem2a,
    /// `b^n a^n` is a polynomial in `ab` of degree at most `n`
    Lem2b,
    /// `(b^2 a - {n} b)^(n+1) = q^(n(n+1)) b^(2n+2) a^(n+1)`
    Thm4a,
    /// `(b a^2 - {n} a)^(n+1) = q^(n(n+1)) b^(n+1) a^(2n+2)`
    Thm4b,
    /// `ba(ba - {1})…(ba - {n}) = q^(n(n+1)/2) b^(n+1) a^(n+1)`
    Thm5,
    /// the extended-algebra analogue of `Thm5`
    Thm6,
    /// the sl2q triple `j+, j0, j-`
    Lem3,
    /// `a^n b^n = Σ α_k(N) (ab)^k` in the extended algebra
    Lem4a,
    /// `b^n a^n = Σ β_k(N) (ab)^k` in the extended algebra
    Lem4b,
    /// `b P(ab) = P(ba) b`
    Eq14,
    /// `(j+)^(n+1)` kills `1, b, …, b^n` in the vacuum module
    Ann,
}

impl Tag {
    pub const ALL: [Tag; 22] = [
        Tag::Thm1a,
        Tag::Thm1b,
        Tag::Cor1,
        Tag::Cor2a,
        Tag::Cor2b,
        Tag::Thm2a,
        Tag::Thm2b,
        Tag::Thm2c,
        Tag::Cor3,
        Tag::Lem1a,
        Tag::Lem1b,
        Tag::Lem2a,
        Tag::Lem2b,
        Tag::Thm4a,
        Tag::Thm4b,
        Tag::Thm5,
        Tag::Thm6,
        Tag::Lem3,
        Tag::Lem4a,
        Tag::Lem4b,
        Tag::Eq14,
        Tag::Ann,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Thm1a => "THM1a",
            Tag::Thm1b => "THM1b",
            Tag::Cor1 => "COR1",
            Tag::Cor2a => "COR2a",
            Tag::Cor2b => "COR2b",
            Tag::Thm2a => "THM2a",
            Tag::Thm2b => "THM2b",
            Tag::Thm2c => "THM2c",
            Tag::Cor3 => "COR3",
            Tag::Lem1a => "LEM1a",
            Tag::Lem1b => "LEM1b",
            Tag::Lem2a => "LEM2a",
            Tag::Lem2b => "LEM2b",
            Tag::Thm4a => "THM4a",
            Tag::Thm4b => "THM4b",
            Tag::Thm5 => "THM5",
            Tag::Thm6 => "THM6",
            Tag::Lem3 => "LEM3",
            Tag::Lem4a => "LEM4a",
            Tag::Lem4b => "LEM4b",
            Tag::Eq14 => "EQ14",
            Tag::Ann => "ANN",
        }
    }

    /// Whether the `p_scaled` variant differs from `as_stated`.
    pub fn has_variants(self) -> bool {
        matches!(self, Tag::Thm4a | Tag::Thm4b | Tag::Thm5 | Tag::Lem3 | Tag::Ann)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL.iter().copied().find(|t| t.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown tag `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Variant {
    #[default]
    AsStated,
    /// Every constant `{k}` multiplied by the central remainder.
    PScaled,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsStated => "as_stated",
            Variant::PScaled => "p_scaled",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Factor `a^n b^n` (`ab = true`) or `b^n a^n` of a product in `COR3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub n: u32,
    pub ab: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Args {
    N(u32),
    /// `COR1`; `swapped` exchanges `a` and `b`.
    NK { n: u32, k: u32, swapped: bool },
    NM { n: u32, m: u32 },
    /// `COR2a`
    NMK { n: u32, m: u32, k: u32, swapped: bool },
    /// `COR2b`
    Sets { ns: Vec<u32>, ms: Vec<u32>, k: u32, swapped: bool },
    /// `COR3`
    Forms { left: Vec<Form>, right: Vec<Form> },
    /// `LEM3`: `None` keeps `α` symbolic through `A = q^α`.
    Alpha(Option<u32>),
    /// `EQ14`: integer coefficients of `P`, constant term first.
    Poly(Vec<i64>),
}

fn list(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn forms(v: &[Form]) -> String {
    v.iter().map(|f| format!("{}{}", f.n, if f.ab { "ab" } else { "ba" })).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Args {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sw = |s: bool| if s { ",swapped" } else { "" };
        match self {
            Args::N(n) => write!(f, "n={n}"),
            Args::NK { n, k, swapped } => write!(f, "n={n},k={k}{}", sw(*swapped)),
            Args::NM { n, m } => write!(f, "n={n},m={m}"),
            Args::NMK { n, m, k, swapped } => write!(f, "n={n},m={m},k={k}{}", sw(*swapped)),
            Args::Sets { ns, ms, k, swapped } => write!(f, "n=[{}],m=[{}],k={k}{}", list(ns), list(ms), sw(*swapped)),
            Args::Forms { left, right } => write!(f, "n=[{}],m=[{}]", forms(left), forms(right)),
            Args::Alpha(None) => f.write_str("alpha=symbolic"),
            Args::Alpha(Some(n)) => write!(f, "alpha={n}"),
            Args::Poly(c) => write!(f, "P=[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        }
    }
}

/// One identity instance together with the relation it is checked under.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdentityCase {
    pub tag: Tag,
    pub args: Args,
    pub variant: Variant,
    /// Relation with symbolic parameters; `params` specializes it.
    pub relation: RelationSpec,
    pub params: Bindings,
}

impl IdentityCase {
    pub fn new(tag: Tag, args: Args) -> Self {
        let relation = match tag {
            Tag::Thm6 | Tag::Lem4a | Tag::Lem4b => RelationSpec::extended_default(NPoly::one()),
            _ => RelationSpec::hq(),
        };
        IdentityCase { tag, args, variant: Variant::AsStated, relation, params: Bindings::new() }
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn relation(mut self, r: RelationSpec) -> Self {
        self.relation = r;
        self
    }

    pub fn bind(mut self, v: crate::scalar::Var, value: Scalar) -> Self {
        self.params.insert(v, value);
        self
    }

    pub fn params_text(&self) -> String {
        bindings_text(&self.params)
    }

    /// The engine the case is evaluated in: the relation with `params` applied.
    pub fn algebra(&self) -> Result<Arc<Algebra>, IdentityError> {
        Ok(Algebra::shared(&self.relation.substitute(&self.params)?))
    }
}

fn word(alg: &Arc<Algebra>, w: &str) -> Result<NormalForm, IdentityError> {
    Ok(alg.word(w)?)
}

fn mono(alg: &Arc<Algebra>, i: u32, j: u32, c: Scalar) -> NormalForm {
    alg.monomial(i, 0, j, c)
}

fn ab_block(alg: &Arc<Algebra>, n: u32, ab: bool) -> NormalForm {
    let (x, y) = (mono(alg, 0, n, Scalar::one()), mono(alg, n, 0, Scalar::one()));
    if ab {
        &x * &y
    } else {
        &y * &x
    }
}

/// `a^n b^n a^n … a^n` with `2k+1` blocks, or its `a ↔ b` mirror.
fn t_block(alg: &Arc<Algebra>, n: u32, k: u32, swapped: bool) -> NormalForm {
    let (x, y) = if swapped {
        (mono(alg, n, 0, Scalar::one()), mono(alg, 0, n, Scalar::one()))
    } else {
        (mono(alg, 0, n, Scalar::one()), mono(alg, n, 0, Scalar::one()))
    };
    let mut acc = x.clone();
    for _ in 0..k {
        acc = &(&acc * &y) * &x;
    }
    acc
}

fn product(alg: &Arc<Algebra>, xs: impl IntoIterator<Item = NormalForm>) -> NormalForm {
    xs.into_iter().fold(alg.one(), |acc, x| &acc * &x)
}

fn central_remainder(tag: Tag, spec: &RelationSpec) -> Result<Scalar, IdentityError> {
    match (spec.has_n(), spec.rho()) {
        (false, Some(r)) => Ok(r.clone()),
        _ => Err(IdentityError::Unsupported { tag, why: "needs the relation ab - q·ba = p" }),
    }
}

fn bad(case: &IdentityCase) -> IdentityError {
    IdentityError::BadArgs(case.tag, case.args.to_string())
}

/// Constant `{k}` or `ρ·{k}` according to the variant.
fn constant(case: &IdentityCase, spec: &RelationSpec, k: u32) -> Result<Scalar, IdentityError> {
    let base = Scalar::qnum_in(spec.sigma(), k);
    Ok(match case.variant {
        Variant::AsStated => base,
        Variant::PScaled => &central_remainder(case.tag, spec)? * &base,
    })
}

fn sigma_pow(spec: &RelationSpec, e: u32) -> Scalar {
    spec.sigma().pow(e as i32).expect("nonnegative power")
}

/// `Σ_{k'=1..k} σ^(k'-1)·F((N - {k'}_τ)/τ^k')`.
fn thm6_shift(spec: &RelationSpec, k: u32) -> Result<NPoly, IdentityError> {
    let f = spec.remainder_poly();
    let tau = spec.tau().expect("extended relation");
    let mut acc = NPoly::zero();
    for kk in 1..=k {
        let inv = tau.pow(-(kk as i32))?;
        let offset = -(&Scalar::qnum_in(tau, kk) * &inv);
        let shifted = f.compose_affine(&inv, &offset);
        acc = &acc + &shifted.scale(&sigma_pow(spec, kk - 1));
    }
    Ok(acc)
}

/// `symbolic`, or bindings as `p=1,q=2/3`.
pub fn bindings_text(b: &Bindings) -> String {
    if b.is_empty() {
        return "symbolic".into();
    }
    b.iter()
        .map(|(v, s)| {
            let (neg, t) = crate::weyl::scalar_text(s);
            format!("{}={}{}", v.name(), if neg { "-" } else { "" }, t)
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Both sides of the identity, evaluated in the case's (specialized) algebra.
pub fn build(case: &IdentityCase) -> Result<(NormalForm, NormalForm), IdentityError> {
    let alg = case.algebra()?;
    let spec = alg.spec().clone();
    let one = Scalar::one();
    let zero = alg.zero();
    let n_arg = || match case.args {
        Args::N(n) if n >= 1 => Ok(n),
        _ => Err(bad(case)),
    };
    let out = match case.tag {
        Tag::Thm1a => {
            let n = n_arg()?;
            (word(&alg, "aba")?.pow(n), t_block(&alg, n, 1, false))
        }
        Tag::Thm1b => {
            let n = n_arg()?;
            (word(&alg, "bab")?.pow(n), t_block(&alg, n, 1, true))
        }
        Tag::Cor1 => {
            let Args::NK { n, k, swapped } = case.args else { return Err(bad(case)) };
            (t_block(&alg, 1, k, swapped).pow(n), t_block(&alg, n, k, swapped))
        }
        Tag::Cor2a => {
            let Args::NMK { n, m, k, swapped } = case.args else { return Err(bad(case)) };
            (t_block(&alg, n, k, swapped).commutator(&t_block(&alg, m, k, swapped))?, zero)
        }
        Tag::Cor2b => {
            let Args::Sets { ref ns, ref ms, k, swapped } = case.args else { return Err(bad(case)) };
            let x = product(&alg, ns.iter().map(|&n| t_block(&alg, n, k, swapped)));
            let y = product(&alg, ms.iter().map(|&m| t_block(&alg, m, k, swapped)));
            (x.commutator(&y)?, zero)
        }
        Tag::Thm2a | Tag::Thm2b | Tag::Thm2c => {
            let Args::NM { n, m } = case.args else { return Err(bad(case)) };
            let (l, r) = match case.tag {
                Tag::Thm2a => (true, true),
                Tag::Thm2b => (true, false),
                _ => (false, false),
            };
            (ab_block(&alg, n, l).commutator(&ab_block(&alg, m, r))?, zero)
        }
        Tag::Cor3 => {
            let Args::Forms { ref left, ref right } = case.args else { return Err(bad(case)) };
            let x = product(&alg, left.iter().map(|f| ab_block(&alg, f.n, f.ab)));
            let y = product(&alg, right.iter().map(|f| ab_block(&alg, f.n, f.ab)));
            (x.commutator(&y)?, zero)
        }
        Tag::Lem1a | Tag::Lem1b => {
            let n = n_arg()?;
            let rho = central_remainder(case.tag, &spec)?;
            let c = &rho * &Scalar::qnum_in(spec.sigma(), n);
            let sn = sigma_pow(&spec, n);
            if case.tag == Tag::Lem1a {
                let bn = mono(&alg, n, 0, one.clone());
                (&(&alg.a() * &bn) - &(&bn * &alg.a()).scale(&sn), mono(&alg, n - 1, 0, c))
            } else {
                let an = mono(&alg, 0, n, one.clone());
                (&(&an * &alg.b()) - &(&alg.b() * &an).scale(&sn), mono(&alg, 0, n - 1, c))
            }
        }
        Tag::Lem2a | Tag::Lem2b | Tag::Lem4a | Tag::Lem4b => {
            let n = n_arg()?;
            let needs_n = matches!(case.tag, Tag::Lem4a | Tag::Lem4b);
            if needs_n && !spec.has_n() {
                return Err(IdentityError::Unsupported { tag: case.tag, why: "needs the extended relation" });
            }
            let x = ab_block(&alg, n, matches!(case.tag, Tag::Lem2a | Tag::Lem4a));
            let exp = expand_in_ab_powers(&x)?;
            if exp.coeffs.len() > n as usize + 1 {
                return Err(IdentityError::NotExpressible(format!("{} coefficients for n = {n}", exp.coeffs.len())));
            }
            (x, exp.reconstruct(&alg)?)
        }
        Tag::Thm4a | Tag::Thm4b => {
            let n = n_arg()?;
            central_remainder(case.tag, &spec)?;
            let c = constant(case, &spec, n)?;
            let rhs_c = sigma_pow(&spec, n * (n + 1));
            if case.tag == Tag::Thm4a {
                let j = &word(&alg, "bba")? - &alg.b().scale(&c);
                (j.pow(n + 1), mono(&alg, 2 * n + 2, n + 1, rhs_c))
            } else {
                let j = &word(&alg, "baa")? - &alg.a().scale(&c);
                (j.pow(n + 1), mono(&alg, n + 1, 2 * n + 2, rhs_c))
            }
        }
        Tag::Thm5 => {
            let n = n_arg()?;
            central_remainder(case.tag, &spec)?;
            let ba = word(&alg, "ba")?;
            let mut lhs = ba.clone();
            for k in 1..=n {
                lhs = &lhs * &(&ba - &alg.scalar(constant(case, &spec, k)?));
            }
            (lhs, mono(&alg, n + 1, n + 1, sigma_pow(&spec, n * (n + 1) / 2)))
        }
        Tag::Thm6 => {
            let n = n_arg()?;
            if !spec.has_n() {
                return Err(IdentityError::Unsupported { tag: case.tag, why: "needs the extended relation" });
            }
            let ba = word(&alg, "ba")?;
            let mut lhs = ba.clone();
            for k in 1..=n {
                lhs = &lhs * &(&ba - &alg.poly_in_n(thm6_shift(&spec, k)?)?);
            }
            (lhs, mono(&alg, n + 1, n + 1, sigma_pow(&spec, n * (n + 1) / 2)))
        }
        Tag::Eq14 => {
            let Args::Poly(ref coeffs) = case.args else { return Err(bad(case)) };
            let (ab, ba) = (word(&alg, "ab")?, word(&alg, "ba")?);
            let eval = |t: &NormalForm| {
                let mut acc = alg.zero();
                for c in coeffs.iter().rev() {
                    acc = &(&acc * t) + &alg.scalar(Scalar::from_int(*c));
                }
                acc
            };
            (&alg.b() * &eval(&ab), &eval(&ba) * &alg.b())
        }
        Tag::Lem3 | Tag::Ann => {
            return Err(IdentityError::Unsupported { tag: case.tag, why: "checked by the sl2q solver, not as an equation" })
        }
    };
    Ok(out)
}

/// Builds and compares both sides. Cases that cannot be built are reported
/// as failures carrying the error text.
pub fn verify(case: &IdentityCase) -> Result<Verdict, IdentityError> {
    let start = Instant::now();
    match case.tag {
        Tag::Lem3 => {
            let Args::Alpha(alpha) = case.args else { return Err(bad(case)) };
            let alg = case.algebra()?;
            let mode = match alpha {
                None => AlphaMode::Symbolic,
                Some(n) => AlphaMode::Integer(n),
            };
            let triple = sl2q_triple(&alg, mode, case.variant)?;
            return Ok(match sl2q_solve(&triple) {
                Ok(f) => Verdict::from_text(true, "0".into(), start.elapsed()).with_note(f.to_string()),
                Err(fail) => {
                    let mut v = Verdict::from_residual(fail.residual.clone(), start.elapsed());
                    v.note = Some(fail.to_string());
                    v
                }
            });
        }
        Tag::Ann => {
            let Args::N(n) = case.args else { return Err(bad(case)) };
            let alg = case.algebra()?;
            return annihilation_check(&alg, n, case.variant).map(|mut v| {
                v.elapsed = start.elapsed();
                v
            });
        }
        _ => {}
    }
    match build(case) {
        Ok((lhs, rhs)) => Ok(Verdict::from_residual(lhs.try_sub(&rhs)?, start.elapsed())),
        Err(IdentityError::NotExpressible(why)) => {
            Ok(Verdict::from_text(false, "not expressible".into(), start.elapsed()).with_note(why))
        }
        Err(e) => Err(e),
    }
}
