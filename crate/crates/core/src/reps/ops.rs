use std::fmt;

use super::UPoly;
use crate::scalar::Scalar;

/// A linear operator on polynomials in `x`, built from a few primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    /// Multiplication by `x`.
    X,
    /// `d/dx`.
    Deriv,
    /// Jackson derivative in base `q`: `x^k ↦ {k}·x^(k-1)`.
    Jackson(Scalar),
    /// `f(x) ↦ f(x + h)`, i.e. `e^(h·d/dx)`.
    Shift(Scalar),
    /// Multiplication by a fixed polynomial.
    MulPoly(UPoly),
    Scalar(Scalar),
    Sum(Vec<Op>),
    /// Composition; the rightmost factor acts first.
    Product(Vec<Op>),
    Pow(Box<Op>, u32),
}

impl Op {
    pub fn constant(c: impl Into<Scalar>) -> Op {
        Op::Scalar(c.into())
    }

    pub fn identity() -> Op {
        Op::Scalar(Scalar::one())
    }

    pub fn pow(self, n: u32) -> Op {
        Op::Pow(Box::new(self), n)
    }

    pub fn then(self, rhs: Op) -> Op {
        Op::Product(vec![self, rhs])
    }

    pub fn plus(self, rhs: Op) -> Op {
        Op::Sum(vec![self, rhs])
    }

    pub fn minus(self, rhs: Op) -> Op {
        Op::Sum(vec![self, Op::Product(vec![Op::constant(-1), rhs])])
    }

    pub fn scaled(self, c: Scalar) -> Op {
        Op::Product(vec![Op::Scalar(c), self])
    }

    pub fn apply(&self, f: &UPoly) -> UPoly {
        match self {
            Op::X => f.shift_up(),
            Op::Deriv => f.derivative(),
            Op::Jackson(q) => f.jackson(q),
            Op::Shift(h) => f.translate(h),
            Op::MulPoly(g) => g * f,
            Op::Scalar(c) => f.scale(c),
            Op::Sum(xs) => xs.iter().fold(UPoly::zero(), |acc, x| &acc + &x.apply(f)),
            Op::Product(xs) => xs.iter().rev().fold(f.clone(), |acc, x| x.apply(&acc)),
            Op::Pow(x, n) => (0..*n).fold(f.clone(), |acc, _| x.apply(&acc)),
        }
    }

    /// Number of primitive letters, counting a multiplication polynomial by its degree.
    pub fn size(&self) -> usize {
        match self {
            Op::X | Op::Deriv | Op::Jackson(_) | Op::Shift(_) => 1,
            Op::MulPoly(g) => g.degree().unwrap_or(0),
            Op::Scalar(_) => 0,
            Op::Sum(xs) => xs.iter().map(Op::size).max().unwrap_or(0),
            Op::Product(xs) => xs.iter().map(Op::size).sum(),
            Op::Pow(x, n) => x.size() * *n as usize,
        }
    }

    /// Images of `x^0, …, x^k_max`.
    pub fn on_basis(&self, k_max: usize) -> Vec<UPoly> {
        (0..=k_max).map(|k| self.apply(&UPoly::monomial(k, Scalar::one()))).collect()
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::X => f.write_str("x"),
            Op::Deriv => f.write_str("d/dx"),
            Op::Jackson(_) => f.write_str("D"),
            Op::Shift(h) => write!(f, "shift[{h}]"),
            Op::MulPoly(g) => write!(f, "({g})"),
            Op::Scalar(c) => {
                let (neg, t) = crate::weyl::scalar_text(c);
                write!(f, "{}{}", if neg { "-" } else { "" }, t)
            }
            Op::Sum(xs) => {
                f.write_str("(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Op::Product(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Op::Pow(x, n) => write!(f, "({x})^{n}"),
        }
    }
}
