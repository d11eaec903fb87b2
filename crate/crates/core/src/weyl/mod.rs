//! Canonical PBW normal forms `Σ c·b^i·N^m·a^j` and their exact products.

mod algebra;
mod normal_form;
mod npoly;
mod relation;
mod render;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

pub use algebra::Algebra;
pub use normal_form::NormalForm;
pub use npoly::NPoly;
pub use relation::{RelationSpec, Remainder};
pub use render::scalar_text;

use crate::scalar::ScalarError;

/// Internal banded storage: `(i, j) ↦ g(N)` stands for `b^i·g(N)·a^j`.
pub(crate) type Bands = BTreeMap<(u32, u32), NPoly>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("operands were computed under different relations")]
    RelationMismatch,
    #[error("generator N requires the extended relation")]
    NWithoutExtension,
    #[error("invalid generator `{0}`")]
    InvalidLetter(char),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    N,
}

impl Letter {
    pub fn from_char(c: char) -> Result<Letter, WeylError> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            'N' => Ok(Letter::N),
            other => Err(WeylError::InvalidLetter(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::N => 'N',
        }
    }

    pub fn parse_word(s: &str) -> Result<Vec<Letter>, WeylError> {
        s.chars().filter(|c| !c.is_whitespace()).map(Letter::from_char).collect()
    }

    pub fn word_to_string(w: &[Letter]) -> String {
        w.iter().map(|l| l.as_char()).collect()
    }
}

/// Ordered monomial `b^i·N^m·a^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pbw {
    pub i: u32,
    pub m: u32,
    pub j: u32,
}

impl Pbw {
    pub fn new(i: u32, m: u32, j: u32) -> Self {
        Pbw { i, m, j }
    }

    /// `i - j`, the grade of the monomial.
    pub fn grade(&self) -> i64 {
        self.i as i64 - self.j as i64
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::monomial_text(self.i, self.m, self.j))
    }
}

/// Grade `(power of b) − (power of a)` of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(i64),
    Inhomogeneous,
    /// The zero element, homogeneous of every degree.
    Zero,
}

impl Grading {
    pub fn combine(self, other: Grading) -> Grading {
        match (self, other) {
            (Grading::Zero, _) | (_, Grading::Zero) => Grading::Zero,
            (Grading::Homogeneous(x), Grading::Homogeneous(y)) => Grading::Homogeneous(x + y),
            _ => Grading::Inhomogeneous,
        }
    }
}
