//! Identity catalog, exact verifier, expansion in powers of `ab`, and the
//! scalar-factor tools used for the sl2q triple.

mod catalog;
mod expand;
mod sl2q;
mod suite;

use std::fmt;
use std::time::Duration;

pub use catalog::{bindings_text, build, verify, Args, Form, IdentityCase, Tag, Variant};
pub use expand::{expand_in_ab_powers, AbPowerExpansion};
pub use sl2q::{
    annihilation_check, sl2q_solve, sl2q_triple, solve_scalar_factor, vacuum_action, AlphaMode, Sl2qFactors,
    Sl2qFailure, Sl2qTriple,
};
pub use suite::{expected_status, plan_suite, run_cases, run_suite, Catalog, CaseResult, PlannedCase, SuiteConfig};

use crate::scalar::{MPoly, Rational, ScalarError, Var};
use crate::weyl::{NormalForm, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("{tag} is not defined for this relation: {why}")]
    Unsupported { tag: Tag, why: &'static str },
    #[error("{0:?} does not take arguments {1}")]
    BadArgs(Tag, String),
    #[error("element is not a combination of powers of ab: {0}")]
    NotExpressible(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl From<ScalarError> for IdentityError {
    fn from(e: ScalarError) -> Self {
        IdentityError::Weyl(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a check. `residual` is `LHS - RHS` for algebraic checks.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub residual: Option<NormalForm>,
    pub residual_text: String,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn from_residual(residual: NormalForm, elapsed: Duration) -> Verdict {
        let status = if residual.is_zero() { Status::Pass } else { Status::Fail };
        let note = p_minus_one_hint(&residual);
        Verdict { status, residual_text: residual.render(), residual: Some(residual), note, elapsed }
    }

    pub fn from_text(pass: bool, residual_text: String, elapsed: Duration) -> Verdict {
        Verdict {
            status: if pass { Status::Pass } else { Status::Fail },
            residual: None,
            residual_text,
            note: None,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Adds a note, keeping any earlier one.
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{note}; {old}"),
            None => note,
        });
        self
    }
}

/// Notes when every coefficient of a nonzero residual is divisible by `p - 1`.
pub fn p_minus_one_hint(residual: &NormalForm) -> Option<String> {
    if residual.is_zero() {
        return None;
    }
    let pm1 = &MPoly::var(Var::P) - &MPoly::constant(Rational::one());
    let all = residual.terms().iter().all(|(_, c)| c.divide_out(&pm1).is_some());
    all.then(|| "every coefficient is divisible by (p-1)".to_string())
}
