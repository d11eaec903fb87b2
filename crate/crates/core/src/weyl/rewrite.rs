//! Naive word rewriting, kept independent of the banded multiplication so the
//! two can be checked against each other.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Algebra, Letter, NormalForm, WeylError};
use crate::scalar::Scalar;

/// Which out-of-order pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    LeftmostFirst,
    RightmostFirst,
}

type Words = BTreeMap<Vec<Letter>, Scalar>;

fn out_of_order(x: Letter, y: Letter) -> bool {
    matches!((x, y), (Letter::A, Letter::B) | (Letter::A, Letter::N) | (Letter::N, Letter::B))
}

fn push(acc: &mut Words, w: Vec<Letter>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w).or_insert_with(Scalar::zero);
    *e = &*e + &c;
}

/// Reduces `word` to PBW order by applying the defining relations to one
/// adjacent pair at a time.
pub fn reduce_word(alg: &Arc<Algebra>, word: &[Letter], order: ReductionOrder) -> Result<NormalForm, WeylError> {
    let spec = alg.spec();
    if word.contains(&Letter::N) && !spec.has_n() {
        return Err(WeylError::NWithoutExtension);
    }
    let sigma = spec.sigma().clone();
    let tau = spec.tau().cloned().unwrap_or_else(Scalar::one);
    let f = spec.remainder_poly();

    let mut pending: Words = BTreeMap::new();
    pending.insert(word.to_vec(), Scalar::one());
    let mut done: Words = BTreeMap::new();

    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let positions = (0..w.len().saturating_sub(1)).filter(|&k| out_of_order(w[k], w[k + 1]));
        let pos = match order {
            ReductionOrder::LeftmostFirst => positions.min(),
            ReductionOrder::RightmostFirst => positions.max(),
        };
        let Some(k) = pos else {
            push(&mut done, w, c);
            continue;
        };
        let (head, tail) = (&w[..k], &w[k + 2..]);
        let splice = |mid: &[Letter]| -> Vec<Letter> { head.iter().chain(mid).chain(tail).copied().collect() };
        match (w[k], w[k + 1]) {
            (Letter::A, Letter::B) => {
                push(&mut pending, splice(&[Letter::B, Letter::A]), &c * &sigma);
                for (m, fm) in f.coeffs().iter().enumerate() {
                    push(&mut pending, splice(&vec![Letter::N; m]), &c * fm);
                }
            }
            (Letter::A, Letter::N) => {
                push(&mut pending, splice(&[Letter::N, Letter::A]), &c * &tau);
                push(&mut pending, splice(&[Letter::A]), c.clone());
            }
            (Letter::N, Letter::B) => {
                push(&mut pending, splice(&[Letter::B, Letter::N]), &c * &tau);
                push(&mut pending, splice(&[Letter::B]), c.clone());
            }
            _ => unreachable!(),
        }
    }

    let mut out = alg.zero();
    for (w, c) in done {
        if c.is_zero() {
            continue;
        }
        let count = |l: Letter| w.iter().filter(|&&x| x == l).count() as u32;
        out = &out + &alg.monomial(count(Letter::B), count(Letter::N), count(Letter::A), c);
    }
    Ok(out)
}
