use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{fock_matrix, fock_matrix_of_words, morphism_check, FockRep, PolyRep, RepError, UPoly, WordPoly};
use crate::identities::Verdict;
use crate::scalar::{Rational, Scalar};
use crate::weyl::{Algebra, Letter};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` words in `a, b` of length `0..=max_len`.
pub fn random_words(rng: &mut impl Rng, count: usize, max_len: usize) -> Vec<Vec<Letter>> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| if rng.gen_bool(0.5) { Letter::A } else { Letter::B }).collect()
        })
        .collect()
}

/// A nonzero rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 7`.
pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=7);
        if n != 0 {
            return Scalar::from_rational(Rational::new(n, d).expect("nonzero"));
        }
    }
}

/// Every word through [`morphism_check`]; fails on the first disagreement.
pub fn morphism_sweep(rep: &PolyRep, words: &[Vec<Letter>], k_max: usize) -> Result<Verdict, RepError> {
    let start = Instant::now();
    for w in words {
        let v = morphism_check(w, rep, k_max)?;
        if !v.passed() {
            let word = Letter::word_to_string(w);
            return Ok(Verdict::from_text(false, v.residual_text, start.elapsed()).with_note(format!("word {word}")));
        }
    }
    Ok(Verdict::from_text(true, "0".into(), start.elapsed()))
}

/// Letter-by-letter Fock matrices against the matrices of the normal forms.
pub fn fock_sweep(alg: &std::sync::Arc<Algebra>, rep: &FockRep, words: &[Vec<Letter>]) -> Result<Verdict, RepError> {
    let start = Instant::now();
    for w in words {
        let nf = alg.nf_of_word(w).map_err(|_| RepError::HasN)?;
        let direct = fock_matrix_of_words(&WordPoly::word(w), rep)?;
        if let Some((m, n)) = direct.first_difference(&fock_matrix(&nf, rep)?) {
            let word = Letter::word_to_string(w);
            return Ok(Verdict::from_text(false, format!("<{m}|{word}|{n}>"), start.elapsed()));
        }
    }
    Ok(Verdict::from_text(true, "0".into(), start.elapsed()))
}

fn power(l: Letter, n: u32) -> WordPoly {
    WordPoly::word(&vec![l; n as usize])
}

/// `x^n y^n x^n … x^n` with `2k+1` blocks, `x = a` unless swapped.
pub fn block_word(n: u32, k: u32, swapped: bool) -> WordPoly {
    let (x, y) = if swapped { (power(Letter::B, n), power(Letter::A, n)) } else { (power(Letter::A, n), power(Letter::B, n)) };
    (0..k).fold(x.clone(), |acc, _| &(&acc * &y) * &x)
}

/// `a^n b^n` or `b^n a^n`.
pub fn ab_word(n: u32, ab: bool) -> WordPoly {
    let (a, b) = (power(Letter::A, n), power(Letter::B, n));
    if ab {
        &a * &b
    } else {
        &b * &a
    }
}

fn commutator(x: &WordPoly, y: &WordPoly) -> WordPoly {
    &(x * y) - &(y * x)
}

/// Word identities that hold in every diagonal Fock module, as `(label, lhs - rhs)`.
pub fn sequence_identities(max_nk: u32, max_nm: u32) -> Vec<(String, WordPoly)> {
    let mut out = vec![("(aba)^2 = a^2b^2a^2".to_string(), &block_word(1, 1, false).pow(2) - &block_word(2, 1, false))];
    for swapped in [false, true] {
        for n in 1..=max_nk {
            for k in 1..=max_nk {
                let label = format!("block n={n},k={k}{}", if swapped { ",swapped" } else { "" });
                out.push((label, &block_word(1, k, swapped).pow(n) - &block_word(n, k, swapped)));
            }
        }
    }
    for n in 1..=max_nm {
        for m in 1..=max_nm {
            out.push((format!("[b^{n}a^{n}, b^{m}a^{m}]"), commutator(&ab_word(n, false), &ab_word(m, false))));
        }
    }
    out
}

/// `[a^n b^n, b^m a^m]` for `n, m ≤ max_nm`.
pub fn mixed_commutators(max_nm: u32) -> Vec<(String, WordPoly)> {
    let mut out = Vec::new();
    for n in 1..=max_nm {
        for m in 1..=max_nm {
            out.push((format!("[a^{n}b^{n}, b^{m}a^{m}]"), commutator(&ab_word(n, true), &ab_word(m, false))));
        }
    }
    out
}

/// Checks that each word polynomial vanishes on the window of `rep`.
pub fn vanish_on_window(rep: &FockRep, cases: &[(String, WordPoly)]) -> Result<Verdict, RepError> {
    let start = Instant::now();
    for (label, x) in cases {
        let m = fock_matrix_of_words(x, rep)?;
        let first = m.nonzero().next().map(|(k, c)| (k, c.clone()));
        if let Some(((i, j), c)) = first {
            let (neg, t) = crate::weyl::scalar_text(&c);
            let text = format!("<{i}|x|{j}> = {}{t}", if neg { "-" } else { "" });
            return Ok(Verdict::from_text(false, text, start.elapsed()).with_note(label.clone()));
        }
    }
    Ok(Verdict::from_text(true, "0".into(), start.elapsed()))
}

/// A random exact sequence `s_1..s_level`.
pub fn random_sequence(rng: &mut impl Rng, level: usize) -> FockRep {
    FockRep::new((0..level).map(|_| random_rational(rng)).collect())
}

/// The preimage chain of a random affine map.
pub fn random_affine_sequence(rng: &mut impl Rng, level: usize) -> (UPoly, FockRep) {
    let f = UPoly::from_coeffs(vec![random_rational(rng), random_rational(rng)]);
    let rep = FockRep::affine(&f, level).expect("affine with nonzero slope");
    (f, rep)
}
