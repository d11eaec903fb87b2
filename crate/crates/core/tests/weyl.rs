use std::sync::Arc;

use proptest::prelude::*;
use qweyl::scalar::{Bindings, Rational, Scalar, Var};
use qweyl::weyl::rewrite::{reduce_word, ReductionOrder};
use qweyl::weyl::{Algebra, Grading, Letter, NPoly, NormalForm, Pbw, RelationSpec, WeylError};

fn q() -> Scalar {
    Scalar::q()
}
fn p() -> Scalar {
    Scalar::p()
}

#[test]
fn ab_reorders_to_q_ba_plus_p() {
    let h = Algebra::hq();
    let ab = h.word("ab").unwrap();
    let terms = ab.terms();
    assert_eq!(terms, vec![(Pbw::new(1, 0, 1), q()), (Pbw::new(0, 0, 0), p())]);
    assert_eq!(ab.render(), "q*b*a + p");
}

#[test]
fn abb_matches_the_second_reordering() {
    let h = Algebra::hq();
    let x = h.word("abb").unwrap();
    assert_eq!(x.render(), "q^2*b^2*a + p*(q+1)*b");
}

#[test]
fn baba() {
    let h = Algebra::hq();
    let x = h.word("baba").unwrap();
    let expected = &h.monomial(2, 0, 2, q()) + &h.monomial(1, 0, 1, p());
    assert_eq!(x, expected);
}

#[test]
fn extended_with_constant_f() {
    let e = Algebra::new(RelationSpec::extended_default(NPoly::one()));
    let ba = e.word("ba").unwrap();
    let sq = &ba * &ba;
    assert_eq!(sq, &e.monomial(2, 0, 2, p()) + &e.monomial(1, 0, 1, Scalar::one()));
}

#[test]
fn n_commutes_with_ba_and_ab() {
    let e = Algebra::new(RelationSpec::extended_default(NPoly::n().scale(&Scalar::from_int(2))));
    let n = e.n().unwrap();
    assert!(n.commutator(&e.word("ba").unwrap()).unwrap().is_zero());
    assert!(n.commutator(&e.word("aabb").unwrap()).unwrap().is_zero());
    assert!(n.commutator(&e.word("bbaa").unwrap()).unwrap().is_zero());
}

#[test]
fn n_shift_rules() {
    let e = Algebra::new(RelationSpec::extended_default(NPoly::one()));
    // aN = (qN + 1)a
    let an = e.word("aN").unwrap();
    assert_eq!(an, &e.monomial(0, 1, 1, q()) + &e.a());
    let nb = e.word("Nb").unwrap();
    assert_eq!(nb, &e.monomial(1, 1, 0, q()) + &e.b());
}

#[test]
fn n_rejected_without_extension() {
    let h = Algebra::hq();
    assert_eq!(h.word("aNb").unwrap_err(), WeylError::NWithoutExtension);
    assert!(matches!(h.word("abc"), Err(WeylError::InvalidLetter('c'))));
}

#[test]
fn relation_mismatch_is_an_error() {
    let h = Algebra::hq();
    let e = Algebra::new(RelationSpec::extended_default(NPoly::one()));
    assert_eq!(h.a().try_mul(&e.b()).unwrap_err(), WeylError::RelationMismatch);
    // equal relations in separate engines are compatible
    let h2 = Algebra::hq();
    assert_eq!(h.a().try_mul(&h2.b()).unwrap(), h.word("ab").unwrap());
}

#[test]
fn powers_and_units() {
    let h = Algebra::hq();
    let aba = h.word("aba").unwrap();
    assert_eq!(aba.pow(0), h.one());
    assert_eq!(aba.pow(1), aba);
    assert_eq!(aba.pow(2), h.word("aabbaa").unwrap());
    assert_eq!(h.b().pow(3), h.monomial(3, 0, 0, Scalar::one()));
    assert_eq!(&aba * &h.one(), aba);
}

#[test]
fn commutators_of_ab_powers_vanish() {
    let h = Algebra::hq();
    let x = h.word("ab").unwrap();
    assert!(x.commutator(&x).unwrap().is_zero());
    assert!(x.commutator(&h.word("aabb").unwrap()).unwrap().is_zero());
}

#[test]
fn grading() {
    let h = Algebra::hq();
    let jplus = &h.word("bba").unwrap() - &h.b().scale(&Scalar::qnum(2));
    assert_eq!(jplus.grade(), Grading::Homogeneous(1));
    assert_eq!(h.word("ab").unwrap().grade(), Grading::Homogeneous(0));
    assert_eq!((&h.a() + &h.b()).grade(), Grading::Inhomogeneous);
    assert_eq!(h.zero().grade(), Grading::Zero);
}

#[test]
fn substitution() {
    let h = Algebra::hq();
    let mut b = Bindings::new();
    b.insert(Var::P, Scalar::one());
    let x = h.word("ab").unwrap().substitute_params(&b).unwrap();
    assert_eq!(x.render(), "q*b*a + 1");
    b.insert(Var::Q, Scalar::one());
    let x = h.word("ab").unwrap().substitute_params(&b).unwrap();
    assert_eq!(x.render(), "b*a + 1");

    let mut b = Bindings::new();
    b.insert(Var::Q, Scalar::from_int(2));
    b.insert(Var::P, Scalar::from_int(3));
    let x = h.word("abbb").unwrap().substitute_params(&b).unwrap();
    assert_eq!(x.render(), "8*b^3*a + 21*b^2");
}

#[test]
fn lemma_one_law() {
    let h = Algebra::hq();
    for n in 1..=8u32 {
        let bn = h.monomial(n, 0, 0, Scalar::one());
        let an = h.monomial(0, 0, n, Scalar::one());
        let qn = Scalar::q_pow(n as i32);
        let pn = &p() * &Scalar::qnum(n);
        let lhs = &(&h.a() * &bn) - &(&bn * &h.a()).scale(&qn);
        assert_eq!(lhs, h.monomial(n - 1, 0, 0, pn.clone()), "n = {n}");
        let lhs = &(&an * &h.b()) - &(&h.b() * &an).scale(&qn);
        assert_eq!(lhs, h.monomial(0, 0, n - 1, pn), "n = {n}");
    }
}

#[test]
fn rendering_of_fractions_and_signs() {
    let h = Algebra::hq();
    let x = h.word("ba").unwrap();
    let c = Scalar::one().checked_div(&(&q() + &Scalar::one())).unwrap();
    assert_eq!(x.scale(&c).render(), "1/(q+1)*b*a");
    assert_eq!((-&x).render(), "-b*a");
    assert_eq!(h.zero().render(), "0");
    let y = &h.one().scale(&(&q() - &Scalar::one())) - &x.scale(&Scalar::from_int(2));
    assert_eq!(y.render(), "-2*b*a + (q-1)");
    assert_eq!(x.scale(&Scalar::q_pow(-2)).render(), "q^-2*b*a");
}

fn letters(with_n: bool) -> impl Strategy<Value = Vec<Letter>> {
    let pool: Vec<Letter> = if with_n { vec![Letter::A, Letter::B, Letter::N] } else { vec![Letter::A, Letter::B] };
    prop::collection::vec(prop::sample::select(pool), 0..=8)
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Scalar::from_rational(Rational::new(n, d).unwrap()))
}

fn numeric_hq(p: Scalar, q: Scalar) -> Arc<Algebra> {
    Algebra::new(RelationSpec::hq_with(q, p))
}

fn numeric_ext(p: Scalar, q: Scalar, f: NPoly) -> Arc<Algebra> {
    Algebra::new(RelationSpec::extended(p, f, q))
}

fn element(alg: &Arc<Algebra>, words: &[(Vec<Letter>, i64)]) -> NormalForm {
    let mut acc = alg.zero();
    for (w, c) in words {
        acc = &acc + &alg.nf_of_word(w).unwrap().scale(&Scalar::from_int(*c));
    }
    acc
}

fn combo(with_n: bool) -> impl Strategy<Value = Vec<(Vec<Letter>, i64)>> {
    prop::collection::vec((prop::collection::vec(prop::sample::select(if with_n {
        vec![Letter::A, Letter::B, Letter::N]
    } else {
        vec![Letter::A, Letter::B]
    }), 0..=4), -3i64..=3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_orders_agree_hq(w in letters(false), p in small_rational(), q in small_rational()) {
        let h = numeric_hq(p, q);
        let banded = h.nf_of_word(&w).unwrap();
        let rtl = h.nf_of_word_rtl(&w).unwrap();
        let left = reduce_word(&h, &w, ReductionOrder::LeftmostFirst).unwrap();
        let right = reduce_word(&h, &w, ReductionOrder::RightmostFirst).unwrap();
        prop_assert_eq!(&banded, &rtl);
        prop_assert_eq!(&banded, &left);
        prop_assert_eq!(&banded, &right);
    }

    #[test]
    fn reduction_orders_agree_extended(w in letters(true), p in small_rational(), q in small_rational(), f0 in -2i64..=2, f1 in -2i64..=2) {
        let f = NPoly::from_coeffs(vec![Scalar::from_int(f0), Scalar::from_int(f1)]);
        let e = numeric_ext(p, q, f);
        let banded = e.nf_of_word(&w).unwrap();
        let left = reduce_word(&e, &w, ReductionOrder::LeftmostFirst).unwrap();
        let right = reduce_word(&e, &w, ReductionOrder::RightmostFirst).unwrap();
        prop_assert_eq!(&banded, &left);
        prop_assert_eq!(&banded, &right);
    }

    #[test]
    fn associativity(x in combo(false), y in combo(false), z in combo(false), p in small_rational(), q in small_rational()) {
        let h = numeric_hq(p, q);
        let (x, y, z) = (element(&h, &x), element(&h, &y), element(&h, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn associativity_extended(x in combo(true), y in combo(true), z in combo(true)) {
        let e = Algebra::new(RelationSpec::extended_default(NPoly::n().scale(&Scalar::from_int(2))));
        let (x, y, z) = (element(&e, &x), element(&e, &y), element(&e, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn grading_is_additive(x in letters(false), y in letters(false)) {
        let h = Algebra::hq();
        let (x, y) = (h.nf_of_word(&x).unwrap(), h.nf_of_word(&y).unwrap());
        if let (Grading::Homogeneous(gx), Grading::Homogeneous(gy)) = (x.grade(), y.grade()) {
            let g = (&x * &y).grade();
            prop_assert!(g == Grading::Homogeneous(gx + gy) || g == Grading::Zero);
        }
    }

    #[test]
    fn memo_is_transparent(w in letters(true)) {
        let spec = RelationSpec::extended_default(NPoly::from_coeffs(vec![Scalar::one(), Scalar::q()]));
        let with = Algebra::new(spec.clone());
        let without = Algebra::without_memo(spec);
        let x = with.nf_of_word(&w).unwrap();
        let y = without.nf_of_word(&w).unwrap();
        prop_assert_eq!(x.terms(), y.terms());
    }
}

#[test]
fn concurrent_fill_is_idempotent() {
    use rayon::prelude::*;
    let h = Algebra::hq();
    let words: Vec<String> = (0..32).map(|k| format!("{}{}", "a".repeat(k % 5 + 1), "b".repeat(k % 4 + 1))).collect();
    let par: Vec<NormalForm> = words.par_iter().map(|w| h.word(w).unwrap()).collect();
    let fresh = Algebra::without_memo(RelationSpec::hq());
    for (w, x) in words.iter().zip(par) {
        assert_eq!(x, fresh.word(w).unwrap());
    }
}
