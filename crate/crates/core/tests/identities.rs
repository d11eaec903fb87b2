use std::collections::BTreeMap;

use proptest::prelude::*;
use qweyl::identities::{
    annihilation_check, build, expand_in_ab_powers, plan_suite, run_cases, run_suite, sl2q_solve, sl2q_triple,
    solve_scalar_factor, vacuum_action, verify, AlphaMode, Args, Catalog, IdentityCase, Status, SuiteConfig, Tag, Variant,
};
use qweyl::reps::{fock_matrix, fock_matrix_of_words, FockRep, WordPoly};
use qweyl::scalar::{Bindings, Rational, Scalar, Var};
use qweyl::weyl::{Algebra, NPoly, Pbw, RelationSpec};

fn p() -> Scalar {
    Scalar::p()
}
fn q() -> Scalar {
    Scalar::q()
}
fn one() -> Scalar {
    Scalar::one()
}

#[test]
fn thm5_sides_at_one() {
    let h = Algebra::hq();
    let (l, r) = build(&IdentityCase::new(Tag::Thm5, Args::N(1))).unwrap();
    let ba = h.word("ba").unwrap();
    assert_eq!(l, &ba * &(&ba - &h.one()));
    assert_eq!(r, h.word("bbaa").unwrap().scale(&q()));
}

#[test]
fn thm6_sides_at_one() {
    let (l, r) = build(&IdentityCase::new(Tag::Thm6, Args::N(1))).unwrap();
    let ext = l.algebra().clone();
    assert_eq!(ext.spec(), &RelationSpec::extended_default(NPoly::one()));
    let ba = ext.word("ba").unwrap();
    assert_eq!(l, &ba * &(&ba - &ext.one()));
    assert_eq!(r, ext.word("bbaa").unwrap().scale(&p()));
    // hand expansion: baba = b(p·ba + 1)a
    assert_eq!((&ba * &ba).render(), "p*b^2*a^2 + b*a");
}

#[test]
fn thm1_small_cases() {
    let (l, r) = build(&IdentityCase::new(Tag::Thm1a, Args::N(1))).unwrap();
    assert_eq!(l, r);
    assert_eq!(l, Algebra::hq().word("aba").unwrap());
    assert!(verify(&IdentityCase::new(Tag::Thm1a, Args::N(2))).unwrap().passed());
    assert!(verify(&IdentityCase::new(Tag::Thm1b, Args::N(3))).unwrap().passed());
}

#[test]
fn thm4a_residual_at_one() {
    let v = verify(&IdentityCase::new(Tag::Thm4a, Args::N(1))).unwrap();
    assert_eq!(v.status, Status::Fail);
    assert_eq!(v.residual_text, "(p*q-q+p-1)*b^3*a - (p-1)*b^2");
    let h = Algebra::hq();
    let expected = &h.monomial(3, 0, 1, &(&one() + &q()) * &(&p() - &one())) + &h.monomial(2, 0, 0, &one() - &p());
    assert_eq!(v.residual.as_ref().unwrap(), &expected);
    let at_one: Bindings = [(Var::P, one())].into();
    assert!(expected.substitute_params(&at_one).unwrap().is_zero());
    assert!(verify(&IdentityCase::new(Tag::Thm4a, Args::N(1)).variant(Variant::PScaled)).unwrap().passed());
    assert!(verify(&IdentityCase::new(Tag::Thm4a, Args::N(1)).bind(Var::P, one())).unwrap().passed());
}

#[test]
fn errata_fail_only_at_symbolic_p() {
    for tag in [Tag::Thm4a, Tag::Thm4b, Tag::Thm5] {
        for n in 1..=3 {
            let base = IdentityCase::new(tag, Args::N(n));
            let v = verify(&base).unwrap();
            assert!(!v.passed(), "{tag} n={n}");
            assert!(v.note.as_deref().unwrap_or("").contains("p-1"), "{tag} n={n}: {:?}", v.note);
            assert!(verify(&base.clone().bind(Var::P, one())).unwrap().passed());
            assert!(verify(&base.variant(Variant::PScaled)).unwrap().passed());
        }
    }
}

#[test]
fn expansions() {
    let h = Algebra::hq();
    let e = expand_in_ab_powers(&h.word("ab").unwrap()).unwrap();
    assert_eq!(e.scalar_coeffs().unwrap(), vec![Scalar::zero(), one()]);

    let x = h.word("aabb").unwrap();
    let e = expand_in_ab_powers(&x).unwrap();
    assert_eq!(e.coeffs.len(), 3);
    assert_eq!(e.reconstruct(&h).unwrap(), x);

    // ab = q·ba + p, so ba = ab/q - p/q
    let e = expand_in_ab_powers(&h.word("ba").unwrap()).unwrap();
    let qinv = q().inv().unwrap();
    assert_eq!(e.scalar_coeffs().unwrap(), vec![-(&p() * &qinv), qinv]);

    assert!(expand_in_ab_powers(&h.word("aab").unwrap()).is_err());
    assert!(expand_in_ab_powers(&(&h.word("ab").unwrap() + &h.b())).is_err());
}

#[test]
fn n_dependent_expansions() {
    let two_n = RelationSpec::extended_default(NPoly::n().scale(&Scalar::from_int(2)));
    for n in 1..=3 {
        for tag in [Tag::Lem4a, Tag::Lem4b] {
            assert!(verify(&IdentityCase::new(tag, Args::N(n)).relation(two_n.clone())).unwrap().passed(), "{tag} {n}");
        }
    }
    let ext = Algebra::shared(&two_n);
    let e = expand_in_ab_powers(&ext.word("ba").unwrap()).unwrap();
    assert!(e.scalar_coeffs().is_none());
}

#[test]
fn scalar_factors() {
    let h = Algebra::hq();
    let ba = h.word("ba").unwrap();
    let two_q = &Scalar::from_int(2) * &q();
    assert_eq!(solve_scalar_factor(&ba.scale(&two_q), &ba), Some(two_q));
    let x = &h.word("bbaa").unwrap().scale(&q()) + &ba;
    assert_eq!(solve_scalar_factor(&x, &h.word("bbaa").unwrap()), None);
    assert_eq!(solve_scalar_factor(&h.zero(), &h.zero()), Some(one()));
    assert_eq!(solve_scalar_factor(&ba, &h.zero()), None);
}

#[test]
fn first_sl2q_relation_gives_lambda() {
    let h = Algebra::hq();
    let t = sl2q_triple(&h, AlphaMode::Symbolic, Variant::AsStated).unwrap();
    let c0 = -t.jzero.coeff(Pbw::new(0, 0, 0));
    let x = &(&t.jzero * &t.jminus).scale(&q()) - &(&t.jminus * &t.jzero);
    let expected = &(&(&one() - &q()) * &c0) - &p();
    assert_eq!(solve_scalar_factor(&x, &t.jminus), Some(expected));
}

#[test]
fn sl2q_factors() {
    let at_one = Algebra::shared(&RelationSpec::hq_with(q(), one()));
    let f = sl2q_solve(&sl2q_triple(&at_one, AlphaMode::Symbolic, Variant::AsStated).unwrap()).unwrap();
    assert_eq!(f.c_minus, one());

    let h = Algebra::hq();
    let fail = sl2q_solve(&sl2q_triple(&h, AlphaMode::Symbolic, Variant::AsStated).unwrap()).unwrap_err();
    assert_eq!(fail.relation, 2);
    let at_p1: Bindings = [(Var::P, one())].into();
    let at_a1: Bindings = [(Var::A, one())].into();
    for (_, c) in fail.residual.terms() {
        assert!(c.substitute(&at_p1).unwrap().is_zero());
        assert!(c.substitute(&at_a1).unwrap().is_zero());
    }
    assert!(sl2q_solve(&sl2q_triple(&h, AlphaMode::Symbolic, Variant::PScaled).unwrap()).is_ok());

    for n in 0..=3 {
        let t = sl2q_triple(&at_one, AlphaMode::Integer(n), Variant::AsStated).unwrap();
        assert!(sl2q_solve(&t).is_ok(), "alpha={n}");
    }
}

#[test]
fn annihilation() {
    let at_one = Algebra::shared(&RelationSpec::hq_with(q(), one()));
    for n in 0..=4 {
        assert!(annihilation_check(&at_one, n, Variant::AsStated).unwrap().passed(), "n={n}");
    }
    let v = annihilation_check(&Algebra::hq(), 1, Variant::AsStated).unwrap();
    assert!(!v.passed());
    assert_eq!(v.residual_text, "-(p-1)*b^2");
    assert!(v.note.clone().unwrap().contains("b^0|0>"), "{v:?}");
    // b fails as well, and its image vanishes at p = 1
    let t = sl2q_triple(&Algebra::hq(), AlphaMode::Integer(1), Variant::AsStated).unwrap();
    let image = vacuum_action(&t.jplus.pow(2), &BTreeMap::from([(1, one())])).unwrap();
    let at_p1: Bindings = [(Var::P, one())].into();
    assert!(!image.is_empty());
    assert!(image.values().all(|c| c.substitute(&at_p1).unwrap().is_zero()));
    assert!(annihilation_check(&Algebra::hq(), 2, Variant::PScaled).unwrap().passed());
}

#[test]
fn b_commutes_past_polynomials_in_ab() {
    for coeffs in [vec![3], vec![0, 1], vec![1, -2, 1], vec![0, 0, 0, 5]] {
        assert!(verify(&IdentityCase::new(Tag::Eq14, Args::Poly(coeffs))).unwrap().passed());
    }
}

#[test]
fn lemma_one_at_numbers() {
    // a·b^3 at q = 2, p = 3: 8·b^3·a + 3·{3}·b^2 with {3} = 7
    let b: Bindings = [(Var::Q, Scalar::from_int(2)), (Var::P, Scalar::from_int(3))].into();
    let x = Algebra::hq().word("abbb").unwrap().substitute_params(&b).unwrap();
    assert_eq!(x.render(), "8*b^3*a + 21*b^2");
}

#[test]
fn suites() {
    assert!(run_suite(&SuiteConfig { catalogs: vec![], max_n: 4, jobs: 1 }).is_empty());
    let config = SuiteConfig { catalogs: vec![Catalog::Default], max_n: 3, jobs: 1 };
    let results = run_suite(&config);
    assert!(!results.is_empty());
    assert!(results.iter().all(|r| r.as_expected() && r.status() == Status::Pass));

    let errata = SuiteConfig { catalogs: vec![Catalog::Errata], max_n: 2, jobs: 1 };
    let serial = run_suite(&errata);
    let parallel = run_cases(plan_suite(&errata), 3);
    let key = |rs: &[qweyl::identities::CaseResult]| -> Vec<(String, String, String)> {
        rs.iter().map(|r| (r.case.args.to_string(), r.case.variant.to_string(), r.status().as_str().to_string())).collect()
    };
    assert_eq!(key(&serial), key(&parallel));
    assert!(serial.iter().all(|r| r.as_expected()));
    assert!(serial.iter().any(|r| r.status() == Status::Fail));
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Scalar::from_rational(Rational::new(n, d).unwrap()))
}

fn word_pow(x: &WordPoly, n: u32) -> WordPoly {
    x.pow(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The symbolic residual of the b^2 a product formula, specialized, acts
    /// on the Fock module exactly like the unreduced words.
    #[test]
    fn thm4a_residual_matches_fock(n in 1u32..=2, pv in small_rational(), qv in small_rational()) {
        let v = verify(&IdentityCase::new(Tag::Thm4a, Args::N(n))).unwrap();
        let b: Bindings = [(Var::P, pv.clone()), (Var::Q, qv.clone())].into();
        let residual = v.residual.unwrap().substitute_params(&b).unwrap();
        let qn = Scalar::qnum_in(&qv, n);
        let j = &WordPoly::parse("bba").unwrap() - &WordPoly::parse("b").unwrap().scale(&qn);
        let rhs = WordPoly::parse(&("b".repeat(2 * n as usize + 2) + &"a".repeat(n as usize + 1))).unwrap();
        let words = &word_pow(&j, n + 1) - &rhs.scale(&qv.pow((n * (n + 1)) as i32).unwrap());
        let rep = FockRep::hq(&qv, &pv, 3 * n as usize + 5);
        let direct = fock_matrix_of_words(&words, &rep).unwrap();
        prop_assert_eq!(direct.first_difference(&fock_matrix(&residual, &rep).unwrap()), None);
    }

    #[test]
    fn thm5_holds_at_p_one(n in 1u32..=3, qv in small_rational()) {
        let case = IdentityCase::new(Tag::Thm5, Args::N(n)).bind(Var::P, one()).bind(Var::Q, qv);
        prop_assert!(verify(&case).unwrap().passed());
    }
}
