use proptest::prelude::*;
use qweyl::expr::{
    eval, eval_with, parse, parse_bindings, parse_equation, parse_npoly, parse_scalar, parse_script, print_canonical,
    run_statements, Ast, EvalError, Outcome, Statement,
};
use qweyl::identities::Status;
use qweyl::scalar::{Bindings, Rational, Scalar, Var};
use qweyl::weyl::{Algebra, Letter, NPoly, RelationSpec, WeylError};

fn hq_eval(s: &str) -> qweyl::weyl::NormalForm {
    eval(&parse(s).unwrap(), &Algebra::hq()).unwrap()
}

fn err_at(s: &str) -> (usize, usize) {
    let e = parse(s).unwrap_err();
    (e.line, e.column)
}

#[test]
fn paper_style_scripts_parse() {
    assert!(matches!(parse("(a*b*a)^3 - a^3*b^3*a^3").unwrap(), Ast::Sub(..)));
    assert!(matches!(parse("b*a*(b*a - qnum(1))").unwrap(), Ast::Mul(..)));
}

#[test]
fn double_caret_is_rejected_at_column_three() {
    let e = parse("a^^2").unwrap_err();
    assert_eq!((e.line, e.column), (1, 3));
    assert!(e.expected.contains(&"integer".to_string()));
}

#[test]
fn eval_examples() {
    assert!(hq_eval("a*b - q*b*a - p").is_zero());
    assert!(hq_eval("comm(a*b, a^2*b^2)").is_zero());
    assert_eq!(print_canonical(&hq_eval("3/2 * b")), "3/2*b");
    assert_eq!(print_canonical(&hq_eval("a*b")), "q*b*a + p");
    assert_eq!(print_canonical(&hq_eval("a*b - a*b")), "0");
    assert_eq!(print_canonical(&hq_eval("a*b*b")), "q^2*b^2*a + p*(q+1)*b");
}

#[test]
fn whitespace_is_ignored() {
    assert_eq!(hq_eval(" a * b\t- q *b*a"), hq_eval("a*b-q*b*a"));
}

#[test]
fn expression_level() {
    assert_eq!(print_canonical(&hq_eval("-a + a")), "0");
    assert_eq!(err_at("a +"), (1, 4));
    assert_eq!(err_at("a + + b"), (1, 5));
}

#[test]
fn term_level() {
    assert_eq!(print_canonical(&hq_eval("b*2")), "2*b");
    assert_eq!(print_canonical(&hq_eval("b/2")), "1/2*b");
    assert_eq!(err_at("a * "), (1, 5));
    assert_eq!(err_at("a*/b"), (1, 3));
}

#[test]
fn juxtaposition_needs_a_star() {
    let e = parse("a b").unwrap_err();
    assert_eq!((e.line, e.column), (1, 3));
    assert!(e.expected[0].contains("explicit `*`"));
    // `ab` is one unknown identifier, not a product
    assert_eq!(err_at("ab"), (1, 1));
}

#[test]
fn factor_level() {
    assert_eq!(print_canonical(&hq_eval("b^3")), "b^3");
    assert_eq!(print_canonical(&hq_eval("q^-2*b")), "q^-2*b");
    assert_eq!(print_canonical(&hq_eval("b^0")), "1");
    assert_eq!(err_at("b^x"), (1, 3));
    assert_eq!(err_at("b^-"), (1, 4));
    assert_eq!(err_at("b^2^3"), (1, 4));
}

#[test]
fn atoms() {
    for s in ["a", "b", "p", "q", "A", "d", "7", "qnum(3)", "comm(a, b)", "(a)"] {
        assert!(parse(s).is_ok(), "{s}");
    }
    assert_eq!(print_canonical(&hq_eval("qnum(3)")), "(q^2+q+1)");
    assert_eq!(print_canonical(&hq_eval("comm(a, b)")), "(q-1)*b*a + p");
    assert_eq!(err_at("qnum(x)"), (1, 6));
    assert_eq!(err_at("qnum 3"), (1, 6));
    assert_eq!(err_at("comm(a b)"), (1, 8));
    assert_eq!(err_at("comm(a, b"), (1, 10));
    assert_eq!(err_at("(a*b"), (1, 5));
    assert_eq!(err_at(")"), (1, 1));
    assert_eq!(err_at("x"), (1, 1));
    assert_eq!(err_at("a $ b"), (1, 3));
}

#[test]
fn errors_carry_lines() {
    let e = parse_script("normalize a*b\nverify a == \n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 13));
}

#[test]
fn scalar_only_operations() {
    let h = Algebra::hq();
    assert_eq!(eval(&parse("a/b").unwrap(), &h), Err(EvalError::NotScalar("division")));
    assert_eq!(eval(&parse("a^-1").unwrap(), &h), Err(EvalError::NotScalar("a negative exponent")));
    assert_eq!(eval(&parse("b/(q-q)").unwrap(), &h), Err(EvalError::DivisionByZero));
    assert_eq!(print_canonical(&hq_eval("b/(q+1)*a")), "1/(q+1)*b*a");
}

#[test]
fn n_needs_the_extension() {
    let e = eval(&parse("N*a").unwrap(), &Algebra::hq()).unwrap_err();
    assert_eq!(e, EvalError::Weyl(WeylError::NWithoutExtension));
    let ext = Algebra::shared(&RelationSpec::extended_default(NPoly::one()));
    assert_eq!(print_canonical(&eval(&parse("a*N").unwrap(), &ext).unwrap()), "q*N*a + a");
}

#[test]
fn bindings_and_helpers() {
    let b = parse_bindings("p=1, q=2/3").unwrap();
    assert_eq!(b[&Var::P], Scalar::one());
    assert_eq!(b[&Var::Q], Scalar::from_rational(Rational::new(2, 3).unwrap()));
    assert!(parse_bindings("p=1,").is_err());
    assert!(parse_bindings("x=1").is_err());
    assert!(parse_bindings("q=1/0").is_err());
    assert_eq!(parse_npoly("2*N").unwrap(), NPoly::n().scale(&Scalar::from_int(2)));
    assert!(parse_npoly("a*N").is_err());
    assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::q_pow(-1));
    assert!(parse_scalar("b").is_err());
    let (l, r) = parse_equation("(a*b*a)^2 == a^2*b^2*a^2").unwrap();
    assert_eq!(hq_eval(&l.to_string()), hq_eval(&r.to_string()));
    assert!(parse_equation("a == b == a").is_err());
}

#[test]
fn scripts_run_in_order() {
    let src = "# reordering\nnormalize a*b\nverify (a*b*a)^2 == a^2*b^2*a^2\nwith p=1, q=2\nnormalize a*b; expand a^2*b^2\nwith p=p\nverify a*b == b*a\n";
    let st = parse_script(src).unwrap();
    assert_eq!(st.len(), 7);
    assert!(matches!(st[2], Statement::With(_)));
    let res = run_statements(&st, &RelationSpec::hq(), &Bindings::new());
    let text = |k: usize| match res[k].outcome.as_ref().unwrap() {
        Outcome::Normalized(x) => print_canonical(x),
        Outcome::Expanded { text, .. } => text.clone(),
        Outcome::Verified { verdict, .. } => verdict.status.as_str().to_string(),
        Outcome::Bound(_) => String::new(),
    };
    assert_eq!(text(0), "q*b*a + p");
    assert_eq!(text(1), "pass");
    assert_eq!(text(3), "2*b*a + 1");
    assert!(text(4).ends_with("*(a*b)^2"), "{}", text(4));
    assert_eq!(text(6), "fail");
    assert!(res[6].params.is_empty());
}

#[test]
fn expansion_text_parses_back() {
    let st = parse_script("expand a^3*b^3").unwrap();
    let res = run_statements(&st, &RelationSpec::hq(), &Bindings::new());
    let Outcome::Expanded { text, .. } = res[0].outcome.as_ref().unwrap() else { panic!() };
    assert_eq!(hq_eval(text), hq_eval("a^3*b^3"));
    let bad = run_statements(&parse_script("expand b").unwrap(), &RelationSpec::hq(), &Bindings::new());
    assert!(bad[0].outcome.is_err());
}

fn leaf(with_n: bool) -> BoxedStrategy<Ast> {
    let mut leaves = vec![
        Just(Ast::Gen(Letter::A)).boxed(),
        Just(Ast::Gen(Letter::B)).boxed(),
        Just(Ast::Param(Var::P)).boxed(),
        Just(Ast::Param(Var::Q)).boxed(),
        (0i64..5).prop_map(|n| Ast::Int(n.into())).boxed(),
        (0u32..4).prop_map(Ast::QNum).boxed(),
    ];
    if with_n {
        leaves.push(Just(Ast::Gen(Letter::N)).boxed());
    }
    prop::strategy::Union::new(leaves).boxed()
}

fn group(x: Ast) -> Box<Ast> {
    match x {
        Ast::Gen(_) | Ast::Param(_) | Ast::Int(_) | Ast::QNum(_) => Box::new(x),
        other => Box::new(Ast::Group(Box::new(other))),
    }
}

fn ast_strategy(with_n: bool) -> impl Strategy<Value = Ast> {
    leaf(with_n).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Add(group(x), group(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Sub(group(x), group(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Ast::Mul(group(x), group(y))),
            inner.clone().prop_map(|x| Ast::Neg(group(x))),
            (inner.clone(), 0i32..3).prop_map(|(x, e)| Ast::Pow(group(x), e)),
            (inner.clone(), 1i64..4).prop_map(|(x, d)| Ast::Div(group(x), Box::new(Ast::Int(d.into())))),
            inner.clone().prop_map(|x| Ast::Div(group(x), group(Ast::Add(Box::new(Ast::Param(Var::Q)), Box::new(Ast::Int(1.into())))))),
            inner.clone().prop_map(|x| Ast::Mul(group(x), group(Ast::Pow(Box::new(Ast::Param(Var::Q)), -2)))),
            (inner.clone(), inner).prop_map(|(x, y)| Ast::Comm(Box::new(x), Box::new(y))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_text_round_trips(ast in ast_strategy(false)) {
        let h = Algebra::hq();
        let x = eval(&ast, &h).unwrap();
        let back = eval(&parse(&print_canonical(&x)).unwrap(), &h).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn canonical_text_round_trips_with_n(ast in ast_strategy(true)) {
        let ext = Algebra::shared(&RelationSpec::extended_default(NPoly::n().scale(&Scalar::from_int(2))));
        let x = eval(&ast, &ext).unwrap();
        let back = eval(&parse(&print_canonical(&x)).unwrap(), &ext).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn source_text_round_trips(ast in ast_strategy(true)) {
        prop_assert_eq!(parse(&ast.to_string()).unwrap(), ast);
    }

    #[test]
    fn bindings_commute_with_eval(ast in ast_strategy(false), p in -3i64..4, q in 1i64..4) {
        let b: Bindings = [(Var::P, Scalar::from_int(p)), (Var::Q, Scalar::from_int(q))].into();
        let symbolic = eval(&ast, &Algebra::hq()).unwrap();
        let alg = Algebra::shared(&RelationSpec::hq().substitute(&b).unwrap());
        let bound = eval_with(&ast, &alg, &b).unwrap();
        prop_assert_eq!(symbolic.substitute_into(&alg, &b).unwrap(), bound);
    }
}

#[test]
fn verify_statement_reports_residual() {
    let res = run_statements(&parse_script("verify a*b == b*a").unwrap(), &RelationSpec::hq(), &Bindings::new());
    let Outcome::Verified { verdict, .. } = res[0].outcome.as_ref().unwrap() else { panic!() };
    assert_eq!(verdict.status, Status::Fail);
    assert_eq!(verdict.residual_text, "(q-1)*b*a + p");
}
