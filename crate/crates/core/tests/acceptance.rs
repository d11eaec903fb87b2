//! Acceptance run: one PASS/FAIL line per criterion, each with a pinned time
//! limit. A criterion passes only if every check holds and it finishes in time.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qweyl::expr::{eval, parse, parse_equation, print_canonical, run_statements, Ast, Statement};
use qweyl::identities::{
    build, expand_in_ab_powers, sl2q_solve, sl2q_triple, verify, AlphaMode, Args, Form, IdentityCase, Tag, Variant,
};
use qweyl::report::{self, RunOptions};
use qweyl::reps::crosscheck::{random_rational, rng};
use qweyl::reps::{fock_matrix_of_words, FockRep, WordPoly};
use qweyl::scalar::{Bindings, Scalar, Var};
use qweyl::weyl::{Algebra, Letter, NPoly, RelationSpec};
use rand::Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(case: IdentityCase) -> Result<(), String> {
    let label = format!("{} {} {} {}", case.tag, case.args, case.variant, case.params_text());
    match verify(&case) {
        Ok(v) if v.passed() => Ok(()),
        Ok(v) => Err(format!("{label}: residual {}", v.residual_text)),
        Err(e) => Err(format!("{label}: {e}")),
    }
}

fn p_is_one(case: IdentityCase) -> IdentityCase {
    case.bind(Var::P, Scalar::one())
}

fn sl2_relation() -> RelationSpec {
    RelationSpec::extended(Scalar::one(), NPoly::n().scale(&Scalar::from_int(2)), Scalar::one())
}

fn two_n_relation() -> RelationSpec {
    RelationSpec::extended_default(NPoly::n().scale(&Scalar::from_int(2)))
}

fn letters(s: &str) -> WordPoly {
    WordPoly::parse(s).expect("word")
}

fn random_pq(r: &mut impl Rng) -> (Scalar, Scalar) {
    (random_rational(r), random_rational(r))
}

/// Fock matrices of two word polynomials agree on the safe window.
fn fock_agree(x: &WordPoly, y: &WordPoly, rep: &FockRep) -> Result<(), String> {
    let (mx, my) = (fock_matrix_of_words(x, rep).map_err(|e| e.to_string())?, fock_matrix_of_words(y, rep).map_err(|e| e.to_string())?);
    match mx.first_difference(&my) {
        None => Ok(()),
        Some((m, n)) => Err(format!("<{m}|.|{n}> differs: {x} vs {y}")),
    }
}

fn multisets(max: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (1..=max).map(|n| vec![n]).collect();
    for x in 1..=max {
        for y in x..=max {
            out.push(vec![x, y]);
        }
    }
    out
}

fn criterion_1() -> Check {
    for n in 1..=6 {
        passes(IdentityCase::new(Tag::Thm1a, Args::N(n)))?;
        passes(IdentityCase::new(Tag::Thm1b, Args::N(n)))?;
    }
    Ok("12 cases".into())
}

fn criterion_2() -> Check {
    for n in 1..=8 {
        passes(IdentityCase::new(Tag::Lem1a, Args::N(n)))?;
        passes(IdentityCase::new(Tag::Lem1b, Args::N(n)))?;
    }
    Ok("16 cases".into())
}

fn criterion_3() -> Check {
    let mut count = 0;
    let mut run = |case: IdentityCase| {
        count += 1;
        passes(case)
    };
    for swapped in [false, true] {
        for k in 1..=2 {
            for n in 1..=4 {
                run(IdentityCase::new(Tag::Cor1, Args::NK { n, k, swapped }))?;
                for m in n + 1..=4 {
                    run(IdentityCase::new(Tag::Cor2a, Args::NMK { n, m, k, swapped }))?;
                }
            }
            let sets = multisets(4);
            for (x, ns) in sets.iter().enumerate() {
                for ms in &sets[x + 1..] {
                    run(IdentityCase::new(Tag::Cor2b, Args::Sets { ns: ns.clone(), ms: ms.clone(), k, swapped }))?;
                }
            }
        }
    }
    for tag in [Tag::Thm2a, Tag::Thm2b, Tag::Thm2c] {
        for n in 1..=4 {
            for m in 1..=4 {
                run(IdentityCase::new(tag, Args::NM { n, m }))?;
            }
        }
    }
    let mut forms: Vec<Vec<Form>> = Vec::new();
    for set in multisets(4) {
        let mut acc = vec![Vec::new()];
        for n in set {
            acc = acc
                .into_iter()
                .flat_map(|v: Vec<Form>| {
                    [true, false].map(|ab| {
                        let mut w = v.clone();
                        w.push(Form { n, ab });
                        w
                    })
                })
                .collect();
        }
        forms.extend(acc);
    }
    for (x, left) in forms.iter().enumerate() {
        for right in &forms[x + 1..] {
            run(IdentityCase::new(Tag::Cor3, Args::Forms { left: left.clone(), right: right.clone() }))?;
        }
    }
    Ok(format!("{count} cases"))
}

fn criterion_4() -> Check {
    let alg = Algebra::hq();
    let mut r = rng(4);
    let points: Vec<(Scalar, Scalar)> = (0..3).map(|_| random_pq(&mut r)).collect();
    for n in 1..=5u32 {
        for ab in [true, false] {
            let word = if ab { "a".repeat(n as usize) + &"b".repeat(n as usize) } else { "b".repeat(n as usize) + &"a".repeat(n as usize) };
            let x = alg.word(&word).map_err(|e| e.to_string())?;
            let e = expand_in_ab_powers(&x).map_err(|e| e.to_string())?;
            ensure(e.coeffs.len() <= n as usize + 1, || format!("{word}: {} coefficients", e.coeffs.len()))?;
            ensure(e.reconstruct(&alg).map_err(|e| e.to_string())? == x, || format!("{word}: reconstruction differs"))?;
            let coeffs = e.scalar_coeffs().ok_or_else(|| format!("{word}: coefficient depends on N"))?;
            for (p, q) in &points {
                let b: Bindings = [(Var::P, p.clone()), (Var::Q, q.clone())].into();
                let mut sum = WordPoly::zero();
                for (k, c) in coeffs.iter().enumerate() {
                    let c = c.substitute(&b).map_err(|e| e.to_string())?;
                    sum = &sum + &letters(&"ab".repeat(k)).scale(&c);
                }
                fock_agree(&letters(&word), &sum, &FockRep::hq(q, p, 14)).map_err(|e| format!("{word} at p={p}, q={q}: {e}"))?;
            }
        }
    }
    Ok("10 expansions, 3 (p, q) points, L=14".into())
}

fn criterion_5() -> Check {
    for tag in [Tag::Thm4a, Tag::Thm4b, Tag::Thm5] {
        for n in 1..=4 {
            let base = IdentityCase::new(tag, Args::N(n));
            passes(p_is_one(base.clone()))?;
            passes(base.clone().variant(Variant::PScaled))?;
            let v = verify(&base).map_err(|e| e.to_string())?;
            let nonzero = v.residual.as_ref().is_some_and(|r| !r.is_zero());
            ensure(!v.passed() && nonzero, || format!("{tag} n={n} as stated passes at symbolic p"))?;
        }
    }

    let alg = Algebra::hq();
    let (p, q, one) = (Scalar::p(), Scalar::q(), Scalar::one());
    let expected = &alg.monomial(3, 0, 1, &(&one + &q) * &(&p - &one)) + &alg.monomial(2, 0, 0, &one - &p);
    let v = verify(&IdentityCase::new(Tag::Thm4a, Args::N(1))).map_err(|e| e.to_string())?;
    ensure(v.residual.as_ref() == Some(&expected), || format!("residual {} != {}", v.residual_text, expected.render()))?;

    // (b^2 a - b)^2 - q^2 b^4 a^2 against the claimed residual, letter by letter.
    let mut r = rng(5);
    for _ in 0..5 {
        let (p0, q0) = random_pq(&mut r);
        let j = &letters("bba") - &letters("b");
        let lhs = &(&j * &j) - &letters("bbbbaa").scale(&(&q0 * &q0));
        let claim = &letters("bbba").scale(&(&(&one + &q0) * &(&p0 - &one))) + &letters("bb").scale(&(&one - &p0));
        fock_agree(&lhs, &claim, &FockRep::hq(&q0, &p0, 14)).map_err(|e| format!("p={p0}, q={q0}: {e}"))?;
    }
    Ok(format!("36 cases; n=1 residual {}", v.residual_text))
}

fn criterion_6() -> Check {
    let lem3 = IdentityCase::new(Tag::Lem3, Args::Alpha(None));
    let triple = |case: &IdentityCase, variant| {
        let alg = case.algebra().map_err(|e| e.to_string())?;
        sl2q_triple(&alg, AlphaMode::Symbolic, variant).map_err(|e| e.to_string())
    };
    let at_one = sl2q_solve(&triple(&p_is_one(lem3.clone()), Variant::AsStated)?).map_err(|e| format!("p=1: {e}"))?;
    match sl2q_solve(&triple(&lem3, Variant::AsStated)?) {
        Err(f) if f.relation == 2 => {}
        Err(f) => return Err(format!("symbolic p fails at relation {} instead of 2", f.relation)),
        Ok(_) => return Err("symbolic p as stated is solvable".into()),
    }
    sl2q_solve(&triple(&lem3, Variant::PScaled)?).map_err(|e| format!("p_scaled: {e}"))?;
    for n in 0..=4 {
        passes(p_is_one(IdentityCase::new(Tag::Ann, Args::N(n))))?;
    }
    Ok(format!("p=1 factors {at_one}"))
}

fn criterion_7() -> Check {
    for n in 1..=4 {
        let thm6 = IdentityCase::new(Tag::Thm6, Args::N(n));
        passes(thm6.clone())?;
        // the N-free case is the central one with σ = p and remainder 1
        let thm5 = IdentityCase::new(Tag::Thm5, Args::N(n)).relation(RelationSpec::hq_with(Scalar::p(), Scalar::one()));
        let (l6, r6) = build(&thm6).map_err(|e| e.to_string())?;
        let (l5, r5) = build(&thm5).map_err(|e| e.to_string())?;
        ensure(l6.render() == l5.render() && r6.render() == r5.render(), || format!("n={n}: {} vs {}", l6.render(), l5.render()))?;
    }
    for n in 1..=3 {
        passes(IdentityCase::new(Tag::Thm6, Args::N(n)).relation(sl2_relation()))?;
        for tag in [Tag::Lem4a, Tag::Lem4b] {
            passes(IdentityCase::new(tag, Args::N(n)))?;
            passes(IdentityCase::new(tag, Args::N(n)).relation(two_n_relation()))?;
        }
    }
    Ok("19 cases, 4 shape comparisons".into())
}

fn criterion_8() -> Check {
    let rows = report::rep_rows(None, None, None, None, &RunOptions::default());
    if let Some(bad) = rows.iter().find(|r| !r.as_expected()) {
        return Err(format!("{} {} {}: {}", bad.id, bad.args, bad.variant, bad.status));
    }
    let find = |id: &str, n: &str| rows.iter().find(|r| r.id == id && r.args.starts_with(n));
    let e1b = find("REP-1b", "n=1,").ok_or("no 1b row")?;
    ensure(e1b.status == "fail" && e1b.note.as_deref().is_some_and(|t| t.contains("d^2*x^2*d^2")), || format!("{e1b:?}"))?;
    for n in 1..=3 {
        let row = find("REP-22", &format!("n={n},")).ok_or("no 22 row")?;
        let note = row.note.clone().unwrap_or_default();
        ensure(note.starts_with("factor 1 ") && note.contains("independent") && note.contains("disagrees"), || note.clone())?;
    }
    ensure(rows.iter().filter(|r| r.id == "REP-relation").count() == 5, || "relation table incomplete".into())?;
    Ok(format!("{} rows", rows.len()))
}

fn criterion_9() -> Check {
    let rows = report::crosscheck_rows(&RunOptions::default());
    if let Some(bad) = rows.iter().find(|r| r.status != "pass") {
        return Err(format!("{} {} {}: {:?}", bad.id, bad.variant, bad.args, bad.residual_text));
    }
    let morphism = rows.iter().filter(|r| r.id == "XCHK-morphism").count();
    let fock = rows.iter().filter(|r| r.id == "XCHK-fock").count();
    ensure(morphism == 4 && fock == 1, || format!("{morphism} morphism rows, {fock} fock rows"))?;
    Ok(format!("{} rows", rows.len()))
}

fn random_ast(r: &mut impl Rng, depth: u32) -> Ast {
    let group = |x: Ast| match x {
        Ast::Gen(_) | Ast::Param(_) | Ast::Int(_) | Ast::QNum(_) => Box::new(x),
        other => Box::new(Ast::Group(Box::new(other))),
    };
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..6) {
            0 => Ast::Gen(Letter::A),
            1 => Ast::Gen(Letter::B),
            2 => Ast::Param(Var::P),
            3 => Ast::Param(Var::Q),
            4 => Ast::Int(r.gen_range(0..5).into()),
            _ => Ast::QNum(r.gen_range(0..4)),
        };
    }
    let x = random_ast(r, depth - 1);
    match r.gen_range(0..7) {
        0 => Ast::Add(group(x), group(random_ast(r, depth - 1))),
        1 => Ast::Sub(group(x), group(random_ast(r, depth - 1))),
        2 => Ast::Mul(group(x), group(random_ast(r, depth - 1))),
        3 => Ast::Neg(group(x)),
        4 => Ast::Pow(group(x), r.gen_range(0..3)),
        5 => Ast::Div(group(x), Box::new(Ast::Int(r.gen_range(1..4).into()))),
        _ => Ast::Comm(Box::new(x), Box::new(random_ast(r, depth - 1))),
    }
}

/// The CLI binary next to the test executable, when it has been built.
fn cli_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let bin = exe.parent()?.parent()?.join(format!("qweyl{}", std::env::consts::EXE_SUFFIX));
    bin.exists().then_some(bin)
}

fn run_cli(bin: &PathBuf, args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_10() -> Check {
    let alg = Algebra::hq();
    let mut r = rng(10);
    for _ in 0..100 {
        let ast = random_ast(&mut r, 4);
        let text = ast.to_string();
        ensure(parse(&text).as_ref() == Ok(&ast), || format!("source text `{text}` does not parse back"))?;
        let x = eval(&ast, &alg).map_err(|e| format!("{text}: {e}"))?;
        let canon = print_canonical(&x);
        let back = parse(&canon).map_err(|e| format!("{canon}: {e}"))?;
        ensure(eval(&back, &alg).ok().as_ref() == Some(&x), || format!("`{canon}` does not evaluate back"))?;
    }

    let spec = RelationSpec::hq();
    let (l, rr) = parse_equation("a*b == b*a").map_err(|e| e.to_string())?;
    let rows = report::statement_rows(&run_statements(&[Statement::Verify(l, rr)], &spec, &Bindings::new()), false);
    ensure(report::exit_code(&rows) == report::EXIT_FAILED, || "failed verify does not map to 1".into())?;
    let ok = run_statements(&[Statement::Normalize(parse("a*b*b").map_err(|e| e.to_string())?)], &spec, &Bindings::new());
    ensure(report::exit_code(&report::statement_rows(&ok, false)) == report::EXIT_OK, || "normalize does not map to 0".into())?;
    ensure(parse("a^^2").is_err(), || "a^^2 parses".into())?;

    let opts = RunOptions { seed: 7, ..RunOptions::default() };
    let first = report::to_json(&report::crosscheck_rows(&opts));
    ensure(first == report::to_json(&report::crosscheck_rows(&opts)), || "library JSON differs between runs".into())?;

    let Some(bin) = cli_binary() else {
        return Ok("100 forms; library exit codes and JSON (binary not built)".into());
    };
    for (args, code) in [
        (&["normalize", "a*b*b"][..], 0),
        (&["verify", "a*b == b*a"][..], 1),
        (&["normalize", "a^^2"][..], 2),
        (&["suite", "--catalog", "nope"][..], 2),
        (&["--bogus"][..], 2),
    ] {
        let (got, _) = run_cli(&bin, args)?;
        ensure(got == code, || format!("qweyl {}: exit {got}, expected {code}", args.join(" ")))?;
    }
    let json_args = ["suite", "--catalog", "crosscheck", "--format", "json", "--seed", "7"];
    let (c1, o1) = run_cli(&bin, &json_args)?;
    let (c2, o2) = run_cli(&bin, &json_args)?;
    ensure(c1 == 0 && c2 == 0 && o1 == o2 && !o1.is_empty(), || "CLI JSON is not byte-stable".into())?;
    ensure(o1 == first.as_bytes(), || "CLI JSON differs from the library report".into())?;
    Ok("100 forms; CLI exit codes 0/1/2; byte-stable JSON".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Check); 10] = [
        (1, "(aba)^n, (bab)^n for n <= 6, symbolic p, q", 10, criterion_1),
        (2, "a b^n and a^n b reordering for n <= 8", 2, criterion_2),
        (3, "block powers and commutators for n, m <= 4, k <= 2, multisets <= 2", 30, criterion_3),
        (4, "a^n b^n, b^n a^n in powers of ab for n <= 5, with Fock evaluation", 60, criterion_4),
        (5, "p = 1 constants: as stated, at p = 1 and p-scaled for n <= 4", 60, criterion_5),
        (6, "sl2q factors and annihilation of V_n", 20, criterion_6),
        (7, "extended product formula, sl2 instance and N-dependent expansions", 60, criterion_7),
        (8, "representation suite", 30, criterion_8),
        (9, "random-word cross-validation", 30, criterion_9),
        (10, "parser round trip, exit codes, byte-stable JSON", 60, criterion_10),
    ];
    let mut failed = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (mark, detail) = match result {
            Ok(d) if elapsed < limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit; {d}")),
            Err(e) => ("FAIL", e),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!("{mark} {id:>2} {title} [{:.2}s / {}s] {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
