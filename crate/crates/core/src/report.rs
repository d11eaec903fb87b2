//! Report rows for suites, representation checks and scripts, with JSON,
//! TSV and text rendering.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::expr::{Outcome, Statement, StatementResult};
use crate::identities::{bindings_text, plan_suite, run_cases, CaseResult, Catalog, IdentityCase, Status, SuiteConfig, Verdict};
use crate::reps::crosscheck::{
    fock_sweep, mixed_commutators, morphism_sweep, random_affine_sequence, random_sequence, random_words, rng,
    sequence_identities, vanish_on_window,
};
use crate::reps::{check_equation, rep_relation_check, sequence_residual, FockRep, PolyRep, RepEq, RepKind};
use crate::scalar::Scalar;
use crate::weyl::{Algebra, RelationSpec};

/// One line of a report. Keys serialize in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub id: String,
    pub args: String,
    pub variant: String,
    pub params: String,
    pub status: String,
    pub expected: String,
    /// `LHS - RHS` for checks; absent for plain computations.
    pub residual_text: Option<String>,
    /// Result of a computation (`normalize`, `expand`).
    pub value: Option<String>,
    pub note: Option<String>,
    /// Only filled when timings are requested, so reports stay byte-stable.
    pub millis: Option<u64>,
}

/// Every row came out as expected.
pub const EXIT_OK: u8 = 0;
/// A check failed or a row was not as expected.
pub const EXIT_FAILED: u8 = 1;
/// Usage, parse or evaluation error.
pub const EXIT_USAGE: u8 = 2;

pub fn exit_code(rows: &[Row]) -> u8 {
    if rows.iter().all(Row::as_expected) {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

impl Row {
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }

    fn check(id: String, args: String, variant: String, params: String, expected: Status, v: &Verdict, timings: bool) -> Row {
        Row {
            id,
            args,
            variant,
            params,
            status: v.status.as_str().into(),
            expected: expected.as_str().into(),
            residual_text: Some(v.residual_text.clone()),
            value: None,
            note: v.note.clone(),
            millis: timings.then_some(v.elapsed.as_millis() as u64),
        }
    }

    fn error(id: String, args: String, variant: String, params: String, expected: Status, err: String) -> Row {
        Row {
            id,
            args,
            variant,
            params,
            status: Status::Fail.as_str().into(),
            expected: expected.as_str().into(),
            residual_text: None,
            value: None,
            note: Some(err),
            millis: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json, tsv or text)")),
        }
    }
}

const COLUMNS: [&str; 10] = ["id", "args", "variant", "params", "status", "expected", "residual_text", "value", "note", "millis"];

fn fields(r: &Row) -> [String; 10] {
    let opt = |x: &Option<String>| x.clone().unwrap_or_default();
    [
        r.id.clone(),
        r.args.clone(),
        r.variant.clone(),
        r.params.clone(),
        r.status.clone(),
        r.expected.clone(),
        opt(&r.residual_text),
        opt(&r.value),
        opt(&r.note),
        r.millis.map(|m| m.to_string()).unwrap_or_default(),
    ]
}

pub fn to_json(rows: &[Row]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("serializable");
    s.push('\n');
    s
}

pub fn to_tsv(rows: &[Row]) -> String {
    let clean = |x: String| x.replace(['\t', '\n'], " ");
    let mut s = COLUMNS.join("\t");
    s.push('\n');
    for r in rows {
        s.push_str(&fields(r).map(clean).join("\t"));
        s.push('\n');
    }
    s
}

/// Aligned table; empty columns are dropped.
pub fn to_text(rows: &[Row]) -> String {
    let table: Vec<[String; 10]> = rows.iter().map(fields).collect();
    let used: Vec<usize> = (0..COLUMNS.len()).filter(|&c| table.iter().any(|r| !r[c].is_empty())).collect();
    let width = |c: usize| table.iter().map(|r| r[c].chars().count()).chain([COLUMNS[c].len()]).max().unwrap_or(0);
    let widths: Vec<usize> = used.iter().map(|&c| width(c)).collect();
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{cell:<w$}  "));
            }
        }
        out.trim_end().to_string() + "\n"
    };
    let mut s = line(used.iter().map(|&c| COLUMNS[c]).collect());
    for r in &table {
        s.push_str(&line(used.iter().map(|&c| r[c].as_str()).collect()));
    }
    s
}

pub fn render(rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Tsv => to_tsv(rows),
        Format::Text => to_text(rows),
    }
}

fn scalar_label(s: &Scalar) -> String {
    let (neg, t) = crate::weyl::scalar_text(s);
    format!("{}{t}", if neg { "-" } else { "" })
}

/// Short label for a non-default relation, e.g. `F=2*N` or `sigma=1,rho=-1`.
pub fn relation_label(spec: &RelationSpec) -> String {
    let text = scalar_label;
    let mut parts = Vec::new();
    if spec.has_n() {
        let alg = Algebra::shared(spec);
        let f = alg.poly_in_n(spec.remainder_poly()).map(|x| x.render()).unwrap_or_default();
        parts.push(format!("F={f}"));
        if *spec.sigma() != Scalar::p() {
            parts.push(format!("sigma={}", text(spec.sigma())));
        }
        if let Some(t) = spec.tau().filter(|t| **t != Scalar::q()) {
            parts.push(format!("tau={}", text(t)));
        }
    } else {
        if *spec.sigma() != Scalar::q() {
            parts.push(format!("sigma={}", text(spec.sigma())));
        }
        if let Some(r) = spec.rho().filter(|r| **r != Scalar::p()) {
            parts.push(format!("rho={}", text(r)));
        }
    }
    parts.join(",")
}

fn case_args(case: &IdentityCase) -> String {
    let default = IdentityCase::new(case.tag, case.args.clone()).relation;
    if case.relation == default {
        return case.args.to_string();
    }
    let label = relation_label(&case.relation);
    if label.is_empty() {
        case.args.to_string()
    } else {
        format!("{},{label}", case.args)
    }
}

pub fn case_row(r: &CaseResult, timings: bool) -> Row {
    let (id, args, variant, params) =
        (r.case.tag.to_string(), case_args(&r.case), r.case.variant.to_string(), r.case.params_text());
    match &r.verdict {
        Ok(v) => Row::check(id, args, variant, params, r.expected, v, timings),
        Err(e) => Row::error(id, args, variant, params, r.expected, e.clone()),
    }
}

/// Identity catalogs plus the representation and cross-validation groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteCatalog {
    Identities(Catalog),
    Reps,
    Crosscheck,
}

impl SuiteCatalog {
    pub const NAMES: [&'static str; 7] = ["default", "errata", "sl2q", "extended", "reps", "crosscheck", "all"];

    /// `all` expands to every group.
    pub fn parse_list(s: &str) -> Result<Vec<SuiteCatalog>, String> {
        let mut out = Vec::new();
        for name in s.split(',').map(str::trim) {
            let add: Vec<SuiteCatalog> = match name {
                "all" => vec![SuiteCatalog::Identities(Catalog::All), SuiteCatalog::Reps, SuiteCatalog::Crosscheck],
                "reps" => vec![SuiteCatalog::Reps],
                "crosscheck" => vec![SuiteCatalog::Crosscheck],
                other => match other.parse::<Catalog>() {
                    Ok(c) => vec![SuiteCatalog::Identities(c)],
                    Err(_) => {
                        return Err(format!("unknown catalog `{other}` (expected one of {})", Self::NAMES.join(", ")))
                    }
                },
            };
            for c in add {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_n: u32,
    pub jobs: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_n: 4, jobs: 1, seed: 0, timings: false }
    }
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool").install(f)
}

pub fn run_suite_rows(catalogs: &[SuiteCatalog], opts: &RunOptions) -> Vec<Row> {
    let mut rows = Vec::new();
    let ids: Vec<Catalog> = catalogs
        .iter()
        .filter_map(|c| match c {
            SuiteCatalog::Identities(c) => Some(*c),
            _ => None,
        })
        .collect();
    if !ids.is_empty() {
        let config = SuiteConfig { catalogs: ids, max_n: opts.max_n, jobs: opts.jobs };
        rows.extend(run_cases(plan_suite(&config), opts.jobs).iter().map(|r| case_row(r, opts.timings)));
    }
    if catalogs.contains(&SuiteCatalog::Reps) {
        rows.extend(rep_rows(None, None, None, None, opts));
    }
    if catalogs.contains(&SuiteCatalog::Crosscheck) {
        rows.extend(crosscheck_rows(opts));
    }
    rows
}

/// Largest `n` each equation is run for by default.
fn default_max_n(eq: RepEq) -> u32 {
    match eq {
        RepEq::E2a | RepEq::E2b | RepEq::E3 => 4,
        _ => 3,
    }
}

fn relation_table_rows(opts: &RunOptions) -> Vec<Row> {
    let reps = [
        ("diff_ab", PolyRep::diff_ab()),
        ("diff_ba", PolyRep::diff_ba()),
        ("jackson", PolyRep::jackson()),
        ("delta_exp", PolyRep::delta_exp()),
        ("delta_diff", PolyRep::delta_diff()),
    ];
    reps.iter()
        .map(|(name, rep)| {
            let v = rep_relation_check(rep, 12);
            let params = format!("sigma={},rho={}", scalar_label(&rep.sigma), scalar_label(&rep.rho));
            Row::check("REP-relation".into(), "K=12".into(), (*name).into(), params, Status::Pass, &v, opts.timings)
        })
        .collect()
}

/// Representation rows. `rep` of `diff` means whichever differential form the equation uses.
pub fn rep_rows(rep: Option<&str>, eq: Option<RepEq>, n: Option<u32>, degree: Option<usize>, opts: &RunOptions) -> Vec<Row> {
    let mut rows = Vec::new();
    if eq.is_none() && n.is_none() && rep.is_none() {
        rows.extend(relation_table_rows(opts));
    }
    let mut plan: Vec<(RepEq, RepKind, u32)> = Vec::new();
    let eqs: Vec<RepEq> = eq.map(|e| vec![e]).unwrap_or_else(|| RepEq::ALL.to_vec());
    for e in eqs {
        for &kind in e.reps() {
            let keep = match rep {
                None => true,
                Some("diff") => kind.is_differential(),
                Some(name) => kind.as_str() == name,
            };
            if !keep {
                continue;
            }
            let ns: Vec<u32> = match n {
                Some(n) => vec![n],
                None => (1..=default_max_n(e).min(opts.max_n.max(1))).collect(),
            };
            plan.extend(ns.into_iter().map(|n| (e, kind, n)));
        }
    }
    let run = |&(e, kind, n): &(RepEq, RepKind, u32)| {
        let expected = if e.expected_pass() { Status::Pass } else { Status::Fail };
        let (id, args) = (format!("REP-{e}"), format!("n={n}"));
        match check_equation(e, n, Some(kind), degree) {
            Ok(c) => {
                let mut row =
                    Row::check(id, args, kind.to_string(), "symbolic".into(), expected, &c.verdict, opts.timings);
                row.args = format!("n={n},K={}", c.basis_max);
                row
            }
            Err(err) => Row::error(id, args, kind.to_string(), "symbolic".into(), expected, err),
        }
    };
    rows.extend(in_pool(opts.jobs, || plan.par_iter().map(run).collect::<Vec<_>>()));
    rows
}

/// Seeded cross-validation: generator-by-generator action against realized
/// normal forms, and diagonal Fock matrices on random sequences.
pub fn crosscheck_rows(opts: &RunOptions) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut r = rng(opts.seed);
    let seed = format!("seed={}", opts.seed);
    let reps = [
        ("diff_ab", PolyRep::diff_ab()),
        ("diff_ba", PolyRep::diff_ba()),
        ("jackson", PolyRep::jackson()),
        ("delta_exp", PolyRep::delta_exp()),
    ];
    for (name, rep) in &reps {
        let words = random_words(&mut r, 50, 6);
        let args = format!("words=50,max_len=6,K=10,{seed}");
        match morphism_sweep(rep, &words, 10) {
            Ok(v) => rows.push(Row::check("XCHK-morphism".into(), args, (*name).into(), "symbolic".into(), Status::Pass, &v, opts.timings)),
            Err(e) => rows.push(Row::error("XCHK-morphism".into(), args, (*name).into(), "symbolic".into(), Status::Pass, e.to_string())),
        }
    }
    let words = random_words(&mut r, 50, 6);
    let hq = FockRep::hq(&Scalar::q(), &Scalar::p(), 12);
    let args = format!("words=50,max_len=6,L=12,{seed}");
    match fock_sweep(&Algebra::hq(), &hq, &words) {
        Ok(v) => rows.push(Row::check("XCHK-fock".into(), args, "hq".into(), "symbolic".into(), Status::Pass, &v, opts.timings)),
        Err(e) => rows.push(Row::error("XCHK-fock".into(), args, "hq".into(), "symbolic".into(), Status::Pass, e.to_string())),
    }
    rows.extend(sequence_rows(&mut r, &seed, opts));
    rows
}

fn sequence_rows(r: &mut impl rand::Rng, seed: &str, opts: &RunOptions) -> Vec<Row> {
    let mut rows = Vec::new();
    let cases = sequence_identities(2, 3);
    for k in 0..5 {
        let rep = random_sequence(r, 14);
        let args = format!("sequence={k},L=14,{seed}");
        let v = vanish_on_window(&rep, &cases);
        rows.push(match v {
            Ok(v) => Row::check("XCHK-sequence".into(), args, "random".into(), "exact".into(), Status::Pass, &v, opts.timings),
            Err(e) => Row::error("XCHK-sequence".into(), args, "random".into(), "exact".into(), Status::Pass, e.to_string()),
        });
    }
    let mixed = mixed_commutators(3);
    for k in 0..2 {
        let (f, rep) = random_affine_sequence(r, 14);
        let certified = sequence_residual(&f, &rep).iter().all(Scalar::is_zero);
        let args = format!("sequence={k},L=14,f={f},{seed}");
        let mut all = cases.clone();
        all.extend(mixed.iter().cloned());
        rows.push(match vanish_on_window(&rep, &all) {
            Ok(v) => {
                let v = if certified { v } else { Verdict::from_text(false, "sequence not certified".into(), v.elapsed) };
                Row::check("XCHK-affine".into(), args, "affine".into(), "exact".into(), Status::Pass, &v, opts.timings)
            }
            Err(e) => Row::error("XCHK-affine".into(), args, "affine".into(), "exact".into(), Status::Pass, e.to_string()),
        });
    }
    rows
}

/// Rows for the diagonal Fock group only.
pub fn fock_rows(opts: &RunOptions) -> Vec<Row> {
    let mut r = rng(opts.seed);
    let seed = format!("seed={}", opts.seed);
    sequence_rows(&mut r, &seed, opts)
}

fn statement_id(st: &Statement) -> &'static str {
    match st {
        Statement::Normalize(_) => "normalize",
        Statement::Verify(..) => "verify",
        Statement::Expand(_) => "expand",
        Statement::With(_) => "with",
    }
}

fn statement_args(st: &Statement) -> String {
    match st {
        Statement::Normalize(x) | Statement::Expand(x) => x.to_string(),
        Statement::Verify(l, r) => format!("{l} == {r}"),
        Statement::With(b) => b
            .iter()
            .map(|(v, r)| match r {
                Some(r) => format!("{}={r}", v.name()),
                None => format!("{0}={0}", v.name()),
            })
            .collect::<Vec<_>>()
            .join(","),
    }
}

pub fn statement_rows(results: &[StatementResult], timings: bool) -> Vec<Row> {
    results
        .iter()
        .map(|res| {
            let id = statement_id(&res.statement).to_string();
            let args = statement_args(&res.statement);
            let params = bindings_text(&res.params);
            let expected = Status::Pass;
            match &res.outcome {
                Err(e) => Row::error(id, args, String::new(), params, expected, e.to_string()),
                Ok(Outcome::Verified { verdict, .. }) => Row::check(id, args, String::new(), params, expected, verdict, timings),
                Ok(out) => {
                    let value = match out {
                        Outcome::Normalized(x) => Some(x.render()),
                        Outcome::Expanded { text, .. } => Some(text.clone()),
                        _ => None,
                    };
                    Row {
                        id,
                        args,
                        variant: String::new(),
                        params,
                        status: Status::Pass.as_str().into(),
                        expected: expected.as_str().into(),
                        residual_text: None,
                        value,
                        note: None,
                        millis: None,
                    }
                }
            }
        })
        .collect()
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fields(self).join("\t"))
    }
}
