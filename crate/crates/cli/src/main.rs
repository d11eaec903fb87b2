use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qweyl::expr::{self, parse_bindings, parse_npoly, parse_scalar, run_statements, Statement};
use qweyl::report::{self, Format, Row, RunOptions, SuiteCatalog};
use qweyl::reps::RepEq;
use qweyl::scalar::{Bindings, Scalar};
use qweyl::weyl::{NPoly, RelationSpec};

/// Exact normal ordering and identity checks for `ab - q·ba = p` and its `N`-extension.
#[derive(Parser, Debug)]
#[command(name = "qweyl", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// `hq`: ab - σ·ba = ρ. `extended`: ab - σ·ba = F(N) with the N-shift τ.
    #[arg(long, global = true, default_value = "hq", value_parser = ["hq", "extended"])]
    relation: String,
    /// Remainder: a polynomial in N (extended) or a scalar (hq).
    #[arg(long = "F", global = true)]
    f: Option<String>,
    /// Swap coefficient; defaults to q (hq) or p (extended).
    #[arg(long, global = true)]
    sigma: Option<String>,
    /// N-shift coefficient of the extended relation; defaults to q.
    #[arg(long, global = true)]
    tau: Option<String>,
    /// Parameter bindings such as `p=1,q=2/3`; parameters left out stay symbolic.
    #[arg(long, global = true)]
    params: Option<String>,
    #[arg(long, global = true, default_value = "text", value_parser = ["json", "tsv", "text"])]
    format: String,
    #[arg(long = "max-n", global = true, default_value_t = 4)]
    max_n: u32,
    /// Seed for the randomized cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Fill the `millis` field (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prints the normal form of an expression.
    Normalize { expr: Vec<String> },
    /// Checks `lhs == rhs`.
    Verify { equation: Vec<String> },
    /// Writes a grade-0 element as a polynomial in `a*b`.
    Expand { expr: Vec<String> },
    /// Runs identity catalogs.
    Suite {
        /// Comma-separated: default, errata, sl2q, extended, reps, crosscheck, all.
        #[arg(long, default_value = "default")]
        catalog: String,
    },
    /// Checks operator identities in concrete representations.
    RepCheck {
        /// diff, diff_ab, diff_ba, jackson, delta or fock.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        eq: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Highest basis monomial x^K to compare on.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Runs a file of statements (`normalize`, `verify`, `expand`, `with`); `-` reads stdin.
    Script { file: String },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(report::EXIT_USAGE)
}

fn relation(g: &Global) -> Result<RelationSpec, String> {
    let sigma = g.sigma.as_deref().map(parse_scalar).transpose()?;
    let tau = g.tau.as_deref().map(parse_scalar).transpose()?;
    if g.relation == "hq" {
        if tau.is_some() {
            return Err("--tau needs --relation extended".into());
        }
        let rho = match g.f.as_deref() {
            Some(f) => parse_scalar(f).map_err(|e| format!("--F for hq must be a scalar: {e}"))?,
            None => Scalar::p(),
        };
        Ok(RelationSpec::hq_with(sigma.unwrap_or_else(Scalar::q), rho))
    } else {
        let f = g.f.as_deref().map(parse_npoly).transpose()?.unwrap_or_else(NPoly::one);
        Ok(RelationSpec::extended(sigma.unwrap_or_else(Scalar::p), f, tau.unwrap_or_else(Scalar::q)))
    }
}

fn emit(rows: &[Row], format: Format) {
    print!("{}", report::render(rows, format));
}

fn run_statement(g: &Global, st: Statement, text_mode: impl Fn(&Row) -> String) -> ExitCode {
    let spec = match relation(g) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let bindings = match g.params.as_deref().map(parse_bindings).transpose() {
        Ok(b) => b.unwrap_or_default(),
        Err(e) => return usage(format!("--params {e}")),
    };
    let results = run_statements(&[st], &spec, &bindings);
    if let Err(e) = &results[0].outcome {
        return usage(e);
    }
    let rows = report::statement_rows(&results, g.timings);
    let format: Format = g.format.parse().expect("validated by clap");
    if format == Format::Text {
        print!("{}", text_mode(&rows[0]));
    } else {
        emit(&rows, format);
    }
    ExitCode::from(report::exit_code(&rows[..1]))
}

fn rows_exit(rows: &[Row], format: Format) -> ExitCode {
    emit(rows, format);
    if format == Format::Text {
        let good = rows.iter().filter(|r| r.as_expected()).count();
        println!("{} checks, {good} as expected", rows.len());
    }
    ExitCode::from(report::exit_code(rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let format: Format = g.format.parse().expect("validated by clap");
    let opts = RunOptions { max_n: g.max_n, jobs: g.jobs.max(1), seed: g.seed, timings: g.timings };
    match cli.command {
        Command::Normalize { expr } => match expr::parse(&expr.join(" ")) {
            Ok(ast) => run_statement(g, Statement::Normalize(ast), |r| format!("{}\n", r.value.clone().unwrap_or_default())),
            Err(e) => usage(e),
        },
        Command::Expand { expr } => match expr::parse(&expr.join(" ")) {
            Ok(ast) => run_statement(g, Statement::Expand(ast), |r| format!("{}\n", r.value.clone().unwrap_or_default())),
            Err(e) => usage(e),
        },
        Command::Verify { equation } => match expr::parse_equation(&equation.join(" ")) {
            Ok((l, r)) => run_statement(g, Statement::Verify(l, r), |r| {
                let mut s = r.status.clone();
                if r.status != "pass" {
                    s.push_str(&format!("\nresidual: {}", r.residual_text.clone().unwrap_or_default()));
                }
                if let Some(n) = &r.note {
                    s.push_str(&format!("\nnote: {n}"));
                }
                s + "\n"
            }),
            Err(e) => usage(e),
        },
        Command::Suite { catalog } => match SuiteCatalog::parse_list(&catalog) {
            Ok(cats) => rows_exit(&report::run_suite_rows(&cats, &opts), format),
            Err(e) => usage(e),
        },
        Command::RepCheck { rep, eq, n, degree } => {
            let eq = match eq.as_deref().map(str::parse::<RepEq>).transpose() {
                Ok(e) => e,
                Err(e) => return usage(e),
            };
            let known = ["diff", "diff_ab", "diff_ba", "jackson", "delta", "fock"];
            if let Some(r) = rep.as_deref().filter(|r| !known.contains(r)) {
                return usage(format!("unknown representation `{r}` (expected one of {})", known.join(", ")));
            }
            if rep.as_deref() == Some("fock") {
                if eq.is_some() {
                    return usage("--eq does not apply to the fock representation");
                }
                return rows_exit(&report::fock_rows(&opts), format);
            }
            let rows = report::rep_rows(rep.as_deref(), eq, n, degree, &opts);
            if rows.is_empty() {
                return usage("no equation matches the given --rep/--eq");
            }
            rows_exit(&rows, format)
        }
        Command::Script { file } => {
            let mut text = String::new();
            let read = if file == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(&file).map(|t| text = t)
            };
            if let Err(e) = read {
                return usage(format!("{file}: {e}"));
            }
            let statements = match expr::parse_script(&text) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let spec = match relation(g) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let bindings: Bindings = match g.params.as_deref().map(parse_bindings).transpose() {
                Ok(b) => b.unwrap_or_default(),
                Err(e) => return usage(format!("--params {e}")),
            };
            let results = run_statements(&statements, &spec, &bindings);
            rows_exit(&report::statement_rows(&results, g.timings), format)
        }
    }
}
