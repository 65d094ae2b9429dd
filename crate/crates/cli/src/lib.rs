//! Command-line front end: config loading, expression parsing and evaluation, reports.

pub mod config;
pub mod error;
pub mod eval;
pub mod expr;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use polystrata::admissible::{enumerate, stratum_poset, StratumLabel};
use polystrata::algebra_an::{quotient_system, r_matrix};
use polystrata::correspondence::default_weights;
use polystrata::exact_poly::DEFAULT_STEP_BUDGET;
use polystrata::suites::{run_suite, Status, SuiteInput, SUITES};
use polystrata::{quotient_map_report, s_matrix, AdmissibleSet, Gen, Rational};

pub use config::{Config, Mode, Setup};
pub use error::CliError;
pub use eval::Evaluator;
pub use expr::{parse_expr, Expr, SyntaxError};

pub const BUDGET_ENV: &str = "POLYSTRATA_STEP_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "polystrata", version, about = "Exact computations in A_n, K_n and their admissible-set strata")]
pub struct Cli {
    /// JSON config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poisson bracket of two expressions.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Normal form: ordered monomials in K_n, or expanded in A_n (optionally modulo an admissible set).
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Comma-separated admissible set, e.g. `Omega1,y1`. Poisson side only.
        #[arg(long, value_delimiter = ',')]
        modulo: Option<Vec<String>>,
    },
    /// Admissible sets for the configured n.
    Admissible {
        /// Overrides the config.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with_all = ["list", "poset"])]
        count: bool,
        #[arg(long, conflicts_with = "poset")]
        list: bool,
        #[arg(long)]
        poset: bool,
        /// Graphviz output for the poset.
        #[arg(long)]
        dot: bool,
    },
    /// The log-canonical matrices r and s.
    Matrices {
        #[arg(long)]
        r: bool,
        #[arg(long)]
        s: bool,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Generator-level images for every stratum, paired across the two sides.
    MapReport,
}

/// What to print and how to exit.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

pub fn step_budget() -> Result<usize, CliError> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(DEFAULT_STEP_BUDGET),
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| CliError::Config(format!("{BUDGET_ENV} must be a positive integer, got {v:?}"))),
    }
}

fn need_setup(setup: Option<&Setup>) -> Result<&Setup, CliError> {
    setup.ok_or_else(|| CliError::Usage("this command needs --config".into()))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let setup = cli.config.as_deref().map(Config::load).transpose()?;
    let setup = setup.as_ref();
    match &cli.command {
        Command::Bracket { left, right } => bracket(need_setup(setup)?, left, right, cli.pretty),
        Command::Nf { expr, modulo } => nf(need_setup(setup)?, expr, modulo.as_deref(), cli.pretty),
        Command::Admissible {
            n,
            count,
            list: _,
            poset,
            dot,
        } => {
            let n = match (n, setup) {
                (Some(n), _) => *n,
                (None, Some(s)) => s.n,
                (None, None) => return Err(CliError::Usage("give --n or --config".into())),
            };
            if n == 0 {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            let sets = setup.filter(|s| s.n == n).map_or(&[][..], |s| &s.sets[..]);
            admissible(n, sets, *count, *poset || *dot, *dot, cli.pretty)
        }
        Command::Matrices { r, s } => matrices(need_setup(setup)?, *r, *s, cli.pretty),
        Command::Verify { suite, seed, trials } => verify(need_setup(setup)?, suite, *seed, *trials, cli.pretty),
        Command::MapReport => map_report(need_setup(setup)?, cli.pretty),
    }
}

fn bracket(setup: &Setup, left: &str, right: &str, pretty: bool) -> Result<Output, CliError> {
    let Some(p) = &setup.poisson else {
        return Err(CliError::Usage("bracket needs poisson or paired mode".into()));
    };
    let e = Expr::Bracket(Box::new(parse_expr(left)?), Box::new(parse_expr(right)?));
    let value = Evaluator::poisson(p, &[&e])?.eval(&e)?;
    Ok(Output::ok(if pretty {
        format!("{e} = {value}\n")
    } else {
        json_line(&json!({ "expr": e.to_string(), "result": value.to_string() }))
    }))
}

fn nf(setup: &Setup, src: &str, modulo: Option<&[String]>, pretty: bool) -> Result<Output, CliError> {
    let e = parse_expr(src)?;
    let budget = step_budget()?;
    let (side, value) = match (&setup.quantum, &setup.poisson, modulo) {
        (Some(q), _, None) => ("quantum", Evaluator::quantum(q, &e, budget)?.eval(&e)?),
        (_, Some(p), _) => {
            let mut ev = Evaluator::poisson(p, &[&e])?;
            let mut f = ev.eval(&e)?;
            if let Some(names) = modulo {
                if f.vars() != p.vars() {
                    return Err(CliError::Usage("--modulo applies to expressions in y/x/Omega".into()));
                }
                let t = AdmissibleSet::parse(p.n(), names)?;
                f = quotient_system(p, &t)?.with_budget(budget).reduce(&f)?;
            }
            ("poisson", f)
        }
        _ => return Err(CliError::Usage("--modulo needs poisson or paired mode".into())),
    };
    Ok(Output::ok(if pretty {
        format!("{value}\n")
    } else {
        let mut v = json!({ "expr": e.to_string(), "side": side, "normal_form": value.to_string() });
        if let Some(names) = modulo {
            v["modulo"] = json!(names);
        }
        json_line(&v)
    }))
}

fn admissible(
    n: usize,
    configured: &[AdmissibleSet],
    count: bool,
    poset: bool,
    dot: bool,
    pretty: bool,
) -> Result<Output, CliError> {
    if poset {
        let p = stratum_poset(n);
        if dot {
            return Ok(Output::ok(p.to_dot()));
        }
        if !pretty {
            return Ok(Output::ok(json_line(&p)));
        }
        let mut s = String::new();
        for (k, node) in p.nodes.iter().enumerate() {
            let up: Vec<String> = p.edges.iter().filter(|e| e.0 == k).map(|e| e.1.to_string()).collect();
            let _ = writeln!(s, "{k:>4}  {:<40} covered by [{}]", node.t.to_string(), up.join(", "));
        }
        return Ok(Output::ok(s));
    }
    let from_config = !configured.is_empty();
    let sets = if from_config { configured.to_vec() } else { enumerate(n) };
    if count {
        return Ok(Output::ok(if pretty {
            format!("{}\n", sets.len())
        } else {
            json_line(&json!({ "n": n, "count": sets.len() }))
        }));
    }
    let labels: Vec<StratumLabel> = sets.iter().map(StratumLabel::of).collect();
    if !pretty {
        let source = if from_config { "config" } else { "enumeration" };
        return Ok(Output::ok(json_line(&json!({ "n": n, "source": source, "sets": labels }))));
    }
    let mut s = format!("{:<40} {:<24} {:>6} {:>6}\n", "T", "eta", "length", "gk");
    for l in &labels {
        let eta: Vec<String> = l.eta.iter().map(|g| g.lower()).collect();
        let _ = writeln!(
            s,
            "{:<40} {:<24} {:>6} {:>6}",
            l.t.to_string(),
            format!("{{{}}}", eta.join(", ")),
            l.length,
            l.gk_dim
        );
    }
    Ok(Output::ok(s))
}

fn grid(labels: &[String], m: &[Vec<Rational>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(Rational::to_string).collect()).collect();
    let w = cells
        .iter()
        .flatten()
        .chain(labels)
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut s = format!("{:>w$}", "");
    for l in labels {
        let _ = write!(s, " {l:>w$}");
    }
    s.push('\n');
    for (l, row) in labels.iter().zip(&cells) {
        let _ = write!(s, "{l:>w$}");
        for c in row {
            let _ = write!(s, " {c:>w$}");
        }
        s.push('\n');
    }
    s
}

fn matrices(setup: &Setup, want_r: bool, want_s: bool, pretty: bool) -> Result<Output, CliError> {
    let (want_r, want_s) = if want_r || want_s {
        (want_r, want_s)
    } else {
        (setup.poisson.is_some(), setup.quantum.is_some())
    };
    let mut out = BTreeMap::new();
    if want_r {
        let p = setup
            .poisson
            .as_ref()
            .ok_or_else(|| CliError::Usage("r needs poisson or paired mode".into()))?;
        out.insert("r", r_matrix(p));
    }
    if want_s {
        let q = setup
            .quantum
            .as_ref()
            .ok_or_else(|| CliError::Usage("s needs quantum or paired mode".into()))?;
        out.insert("s", s_matrix(q));
    }
    let labels: Vec<String> = Gen::all(setup.n).into_iter().map(Gen::upper).collect();
    if pretty {
        let mut s = String::new();
        for (name, m) in &out {
            let _ = writeln!(s, "{name}:");
            s.push_str(&grid(&labels, m));
        }
        return Ok(Output::ok(s));
    }
    let mut v = json!({ "labels": labels });
    for (name, m) in out {
        v[name] = json!(m);
    }
    Ok(Output::ok(json_line(&v)))
}

fn verify(setup: &Setup, suite: &str, seed: u64, trials: usize, pretty: bool) -> Result<Output, CliError> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => {
            return Err(CliError::Usage(format!(
                "unknown suite {s:?}; expected one of {}, all",
                SUITES.join(", ")
            )))
        }
    };
    let input = SuiteInput {
        poisson: setup.poisson.clone(),
        quantum: setup.quantum.clone(),
        seed,
        trials,
    };
    let outcomes = names
        .iter()
        .map(|s| run_suite(s, &input))
        .collect::<Result<Vec<_>, _>>()?;
    let tally = |st: Status| outcomes.iter().filter(|o| o.status == st).count();
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.status == Status::Fail)
        .map(|o| o.suite.as_str())
        .collect();
    let code = i32::from(!failed.is_empty());
    if pretty {
        let mut s = format!("{:<16} {:<8} {:>8}\n", "suite", "status", "checks");
        for o in &outcomes {
            let status = serde_json::to_value(o.status).expect("serializable");
            let _ = writeln!(s, "{:<16} {:<8} {:>8}", o.suite, status.as_str().unwrap_or(""), o.checks);
            for f in &o.failures {
                let _ = writeln!(s, "    {f}");
            }
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            tally(Status::Pass),
            tally(Status::Fail),
            tally(Status::Skipped)
        );
        return Ok(Output { text: s, code });
    }
    let mut v = json!({
        "ok": failed.is_empty(),
        "seed": seed,
        "trials": trials,
        "suites": outcomes,
        "summary": {
            "pass": tally(Status::Pass),
            "fail": tally(Status::Fail),
            "skipped": tally(Status::Skipped),
        },
    });
    if !failed.is_empty() {
        let e = CliError::Verification(format!("suites failed: {}", failed.join(", ")));
        v["error"] = e.to_json()["error"].clone();
    }
    Ok(Output {
        text: json_line(&v),
        code,
    })
}

fn map_report(setup: &Setup, pretty: bool) -> Result<Output, CliError> {
    let Some(q) = &setup.quantum else {
        return Err(CliError::Usage("map-report needs quantum or paired mode".into()));
    };
    let weights = setup
        .weights
        .clone()
        .or_else(|| default_weights(q))
        .ok_or_else(|| CliError::Config("map-report needs phi_weights".into()))?;
    let report = quotient_map_report(q, &weights)?;
    let code = i32::from(!report.all_ok());
    if pretty {
        let mut s = format!("{:<40} {:>6} {:>4} {:>5} {:>8}\n", "T", "length", "gk", "psi", "upsilon");
        for r in &report.strata {
            let _ = writeln!(
                s,
                "{:<40} {:>6} {:>4} {:>5} {:>8}",
                r.t.to_string(),
                r.length,
                r.gk_dim,
                if r.psi_ok { "ok" } else { "FAIL" },
                if r.upsilon_ok { "ok" } else { "FAIL" }
            );
        }
        let grade: Value = serde_json::to_value(report.grade).expect("serializable");
        let _ = writeln!(s, "grade: {}", grade.as_str().unwrap_or(""));
        return Ok(Output { text: s, code });
    }
    let mut v = serde_json::to_value(&report).expect("serializable");
    if code != 0 {
        v["error"] = CliError::Verification("some strata failed".into()).to_json()["error"].clone();
    }
    Ok(Output {
        text: json_line(&v),
        code,
    })
}
