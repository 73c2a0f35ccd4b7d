//! `fnspace`: metrics, functionals, decompositions and property checks on
//! fuzzy-number spaces from the command line.
//!
//! Exit codes: 0 ok, 1 property failure, 2 bad input, 3 space mismatch.

mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use fnspace::checker::{run_suite, CheckReport, GenConfig, SCHEMA_VERSION, SUITES};
use fnspace::functionals::{decompose, FunctionalSpec};
use fnspace::spaces::{CurvesLp, CurvesSup, FuzzyNumbers, SeqC, SeqC0, SeqLp, SeqM};
use fnspace::{FnCurve, FnSeq, FnTypeSpace, FuzzyNum, PlFun};

use output::{fmt_g12, to_json};

#[derive(Parser)]
#[command(
    name = "fnspace",
    version,
    about = "Fuzzy-number spaces: metrics, functionals and property checks"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Space {
    Rf,
    Lp,
    M,
    C,
    C0,
    CCurve,
    LpCurve,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two elements of a space.
    Metric {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        p: Option<f64>,
        a: String,
        b: String,
    },
    /// Norm `d(x, 0)` of an element.
    Norm {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        p: Option<f64>,
        file: String,
    },
    /// Evaluates a functional spec on an element of its space.
    Eval { spec: String, input: String },
    /// Splits a monotone level function into `f + g`.
    Decompose { file: String },
    /// Hukuhara difference `u ⊖ v`.
    Hdiff { u: String, v: String },
    /// The level set `[u]^r`.
    Levelset {
        file: String,
        #[arg(allow_negative_numbers = true)]
        r: f64,
    },
    /// Runs a property suite, or `all` of them.
    Check {
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the suite catalog and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<fnspace::Error> for CliError {
    fn from(e: fnspace::Error) -> Self {
        use fnspace::Error::*;
        match e {
            DomainMismatch(_) | DivergentTail | NotInSpace(_) => CliError::Mismatch(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Fuzzy,
    Seq,
    Curve,
}

impl Kind {
    /// Guesses what a JSON document was meant to be from its keys.
    fn sniff(text: &str) -> Option<Kind> {
        let v: Value = serde_json::from_str(text).ok()?;
        let obj = v.as_object()?;
        if obj.contains_key("head") {
            Some(Kind::Seq)
        } else if obj.contains_key("t_grid") && obj.contains_key("values") {
            Some(Kind::Curve)
        } else if ["lower", "crisp", "triangular", "trapezoidal"]
            .iter()
            .any(|k| obj.contains_key(*k))
        {
            Some(Kind::Fuzzy)
        } else {
            None
        }
    }

    fn noun(self) -> &'static str {
        match self {
            Kind::Fuzzy => "a fuzzy number",
            Kind::Seq => "a sequence",
            Kind::Curve => "a curve",
        }
    }
}

struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn read(&mut self, path: &str) -> CliResult<String> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Input("stdin can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }

    fn parse<T: DeserializeOwned>(&mut self, path: &str) -> CliResult<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    /// Parses `path` as `kind`; a document that is plainly another kind is a
    /// space mismatch rather than a syntax error.
    fn element<T: DeserializeOwned>(&mut self, path: &str, kind: Kind) -> CliResult<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| match Kind::sniff(&text) {
            Some(found) if found != kind => CliError::Mismatch(format!(
                "{path}: expected {}, found {}",
                kind.noun(),
                found.noun()
            )),
            _ => CliError::Input(format!("{path}: {e}")),
        })
    }
}

fn need_p(space: Space, p: Option<f64>) -> CliResult<Option<f64>> {
    match (space, p) {
        (Space::Lp | Space::LpCurve, None) => Err(CliError::Input(format!(
            "--p is required for --space {}",
            space_name(space)
        ))),
        (Space::Lp | Space::LpCurve, p) => Ok(p),
        (_, None) => Ok(None),
        (_, Some(_)) => Err(CliError::Input(format!(
            "--p does not apply to --space {}",
            space_name(space)
        ))),
    }
}

fn space_name(space: Space) -> String {
    space
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn member<S: FnTypeSpace>(space: &S, xs: &[&S::Elem]) -> CliResult<()> {
    for x in xs {
        if !space.contains(x) {
            return Err(CliError::Mismatch(format!(
                "input is not in {}",
                space.name()
            )));
        }
    }
    Ok(())
}

fn seq_dist<S: FnTypeSpace<Elem = FnSeq>>(s: &S, x: &FnSeq, y: &FnSeq) -> CliResult<f64> {
    member(s, &[x, y])?;
    Ok(s.dist(x, y)?)
}

fn seq_norm<S: FnTypeSpace<Elem = FnSeq>>(s: &S, x: &FnSeq) -> CliResult<f64> {
    member(s, &[x])?;
    Ok(s.norm(x)?)
}

fn cmd_metric(io: &mut Inputs, space: Space, p: Option<f64>, a: &str, b: &str) -> CliResult<f64> {
    let p = need_p(space, p)?;
    match space {
        Space::Rf => {
            let x: FuzzyNum = io.element(a, Kind::Fuzzy)?;
            let y: FuzzyNum = io.element(b, Kind::Fuzzy)?;
            Ok(FuzzyNumbers.dist(&x, &y)?)
        }
        Space::Lp | Space::M | Space::C | Space::C0 => {
            let x: FnSeq = io.element(a, Kind::Seq)?;
            let y: FnSeq = io.element(b, Kind::Seq)?;
            match space {
                Space::Lp => seq_dist(&SeqLp::new(p.expect("checked"))?, &x, &y),
                Space::M => seq_dist(&SeqM, &x, &y),
                Space::C => seq_dist(&SeqC, &x, &y),
                _ => seq_dist(&SeqC0, &x, &y),
            }
        }
        Space::CCurve | Space::LpCurve => {
            let x: FnCurve = io.element(a, Kind::Curve)?;
            let y: FnCurve = io.element(b, Kind::Curve)?;
            let (lo, hi) = x.domain();
            if space == Space::CCurve {
                Ok(CurvesSup::new(lo, hi)?.dist(&x, &y)?)
            } else {
                Ok(CurvesLp::new(lo, hi, p.expect("checked"))?.dist(&x, &y)?)
            }
        }
    }
}

fn cmd_norm(io: &mut Inputs, space: Space, p: Option<f64>, file: &str) -> CliResult<f64> {
    let p = need_p(space, p)?;
    match space {
        Space::Rf => {
            let x: FuzzyNum = io.element(file, Kind::Fuzzy)?;
            Ok(FuzzyNumbers.norm(&x)?)
        }
        Space::Lp | Space::M | Space::C | Space::C0 => {
            let x: FnSeq = io.element(file, Kind::Seq)?;
            match space {
                Space::Lp => seq_norm(&SeqLp::new(p.expect("checked"))?, &x),
                Space::M => seq_norm(&SeqM, &x),
                Space::C => seq_norm(&SeqC, &x),
                _ => seq_norm(&SeqC0, &x),
            }
        }
        Space::CCurve | Space::LpCurve => {
            let x: FnCurve = io.element(file, Kind::Curve)?;
            let (lo, hi) = x.domain();
            if space == Space::CCurve {
                Ok(CurvesSup::new(lo, hi)?.norm(&x)?)
            } else {
                Ok(CurvesLp::new(lo, hi, p.expect("checked"))?.norm(&x)?)
            }
        }
    }
}

fn cmd_eval(io: &mut Inputs, spec: &str, input: &str) -> CliResult<f64> {
    let spec: FunctionalSpec = io.parse(spec)?;
    Ok(match &spec {
        FunctionalSpec::Rf(s) => s.eval(&io.element(input, Kind::Fuzzy)?)?,
        FunctionalSpec::C(s) => s.eval(&io.element(input, Kind::Seq)?)?,
        FunctionalSpec::Lp(s) => s.eval(&io.element(input, Kind::Seq)?)?,
        FunctionalSpec::CCurve(s) => s.eval(&io.element(input, Kind::Curve)?)?,
        FunctionalSpec::LpCurve(s) => s.eval(&io.element(input, Kind::Curve)?)?,
    })
}

#[derive(Serialize)]
struct CheckAll {
    schema_version: u32,
    suite: &'static str,
    trials: u64,
    seed: u64,
    passed: bool,
    failed_suites: Vec<String>,
    reports: Vec<CheckReport>,
}

/// Returns the JSON report and whether every requested suite passed.
fn cmd_check(suite: &str, trials: u64, seed: u64) -> CliResult<(String, bool)> {
    let cfg = GenConfig::default();
    let run = |name: &str| -> CliResult<CheckReport> {
        let start = Instant::now();
        let report = run_suite(name, trials, seed, &cfg).map_err(|e| match e {
            fnspace::Error::UnknownSuite(s) => CliError::Input(format!(
                "unknown suite {s:?}; `fnspace check --list` shows the catalog"
            )),
            other => other.into(),
        })?;
        eprintln!(
            "{name}: {} ({} failures, {:.2}s)",
            if report.passed { "ok" } else { "FAILED" },
            report.failure_count,
            start.elapsed().as_secs_f64()
        );
        Ok(report)
    };
    if suite != "all" {
        let report = run(suite)?;
        return Ok((to_json(&report, true), report.passed));
    }
    let start = Instant::now();
    let reports = SUITES
        .iter()
        .map(|(name, _)| run(name))
        .collect::<CliResult<Vec<_>>>()?;
    let failed_suites: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.suite.clone())
        .collect();
    eprintln!(
        "all: {}/{} suites passed ({:.2}s)",
        reports.len() - failed_suites.len(),
        reports.len(),
        start.elapsed().as_secs_f64()
    );
    let summary = CheckAll {
        schema_version: SCHEMA_VERSION,
        suite: "all",
        trials,
        seed,
        passed: failed_suites.is_empty(),
        failed_suites,
        reports,
    };
    Ok((to_json(&summary, true), summary.passed))
}

/// Runs the command; the bool is false when a property check failed.
fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let mut io = Inputs { stdin_used: false };
    let text = match &cli.command {
        Command::Metric { space, p, a, b } => fmt_g12(cmd_metric(&mut io, *space, *p, a, b)?),
        Command::Norm { space, p, file } => fmt_g12(cmd_norm(&mut io, *space, *p, file)?),
        Command::Eval { spec, input } => fmt_g12(cmd_eval(&mut io, spec, input)?),
        Command::Decompose { file } => {
            let u: PlFun = io.parse(file)?;
            to_json(&decompose(&u)?, false)
        }
        Command::Hdiff { u, v } => {
            let u: FuzzyNum = io.element(u, Kind::Fuzzy)?;
            let v: FuzzyNum = io.element(v, Kind::Fuzzy)?;
            let out = match u.h_difference(&v) {
                Some(w) => json!({ "exists": true, "difference": w }),
                None => json!({ "exists": false }),
            };
            to_json(&out, false)
        }
        Command::Levelset { file, r } => {
            let u: FuzzyNum = io.element(file, Kind::Fuzzy)?;
            to_json(&u.level_set(*r)?, false)
        }
        Command::Check { list: true, .. } => {
            let width = SUITES.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            SUITES
                .iter()
                .map(|(n, d)| format!("{n:width$}  {d}"))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Command::Check {
            suite,
            trials,
            seed,
            ..
        } => {
            let (text, passed) =
                cmd_check(suite.as_deref().expect("clap requires it"), *trials, *seed)?;
            return Ok((text, passed));
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, format!("{text}\n"))
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    println!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Input(m) => m.clone(),
                CliError::Mismatch(m) => format!("space mismatch: {m}"),
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
