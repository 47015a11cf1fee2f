//! `lfl`: run verification suites, evaluate single values and export tables.
//!
//! Reports go out as one JSON object per line; tables as CSV. Exit status is
//! 0 when every check passes, 1 on a failed check or evaluation error and 2
//! on a usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::builder::PossibleValuesParser;
use clap::{CommandFactory, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use lfl_core::diophantine::{dn_discrepancy, SpherePointSet, DEFAULT_SEED};
use lfl_core::eisenstein::{eisenstein, UpperHalfPoint};
use lfl_core::hecke_l::phi_completed;
use lfl_core::modular_forms::{delta_q_expansion, evaluate, theta_q_expansion};
use lfl_core::special_fn::Estimate;
use lfl_core::suites::{run_suite, SuiteParams, SUITES};
use lfl_core::tables::{emit_table, TableParams, TABLES};
use lfl_core::zeta_core::{xi, zeta_estimate};
use lfl_core::{parse_complex, ComplexPoint};

const OBJECTS: &[&str] = &[
    "xi",
    "zeta",
    "hecke-delta",
    "delta",
    "theta",
    "eisenstein",
    "sphere-discrepancy",
];

fn verify_targets() -> Vec<&'static str> {
    SUITES.iter().copied().chain(["all"]).collect()
}

fn table_kinds() -> Vec<&'static str> {
    TABLES.iter().copied().chain(["satotake-moments"]).collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "lfl",
    version,
    about = "Completed L-functions: evaluation, identity checks and tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the tolerance of every report.
    #[arg(long, global = true, value_parser = non_negative)]
    tol: Option<f64>,
    /// Height of the t-grid for suites that scan vertical lines.
    #[arg(long, global = true, value_parser = non_negative)]
    tmax: Option<f64>,
    /// Series length (q-expansion or Dirichlet series terms).
    #[arg(long, global = true)]
    terms: Option<usize>,
    /// Size bound X (primes up to X, integers up to X).
    #[arg(long = "X", global = true)]
    x: Option<u64>,
    /// Complex argument s, written like 0.5+14.134725i.
    #[arg(long, global = true, value_parser = complex_arg, allow_hyphen_values = true)]
    s: Option<ComplexPoint>,
    /// Point z in the upper half plane, written like 0.1+1.2i.
    #[arg(long, global = true, value_parser = complex_arg, allow_hyphen_values = true)]
    z: Option<ComplexPoint>,
    /// Seed for randomized demonstrations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Histogram bins.
    #[arg(long, global = true)]
    bins: Option<usize>,
    /// Highest moment reported.
    #[arg(long, global = true)]
    mmax: Option<u32>,
    /// Integer parameter n (three-squares target, tau rows).
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Row count for the tau table.
    #[arg(long, global = true)]
    max: Option<u64>,
    /// Random caps for sphere-discrepancy.
    #[arg(long, global = true)]
    caps: Option<usize>,
    /// Record wall-clock time in runtime_ms (output is then not byte-stable).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one object and print {re, im, attained_error}.
    ///
    /// sphere-discrepancy is a demonstration of equidistribution of
    /// x^2 + y^2 + z^2 = n on the sphere, not a test of any rate.
    Eval {
        #[arg(value_parser = PossibleValuesParser::new(OBJECTS))]
        object: String,
    },
    /// Run a verification suite, or all of them in order.
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(verify_targets()))]
        suite: String,
    },
    /// Emit a CSV table.
    Table {
        #[arg(value_parser = PossibleValuesParser::new(table_kinds()))]
        kind: String,
    },
}

fn non_negative(text: &str) -> std::result::Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!(
            "expected a finite non-negative number, got {text:?}"
        )),
    }
}

fn complex_arg(text: &str) -> std::result::Result<ComplexPoint, String> {
    parse_complex(text).map_err(|e| e.to_string())
}

/// Outcome of a run that got past argument parsing.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        Cli::command()
            .error(clap::error::ErrorKind::InvalidValue, msg)
            .exit();
    }
    if let Some(missing) = missing_argument(&cli) {
        Cli::command()
            .error(clap::error::ErrorKind::MissingRequiredArgument, missing)
            .exit();
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(value) = std::env::var("LFL_THREADS") else {
        return Ok(());
    };
    let threads: usize = match value.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => {
            return Err(format!(
                "LFL_THREADS must be a positive integer, got {value:?}"
            ))
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("cannot size the thread pool: {e}"))
}

fn missing_argument(cli: &Cli) -> Option<String> {
    let Command::Eval { object } = &cli.command else {
        return None;
    };
    let needs_s = matches!(
        object.as_str(),
        "xi" | "zeta" | "hecke-delta" | "eisenstein"
    );
    let needs_z = matches!(object.as_str(), "delta" | "theta" | "eisenstein");
    if needs_s && cli.s.is_none() {
        Some(format!("eval {object} needs --s"))
    } else if needs_z && cli.z.is_none() {
        Some(format!("eval {object} needs --z"))
    } else {
        None
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let outcome = match &cli.command {
        Command::Verify { suite } => verify(cli, suite, &mut out)?,
        Command::Eval { object } => {
            writeln!(out, "{}", eval(cli, object)?)?;
            Outcome::Pass
        }
        Command::Table { kind } => {
            out.write_all(table(cli, kind)?.as_bytes())?;
            Outcome::Pass
        }
    };
    out.flush()?;
    Ok(outcome)
}

/// Streams reports suite by suite so long runs show progress.
fn verify(cli: &Cli, target: &str, out: &mut dyn Write) -> Result<Outcome> {
    let params = SuiteParams {
        tol: cli.tol,
        t_max: cli.tmax,
        terms: cli.terms,
        x: cli.x,
        m_max: cli.mmax,
        bins: cli.bins,
        timing: cli.timing,
    };
    let names: Vec<&str> = if target == "all" {
        SUITES.to_vec()
    } else {
        vec![target]
    };
    let mut all_pass = true;
    for name in names {
        match run_suite(name, &params) {
            Ok(reports) => {
                for r in reports {
                    all_pass &= r.pass;
                    writeln!(out, "{}", serde_json::to_string(&r)?)?;
                }
            }
            Err(e) => {
                all_pass = false;
                eprintln!("error: suite {name}: {e}");
            }
        }
        out.flush()?;
    }
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

#[derive(Serialize)]
struct ValueLine {
    re: f64,
    im: f64,
    attained_error: f64,
}

fn value_line(e: Estimate) -> Result<String> {
    Ok(serde_json::to_string(&ValueLine {
        re: e.value.re,
        im: e.value.im,
        attained_error: e.error,
    })?)
}

fn eval(cli: &Cli, object: &str) -> Result<String> {
    // Presence was checked before dispatch.
    let s = || cli.s.expect("--s checked");
    let z = || cli.z.expect("--z checked");
    let terms = cli.terms.unwrap_or(400);
    let estimate = match object {
        "xi" => {
            let v = xi(s())?;
            Estimate::new(v.value, v.attained_error)
        }
        "zeta" => zeta_estimate(s())?,
        "hecke-delta" => phi_completed(s(), &delta_q_expansion(terms)?)?,
        "delta" => evaluate(&delta_q_expansion(terms)?, z())?,
        "theta" => evaluate(&theta_q_expansion(terms)?, z())?,
        "eisenstein" => eisenstein(UpperHalfPoint::from_complex(z())?, s())?,
        "sphere-discrepancy" => {
            let n = cli.n.unwrap_or(1001);
            let seed = cli.seed.unwrap_or(DEFAULT_SEED);
            let caps = cli.caps.unwrap_or(200);
            let points = SpherePointSet::new(n)?.points.len();
            let d = dn_discrepancy(n, caps, seed)?;
            return Ok(
                json!({"n": n, "points": points, "caps": caps, "seed": seed, "discrepancy": d})
                    .to_string(),
            );
        }
        other => unreachable!("clap restricts objects, got {other}"),
    };
    value_line(estimate)
}

fn table(cli: &Cli, kind: &str) -> Result<String> {
    let defaults = TableParams::default();
    let params = TableParams {
        n: cli.max.or(cli.n).unwrap_or(defaults.n),
        x: cli.x.unwrap_or(defaults.x),
        bins: cli.bins.unwrap_or(defaults.bins),
        m_max: cli.mmax.unwrap_or(defaults.m_max),
        s: cli.s.unwrap_or(defaults.s),
    };
    Ok(emit_table(kind, &params)?)
}
