use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bracket_width::Family;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "bracket-width",
    version,
    about = "Exact bracket decompositions in current Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a current as [w1, X] + [w2, Y] for a spanning pair (w1, w2).
    Decompose2(DecomposeArgs),
    /// Write a current as a single bracket [X, Y].
    Decompose1(DecomposeArgs),
    /// Search for c = [a, b] with no common centralizer.
    CheckStar(StarArgs),
    /// Sample solutions of [a, b] = c and record their common centralizers.
    Campaign(CampaignArgs),
    /// Check membership of an almost-commuting tuple.
    AcVerify(TupleArgs),
    /// Limit of an almost-commuting tuple under the 2ρ∨ torus.
    TorusLimit(TupleArgs),
    /// Run the invariant suites and print a pass/fail table.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// sl, sp or so.
    #[arg(long)]
    family: Option<Family>,
    /// sl_n: n; sp_2n: n (so `--n 2` is sp4); so_n: n.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report destination (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Current to decompose as JSON (`-` for stdin). Without it a random
    /// current is drawn from `--order`, `--height` and `--seed`.
    #[arg(long)]
    input: Option<String>,
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long, default_value_t = 3)]
    height: u32,
    #[arg(long)]
    attempts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct StarArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// `min-nilpotent` or an element as JSON `{"family", "n", "matrix"}`.
    #[arg(long)]
    element: String,
    #[arg(long, default_value_t = bracket_width::width::DEFAULT_STAR_ATTEMPTS)]
    attempts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CampaignArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// `min-nilpotent` or an element as JSON `{"family", "n", "matrix"}`.
    #[arg(long)]
    element: String,
    /// Accepted samples wanted.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Coordinates of `a` are drawn from `[-height, height]`.
    #[arg(long, default_value_t = 1)]
    height: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; the report does not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write one JSON record per draw to this file.
    #[arg(long)]
    jsonl_log: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TupleArgs {
    /// Tuple as JSON (`-` for stdin).
    #[arg(long)]
    input: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Reduced sample counts.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the results as JSON here.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Why a command did not produce a normal report.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Error { kind: &'static str, message: String },
    /// Exit 2, with a report describing the inconclusive search.
    Inconclusive(Value),
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure::Error {
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<bracket_width::Error> for Failure {
    fn from(e: bracket_width::Error) -> Self {
        let kind = match e {
            bracket_width::Error::Parse { .. } => "parse",
            _ if e.is_inconclusive() => "inconclusive",
            _ => "precondition",
        };
        Failure::Error {
            kind,
            message: e.to_string(),
        }
    }
}

pub fn read_input(source: &str) -> Result<Value, Failure> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Error {
                kind: "io",
                message: format!("stdin: {e}"),
            })?;
        s
    } else {
        fs::read_to_string(source).map_err(|e| Failure::Error {
            kind: "io",
            message: format!("{source}: {e}"),
        })?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Error {
        kind: "parse",
        message: format!("{source}: invalid JSON: {e}"),
    })
}

pub fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Error {
            kind: "io",
            message: format!("{}: {e}", p.display()),
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Error {
                    kind: "io",
                    message: format!("stdout: {e}"),
                })
        }
    }
}

pub fn render(report: &Value) -> String {
    serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Decompose2(a) => (commands::decompose(a, false), a.out.output.clone()),
        Command::Decompose1(a) => (commands::decompose(a, true), a.out.output.clone()),
        Command::CheckStar(a) => (commands::check_star(a), a.out.output.clone()),
        Command::Campaign(a) => (commands::campaign(a), a.out.output.clone()),
        Command::AcVerify(a) => (commands::ac_verify(a), a.out.output.clone()),
        Command::TorusLimit(a) => (commands::torus_limit(a), a.out.output.clone()),
        Command::Selftest(a) => return commands::selftest(a),
    };
    let (report, code) = match result {
        Ok(report) => (report, 0),
        Err(Failure::Inconclusive(report)) => (report, 2),
        Err(Failure::Error { kind, message }) => {
            let err = json!({ "error": { "kind": kind, "message": message } });
            eprint!("{}", render(&err));
            return ExitCode::from(if kind == "inconclusive" { 2 } else { 1 });
        }
    };
    match write_text(output.as_ref(), &render(&report)) {
        Ok(()) => ExitCode::from(code),
        Err(Failure::Error { kind, message }) => {
            eprint!(
                "{}",
                render(&json!({ "error": { "kind": kind, "message": message } }))
            );
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(_)) => unreachable!("writing never searches"),
    }
}
