//! Command-line front end.
//!
//! ```text
//! fracdiff --table 1 --alpha 0.5 --format md
//! fracdiff --single --N 18 --M 10 --alpha 0.5
//! fracdiff --properties
//! ```
//!
//! Exit status: 0 on success, 1 when a property check fails or a solve
//! errors, 2 on a configuration error (bad flag, bad value, unwritable
//! output path).

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};

use crate::analysis::properties::{run_suite, PropertyOutcome};
use crate::analysis::{run_experiment, run_single, write_csv, write_markdown, ConvergenceTable, ExperimentSpec, PublishedTable, Rung};
use crate::kernel::AlphaParam;
use crate::parallel::{with_jobs, Execution};
use crate::problem::Variant;
use crate::solver::SchemeKind;

#[derive(Parser, Debug)]
#[command(
    name = "fracdiff",
    version,
    about = "L2-type schemes for the time-fractional diffusion equation",
    group(ArgGroup::new("mode").required(true).args(["table", "single", "properties"]))
)]
struct Args {
    /// Reproduce one of the four convergence tables.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    table: Option<u32>,

    /// Solve once on an N x M grid and report the errors.
    #[arg(long, requires_all = ["n", "m"])]
    single: bool,

    /// Run the coefficient, energy and truncation property suite.
    #[arg(long)]
    properties: bool,

    /// Fractional orders, comma separated, each in (0, 1).
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Vec<f64>,

    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,

    /// Number of ladder rungs (defaults to the published ladder length).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    depth: Option<u64>,

    /// Spatial intervals: the grid of --single, or the fixed h of tables 2 and 4.
    #[arg(long = "N", id = "n", value_parser = clap::value_parser!(u64).range(2..))]
    n: Option<u64>,

    /// Time intervals for --single.
    #[arg(long = "M", id = "m", value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,

    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Worker threads for ladder rungs and spatial sums.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} lies outside the admissible interval (0, 1)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Order2,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    #[value(name = "md")]
    Markdown,
}

/// What to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Command {
    Table(PublishedTable),
    Single { n: usize, m: usize },
    Properties,
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub alpha_list: Vec<f64>,
    pub scheme: SchemeKind,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub depth: usize,
    /// Fixed spatial intervals for tables 2 and 4.
    pub space_intervals: Option<usize>,
    pub jobs: usize,
}

/// Why the arguments were not accepted.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// `--help` or `--version`: print the text and exit successfully.
    Info(String),
    /// One-line diagnostic naming the offending flag.
    Config(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Info(s) | CliError::Config(s) => f.write_str(s),
        }
    }
}

/// Folds a multi-line clap message into one line, dropping usage hints.
fn one_line(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn config_error(flag: &str, msg: impl fmt::Display) -> CliError {
    CliError::Config(format!("error: {flag}: {msg}"))
}

fn scheme_name(s: SchemeKind) -> &'static str {
    match s {
        SchemeKind::Order2 => "order2",
        SchemeKind::Compact4 => "compact",
    }
}

/// Parses `argv` (program name first).
pub fn parse_args(argv: &[String]) -> Result<RunConfig, CliError> {
    let args = Args::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Config(one_line(&e.to_string())),
    })?;
    let requested_scheme = args.scheme.map(|s| match s {
        SchemeArg::Order2 => SchemeKind::Order2,
        SchemeArg::Compact => SchemeKind::Compact4,
    });

    let (command, scheme, alphas, depth) = if let Some(t) = args.table {
        let table = PublishedTable::from_number(t).map_err(|e| config_error("--table", e))?;
        if let Some(s) = requested_scheme {
            if s != table.scheme() {
                return Err(config_error(
                    "--scheme",
                    format!("table {t} uses the {} scheme", scheme_name(table.scheme())),
                ));
            }
        }
        if args.m.is_some() {
            return Err(config_error("--M", "only valid with --single"));
        }
        if args.n.is_some() && !matches!(table, PublishedTable::Two | PublishedTable::Four) {
            return Err(config_error("--N", format!("table {t} couples h to τ; --N applies to tables 2 and 4")));
        }
        let alphas = if args.alpha.is_empty() { table.default_alphas().to_vec() } else { args.alpha.clone() };
        let depth = args.depth.map(|d| d as usize).unwrap_or_else(|| table.published_depth());
        (Command::Table(table), table.scheme(), alphas, depth)
    } else if args.single {
        let alphas = match args.alpha.as_slice() {
            [a] => vec![*a],
            [] => return Err(config_error("--alpha", "--single needs exactly one value")),
            _ => return Err(config_error("--alpha", "--single takes a single value, not a list")),
        };
        if args.depth.is_some() {
            return Err(config_error("--depth", "not used with --single"));
        }
        let n = args.n.expect("required by --single") as usize;
        let m = args.m.expect("required by --single") as usize;
        (Command::Single { n, m }, requested_scheme.unwrap_or(SchemeKind::Order2), alphas, 1)
    } else {
        (Command::Properties, requested_scheme.unwrap_or(SchemeKind::Order2), Vec::new(), 1)
    };

    Ok(RunConfig {
        command,
        alpha_list: alphas,
        scheme,
        output_path: args.out,
        format: args.format,
        depth,
        space_intervals: if matches!(command, Command::Table(_)) { args.n.map(|n| n as usize) } else { None },
        jobs: args.jobs as usize,
    })
}

/// Result of [`run`]: exit status plus diagnostics for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub diagnostics: Vec<String>,
}

fn variant_for(scheme: SchemeKind) -> Variant {
    match scheme {
        SchemeKind::Order2 => Variant::VariableXt,
        SchemeKind::Compact4 => Variant::TimeOnly,
    }
}

fn render_tables(tables: &[ConvergenceTable], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => write_csv(tables),
        OutputFormat::Markdown => write_markdown(tables),
    }
}

fn render_properties(outcomes: &[PropertyOutcome]) -> String {
    outcomes
        .iter()
        .map(|o| format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail))
        .collect()
}

fn execute(config: &RunConfig, exec: Execution) -> crate::Result<(String, bool)> {
    match config.command {
        Command::Table(table) => {
            let mut tables = Vec::with_capacity(config.alpha_list.len());
            for &a in &config.alpha_list {
                let mut spec = ExperimentSpec::published(table, a, config.depth)?;
                if let Some(n) = config.space_intervals {
                    spec.rungs.iter_mut().for_each(|r| r.n = n);
                }
                tables.push(run_experiment(&spec, exec)?);
            }
            Ok((render_tables(&tables, config.format), true))
        }
        Command::Single { n, m } => {
            let alpha = AlphaParam::new(config.alpha_list[0])?;
            let report = run_single(config.scheme, variant_for(config.scheme), alpha, Rung { n, m }, exec)?;
            let table = ConvergenceTable::from_reports(alpha.value(), &[report]);
            Ok((render_tables(&[table], config.format), true))
        }
        Command::Properties => {
            let outcomes = run_suite(exec);
            let ok = outcomes.iter().all(|o| o.passed);
            Ok((render_properties(&outcomes), ok))
        }
    }
}

/// Runs the configured command and writes its output.
pub fn run(config: &RunConfig) -> RunOutcome {
    let computed = with_jobs(config.jobs, |exec| execute(config, exec));
    let (text, ok) = match computed {
        Ok(v) => v,
        Err(e) => return RunOutcome { status: 1, diagnostics: vec![format!("error: {e}")] },
    };
    let written = match &config.output_path {
        Some(path) => fs::write(path, &text)
            .map_err(|e| format!("error: --out: cannot write {}: {e}", path.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("error: cannot write to standard output: {e}")),
    };
    if let Err(msg) = written {
        return RunOutcome { status: 2, diagnostics: vec![msg] };
    }
    RunOutcome { status: if ok { 0 } else { 1 }, diagnostics: Vec::new() }
}

/// Entry point used by the binary; returns the process exit status.
pub fn main_with_args(argv: &[String]) -> i32 {
    match parse_args(argv) {
        Ok(config) => {
            let outcome = run(&config);
            for d in &outcome.diagnostics {
                eprintln!("{d}");
            }
            outcome.status
        }
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(CliError::Config(line)) => {
            eprintln!("{line}");
            2
        }
    }
}
