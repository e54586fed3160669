use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conproc::analysis::{check_null_controllability_with, check_reachability_with, Verdict, VerdictResult};
use conproc::io::{parse_system, CheckKind, FileOptions};
use conproc::oracle::{feasible_chain, k_step_set, sample_trajectory, OracleDir, Trajectory};
use conproc::process::DualSign;
use conproc::spectral::EigenOptions;
use conproc::{ConvexProcess, Rat};

mod report;

const ABOUT: &str = "Exact reachability and null-controllability analysis of polyhedral convex processes";

const LONG_ABOUT: &str = "\
Exact reachability and null-controllability analysis of polyhedral convex processes.

A system file describes H either as a constrained linear system
  x+ = Ax + Bu,  Cx + Du in Y
or directly by its graph cone in R^{2n}. Only closed processes can be
represented: a process whose graph is not closed is analyzed through its
closure, which may differ in null-controllability.";

#[derive(Parser)]
#[command(name = "conproc", version, about = ABOUT, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Default iteration count for `oracle` and `simulate`.
    #[arg(long, global = true)]
    max_steps: Option<usize>,

    /// Bisection budget per irrational eigenvalue candidate.
    #[arg(long, global = true)]
    refine_depth: Option<usize>,

    /// Print full certificates in text output.
    #[arg(long, global = true)]
    certificate: bool,

    /// Exit with status 2 when a verdict is INDETERMINATE.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide reachability and/or null-controllability.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Option<Check>,
    },
    /// Iterate k-step reachable, null-controllable or feasible cones.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        dir: Dir,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Sample a trajectory greedily (floating-point output).
    Simulate {
        file: PathBuf,
        /// Initial state as comma-separated rationals, e.g. `1,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the graph of the dual process H⁻.
    Dual { file: PathBuf },
    /// Print domain, image, linear bounds and their subspaces.
    Info { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Reach,
    Null,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Reach,
    Null,
    Feasible,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(file: &PathBuf) -> Result<(ConvexProcess, FileOptions), String> {
    parse_system(file).map_err(|e| e.to_string())
}

fn parse_vector(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<Rat>().map_err(|e| format!("--x0: {e}")))
        .collect()
}

fn run(cli: &Cli) -> Result<u8, String> {
    let out = match &cli.command {
        Command::Analyze { file, check } => {
            let (h, opts) = load(file)?;
            let check = match (check, opts.check) {
                (Some(Check::Reach), _) | (None, Some(CheckKind::Reach)) => Check::Reach,
                (Some(Check::Null), _) | (None, Some(CheckKind::Null)) => Check::Null,
                _ => Check::All,
            };
            let eigen = EigenOptions {
                refine_depth: cli.refine_depth.or(opts.refine_depth).unwrap_or(64),
                resolve_moot: false,
            };
            let mut verdicts: Vec<Verdict> = Vec::new();
            if matches!(check, Check::Reach | Check::All) {
                verdicts.push(check_reachability_with(&h, &eigen));
            }
            if matches!(check, Check::Null | Check::All) {
                verdicts.push(check_null_controllability_with(&h, &eigen));
            }
            let text = report::verdicts(&verdicts, cli.format, cli.certificate);
            print!("{text}");
            let indeterminate = verdicts.iter().any(|v| v.result == VerdictResult::Indeterminate);
            return Ok(if cli.strict && indeterminate { 2 } else { 0 });
        }
        Command::Oracle { file, dir, steps } => {
            let (h, opts) = load(file)?;
            let k = steps.or(cli.max_steps).or(opts.max_steps).unwrap_or(4 * h.n());
            match dir {
                Dir::Reach => {
                    let r = k_step_set(&h, k, OracleDir::Reach);
                    report::chain("REACH", &r.cones, r.saturated_at, cli.format)
                }
                Dir::Null => {
                    let r = k_step_set(&h, k, OracleDir::Null);
                    report::chain("NULL", &r.cones, r.saturated_at, cli.format)
                }
                Dir::Feasible => {
                    let f = feasible_chain(&h, k);
                    report::chain("FEASIBLE", &f.cones, f.stabilized_at, cli.format)
                }
            }
        }
        Command::Simulate { file, x0, steps, seed } => {
            let (h, opts) = load(file)?;
            let x0 = parse_vector(x0)?;
            let k = steps.or(cli.max_steps).or(opts.max_steps).unwrap_or(10);
            let t: Trajectory = sample_trajectory(&h, &x0, k, *seed).map_err(|e| e.to_string())?;
            report::trajectory(&t, cli.format)
        }
        Command::Dual { file } => {
            let (h, _) = load(file)?;
            report::process(&h.dual(DualSign::Minus), cli.format)
        }
        Command::Info { file } => {
            let (h, _) = load(file)?;
            report::info(&h, cli.format)
        }
    };
    print!("{out}");
    Ok(0)
}
