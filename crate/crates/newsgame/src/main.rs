use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use newsgame::cli;
use newsgame::config::Config;
use newsgame::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "newsgame",
    version,
    about = "Election game with a costly-misreporting news outlet",
    after_help = "Exit codes: 0 success, 1 verification failed, 2 bad configuration, 3 domain or search error."
)]
struct Args {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Override the simulation seed (simulate only).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads; defaults to NEWSGAME_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Equilibrium path over a grid of misreporting costs.
    Sweep,
    /// Brute-force equilibrium checks at the configured costs.
    Verify,
    /// Monte Carlo of the full game at the configured cost.
    Simulate,
    /// Regulator optima and the incumbency-rate curve.
    Regulate,
    /// Equilibrium snapshot at a single cost.
    Equilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("NEWSGAME_THREADS") {
            Ok(raw) => Some(raw.trim().parse().map_err(|_| {
                Error::config(format!("NEWSGAME_THREADS must be a positive integer, got {raw:?}"))
            })?),
            Err(_) => None,
        },
    };
    match requested {
        Some(0) => Err(Error::config("thread count must be at least 1")),
        other => Ok(other),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::config(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::config(format!("cannot write stdout: {e}")))
        }
    }
}

fn run(args: &Args) -> Result<u8> {
    if args.seed.is_some() && !matches!(args.cmd, Cmd::Simulate) {
        return Err(Error::config("--seed only applies to the simulate subcommand"));
    }
    if let Some(n) = thread_count(args.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::config(format!("cannot size thread pool: {e}")))?;
    }
    let path = args
        .config
        .as_deref()
        .ok_or_else(|| Error::config("--config is required"))?;
    let cfg = Config::from_path(path)?;

    let (text, code) = match args.cmd {
        Cmd::Sweep => {
            let rows = cli::run_sweep(&cfg)?;
            let text = match args.format {
                Format::Csv => cli::render_sweep_csv(&rows),
                Format::Jsonl => cli::render_sweep_jsonl(&rows),
            };
            (text, 0)
        }
        Cmd::Verify => {
            let (records, all_passed) = cli::run_verify(&cfg)?;
            let checks: usize = records.iter().map(|r| r.report.checks.len()).sum();
            let failed: usize = records
                .iter()
                .flat_map(|r| &r.report.checks)
                .filter(|c| !c.passed)
                .count();
            eprintln!("verify: {} costs, {checks} checks, {failed} failed", records.len());
            let text = match args.format {
                Format::Csv => cli::render_verify_csv(&records),
                Format::Jsonl => cli::render_verify_jsonl(&records),
            };
            (text, if all_passed { 0 } else { 1 })
        }
        Cmd::Simulate => {
            let summary = cli::run_simulate(&cfg, args.seed)?;
            let text = match args.format {
                Format::Csv => cli::render_simulate_csv(&summary),
                Format::Jsonl => cli::render_simulate_jsonl(&summary),
            };
            (text, 0)
        }
        Cmd::Regulate => {
            let out = cli::run_regulate(&cfg)?;
            let text = match args.format {
                Format::Csv => cli::render_regulate_csv(&out),
                Format::Jsonl => cli::render_regulate_jsonl(&out),
            };
            (text, 0)
        }
        Cmd::Equilibrium => {
            let row = cli::run_equilibrium(&cfg)?;
            let text = match args.format {
                Format::Csv => cli::render_equilibrium_csv(&row),
                Format::Jsonl => cli::render_equilibrium_jsonl(&row),
            };
            (text, 0)
        }
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Config(_) => 2,
                Error::Domain(_) | Error::Search(_) => 3,
            })
        }
    }
}
