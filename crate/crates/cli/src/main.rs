use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cmweight_cli::corpus::run_corpus;
use cmweight_cli::job::JobSpec;
use cmweight_cli::pipeline::{analyze, oracle, verify, PipelineError};
use cmweight_cli::{EXIT_INPUT, EXIT_INVARIANT, EXIT_OK};

/// Exact Hilbert-point weights, Futaki invariants and CM weights of
/// Groebner degenerations of projective schemes.
#[derive(Parser)]
#[command(name = "cmweight", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a job file and print the JSON report.
    Analyze {
        job: PathBuf,
        /// Compute Hilbert functions by enumeration instead of recursion.
        #[arg(long)]
        no_fast_path: bool,
        /// Recompute along both Hilbert paths and fail hard on mismatch.
        #[arg(long)]
        cross_check: bool,
    },
    /// Print the lift-weight table A(m) over a range; nonzero exit on any
    /// deviation from the m-independent constant.
    Verify {
        job: PathBuf,
        #[arg(long)]
        m_from: u32,
        #[arg(long)]
        m_to: u32,
        #[arg(long)]
        no_fast_path: bool,
        #[arg(long)]
        cross_check: bool,
        /// Test hook: add DELTA to the cached weight value at M ("M:DELTA").
        #[arg(long, hide = true, value_name = "M:DELTA")]
        corrupt_weight: Option<String>,
    },
    /// Dump the degree-m standard monomials of the central fiber with their
    /// weights, plus totals.
    Oracle {
        job: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Run every *.job.json in a directory against its *.golden.json.
    Corpus { dir: PathBuf },
}

fn main() -> ExitCode {
    let code = run(Cli::parse());
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze { job, no_fast_path, cross_check } => {
            let job = match load(&job, no_fast_path, cross_check) {
                Ok(job) => job,
                Err(code) => return code,
            };
            match analyze(&job) {
                Ok(report) => {
                    println!("{}", report.to_json_pretty());
                    EXIT_OK
                }
                Err(e) => fail(e),
            }
        }
        Command::Verify { job, m_from, m_to, no_fast_path, cross_check, corrupt_weight } => {
            let job = match load(&job, no_fast_path, cross_check) {
                Ok(job) => job,
                Err(code) => return code,
            };
            let corrupt = match corrupt_weight.as_deref().map(parse_corruption) {
                None => None,
                Some(Ok(c)) => Some(c),
                Some(Err(msg)) => {
                    eprintln!("input error: {msg}");
                    return EXIT_INPUT;
                }
            };
            match verify(&job, m_from, m_to, corrupt) {
                Ok(outcome) => {
                    if outcome.adjusted {
                        eprintln!(
                            "warning: m_from {} is below the detected onset; starting at {}",
                            outcome.requested_from, outcome.m_from
                        );
                    }
                    println!("m-independence check over m = {}..={}", outcome.m_from, outcome.m_to);
                    for (m, a) in &outcome.table {
                        let mark = if outcome.failures.contains(m) { "  <-- MISMATCH" } else { "" };
                        println!("  A({m}) = {a}{mark}");
                    }
                    println!("target constant (n+1)!(2a_n - mu*a_(n+1)) = {}", outcome.target);
                    println!("cm weight = {}", outcome.w_cm);
                    if outcome.failures.is_empty() {
                        println!("PASS");
                        EXIT_OK
                    } else {
                        println!("FAIL at m = {:?}", outcome.failures);
                        EXIT_INVARIANT
                    }
                }
                Err(e) => fail(e),
            }
        }
        Command::Oracle { job, m } => {
            let job = match JobSpec::load(&job) {
                Ok(job) => job,
                Err(e) => return fail(e),
            };
            match oracle(&job, m) {
                Ok(dump) => {
                    println!(
                        "standard monomials of ({}) at m = {} ({} total):",
                        dump.lead_ideal.join(", "),
                        dump.m,
                        dump.rows.len()
                    );
                    for (mono, w) in &dump.rows {
                        println!("  {mono:<24} <w,a> = {w}");
                    }
                    println!("pairing total    = {}", dump.pairing_total);
                    println!("hilbert_weight   = {}", dump.hilbert_weight);
                    println!("hilbert_function = {}", dump.hilbert_function);
                    EXIT_OK
                }
                Err(e) => fail(e),
            }
        }
        Command::Corpus { dir } => match run_corpus(&dir) {
            Ok(summary) => {
                for (name, status) in &summary.rows {
                    println!("{name:<32} {status}");
                }
                let (pass, fail, new, error) = summary.counts();
                println!(
                    "{} jobs: {pass} pass, {fail} fail, {new} new, {error} error",
                    summary.rows.len()
                );
                summary.exit_code()
            }
            Err(e) => fail(e),
        },
    }
}

fn load(path: &PathBuf, no_fast_path: bool, cross_check: bool) -> Result<JobSpec, i32> {
    let mut job = JobSpec::load(path).map_err(fail)?;
    if no_fast_path {
        job.options.fast_path = false;
    }
    if cross_check {
        job.options.cross_check = true;
    }
    Ok(job)
}

fn parse_corruption(text: &str) -> Result<(u32, i64), String> {
    let (m, delta) = text
        .split_once(':')
        .ok_or_else(|| format!("expected M:DELTA, got {text}"))?;
    Ok((
        m.trim().parse().map_err(|e| format!("bad M in {text}: {e}"))?,
        delta.trim().parse().map_err(|e| format!("bad DELTA in {text}: {e}"))?,
    ))
}

fn fail(e: PipelineError) -> i32 {
    eprintln!("{e}");
    match e {
        PipelineError::Input(_) => EXIT_INPUT,
        PipelineError::Invariant(_) => EXIT_INVARIANT,
    }
}
