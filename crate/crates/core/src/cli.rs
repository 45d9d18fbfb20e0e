//! Command-line surface: `gen`, `verify` and `sweep`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use crate::blowup::{expected_fiber_multiplicity, random_presentation, AlternatingPresentation, BlowupError, BlowupInstance};
use crate::groebner::{Budget, BUDGET_PAIRS_ENV, BUDGET_TERMS_ENV};
use crate::verify::{verify_instance, CheckGroup, Status, Tier, VerificationReport, VerifyConfig, DEFAULT_RESIDUAL_TRIALS};

pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// Exit status for a run whose required checks did not all pass.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for invalid input, parameters or I/O.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rees", version, about = "Rees and special fiber ideals of height-three Gorenstein ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded random instance as JSON.
    Gen(GenArgs),
    /// Run checks on one instance and emit a JSON report.
    Verify(VerifyArgs),
    /// Run checks over a grid of (d, n) and seeds and emit CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "char", default_value_t = DEFAULT_CHARACTERISTIC)]
    characteristic: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Comma-separated check groups (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<CheckGroup>,
    #[arg(long, env = BUDGET_PAIRS_ENV)]
    budget_pairs: Option<u64>,
    #[arg(long, env = BUDGET_TERMS_ENV)]
    budget_terms: Option<u64>,
    #[arg(long, default_value_t = Tier::Required)]
    tier: Tier,
    #[arg(long, default_value_t = DEFAULT_RESIDUAL_TRIALS)]
    residual_trials: u32,
}

impl CheckArgs {
    fn config(&self, timings: bool) -> VerifyConfig {
        let mut budget = Budget::default();
        if let Some(p) = self.budget_pairs {
            budget.max_pairs = p;
        }
        if let Some(t) = self.budget_terms {
            budget.max_terms = t;
        }
        let mut config = VerifyConfig { budget, tier: self.tier, residual_trials: self.residual_trials, timings, ..Default::default() };
        if !self.checks.is_empty() {
            config = config.with_checks(self.checks.iter().copied());
        }
        config
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Instance JSON; without it the instance is generated from --d/--n/--seed.
    instance_file: Option<PathBuf>,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    checks: CheckArgs,
    /// Include wall-clock milliseconds per record.
    #[arg(long)]
    timings: bool,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated `DxN` pairs, e.g. `3x5,4x5`; defaults to the tier's grid.
    #[arg(long)]
    grid: Option<String>,
    /// Number of seeds per pair, starting at --seed.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "char", default_value_t = DEFAULT_CHARACTERISTIC)]
    characteristic: u64,
    #[command(flatten)]
    checks: CheckArgs,
    /// Worker threads (default: available cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn usage(message: String) -> Self {
        CliError { message, code: EXIT_USAGE }
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        // running out of budget while building the instance is a failed run, not bad input
        let code = if e.is_timeout() { EXIT_CHECK_FAILED } else { EXIT_USAGE };
        CliError { message: e.to_string(), code }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("I/O: {e}"))
    }
}

fn required_dn(args: &InstanceArgs) -> Result<(usize, usize), CliError> {
    match (args.d, args.n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(CliError::usage("--d and --n are required".into())),
    }
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, stdout, stderr),
        Command::Verify(a) => cmd_verify(&a, stdout, stderr),
        Command::Sweep(a) => cmd_sweep(&a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let (d, n) = required_dn(&args.instance)?;
    let pres = random_presentation(d, n, args.instance.characteristic, args.instance.seed)?;
    if pres.resamples() > 0 {
        writeln!(stderr, "resamples: {}", pres.resamples())?;
    }
    emit(args.output.as_deref(), &pres.to_json(), stdout)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let pres = match &args.instance_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            AlternatingPresentation::from_json(&text)?
        }
        None => {
            let (d, n) = required_dn(&args.instance)?;
            random_presentation(d, n, args.instance.characteristic, args.instance.seed)?
        }
    };
    let inst = BlowupInstance::new(pres)?;
    let report = verify_instance(&inst, args.checks.config(args.timings));
    emit(args.output.as_deref(), &report.to_json(), stdout)?;
    stderr.write_all(report.table().as_bytes())?;
    Ok(if report.required_ok() { 0 } else { EXIT_CHECK_FAILED })
}

fn parse_grid(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (d, n) = pair.split_once(['x', 'X']).ok_or_else(|| CliError::usage(format!("grid entry `{pair}` is not DxN")))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| CliError::usage(format!("grid entry `{pair}` is not DxN")));
            Ok((parse(d)?, parse(n)?))
        })
        .collect()
}

const SWEEP_HEADER: [&str; 12] = [
    "d",
    "n",
    "seed",
    "instance",
    "resamples",
    "check",
    "status",
    "required",
    "computed_e",
    "expected_e",
    "flagged",
    "detail",
];

fn sweep_rows(d: usize, n: usize, seed: u64, characteristic: u64, config: &VerifyConfig) -> Vec<Vec<String>> {
    let expected = expected_fiber_multiplicity(d, n).to_string();
    let required = Tier::of(d, n) <= config.tier;
    let instance = random_presentation(d, n, characteristic, seed).and_then(BlowupInstance::new);
    let inst = match instance {
        Ok(i) => i,
        Err(e) => {
            let status = if e.is_timeout() { Status::Timeout } else { Status::Fail };
            return vec![vec![
                d.to_string(),
                n.to_string(),
                seed.to_string(),
                format!("d{d}-n{n}-p{characteristic}-s{seed}"),
                String::new(),
                "instance".into(),
                status.to_string(),
                required.to_string(),
                String::new(),
                expected,
                "true".into(),
                e.to_string(),
            ]];
        }
    };
    let report: VerificationReport = verify_instance(&inst, config.clone());
    let computed = report
        .get("multiplicity")
        .and_then(|r| r.certificate.get("computed"))
        .map(Value::to_string)
        .unwrap_or_default();
    report
        .checks
        .iter()
        .map(|c| {
            vec![
                d.to_string(),
                n.to_string(),
                seed.to_string(),
                report.instance.clone(),
                inst.presentation().resamples().to_string(),
                c.name.clone(),
                c.status.to_string(),
                c.required.to_string(),
                computed.clone(),
                expected.clone(),
                (c.status != Status::Pass && c.status != Status::Skipped).to_string(),
                c.certificate.to_string(),
            ]
        })
        .collect()
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let grid = match &args.grid {
        Some(spec) => parse_grid(spec)?,
        None => args.checks.tier.grid(),
    };
    let config = args.checks.config(false);
    let jobs: Vec<(usize, usize, u64)> = grid
        .iter()
        .flat_map(|&(d, n)| (args.seed..args.seed + args.seeds).map(move |s| (d, n, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    let rows: Vec<Vec<Vec<String>>> = pool.install(|| {
        jobs.par_iter().map(|&(d, n, s)| sweep_rows(d, n, s, args.characteristic, &config)).collect()
    });

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::usage(format!("csv: {e}"));
    writer.write_record(SWEEP_HEADER).map_err(csv_err)?;
    let mut failed = false;
    for row in rows.iter().flatten() {
        failed |= row[7] == "true" && row[10] == "true";
        writer.write_record(row).map_err(csv_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::usage(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).expect("csv output is UTF-8");
    emit(args.output.as_deref(), &text, stdout)?;
    writeln!(stderr, "{} instances, {} rows", jobs.len(), rows.iter().map(Vec::len).sum::<usize>())?;
    Ok(if failed { EXIT_CHECK_FAILED } else { 0 })
}
