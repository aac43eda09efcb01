//! `qmur` — measurement-uncertainty toolkit for binary qubit observables.
//!
//! Subcommands: `verify` (randomized inequality sweeps), `optimize`
//! (error-optimal compatible approximator pair), `experiment`
//! (Vienna/Toronto scheme sweeps as CSV or JSON), and `simulate`
//! (finite-shot empirical error analysis).
//!
//! Exit codes: 0 success, 1 property violation, 2 usage error, 3 I/O error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod output;
mod simulate;

use output::{write_json, write_rows_csv, write_rows_json};

#[derive(Parser)]
#[command(
    name = "qmur",
    version,
    about = "Measurement-uncertainty trade-offs for qubit observables",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized verification sweeps of the trade-off inequalities.
    Verify(VerifyArgs),
    /// Construct the error-optimal compatible approximator pair for two
    /// sharp targets.
    Optimize(OptimizeArgs),
    /// Sweep an experiment model and emit a plot-ready table.
    Experiment(ExperimentArgs),
    /// Finite-shot simulation with empirical error analysis.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Which sweep suite to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Random instances per suite.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed; identical seeds reproduce identical reports.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the JSON summary here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Qur,
    Prep,
    Epsno,
    Compat,
    All,
}

impl Suite {
    fn kinds(self) -> Vec<qmur::verify::SuiteKind> {
        use qmur::verify::SuiteKind;
        match self {
            Suite::Qur => vec![SuiteKind::Qur],
            Suite::Prep => vec![SuiteKind::Prep],
            Suite::Epsno => vec![SuiteKind::EpsNo],
            Suite::Compat => vec![SuiteKind::Compat],
            Suite::All => vec![
                SuiteKind::Qur,
                SuiteKind::Prep,
                SuiteKind::EpsNo,
                SuiteKind::Compat,
            ],
        }
    }
}

#[derive(Args)]
struct OptimizeArgs {
    /// Angle between the two target axes, degrees; shorthand for
    /// a = x̂, b = (cos, sin, 0).
    #[arg(long, conflicts_with_all = ["a", "b"])]
    angle: Option<f64>,
    /// First target axis as "x,y,z" (unit vector).
    #[arg(long, requires = "b")]
    a: Option<String>,
    /// Second target axis as "x,y,z" (unit vector).
    #[arg(long, requires = "a")]
    b: Option<String>,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which experiment model to sweep.
    #[arg(value_enum)]
    kind: ExperimentKind,
    /// Approximator angle sweep for the Vienna model, degrees, as
    /// "start:end:step" or a single value.
    #[arg(long)]
    alpha: Option<String>,
    /// Pointer polar-angle sweep for the Toronto model, degrees.
    #[arg(long)]
    theta: Option<String>,
    /// Pointer azimuth for the Toronto model, degrees.
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentKind {
    Vienna,
    Toronto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON configuration file (see README for the schema).
    #[arg(long)]
    config: std::path::PathBuf,
    /// Shots per observable and state.
    #[arg(long, default_value_t = 1_000_000)]
    shots: u64,
    /// RNG seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Bootstrap resamples for the confidence intervals.
    #[arg(long, default_value_t = qmur::montecarlo::DEFAULT_RESAMPLES)]
    resamples: u32,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Also write the raw counts as CSV to this path.
    #[arg(long)]
    counts: Option<std::path::PathBuf>,
}

/// Command-level failure with its process exit code.
enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<qmur::Error> for Failure {
    fn from(err: qmur::Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

#[derive(serde::Serialize)]
struct VerifySummary {
    samples: u64,
    seed: u64,
    total_violations: u64,
    suites: Vec<qmur::verify::SuiteReport>,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    if args.samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let mut suites = Vec::new();
    for kind in args.suite.kinds() {
        suites.push(qmur::verify::run_suite(kind, args.samples, args.seed)?);
    }
    let total_violations: u64 = suites.iter().map(|s| s.violations()).sum();
    let summary = VerifySummary {
        samples: args.samples,
        seed: args.seed,
        total_violations,
        suites,
    };
    write_json(&summary, args.output.as_deref())?;
    Ok(if total_violations == 0 { 0 } else { 1 })
}

#[derive(serde::Serialize)]
struct OptimizeReport {
    a: qmur::BlochVector,
    b: qmur::BlochVector,
    c: qmur::BlochVector,
    d: qmur::BlochVector,
    achieved: f64,
    bound: f64,
    slack: f64,
}

fn parse_vector(text: &str) -> Result<qmur::BlochVector, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!(
            "expected a vector as \"x,y,z\", got \"{text}\""
        )));
    }
    let mut coords = [0.0f64; 3];
    for (slot, part) in coords.iter_mut().zip(parts.iter()) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid vector component \"{part}\"")))?;
    }
    Ok(qmur::BlochVector::from(coords))
}

fn cmd_optimize(args: OptimizeArgs) -> Result<u8, Failure> {
    let (a, b) = match (args.angle, args.a.as_deref(), args.b.as_deref()) {
        (Some(angle_deg), None, None) => {
            let angle = angle_deg.to_radians();
            (
                qmur::BlochVector::X,
                qmur::BlochVector::new(angle.cos(), angle.sin(), 0.0),
            )
        }
        (None, Some(a), Some(b)) => (parse_vector(a)?, parse_vector(b)?),
        _ => {
            return Err(Failure::Usage(
                "provide either --angle or both --a and --b".into(),
            ))
        }
    };
    let (c, d) = qmur::tradeoff::optimal_pair(&a, &b)?;
    let achieved = 2.0 * (c - a).norm() + 2.0 * (d - b).norm();
    let bound = qmur::tradeoff::qur_bound(&a, &b)?;
    let report = OptimizeReport {
        a,
        b,
        c,
        d,
        achieved,
        bound,
        slack: achieved - bound,
    };
    write_json(&report, args.output.as_deref())?;
    Ok(0)
}

/// Parses "start:end:step" (inclusive, degrees) or a single value into a
/// non-empty, ascending list of radians.
fn parse_range(text: &str, name: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let usage = || {
        Failure::Usage(format!(
            "--{name} expects \"start:end:step\" or a single value in degrees, got \"{text}\""
        ))
    };
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| usage());
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?.to_radians()]),
        [start, end, step] => {
            let start = parse(start)?;
            let end = parse(end)?;
            let step = parse(step)?;
            if !(step > 0.0 && end >= start && start.is_finite() && end.is_finite()) {
                return Err(Failure::Usage(format!(
                    "--{name} range is empty or malformed: \"{text}\""
                )));
            }
            let count = ((end - start) / step).round() as i64;
            let mut values = Vec::new();
            for i in 0..=count.max(0) {
                let deg = start + step * i as f64;
                if deg <= end + 1e-9 {
                    values.push(deg.to_radians());
                }
            }
            if values.is_empty() {
                return Err(Failure::Usage(format!(
                    "--{name} range is empty: \"{text}\""
                )));
            }
            Ok(values)
        }
        _ => Err(usage()),
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<u8, Failure> {
    match args.kind {
        ExperimentKind::Vienna => {
            let spec = args
                .alpha
                .as_deref()
                .ok_or_else(|| Failure::Usage("the vienna experiment requires --alpha".into()))?;
            if args.theta.is_some() {
                return Err(Failure::Usage(
                    "--theta applies to the toronto experiment only".into(),
                ));
            }
            let alphas = parse_range(spec, "alpha")?;
            let rows = qmur::experiments::vienna_sweep(&alphas)?;
            let header = [
                "alpha_deg",
                "delta_sq_a",
                "delta_sq_b",
                "eps_a",
                "eps_b",
                "lhs",
                "rhs",
                "slack",
                "state_err_sq_a",
                "state_err_sq_b",
            ];
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.alpha_deg,
                        r.delta_sq_a,
                        r.delta_sq_b,
                        r.eps_a,
                        r.eps_b,
                        r.lhs,
                        r.rhs,
                        r.slack,
                        r.state_err_sq_a,
                        r.state_err_sq_b,
                    ]
                })
                .collect::<Vec<_>>();
            match args.format {
                Format::Csv => write_rows_csv(&header, &cells, args.output.as_deref())?,
                Format::Json => write_rows_json(&rows, args.output.as_deref())?,
            }
        }
        ExperimentKind::Toronto => {
            let spec = args
                .theta
                .as_deref()
                .ok_or_else(|| Failure::Usage("the toronto experiment requires --theta".into()))?;
            if args.alpha.is_some() {
                return Err(Failure::Usage(
                    "--alpha applies to the vienna experiment only".into(),
                ));
            }
            let thetas = parse_range(spec, "theta")?;
            let rows = qmur::experiments::toronto_sweep(&thetas, args.phi.to_radians())?;
            let header = [
                "theta_deg",
                "phi_deg",
                "delta_sq_a",
                "delta_sq_b",
                "eps_a",
                "eps_b",
                "lhs",
                "rhs",
                "slack",
            ];
            let cells = rows
                .iter()
                .map(|r| {
                    vec![
                        r.theta_deg,
                        r.phi_deg,
                        r.delta_sq_a,
                        r.delta_sq_b,
                        r.eps_a,
                        r.eps_b,
                        r.lhs,
                        r.rhs,
                        r.slack,
                    ]
                })
                .collect::<Vec<_>>();
            match args.format {
                Format::Csv => write_rows_csv(&header, &cells, args.output.as_deref())?,
                Format::Json => write_rows_json(&rows, args.output.as_deref())?,
            }
        }
    }
    Ok(0)
}

fn cmd_simulate(args: SimulateArgs) -> Result<u8, Failure> {
    if args.shots == 0 {
        return Err(Failure::Usage("--shots must be positive".into()));
    }
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.config.display())))?;
    let config: simulate::SimulateConfig = serde_json::from_str(&text).map_err(|e| {
        Failure::Io(format!(
            "{}: parse error at line {}, column {}: {e}",
            args.config.display(),
            e.line(),
            e.column()
        ))
    })?;
    let report = simulate::run(&config, args.shots, args.seed, args.resamples)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = &args.counts {
        simulate::write_counts_csv(&report, path)?;
    }
    write_json(&report, args.output.as_deref())?;
    Ok(0)
}
