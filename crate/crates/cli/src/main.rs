//! `qsdc`: runs protocol experiments, I₀ sweeps and the storage-delay bound.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration.

mod report;
mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsdc_core::protocol::run_protocol;
use qsdc_core::security::{eve_eigenvalues, eve_information, min_delay};
use qsdc_core::{AttackModel, DelayInputs, MeasBasis, ProbeParams, ProtocolConfig};
use rayon::prelude::*;

use report::{attack_table_csv, sweep_csv, AttackRow, RunSummary, SweepRow, TrialReport};
use spec::{
    read_config_text, trial_seed, ExperimentSpec, OutputFormat, Overrides, SweepFile, SweepSpec,
};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Config(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "qsdc", version, about = "Two-step QSDC simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct CommonFlags {
    /// Experiment file (TOML).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Base seed; overrides the file.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Number of independent runs; overrides the file.
    #[arg(long, value_name = "N")]
    trials: Option<usize>,
}

impl CommonFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            trials: self.trials,
            out: self.out.clone(),
            format: self.format,
        }
    }

    fn experiment(&self) -> Result<ExperimentSpec, CliError> {
        let path = self
            .config
            .as_deref()
            .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
        ExperimentSpec::parse(&read_config_text(path)?, &self.overrides())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the protocol `trials` times and write the aggregated report.
    Run(CommonFlags),
    /// Tabulate the eigenvalues of Eve's state and I₀ over an ε grid.
    Sweep {
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long)]
        start: Option<f64>,
        #[arg(long)]
        stop: Option<f64>,
        /// Grid points, both ends included.
        #[arg(long)]
        steps: Option<usize>,
        /// Operation probabilities `p0,p1,p2,p3`.
        #[arg(long, value_delimiter = ',')]
        dist: Option<Vec<f64>>,
    },
    /// Print the minimum storage delay 3L/c + N/f in seconds.
    Delay {
        /// Alice–Bob distance L, meters.
        #[arg(long, allow_hyphen_values = true)]
        distance: f64,
        /// Signal speed c, m/s.
        #[arg(long, allow_hyphen_values = true)]
        speed: f64,
        /// Block size N.
        #[arg(long, allow_hyphen_values = true)]
        block_size: f64,
        /// Photon rate f, 1/s.
        #[arg(long, allow_hyphen_values = true)]
        rate: f64,
    },
    /// Run every attack against the base configuration and tabulate outcomes.
    AttackTable {
        #[command(flatten)]
        common: CommonFlags,
        /// Error rate of the unitary-probe row.
        #[arg(long, default_value_t = 0.1)]
        probe_eps: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsdc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(flags) => cmd_run(&flags.experiment()?),
        Command::Sweep {
            common,
            start,
            stop,
            steps,
            dist,
        } => {
            let file: SweepFile = match &common.config {
                Some(path) => toml::from_str(&read_config_text(path)?)
                    .map_err(|e| CliError::Config(e.to_string()))?,
                None => SweepFile {
                    start: None,
                    stop: None,
                    steps: None,
                    dist: None,
                    output_path: None,
                },
            };
            let dist = match dist {
                Some(v) => v.try_into().map_err(|v: Vec<f64>| {
                    CliError::Config(format!("invalid flag `--dist`: {} values, need 4", v.len()))
                })?,
                None => file.dist.unwrap_or([0.25; 4]),
            };
            let spec = SweepSpec::new(
                start.or(file.start).unwrap_or(0.0),
                stop.or(file.stop).unwrap_or(1.0),
                steps.or(file.steps).unwrap_or(21),
                dist,
                common.out.clone().or(file.output_path),
            )?;
            cmd_sweep(&spec, common.format.unwrap_or(OutputFormat::Csv))
        }
        Command::Delay {
            distance,
            speed,
            block_size,
            rate,
        } => {
            let tau = min_delay(&DelayInputs {
                distance_m: distance,
                signal_speed: speed,
                block_size,
                photon_rate: rate,
            })
            .map_err(|e| CliError::Config(e.to_string()))?;
            emit(None, &format!("{tau:e}\n"))
        }
        Command::AttackTable { common, probe_eps } => {
            let params = ProbeParams::from_error_rate(probe_eps)
                .map_err(|e| CliError::Config(format!("invalid flag `--probe-eps`: {e}")))?;
            cmd_attack_table(&common.experiment()?, params)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs the trials in parallel; the result is ordered by trial index.
fn run_trials(config: &ProtocolConfig, trials: usize) -> Result<RunSummary, CliError> {
    let runs = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let cfg = ProtocolConfig {
                seed: trial_seed(config.seed, trial),
                ..config.clone()
            };
            run_protocol(&cfg)
                .map(|report| TrialReport { trial, report })
                .map_err(|e| CliError::Config(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunSummary::new(config.seed, runs))
}

fn cmd_run(spec: &ExperimentSpec) -> Result<(), CliError> {
    let summary = run_trials(&spec.config, spec.trials)?;
    let text = match spec.output_format {
        OutputFormat::Json => to_json(&summary),
        OutputFormat::Csv => summary.to_csv(),
    };
    emit(spec.output_path.as_deref(), &text)
}

fn cmd_sweep(spec: &SweepSpec, format: OutputFormat) -> Result<(), CliError> {
    let rows = spec
        .grid()
        .map(|eps| {
            let lambda =
                eve_eigenvalues(&spec.dist, eps).map_err(|e| CliError::Config(e.to_string()))?;
            let i0_bits =
                eve_information(&spec.dist, eps).map_err(|e| CliError::Config(e.to_string()))?;
            Ok(SweepRow {
                eps,
                p: spec.dist.probs(),
                lambda,
                i0_bits,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = match format {
        OutputFormat::Csv => sweep_csv(&rows),
        OutputFormat::Json => to_json(&rows),
    };
    emit(spec.output_path.as_deref(), &text)
}

fn cmd_attack_table(spec: &ExperimentSpec, probe: ProbeParams) -> Result<(), CliError> {
    let attacks = [
        AttackModel::None,
        AttackModel::InterceptResend {
            basis: MeasBasis::Z,
        },
        AttackModel::FakeEpr,
        AttackModel::UnitaryProbe { params: probe },
        AttackModel::InterceptMOnly {
            basis: MeasBasis::Z,
        },
    ];
    let rows = attacks
        .iter()
        .map(|&attack| {
            let config = ProtocolConfig {
                attack,
                ..spec.config.clone()
            };
            run_trials(&config, spec.trials).map(|s| AttackRow::from_summary(&s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = match spec.output_format {
        OutputFormat::Csv => attack_table_csv(&rows),
        OutputFormat::Json => to_json(&rows),
    };
    emit(spec.output_path.as_deref(), &text)
}
