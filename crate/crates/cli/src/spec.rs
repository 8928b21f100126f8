//! Experiment files and their command-line overrides.

use std::path::{Path, PathBuf};

use qsdc_core::protocol::{Bits, LinkGeometry};
use qsdc_core::{AttackModel, ChannelModel, OpDistribution, ProtocolConfig};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// A run configuration file: the protocol parameters plus trial count and
/// output settings. Everything but `message` has a default.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub message: Bits,
    pub n_pairs: Option<usize>,
    pub check_fraction: Option<f64>,
    pub sample_fraction: Option<f64>,
    pub error_threshold: Option<f64>,
    pub seed: Option<u64>,
    pub channel_c: Option<ChannelModel>,
    pub channel_m: Option<ChannelModel>,
    pub attack: Option<AttackModel>,
    pub swap_filter: Option<bool>,
    pub min_delivered: Option<usize>,
    pub link: Option<LinkGeometry>,
    pub trials: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub config: ProtocolConfig,
    pub trials: usize,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

/// Flags that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

pub fn read_config_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

impl ExperimentSpec {
    pub fn parse(text: &str, overrides: &Overrides) -> Result<Self, CliError> {
        let file: ExperimentFile =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let d = ProtocolConfig::default();
        let config = ProtocolConfig {
            n_pairs: file.n_pairs.unwrap_or(d.n_pairs),
            check_fraction: file.check_fraction.unwrap_or(d.check_fraction),
            sample_fraction: file.sample_fraction.unwrap_or(d.sample_fraction),
            error_threshold: file.error_threshold.unwrap_or(d.error_threshold),
            message: file.message,
            seed: overrides.seed.or(file.seed).unwrap_or(d.seed),
            channel_c: file.channel_c.unwrap_or(d.channel_c),
            channel_m: file.channel_m.unwrap_or(d.channel_m),
            attack: file.attack.unwrap_or(d.attack),
            swap_filter: file.swap_filter.unwrap_or(d.swap_filter),
            min_delivered: file.min_delivered.unwrap_or(d.min_delivered),
            link: file.link.unwrap_or(d.link),
        };
        config
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let trials = overrides.trials.or(file.trials).unwrap_or(1);
        if trials == 0 {
            return Err(CliError::Config(
                "invalid field `trials`: must be at least 1".into(),
            ));
        }
        Ok(ExperimentSpec {
            config,
            trials,
            output_path: overrides.out.clone().or(file.output_path),
            output_format: overrides.format.or(file.output_format).unwrap_or_default(),
        })
    }
}

/// Seed of trial `index`: `splitmix64(seed ^ splitmix64(index))`.
///
/// Any subset of trials can be rerun on its own and reproduces exactly.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// ε grid and operation distribution for an I₀ sweep.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<usize>,
    pub dist: Option<[f64; 4]>,
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub dist: OpDistribution,
    pub output_path: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(
        start: f64,
        stop: f64,
        steps: usize,
        dist: [f64; 4],
        output_path: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        for (name, v) in [("start", start), ("stop", stop)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::Config(format!(
                    "invalid field `{name}`: {v} is outside [0, 1]"
                )));
            }
        }
        if steps < 2 {
            return Err(CliError::Config(
                "invalid field `steps`: must be at least 2".into(),
            ));
        }
        let dist = OpDistribution::new(dist)
            .map_err(|e| CliError::Config(format!("invalid field `dist`: {e}")))?;
        Ok(SweepSpec {
            start,
            stop,
            steps,
            dist,
            output_path,
        })
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| {
            if i + 1 == self.steps {
                self.stop
            } else {
                self.start + (self.stop - self.start) * i as f64 / last
            }
        })
    }
}
