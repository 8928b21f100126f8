use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{AttackModel, ChannelModel};

/// Bit string written as `0`/`1` characters; spaces and `_` are ignored when
/// parsing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

impl FromStr for Bits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|ch| !ch.is_whitespace() && *ch != '_')
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bits)
    }
}

impl TryFrom<String> for Bits {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Bits> for String {
    fn from(b: Bits) -> String {
        b.to_string()
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl From<Vec<bool>> for Bits {
    fn from(v: Vec<bool>) -> Self {
        Bits(v)
    }
}

/// Physical link parameters feeding the storage-delay bound in the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkGeometry {
    pub distance_m: f64,
    pub signal_speed: f64,
    pub photon_rate: f64,
}

impl Default for LinkGeometry {
    fn default() -> Self {
        LinkGeometry {
            distance_m: 3e4,
            signal_speed: 2e8,
            photon_rate: 1e6,
        }
    }
}

/// Everything one protocol run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    /// Block size N.
    pub n_pairs: usize,
    /// Fraction of delivered pairs Bob measures in the first check.
    pub check_fraction: f64,
    /// Fraction of the remaining pairs Alice turns into sampling pairs.
    pub sample_fraction: f64,
    /// A check aborts when its error rate exceeds this.
    pub error_threshold: f64,
    pub message: Bits,
    pub seed: u64,
    pub channel_c: ChannelModel,
    pub channel_m: ChannelModel,
    pub attack: AttackModel,
    /// Run entanglement-swapping existence detection after the C leg.
    pub swap_filter: bool,
    /// The first check aborts when fewer delivered pairs than this remain.
    pub min_delivered: usize,
    pub link: LinkGeometry,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            n_pairs: 1000,
            check_fraction: 0.1,
            sample_fraction: 0.05,
            error_threshold: 0.05,
            message: Bits::default(),
            seed: 0,
            channel_c: ChannelModel::IDEAL,
            channel_m: ChannelModel::IDEAL,
            attack: AttackModel::None,
            swap_filter: false,
            min_delivered: 1,
            link: LinkGeometry::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid configuration field `{field}`: {reason}")]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: String,
}

impl ConfigError {
    pub fn new(field: &'static str, reason: impl Into<String>) -> Self {
        ConfigError {
            field,
            reason: reason.into(),
        }
    }
}

/// How a block of `n` pairs is split when nothing is lost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockBudget {
    pub checked: usize,
    pub samples: usize,
    pub message_pairs: usize,
}

/// Pairs consumed by a fraction of `n`, rounded up.
pub(crate) fn portion(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64).ceil() as usize).min(n)
}

impl ProtocolConfig {
    /// Lossless split of the block into check, sample and message pairs.
    pub fn budget(&self) -> BlockBudget {
        let n = if self.swap_filter {
            self.n_pairs - self.n_pairs % 2
        } else {
            self.n_pairs
        };
        let checked = portion(self.check_fraction, n);
        let rest = n - checked;
        let samples = portion(self.sample_fraction, rest);
        BlockBudget {
            checked,
            samples,
            message_pairs: rest - samples,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_pairs == 0 {
            return Err(ConfigError::new("n_pairs", "must be at least 1"));
        }
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.check_fraction) {
            return Err(ConfigError::new("check_fraction", "must lie in (0, 1)"));
        }
        if !(0.0..1.0).contains(&self.sample_fraction) {
            return Err(ConfigError::new("sample_fraction", "must lie in [0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.error_threshold) {
            return Err(ConfigError::new("error_threshold", "must lie in [0, 1]"));
        }
        self.channel_c
            .validate()
            .map_err(|e| ConfigError::new("channel_c", e.to_string()))?;
        self.channel_m
            .validate()
            .map_err(|e| ConfigError::new("channel_m", e.to_string()))?;
        let link = crate::security::DelayInputs {
            distance_m: self.link.distance_m,
            signal_speed: self.link.signal_speed,
            block_size: self.n_pairs as f64,
            photon_rate: self.link.photon_rate,
        };
        link.validate()
            .map_err(|e| ConfigError::new("link", e.to_string()))?;
        let capacity = 2 * self.budget().message_pairs;
        if self.message.len() > capacity {
            return Err(ConfigError::new(
                "message",
                format!(
                    "{} bits exceed block capacity of {capacity} bits",
                    self.message.len()
                ),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::NoiseKind;

    #[test]
    fn bits_parse_and_print() {
        let b: Bits = "0001 1011".parse().unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.to_string(), "00011011");
        assert!("01x".parse::<Bits>().is_err());
    }

    #[test]
    fn default_budget() {
        let cfg = ProtocolConfig::default();
        assert_eq!(
            cfg.budget(),
            BlockBudget {
                checked: 100,
                samples: 45,
                message_pairs: 855
            }
        );
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = ProtocolConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.check_fraction = 1.0;
        assert_eq!(cfg.validate().unwrap_err().field, "check_fraction");
        let cfg = ProtocolConfig {
            n_pairs: 0,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "n_pairs");
        let cfg = ProtocolConfig {
            channel_m: ChannelModel {
                noise: NoiseKind::Depolarizing { p: -0.1 },
                loss: 0.0,
            },
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "channel_m");
    }

    #[test]
    fn message_longer_than_capacity_is_rejected() {
        let cfg = ProtocolConfig {
            n_pairs: 10,
            message: Bits(vec![true; 17]),
            ..Default::default()
        };
        // 10 pairs: 1 checked, 1 sample, 8 message pairs = 16 bits
        assert_eq!(cfg.budget().message_pairs, 8);
        assert_eq!(cfg.validate().unwrap_err().field, "message");
    }
}
