//! The two-step protocol: Alice and Bob driving one block of EPR pairs
//! through the C leg, the first eavesdropping check, dense-coded
//! transmission of the M leg, Bell decoding and the second check.
//!
//! [`Session`] enforces the phase order; [`run_protocol`] runs every phase
//! end to end and summarises the outcome in a [`RunReport`].

mod config;
mod session;
pub mod swap;

use serde::{Deserialize, Serialize};

pub use config::{Bits, BlockBudget, ConfigError, LinkGeometry, ProtocolConfig};
pub use session::{prepare_block, PairSlot, Session};

use crate::bellcode::CodeOp;
use crate::channel::{ChannelError, EveRecord};
use crate::qcore::{MeasBasis, QuantumError};
use crate::BellState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Consumed by the first eavesdropping check.
    FirstCheck,
    /// Carries a random operation known only to Alice until the M leg is over.
    Sample,
    /// Carries two message bits.
    Message,
    /// Lost in transit or left over.
    Discarded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub basis: MeasBasis,
    pub outcome: u8,
}

/// Per-pair ledger entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRecord {
    pub index: usize,
    pub role: Option<Role>,
    pub prepared: BellState,
    pub applied_op: Option<CodeOp>,
    pub alice_meas: Option<Measurement>,
    pub bob_meas: Option<Measurement>,
    pub bob_bell_result: Option<BellState>,
    pub swap_outcome: Option<BellState>,
    pub lost_c: bool,
    pub lost_m: bool,
}

impl PairRecord {
    fn new(index: usize) -> Self {
        PairRecord {
            index,
            role: None,
            prepared: BellState::PsiMinus,
            applied_op: None,
            alice_meas: None,
            bob_meas: None,
            bob_bell_result: None,
            swap_outcome: None,
            lost_c: false,
            lost_m: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Prepared,
    CLegSent,
    SwapFiltered,
    FirstChecked,
    MLegSent,
    Decoded,
    SecondChecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    AbortFirstCheck,
    AbortSecondCheck,
}

/// Outcome of one eavesdropping check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub errors: usize,
    pub error_rate: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSummary {
    pub groups: usize,
    pub failed_groups: usize,
    pub discarded_pairs: usize,
}

/// Structured log of phase transitions and classical announcements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    BlockPrepared {
        n_pairs: usize,
    },
    CLegSent {
        delivered: usize,
        lost: usize,
    },
    SwapFilterApplied(SwapSummary),
    /// Bob announces which pairs he checks, with bases and outcomes.
    FirstCheckAnnounced {
        positions: usize,
    },
    FirstCheckCompleted(CheckOutcome),
    MessageEncoded {
        message_pairs: usize,
        sample_pairs: usize,
    },
    MLegSent {
        delivered: usize,
        lost: usize,
    },
    BellMeasured {
        pairs: usize,
    },
    /// Alice reveals sampling positions and their operations.
    SamplesRevealed {
        positions: usize,
    },
    SecondCheckCompleted(CheckOutcome),
    Finished {
        verdict: Verdict,
    },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{operation} is not allowed in phase {phase:?}")]
    PhaseOrder {
        operation: &'static str,
        phase: Phase,
    },
    #[error("{0} is not allowed after the first check aborted")]
    Aborted(&'static str),
    #[error("swap filter is disabled in the configuration")]
    SwapDisabled,
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Aggregate outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub attack: String,
    pub verdict: Verdict,
    pub first_check_pairs: usize,
    pub first_check_error_rate: f64,
    pub second_check_pairs: usize,
    /// Absent when the run stopped at the first check.
    pub second_check_error_rate: Option<f64>,
    /// Raw Bob-side bits before error correction, pad removed; only on accept.
    pub decoded_message: Option<Bits>,
    pub pad_bits: usize,
    /// Message bits that found no usable pair after losses.
    pub unsent_bits: usize,
    pub message_pairs: usize,
    /// Message pairs whose M particle never arrived; decoded as 00.
    pub message_pairs_lost: usize,
    pub eve_harvest_bits: usize,
    pub eve_harvest_accuracy: Option<f64>,
    pub pairs_lost: usize,
    pub swap: Option<SwapSummary>,
    /// Minimum storage delay 3L/c + N/f for this block, in seconds.
    pub min_delay_s: f64,
}

/// Everything a run produced, for callers that need more than the report.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub records: Vec<PairRecord>,
    pub eve: EveRecord,
    pub events: Vec<Event>,
}

/// Runs the protocol end to end, returning the full outcome.
pub fn run_protocol_detailed(config: &ProtocolConfig) -> Result<RunOutcome, ProtocolError> {
    let mut session = Session::new(config.clone())?;
    session.send_c_leg()?;
    if config.swap_filter {
        session.swap_filter()?;
    }
    if session.first_check()?.accepted {
        session.encode_and_send()?;
        session.decode()?;
        session.second_check()?;
    }
    session.finish()
}

/// Runs the protocol end to end. Deterministic for a given configuration.
pub fn run_protocol(config: &ProtocolConfig) -> Result<RunReport, ProtocolError> {
    run_protocol_detailed(config).map(|o| o.report)
}
