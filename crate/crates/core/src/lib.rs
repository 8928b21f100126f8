//! Simulator and analytic toolkit for two-step quantum secure direct
//! communication over blocks of EPR pairs.
//!
//! The crate is layered bottom-up:
//!
//! - [`qcore`]: exact state-vector simulation of small qubit registers with
//!   single-qubit and Bell-basis measurement.
//! - [`bellcode`]: the 2-bit ↔ Bell state ↔ dense-coding unitary mapping.
//! - [`channel`]: noisy, lossy transmission and the adversary models.
//! - [`protocol`]: the Alice/Bob session driving a full block through both
//!   transmission legs and both eavesdropping checks.
//! - [`security`]: closed-form leakage and delay formulas, cross-checked
//!   against [`qcore`] numerics.

pub mod bellcode;
pub mod channel;
pub mod protocol;
pub mod qcore;
pub mod security;
pub mod stats;

pub use bellcode::{BellState, CodeOp};
pub use channel::{AttackModel, ChannelModel, NoiseKind, ProbeParams};
pub use protocol::{ProtocolConfig, RunReport, Verdict};
pub use qcore::{DensityMatrix, MeasBasis, StateVector, Unitary2};
pub use security::{DelayInputs, OpDistribution};

/// Deterministic generator used by every stochastic operation.
pub type SimRng = rand_chacha::ChaCha8Rng;

/// Builds the run generator from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SimRng {
    use rand::SeedableRng;
    SimRng::seed_from_u64(seed)
}
