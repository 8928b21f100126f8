//! Entanglement swapping between two pairs, used by Bob as a
//! particle-existence test on the C leg.

use rand::Rng;

use crate::channel::{PairSystem, Particle};
use crate::qcore::{QuantumError, StateVector};
use crate::BellState;

/// Result of Bell-measuring the C particles of two pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapOutcome {
    pub outcome: BellState,
    /// Joint post-measurement state of both pairs' C sub-registers.
    pub joint: StateVector,
    /// `(pair side, particle)` for each qubit of `joint`; side 0 is `first`.
    pub labels: Vec<(usize, Particle)>,
}

impl SwapOutcome {
    pub fn qubit_of(&self, side: usize, particle: Particle) -> Option<usize> {
        self.labels.iter().position(|l| *l == (side, particle))
    }
}

/// Bell-measures `first.C` together with `second.C` on copies of the two
/// pairs. Both C particles must be present.
pub fn entanglement_swap<R: Rng + ?Sized>(
    first: &PairSystem,
    second: &PairSystem,
    rng: &mut R,
) -> Result<SwapOutcome, QuantumError> {
    let (state_a, labels_a) = first.state_of(Particle::C)?;
    let (state_b, labels_b) = second.state_of(Particle::C)?;
    let joint = state_a.tensor(state_b)?;
    let labels: Vec<(usize, Particle)> = labels_a
        .iter()
        .map(|p| (0, *p))
        .chain(labels_b.iter().map(|p| (1, *p)))
        .collect();
    let q1 = labels
        .iter()
        .position(|l| *l == (0, Particle::C))
        .expect("C located");
    let q2 = labels
        .iter()
        .position(|l| *l == (1, Particle::C))
        .expect("C located");
    let (outcome, joint) = joint.bell_measure(q1, q2, rng)?;
    Ok(SwapOutcome {
        outcome,
        joint,
        labels,
    })
}

/// Bell state left on the two M particles when two singlets are swapped and
/// the C particles read `outcome`: the same Bell state.
pub fn singlet_swap_partner(outcome: BellState) -> BellState {
    outcome
}
