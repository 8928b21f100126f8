use std::fmt::Debug;

use rand::Rng;

use super::{DensityMatrix, MeasBasis, QuantumError, StateVector, Unitary2, Unitary4};
use crate::bellcode::BellState;

/// A set of particles addressed by label instead of qubit index.
///
/// Particles that have never interacted live in separate sub-registers;
/// a joint operation tensors the sub-registers involved together first.
/// Discarding a particle measures it in Z and drops it, which samples one
/// branch of the partial trace over that particle.
#[derive(Debug, Clone)]
pub struct LabeledRegister<L> {
    parts: Vec<Part<L>>,
}

#[derive(Debug, Clone)]
struct Part<L> {
    state: StateVector,
    labels: Vec<L>,
}

impl<L: Copy + Eq + Debug> Default for LabeledRegister<L> {
    fn default() -> Self {
        LabeledRegister { parts: Vec::new() }
    }
}

impl<L: Copy + Eq + Debug> LabeledRegister<L> {
    pub fn new(state: StateVector, labels: &[L]) -> Result<Self, QuantumError> {
        let mut reg = Self::default();
        reg.adjoin(state, labels)?;
        Ok(reg)
    }

    /// Adds independent particles in `state`, labelled in qubit order.
    pub fn adjoin(&mut self, state: StateVector, labels: &[L]) -> Result<(), QuantumError> {
        if labels.len() != state.num_qubits() {
            return Err(QuantumError::BadRegisterSize(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if self.contains(*l) || labels[..i].contains(l) {
                return Err(QuantumError::UnknownLabel(format!("{l:?} (duplicate)")));
            }
        }
        self.parts.push(Part {
            state,
            labels: labels.to_vec(),
        });
        Ok(())
    }

    pub fn contains(&self, label: L) -> bool {
        self.parts.iter().any(|p| p.labels.contains(&label))
    }

    pub fn labels(&self) -> Vec<L> {
        self.parts
            .iter()
            .flat_map(|p| p.labels.iter().copied())
            .collect()
    }

    pub fn num_particles(&self) -> usize {
        self.parts.iter().map(|p| p.labels.len()).sum()
    }

    fn locate(&self, label: L) -> Result<(usize, usize), QuantumError> {
        self.parts
            .iter()
            .enumerate()
            .find_map(|(pi, p)| p.labels.iter().position(|l| *l == label).map(|q| (pi, q)))
            .ok_or_else(|| QuantumError::UnknownLabel(format!("{label:?}")))
    }

    /// Brings two labels into one sub-register, returning its index.
    fn merge(&mut self, a: L, b: L) -> Result<usize, QuantumError> {
        let (pa, _) = self.locate(a)?;
        let (pb, _) = self.locate(b)?;
        if pa == pb {
            return Ok(pa);
        }
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        let second = self.parts.remove(hi);
        let first = &mut self.parts[lo];
        first.state = first.state.tensor(&second.state)?;
        first.labels.extend(second.labels);
        Ok(lo)
    }

    pub fn apply(&mut self, label: L, u: &Unitary2) -> Result<(), QuantumError> {
        let (p, q) = self.locate(label)?;
        self.parts[p].state = self.parts[p].state.apply_single(q, u)?;
        Ok(())
    }

    /// Applies `u` to `(first, second)`, `first` being the more significant
    /// index of the 4×4 matrix.
    pub fn apply_two(&mut self, first: L, second: L, u: &Unitary4) -> Result<(), QuantumError> {
        let p = self.merge(first, second)?;
        let (_, q1) = self.locate(first)?;
        let (_, q2) = self.locate(second)?;
        self.parts[p].state = self.parts[p].state.apply_two(q1, q2, u)?;
        Ok(())
    }

    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        label: L,
        basis: MeasBasis,
        rng: &mut R,
    ) -> Result<u8, QuantumError> {
        let (p, q) = self.locate(label)?;
        let (outcome, post) = self.parts[p].state.measure_qubit(q, basis, rng)?;
        self.parts[p].state = post;
        Ok(outcome)
    }

    pub fn bell_measure<R: Rng + ?Sized>(
        &mut self,
        first: L,
        second: L,
        rng: &mut R,
    ) -> Result<BellState, QuantumError> {
        if first == second {
            return Err(QuantumError::UnknownLabel(format!(
                "{first:?} (used twice)"
            )));
        }
        let p = self.merge(first, second)?;
        let (_, q1) = self.locate(first)?;
        let (_, q2) = self.locate(second)?;
        let (which, post) = self.parts[p].state.bell_measure(q1, q2, rng)?;
        self.parts[p].state = post;
        Ok(which)
    }

    /// Removes a particle from the register (lost photon, consumed probe).
    pub fn discard<R: Rng + ?Sized>(&mut self, label: L, rng: &mut R) -> Result<(), QuantumError> {
        let (p, q) = self.locate(label)?;
        let part = &mut self.parts[p];
        if part.labels.len() == 1 {
            self.parts.remove(p);
            return Ok(());
        }
        let (outcome, post) = part.state.measure_qubit(q, MeasBasis::Z, rng)?;
        part.state = post.remove_qubit(q, outcome)?;
        part.labels.remove(q);
        Ok(())
    }

    pub fn relabel(&mut self, from: L, to: L) -> Result<(), QuantumError> {
        if from != to && self.contains(to) {
            return Err(QuantumError::UnknownLabel(format!(
                "{to:?} (already present)"
            )));
        }
        let (p, q) = self.locate(from)?;
        self.parts[p].labels[q] = to;
        Ok(())
    }

    /// Reduced density matrix of `labels`, in the given order.
    pub fn reduced_density(&self, labels: &[L]) -> Result<DensityMatrix, QuantumError> {
        let mut scratch = self.clone();
        let Some(&head) = labels.first() else {
            return Err(QuantumError::BadKeepSet);
        };
        for &l in &labels[1..] {
            scratch.merge(head, l)?;
        }
        let (p, _) = scratch.locate(head)?;
        let keep = labels
            .iter()
            .map(|l| scratch.locate(*l).map(|(_, q)| q))
            .collect::<Result<Vec<_>, _>>()?;
        scratch.parts[p].state.reduced_density(&keep)
    }

    /// Joint pure state of the sub-register holding `label`, with its
    /// labels in qubit order.
    pub fn state_of(&self, label: L) -> Result<(&StateVector, &[L]), QuantumError> {
        let (p, _) = self.locate(label)?;
        Ok((&self.parts[p].state, &self.parts[p].labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::make_bell;
    use crate::seeded_rng;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    enum P {
        A,
        B,
        C,
        D,
    }

    #[test]
    fn measures_across_sub_registers() {
        let mut rng = seeded_rng(9);
        for _ in 0..200 {
            let mut reg =
                LabeledRegister::new(make_bell(BellState::PsiMinus), &[P::A, P::B]).unwrap();
            reg.adjoin(make_bell(BellState::PsiMinus), &[P::C, P::D])
                .unwrap();
            let a = reg.measure(P::A, MeasBasis::X, &mut rng).unwrap();
            let b = reg.measure(P::B, MeasBasis::X, &mut rng).unwrap();
            assert_ne!(a, b);
            let swap = reg.bell_measure(P::B, P::C, &mut rng).unwrap();
            assert!(BellState::ALL.contains(&swap));
            assert_eq!(reg.num_particles(), 4);
        }
    }

    #[test]
    fn discard_traces_out() {
        let mut rng = seeded_rng(10);
        let mut reg = LabeledRegister::new(make_bell(BellState::PsiMinus), &[P::A, P::B]).unwrap();
        reg.discard(P::A, &mut rng).unwrap();
        assert!(!reg.contains(P::A));
        let (s, labels) = reg.state_of(P::B).unwrap();
        assert_eq!(s.num_qubits(), 1);
        assert_eq!(labels, &[P::B]);
        reg.discard(P::B, &mut rng).unwrap();
        assert_eq!(reg.num_particles(), 0);
    }

    #[test]
    fn relabel_and_errors() {
        let mut reg = LabeledRegister::new(make_bell(BellState::PsiMinus), &[P::A, P::B]).unwrap();
        reg.relabel(P::A, P::C).unwrap();
        assert_eq!(reg.labels(), vec![P::C, P::B]);
        assert!(reg.relabel(P::C, P::B).is_err());
        assert!(reg.apply(P::A, &Unitary2::PAULI_X).is_err());
        assert!(reg
            .adjoin(make_bell(BellState::PsiMinus), &[P::B, P::D])
            .is_err());
    }

    #[test]
    fn reduced_density_spans_parts() {
        let mut reg = LabeledRegister::new(make_bell(BellState::PsiMinus), &[P::A, P::B]).unwrap();
        reg.adjoin(make_bell(BellState::PhiPlus), &[P::C, P::D])
            .unwrap();
        let rho = reg.reduced_density(&[P::B, P::C]).unwrap();
        assert_eq!(rho.dim(), 4);
        for i in 0..4 {
            assert!((rho.get(i, i).re - 0.25).abs() < 1e-12);
        }
    }
}
