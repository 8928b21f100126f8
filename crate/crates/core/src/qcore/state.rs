use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use super::{
    c, Complex64, DensityMatrix, MeasBasis, QuantumError, Unitary2, Unitary4, ALGEBRAIC_TOL,
};
use crate::bellcode::BellState;

/// Largest register the simulator accepts. Protocol registers hold at most a
/// few EPR pairs plus probe qubits, so this is far above what a run needs.
pub const MAX_QUBITS: usize = 8;

/// Branches whose probability falls below this are never selected.
const ZERO_BRANCH: f64 = 1e-15;

/// Normalized pure state of a small qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Exact amplitudes of a Bell state over `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn bell_amplitudes(which: BellState) -> [Complex64; 4] {
    let s = FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    match which {
        BellState::PsiMinus => [z, c(s, 0.0), c(-s, 0.0), z],
        BellState::PsiPlus => [z, c(s, 0.0), c(s, 0.0), z],
        BellState::PhiMinus => [c(s, 0.0), z, z, c(-s, 0.0)],
        BellState::PhiPlus => [c(s, 0.0), z, z, c(s, 0.0)],
    }
}

/// Two-qubit register prepared in the given Bell state.
pub fn make_bell(which: BellState) -> StateVector {
    StateVector {
        num_qubits: 2,
        amps: bell_amplitudes(which).to_vec(),
    }
}

impl StateVector {
    /// Wraps an amplitude vector, checking its length and normalization.
    pub fn new(amps: Vec<Complex64>) -> Result<Self, QuantumError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuantumError::BadLength(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(QuantumError::BadRegisterSize(num_qubits));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(QuantumError::NotNormalized(norm));
        }
        Ok(StateVector { num_qubits, amps })
    }

    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, QuantumError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(QuantumError::BadRegisterSize(num_qubits));
        }
        let dim = 1 << num_qubits;
        if index >= dim {
            return Err(QuantumError::QubitOutOfRange { index, num_qubits });
        }
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[index] = c(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Single qubit in `|+⟩` (`outcome` 0) or `|−⟩` (`outcome` 1).
    pub fn x_eigenstate(outcome: u8) -> Self {
        let s = FRAC_1_SQRT_2;
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        StateVector {
            num_qubits: 1,
            amps: vec![c(s, 0.0), c(sign * s, 0.0)],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|², zero when the registers differ in size.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        if self.num_qubits != other.num_qubits {
            return 0.0;
        }
        self.inner(other).norm_sqr()
    }

    /// Equality modulo global phase.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        self.num_qubits == other.num_qubits && (1.0 - self.fidelity(other)).abs() <= tol
    }

    /// `self ⊗ other`; the qubits of `other` are appended after those of `self`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector, QuantumError> {
        let n = self.num_qubits + other.num_qubits;
        if n > MAX_QUBITS {
            return Err(QuantumError::BadRegisterSize(n));
        }
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), QuantumError> {
        if qubit >= self.num_qubits {
            return Err(QuantumError::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_pair(&self, q1: usize, q2: usize) -> Result<(), QuantumError> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(QuantumError::DuplicateQubit(q1));
        }
        Ok(())
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    /// Applies `u` to one qubit, identity elsewhere.
    pub fn apply_single(&self, qubit: usize, u: &Unitary2) -> Result<StateVector, QuantumError> {
        self.check_qubit(qubit)?;
        let dev = u.unitarity_deviation();
        if dev > ALGEBRAIC_TOL {
            return Err(QuantumError::NotUnitary(dev));
        }
        let mut out = self.clone();
        out.apply_single_in_place(qubit, u);
        Ok(out)
    }

    fn apply_single_in_place(&mut self, qubit: usize, u: &Unitary2) {
        let mask = self.mask(qubit);
        let m = u.matrix();
        for i in 0..self.dim() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    /// Applies a two-qubit unitary to the ordered pair `(q1, q2)`; `q1` is
    /// the more significant bit of the 4×4 matrix index.
    pub fn apply_two(
        &self,
        q1: usize,
        q2: usize,
        u: &Unitary4,
    ) -> Result<StateVector, QuantumError> {
        self.check_pair(q1, q2)?;
        let dev = u.unitarity_deviation();
        if dev > ALGEBRAIC_TOL {
            return Err(QuantumError::NotUnitary(dev));
        }
        let (m1, m2) = (self.mask(q1), self.mask(q2));
        let m = u.matrix();
        let mut out = self.clone();
        for i in 0..self.dim() {
            if i & (m1 | m2) != 0 {
                continue;
            }
            let idx = [i, i | m2, i | m1, i | m1 | m2];
            let v = idx.map(|k| self.amps[k]);
            for (row, &k) in idx.iter().enumerate() {
                out.amps[k] = (0..4).map(|col| m[row][col] * v[col]).sum();
            }
        }
        Ok(out)
    }

    /// Probability that measuring `qubit` in `basis` yields outcome 1.
    pub fn prob_one(&self, qubit: usize, basis: MeasBasis) -> Result<f64, QuantumError> {
        self.check_qubit(qubit)?;
        let rotated = self.rotated_to_z(qubit, basis);
        let mask = self.mask(qubit);
        Ok(rotated
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    fn rotated_to_z(&self, qubit: usize, basis: MeasBasis) -> StateVector {
        let mut s = self.clone();
        if basis == MeasBasis::X {
            s.apply_single_in_place(qubit, &Unitary2::HADAMARD);
        }
        s
    }

    /// Projective measurement of one qubit, sampled by the Born rule.
    pub fn measure_qubit<R: Rng + ?Sized>(
        &self,
        qubit: usize,
        basis: MeasBasis,
        rng: &mut R,
    ) -> Result<(u8, StateVector), QuantumError> {
        let p1 = self.prob_one(qubit, basis)?;
        let draw: f64 = rng.random();
        let outcome = if p1 < ZERO_BRANCH {
            0
        } else if 1.0 - p1 < ZERO_BRANCH {
            1
        } else {
            u8::from(draw < p1)
        };
        Ok((outcome, self.project_qubit(qubit, basis, outcome)))
    }

    fn project_qubit(&self, qubit: usize, basis: MeasBasis, outcome: u8) -> StateVector {
        let mut s = self.rotated_to_z(qubit, basis);
        let mask = self.mask(qubit);
        let keep_set = outcome == 1;
        for (i, a) in s.amps.iter_mut().enumerate() {
            if (i & mask != 0) != keep_set {
                *a = c(0.0, 0.0);
            }
        }
        s.renormalize();
        if basis == MeasBasis::X {
            s.apply_single_in_place(qubit, &Unitary2::HADAMARD);
        }
        s
    }

    fn renormalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a /= n;
        }
    }

    /// Born probabilities of the four Bell projectors on `(q1, q2)`, indexed
    /// in [`BellState::ALL`] order.
    pub fn bell_probabilities(&self, q1: usize, q2: usize) -> Result<[f64; 4], QuantumError> {
        self.check_pair(q1, q2)?;
        let mut probs = [0.0; 4];
        for (slot, which) in BellState::ALL.iter().enumerate() {
            probs[slot] = self
                .bell_overlaps(q1, q2, *which)
                .iter()
                .map(|(_, o)| o.norm_sqr())
                .sum();
        }
        Ok(probs)
    }

    /// For every assignment of the other qubits, the base index (q1, q2
    /// cleared) and ⟨bell| applied to that slice.
    fn bell_overlaps(&self, q1: usize, q2: usize, which: BellState) -> Vec<(usize, Complex64)> {
        let (m1, m2) = (self.mask(q1), self.mask(q2));
        let bell = bell_amplitudes(which);
        (0..self.dim())
            .filter(|i| i & (m1 | m2) == 0)
            .map(|i| {
                let idx = [i, i | m2, i | m1, i | m1 | m2];
                let o = idx
                    .iter()
                    .zip(bell.iter())
                    .map(|(&k, b)| b.conj() * self.amps[k])
                    .sum();
                (i, o)
            })
            .collect()
    }

    /// Bell-basis measurement on `(q1, q2)`, `q1` taking the role of the
    /// first ket factor.
    pub fn bell_measure<R: Rng + ?Sized>(
        &self,
        q1: usize,
        q2: usize,
        rng: &mut R,
    ) -> Result<(BellState, StateVector), QuantumError> {
        let probs = self.bell_probabilities(q1, q2)?;
        let which = BellState::ALL[sample_index(&probs, rng)];
        Ok((which, self.project_bell(q1, q2, which)))
    }

    fn project_bell(&self, q1: usize, q2: usize, which: BellState) -> StateVector {
        let (m1, m2) = (self.mask(q1), self.mask(q2));
        let bell = bell_amplitudes(which);
        let mut amps = vec![c(0.0, 0.0); self.dim()];
        for (i, o) in self.bell_overlaps(q1, q2, which) {
            let idx = [i, i | m2, i | m1, i | m1 | m2];
            for (k, b) in idx.iter().zip(bell.iter()) {
                amps[*k] = o * b;
            }
        }
        let mut s = StateVector {
            num_qubits: self.num_qubits,
            amps,
        };
        s.renormalize();
        s
    }

    /// Removes a qubit that is in the definite Z state `value`, returning
    /// the state of the remaining qubits.
    pub fn remove_qubit(&self, qubit: usize, value: u8) -> Result<StateVector, QuantumError> {
        self.check_qubit(qubit)?;
        if self.num_qubits == 1 {
            return Err(QuantumError::BadRegisterSize(0));
        }
        let mask = self.mask(qubit);
        let want = value == 1;
        let stray: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & mask != 0) != want)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if stray > ALGEBRAIC_TOL {
            return Err(QuantumError::NotDefinite(qubit));
        }
        let low = mask - 1;
        let amps = (0..self.dim() / 2)
            .map(|r| {
                let full = ((r & !low) << 1) | (r & low) | if want { mask } else { 0 };
                self.amps[full]
            })
            .collect();
        let mut s = StateVector {
            num_qubits: self.num_qubits - 1,
            amps,
        };
        s.renormalize();
        Ok(s)
    }

    /// Partial trace onto `keep`; the kept qubits appear in the given order.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix, QuantumError> {
        if keep.is_empty() || keep.len() > self.num_qubits {
            return Err(QuantumError::BadKeepSet);
        }
        for (pos, &q) in keep.iter().enumerate() {
            self.check_qubit(q)?;
            if keep[..pos].contains(&q) {
                return Err(QuantumError::DuplicateQubit(q));
            }
        }
        let rest: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let k_dim = 1 << keep.len();
        let r_dim = 1 << rest.len();
        let compose = |k: usize, r: usize| -> usize {
            let mut full = 0;
            for (pos, &q) in keep.iter().enumerate() {
                if k & (1 << (keep.len() - 1 - pos)) != 0 {
                    full |= self.mask(q);
                }
            }
            for (pos, &q) in rest.iter().enumerate() {
                if r & (1 << (rest.len() - 1 - pos)) != 0 {
                    full |= self.mask(q);
                }
            }
            full
        };
        let mut entries = vec![c(0.0, 0.0); k_dim * k_dim];
        for r in 0..r_dim {
            for a in 0..k_dim {
                let pa = self.amps[compose(a, r)];
                for b in 0..k_dim {
                    entries[a * k_dim + b] += pa * self.amps[compose(b, r)].conj();
                }
            }
        }
        Ok(DensityMatrix::from_raw(k_dim, entries))
    }
}

/// Samples an index proportionally to `weights`, never returning a branch
/// whose weight is below the zero threshold.
pub(crate) fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut draw = rng.random::<f64>() * total;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w < ZERO_BRANCH {
            continue;
        }
        last = i;
        if draw < w {
            return i;
        }
        draw -= w;
    }
    last
}
