//! Fixed mapping between 2-bit messages, dense-coding unitaries and Bell
//! states.
//!
//! | bits | Bell state | unitary on the M particle |
//! |------|------------|---------------------------|
//! | 00   | ψ⁻         | U0 = I                    |
//! | 01   | ψ⁺         | U1 = σz                   |
//! | 10   | φ⁻         | U2 = σx                   |
//! | 11   | φ⁺         | U3 = iσy                  |
//!
//! Applied to the singlet, each Ui yields the Bell state carrying the same
//! code, up to a global phase for U1 and U3.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::qcore::{QuantumError, StateVector, Unitary2};

/// Qubit index of the C particle inside a pair register.
pub const C_QUBIT: usize = 0;
/// Qubit index of the M particle inside a pair register; coding acts here.
pub const M_QUBIT: usize = 1;

/// A 2-bit value, `0b00..=0b11`. The high bit is transmitted first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct TwoBits(u8);

impl TwoBits {
    pub const ALL: [TwoBits; 4] = [TwoBits(0), TwoBits(1), TwoBits(2), TwoBits(3)];

    pub fn new(value: u8) -> Option<Self> {
        (value < 4).then_some(TwoBits(value))
    }

    pub fn from_bits(hi: bool, lo: bool) -> Self {
        TwoBits(u8::from(hi) << 1 | u8::from(lo))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn hi(self) -> bool {
        self.0 & 0b10 != 0
    }

    pub fn lo(self) -> bool {
        self.0 & 0b01 != 0
    }
}

impl TryFrom<u8> for TwoBits {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        TwoBits::new(value).ok_or_else(|| format!("{value} is not a 2-bit value"))
    }
}

impl From<TwoBits> for u8 {
    fn from(b: TwoBits) -> u8 {
        b.0
    }
}

impl fmt::Display for TwoBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellState {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellState {
    /// Ordered by code: 00, 01, 10, 11.
    pub const ALL: [BellState; 4] = [
        BellState::PsiMinus,
        BellState::PsiPlus,
        BellState::PhiMinus,
        BellState::PhiPlus,
    ];

    pub fn code(self) -> TwoBits {
        code_of(self)
    }

    pub fn from_code(bits: TwoBits) -> Self {
        bell_of(bits)
    }
}

pub fn code_of(b: BellState) -> TwoBits {
    TwoBits(match b {
        BellState::PsiMinus => 0b00,
        BellState::PsiPlus => 0b01,
        BellState::PhiMinus => 0b10,
        BellState::PhiPlus => 0b11,
    })
}

pub fn bell_of(bits: TwoBits) -> BellState {
    BellState::ALL[bits.0 as usize]
}

/// Dense-coding operation applied to the M particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeOp {
    U0,
    U1,
    U2,
    U3,
}

impl CodeOp {
    pub const ALL: [CodeOp; 4] = [CodeOp::U0, CodeOp::U1, CodeOp::U2, CodeOp::U3];

    pub fn matrix(self) -> Unitary2 {
        match self {
            CodeOp::U0 => Unitary2::IDENTITY,
            CodeOp::U1 => Unitary2::PAULI_Z,
            CodeOp::U2 => Unitary2::PAULI_X,
            CodeOp::U3 => Unitary2::I_PAULI_Y,
        }
    }

    pub fn bits(self) -> TwoBits {
        TwoBits(self as u8)
    }
}

pub fn op_for_bits(bits: TwoBits) -> CodeOp {
    CodeOp::ALL[bits.0 as usize]
}

/// Applies the coding unitary for `bits` to the M particle of a pair.
pub fn encode_pair(pair_state: &StateVector, bits: TwoBits) -> Result<StateVector, QuantumError> {
    if pair_state.num_qubits() != 2 {
        return Err(QuantumError::BadRegisterSize(pair_state.num_qubits()));
    }
    pair_state.apply_single(M_QUBIT, &op_for_bits(bits).matrix())
}

/// Bell-measures a pair and reads out its code.
pub fn decode_pair<R: Rng + ?Sized>(
    pair_state: &StateVector,
    rng: &mut R,
) -> Result<TwoBits, QuantumError> {
    if pair_state.num_qubits() != 2 {
        return Err(QuantumError::BadRegisterSize(pair_state.num_qubits()));
    }
    let (which, _) = pair_state.bell_measure(C_QUBIT, M_QUBIT, rng)?;
    Ok(code_of(which))
}

/// Splits a bit string into 2-bit chunks, padding an odd tail with one 0.
/// Returns the chunks and the number of pad bits added.
pub fn chunk_message(bits: &[bool]) -> (Vec<TwoBits>, usize) {
    let pad = bits.len() % 2;
    let chunks = bits
        .chunks(2)
        .map(|c| TwoBits::from_bits(c[0], c.get(1).copied().unwrap_or(false)))
        .collect();
    (chunks, pad)
}

pub fn unchunk(codes: &[TwoBits]) -> Vec<bool> {
    codes.iter().flat_map(|c| [c.hi(), c.lo()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{make_bell, MeasBasis};
    use crate::seeded_rng;

    fn bits(v: u8) -> TwoBits {
        TwoBits::new(v).unwrap()
    }

    #[test]
    fn code_table() {
        assert_eq!(code_of(BellState::PsiMinus), bits(0b00));
        assert_eq!(code_of(BellState::PsiPlus), bits(0b01));
        assert_eq!(code_of(BellState::PhiMinus), bits(0b10));
        assert_eq!(code_of(BellState::PhiPlus), bits(0b11));
        for b in BellState::ALL {
            assert_eq!(bell_of(code_of(b)), b);
        }
    }

    #[test]
    fn op_table() {
        assert_eq!(op_for_bits(bits(0b00)), CodeOp::U0);
        assert_eq!(op_for_bits(bits(0b01)), CodeOp::U1);
        assert_eq!(op_for_bits(bits(0b10)), CodeOp::U2);
        assert_eq!(op_for_bits(bits(0b11)), CodeOp::U3);
        assert_eq!(TwoBits::new(4), None);
    }

    #[test]
    fn encoding_maps_singlet_onto_bell_basis() {
        let psi = make_bell(BellState::PsiMinus);
        for b in TwoBits::ALL {
            let out = encode_pair(&psi, b).unwrap();
            assert!(out.same_ray(&make_bell(bell_of(b)), 1e-12), "{b}");
        }
        assert_eq!(encode_pair(&psi, bits(0)).unwrap(), psi);
    }

    #[test]
    fn round_trip_is_exact_every_shot() {
        let mut rng = seeded_rng(11);
        let psi = make_bell(BellState::PsiMinus);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..500 {
            for b in TwoBits::ALL {
                let decoded = decode_pair(&encode_pair(&psi, b).unwrap(), &mut rng).unwrap();
                assert_eq!(decoded, b);
                seen.insert(decoded);
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn decode_of_product_state_is_psi_family() {
        let mut rng = seeded_rng(12);
        let s = StateVector::basis(2, 0b01).unwrap();
        let shots = 20_000;
        let mut zeros = 0;
        for _ in 0..shots {
            let d = decode_pair(&s, &mut rng).unwrap();
            assert!(d == bits(0b00) || d == bits(0b01));
            zeros += usize::from(d == bits(0b00));
        }
        let sigma = (0.25 / shots as f64).sqrt();
        assert!((zeros as f64 / shots as f64 - 0.5).abs() < 4.0 * sigma);
    }

    #[test]
    fn lone_m_particle_is_maximally_mixed() {
        let psi = make_bell(BellState::PsiMinus);
        for b in TwoBits::ALL {
            let rho = encode_pair(&psi, b)
                .unwrap()
                .reduced_density(&[M_QUBIT])
                .unwrap();
            assert!((rho.get(0, 0).re - 0.5).abs() < 1e-12);
            assert!((rho.get(1, 1).re - 0.5).abs() < 1e-12);
            assert!(rho.get(0, 1).norm() < 1e-12);
        }
    }

    #[test]
    fn z_outcomes_on_m_carry_no_information() {
        let mut rng = seeded_rng(13);
        let psi = make_bell(BellState::PsiMinus);
        let mut counts = [[0usize; 2]; 4];
        let shots = 100_000;
        for _ in 0..shots {
            let b = TwoBits::ALL[rng.random_range(0..4)];
            let (o, _) = encode_pair(&psi, b)
                .unwrap()
                .measure_qubit(M_QUBIT, MeasBasis::Z, &mut rng)
                .unwrap();
            counts[b.value() as usize][o as usize] += 1;
        }
        let mi = crate::stats::mutual_information(&counts);
        assert!(mi < 0.01, "mi = {mi}");
    }

    #[test]
    fn chunking_pads_odd_messages() {
        let (chunks, pad) = chunk_message(&[true, false, true]);
        assert_eq!(chunks, vec![bits(0b10), bits(0b10)]);
        assert_eq!(pad, 1);
        assert_eq!(unchunk(&chunks), vec![true, false, true, false]);
        let (chunks, pad) = chunk_message(&[false, true]);
        assert_eq!((chunks, pad), (vec![bits(0b01)], 0));
    }

    #[test]
    fn rejects_wrong_register_size() {
        let s = StateVector::basis(3, 0).unwrap();
        assert!(encode_pair(&s, bits(1)).is_err());
        assert!(decode_pair(&s, &mut seeded_rng(0)).is_err());
    }
}
