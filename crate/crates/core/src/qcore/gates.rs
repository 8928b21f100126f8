use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::{c, Complex64, QuantumError, ALGEBRAIC_TOL};

/// Single-qubit measuring basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasBasis {
    /// Eigenbasis of σz: outcome 0 ↔ |0⟩, 1 ↔ |1⟩.
    Z,
    /// Eigenbasis of σx: outcome 0 ↔ |+⟩, 1 ↔ |−⟩.
    X,
}

impl MeasBasis {
    pub const ALL: [MeasBasis; 2] = [MeasBasis::Z, MeasBasis::X];
}

/// Checked 2×2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2([[Complex64; 2]; 2]);

impl Unitary2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self, QuantumError> {
        let dev = unitarity_deviation(&flatten2(&m), 2);
        if dev > ALGEBRAIC_TOL {
            return Err(QuantumError::NotUnitary(dev));
        }
        Ok(Unitary2(m))
    }

    pub const fn from_real(m: [[f64; 2]; 2]) -> Self {
        Unitary2([
            [Complex64::new(m[0][0], 0.0), Complex64::new(m[0][1], 0.0)],
            [Complex64::new(m[1][0], 0.0), Complex64::new(m[1][1], 0.0)],
        ])
    }

    pub const IDENTITY: Unitary2 = Unitary2::from_real([[1.0, 0.0], [0.0, 1.0]]);
    pub const PAULI_X: Unitary2 = Unitary2::from_real([[0.0, 1.0], [1.0, 0.0]]);
    pub const PAULI_Z: Unitary2 = Unitary2::from_real([[1.0, 0.0], [0.0, -1.0]]);
    /// iσy = |0⟩⟨1| − |1⟩⟨0|.
    pub const I_PAULI_Y: Unitary2 = Unitary2::from_real([[0.0, 1.0], [-1.0, 0.0]]);
    pub const PAULI_Y: Unitary2 = Unitary2([
        [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
    ]);
    pub const HADAMARD: Unitary2 = Unitary2::from_real([
        [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ]);

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    /// Largest entry of |U†U − I|.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&flatten2(&self.0), 2)
    }
}

/// Checked 4×4 unitary acting on an ordered qubit pair (first qubit is the
/// more significant index bit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary4([[Complex64; 4]; 4]);

impl Unitary4 {
    pub fn new(m: [[Complex64; 4]; 4]) -> Result<Self, QuantumError> {
        let flat: Vec<Complex64> = m.iter().flatten().copied().collect();
        let dev = unitarity_deviation(&flat, 4);
        if dev > ALGEBRAIC_TOL {
            return Err(QuantumError::NotUnitary(dev));
        }
        Ok(Unitary4(m))
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn unitarity_deviation(&self) -> f64 {
        let flat: Vec<Complex64> = self.0.iter().flatten().copied().collect();
        unitarity_deviation(&flat, 4)
    }
}

fn flatten2(m: &[[Complex64; 2]; 2]) -> [Complex64; 4] {
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

fn unitarity_deviation(m: &[Complex64], n: usize) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = c(0.0, 0.0);
            for k in 0..n {
                acc += m[k * n + i].conj() * m[k * n + j];
            }
            if i == j {
                acc -= 1.0;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}
