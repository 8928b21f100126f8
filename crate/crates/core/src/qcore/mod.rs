//! Exact state-vector simulation of small qubit registers.
//!
//! Qubit 0 is the leftmost ket factor and the most significant bit of a
//! basis index: for two qubits the amplitude order is `|00⟩, |01⟩, |10⟩, |11⟩`.
//! Every EPR pair (plus any probe qubit) lives in its own register, so the
//! registers stay tiny and all arithmetic is exact double precision.

mod density;
mod gates;
mod register;
mod state;

pub use density::DensityMatrix;
pub use gates::{MeasBasis, Unitary2, Unitary4};
pub use register::LabeledRegister;
pub use state::{bell_amplitudes, make_bell, StateVector, MAX_QUBITS};

pub use num_complex::Complex64;

/// Tolerance for algebraic identities (normalization, unitarity, hermiticity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for results that pass through an eigensolver.
pub const EIGEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit indices must be distinct (got {0} twice)")]
    DuplicateQubit(usize),
    #[error("register of {0} qubits is not supported (1..={MAX_QUBITS})")]
    BadRegisterSize(usize),
    #[error("amplitude vector length {0} is not a power of two")]
    BadLength(usize),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("qubit {0} is not in a definite computational-basis state")]
    NotDefinite(usize),
    #[error("keep set must be a nonempty subset of the register")]
    BadKeepSet,
    #[error("unknown particle label {0}")]
    UnknownLabel(String),
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
