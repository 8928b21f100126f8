use nalgebra::DMatrix;

use super::{c, Complex64, QuantumError, ALGEBRAIC_TOL, EIGEN_TOL};

/// Density operator on a `dim`-dimensional space, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Builds a density matrix, checking hermiticity, unit trace and
    /// positivity.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, QuantumError> {
        let rho = Self::from_raw(dim, entries);
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps entries without validation. Panics if `entries.len() != dim²`.
    pub fn from_raw(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entries must be dim×dim");
        DensityMatrix { dim, entries }
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        Self::from_raw(dim, entries.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = c(*v, 0.0);
        }
        Self::from_raw(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    fn check_hermitian(&self) -> Result<(), QuantumError> {
        let dev = self.hermiticity_deviation();
        if dev > ALGEBRAIC_TOL {
            return Err(QuantumError::NotHermitian(dev));
        }
        Ok(())
    }

    fn check_trace(&self) -> Result<(), QuantumError> {
        let tr = self.trace();
        if (tr.re - 1.0).abs() > ALGEBRAIC_TOL || tr.im.abs() > ALGEBRAIC_TOL {
            return Err(QuantumError::BadTrace(tr.re));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), QuantumError> {
        self.check_hermitian()?;
        self.check_trace()?;
        let eig = self.eigenvalues()?;
        if let Some(&min) = eig.last() {
            if min < -1e-10 {
                return Err(QuantumError::NotPositive(min));
            }
        }
        Ok(())
    }

    /// Real eigenvalues of a Hermitian matrix, sorted descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, QuantumError> {
        self.check_hermitian()?;
        let m = DMatrix::from_row_slice(self.dim, self.dim, &self.entries);
        let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(values)
    }

    /// −Σ λ log₂ λ over the spectrum, with 0·log 0 = 0.
    pub fn von_neumann_entropy(&self) -> Result<f64, QuantumError> {
        self.check_hermitian()?;
        self.check_trace()?;
        let entropy = self
            .eigenvalues()?
            .into_iter()
            .filter(|&l| l > EIGEN_TOL * 1e-3)
            .map(|l| -l * l.log2())
            .sum::<f64>();
        // round-off can push a pure state a hair below zero
        Ok(entropy.max(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_qubit() {
        let rho = DensityMatrix::diagonal(&[0.5, 0.5]);
        assert_eq!(rho.eigenvalues().unwrap(), vec![0.5, 0.5]);
        assert!((rho.von_neumann_entropy().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_projector_has_zero_entropy() {
        // |+⟩⟨+|
        let rho = DensityMatrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(rho.validate().is_ok());
        assert!(rho.von_neumann_entropy().unwrap().abs() < 1e-12);
    }

    #[test]
    fn half_half_diagonal_on_four_levels() {
        let rho = DensityMatrix::diagonal(&[0.5, 0.0, 0.5, 0.0]);
        assert!((rho.von_neumann_entropy().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_sorted_descending() {
        let rho = DensityMatrix::diagonal(&[0.1, 0.4, 0.2, 0.3]);
        let eig = rho.eigenvalues().unwrap();
        let expect = [0.4, 0.3, 0.2, 0.1];
        for (a, b) in eig.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((eig.iter().sum::<f64>() - 1.0).abs() < EIGEN_TOL);
    }

    #[test]
    fn complex_hermitian_spectrum() {
        // [[0.5, 0.25i], [−0.25i, 0.5]] has eigenvalues 0.75, 0.25
        let rho = DensityMatrix::from_raw(
            2,
            vec![c(0.5, 0.0), c(0.0, 0.25), c(0.0, -0.25), c(0.5, 0.0)],
        );
        let eig = rho.eigenvalues().unwrap();
        assert!((eig[0] - 0.75).abs() < 1e-12 && (eig[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_input() {
        let skew =
            DensityMatrix::from_raw(2, vec![c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            skew.eigenvalues(),
            Err(QuantumError::NotHermitian(_))
        ));
        assert!(matches!(
            skew.von_neumann_entropy(),
            Err(QuantumError::NotHermitian(_))
        ));
        let heavy = DensityMatrix::diagonal(&[0.7, 0.7]);
        assert!(matches!(
            heavy.von_neumann_entropy(),
            Err(QuantumError::BadTrace(_))
        ));
        let negative = DensityMatrix::diagonal(&[1.5, -0.5]);
        assert!(matches!(
            negative.validate(),
            Err(QuantumError::NotPositive(_))
        ));
    }
}
