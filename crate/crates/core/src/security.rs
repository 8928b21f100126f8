//! Closed-form security quantities: what Eve's probe costs her in errors and
//! gains her in information, plus the storage delay bound.
//!
//! Every closed form here has a numeric twin built on [`crate::qcore`] so the
//! two routes can be compared.

use serde::{Deserialize, Serialize};

use crate::channel::ProbeParams;
use crate::qcore::{c, DensityMatrix, QuantumError, ALGEBRAIC_TOL};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SecurityError {
    #[error("error rate {0} outside [0, 1]")]
    BadErrorRate(f64),
    #[error("operation probabilities {0:?} are not a distribution")]
    BadDistribution([f64; 4]),
    #[error("delay input {name} = {value} must be strictly positive")]
    BadDelayInput { name: &'static str, value: f64 },
    #[error("negative radicand {0:e} in eigenvalue formula")]
    NegativeRadicand(f64),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Probabilities with which Alice applies U0..U3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct OpDistribution([f64; 4]);

impl OpDistribution {
    pub fn new(p: [f64; 4]) -> Result<Self, SecurityError> {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|x| !(0.0..=1.0).contains(x)) || (sum - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(SecurityError::BadDistribution(p));
        }
        Ok(OpDistribution(p))
    }

    pub fn uniform() -> Self {
        OpDistribution([0.25; 4])
    }

    pub fn probs(&self) -> [f64; 4] {
        self.0
    }
}

impl TryFrom<[f64; 4]> for OpDistribution {
    type Error = SecurityError;

    fn try_from(p: [f64; 4]) -> Result<Self, Self::Error> {
        OpDistribution::new(p)
    }
}

impl From<OpDistribution> for [f64; 4] {
    fn from(d: OpDistribution) -> Self {
        d.0
    }
}

/// ε = |β|² = 1 − |α|².
pub fn error_rate_of_probe(params: &ProbeParams) -> f64 {
    params.beta() * params.beta()
}

fn check_eps(eps: f64) -> Result<(), SecurityError> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(SecurityError::BadErrorRate(eps));
    }
    Ok(())
}

/// State of Bob's photon and Eve's probe after Alice's encoding, in the
/// basis `{|0,ε₀₀⟩, |1,ε₀₁⟩, |1,ε₀₀⟩, |0,ε₀₁⟩}`.
///
/// Block diagonal: `[[(p0+p3)α², (p0−p3)αβ], [(p0−p3)αβ, (p0+p3)β²]]` and
/// the same block built from `(p1, p2)`. α = √(1−ε), β = √ε.
pub fn rho_double_prime(dist: &OpDistribution, eps: f64) -> Result<DensityMatrix, SecurityError> {
    check_eps(eps)?;
    let [p0, p1, p2, p3] = dist.probs();
    let (a2, b2) = (1.0 - eps, eps);
    let ab = (a2 * b2).sqrt();
    #[rustfmt::skip]
    let entries = [
        (p0 + p3) * a2, (p0 - p3) * ab, 0.0,            0.0,
        (p0 - p3) * ab, (p0 + p3) * b2, 0.0,            0.0,
        0.0,            0.0,            (p1 + p2) * a2, (p1 - p2) * ab,
        0.0,            0.0,            (p1 - p2) * ab, (p1 + p2) * b2,
    ];
    Ok(DensityMatrix::from_raw(
        4,
        entries.iter().map(|&x| c(x, 0.0)).collect(),
    ))
}

/// Eigenvalues of a block `½s ± ½√(s² − 16·pi·pj·(ε − ε²))`.
fn block_eigenvalues(pi: f64, pj: f64, eps: f64) -> Result<(f64, f64), SecurityError> {
    let s = pi + pj;
    let mut radicand = s * s - 16.0 * pi * pj * (eps - eps * eps);
    if radicand < 0.0 {
        if radicand < -ALGEBRAIC_TOL {
            return Err(SecurityError::NegativeRadicand(radicand));
        }
        radicand = 0.0;
    }
    let root = radicand.sqrt();
    Ok((0.5 * s + 0.5 * root, 0.5 * s - 0.5 * root))
}

/// Closed-form eigenvalues `[λ0, λ1, λ2, λ3]` of [`rho_double_prime`].
pub fn eve_eigenvalues(dist: &OpDistribution, eps: f64) -> Result<[f64; 4], SecurityError> {
    check_eps(eps)?;
    let [p0, p1, p2, p3] = dist.probs();
    let (l0, l1) = block_eigenvalues(p0, p3, eps)?;
    let (l2, l3) = block_eigenvalues(p1, p2, eps)?;
    Ok([l0, l1, l2, l3].map(|l| l.max(0.0)))
}

fn entropy_bits(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits([p, 1.0 - p])
}

/// Eve's information I₀ from the closed-form eigenvalues.
pub fn eve_information(dist: &OpDistribution, eps: f64) -> Result<f64, SecurityError> {
    Ok(entropy_bits(eve_eigenvalues(dist, eps)?))
}

/// I₀ by building ρ″ and diagonalising it numerically.
pub fn eve_information_numeric(dist: &OpDistribution, eps: f64) -> Result<f64, SecurityError> {
    Ok(rho_double_prime(dist, eps)?.von_neumann_entropy()?)
}

/// Ceiling on what a Z-basis interceptor holding both particles' Z record
/// can learn about the bit-flip class {U0, U1} vs {U2, U3}: h(p0 + p1).
pub fn distinguishability_note(dist: &OpDistribution) -> f64 {
    let [p0, p1, _, _] = dist.probs();
    binary_entropy(p0 + p1)
}

/// Inputs of the storage-delay bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayInputs {
    /// Alice–Bob distance in meters.
    pub distance_m: f64,
    /// Signal speed in the quantum channel, m/s.
    pub signal_speed: f64,
    /// Block size N (pairs).
    pub block_size: f64,
    /// Source rate, photons per second.
    pub photon_rate: f64,
}

impl DelayInputs {
    pub fn validate(&self) -> Result<(), SecurityError> {
        for (name, value) in [
            ("distance", self.distance_m),
            ("speed", self.signal_speed),
            ("block_size", self.block_size),
            ("rate", self.photon_rate),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(SecurityError::BadDelayInput { name, value });
            }
        }
        Ok(())
    }
}

/// Minimum storage time τ = 3L/c + N/f, in seconds.
pub fn min_delay(inputs: &DelayInputs) -> Result<f64, SecurityError> {
    inputs.validate()?;
    let DelayInputs {
        distance_m: l,
        signal_speed: c,
        block_size: n,
        photon_rate: f,
    } = *inputs;
    // one rounding step instead of three
    Ok((3.0 * l * f + n * c) / (c * f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dist(p: [f64; 4]) -> OpDistribution {
        OpDistribution::new(p).unwrap()
    }

    #[test]
    fn probe_error_rate() {
        assert_eq!(
            error_rate_of_probe(&ProbeParams::new(1.0, 0.0).unwrap()),
            0.0
        );
        let half = ProbeParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        assert!((error_rate_of_probe(&half) - 0.5).abs() < 1e-15);
        for k in 0..=20 {
            let t = k as f64 * 0.07;
            let p = ProbeParams::new(t.cos(), t.sin()).unwrap();
            let eps = error_rate_of_probe(&p);
            assert!(((1.0 - p.alpha() * p.alpha()) - eps).abs() < 1e-12);
        }
    }

    #[test]
    fn rho_double_prime_uniform_no_disturbance() {
        let rho = rho_double_prime(&OpDistribution::uniform(), 0.0).unwrap();
        let expect = DensityMatrix::diagonal(&[0.5, 0.0, 0.5, 0.0]);
        for i in 0..4 {
            for j in 0..4 {
                assert!((rho.get(i, j) - expect.get(i, j)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rho_double_prime_trace_and_rank() {
        for eps in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            let rho = rho_double_prime(&dist([0.1, 0.2, 0.3, 0.4]), eps).unwrap();
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(rho.validate().is_ok());
        }
        let pure = rho_double_prime(&dist([1.0, 0.0, 0.0, 0.0]), 0.0).unwrap();
        assert!(pure.von_neumann_entropy().unwrap().abs() < 1e-12);
        assert_eq!(
            rho_double_prime(&OpDistribution::uniform(), 1.5),
            Err(SecurityError::BadErrorRate(1.5))
        );
    }

    #[test]
    fn eve_information_reference_points() {
        let uni = OpDistribution::uniform();
        assert!((eve_information(&uni, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((eve_information(&uni, 0.5).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(eve_eigenvalues(&uni, 0.5).unwrap(), [0.25; 4]);
        assert!(
            eve_information(&dist([1.0, 0.0, 0.0, 0.0]), 0.0)
                .unwrap()
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn numeric_route_agrees_with_closed_form() {
        for i in 0..=20 {
            let eps = i as f64 / 20.0;
            for j in 0..=20 {
                let p0 = j as f64 / 20.0;
                let rest = (1.0 - p0) / 3.0;
                let d = dist([p0, rest, rest, rest]);
                let closed = eve_information(&d, eps).unwrap();
                let numeric = eve_information_numeric(&d, eps).unwrap();
                assert!((closed - numeric).abs() < 1e-9, "eps={eps} p0={p0}");
            }
        }
    }

    #[test]
    fn deterministic_op_leaves_a_pure_state() {
        let d = dist([1.0, 0.0, 0.0, 0.0]);
        for k in 0..=10 {
            let eps = k as f64 / 10.0;
            assert!(eve_information_numeric(&d, eps).unwrap().abs() < 1e-9);
            assert!(eve_information(&d, eps).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvalue_identities_and_symmetry() {
        let d = dist([0.4, 0.1, 0.2, 0.3]);
        for k in 0..=50 {
            let eps = k as f64 / 50.0;
            let l = eve_eigenvalues(&d, eps).unwrap();
            assert!((l[0] + l[1] - 0.7).abs() < 1e-12);
            assert!((l[2] + l[3] - 0.3).abs() < 1e-12);
            assert!(l.iter().all(|x| (0.0..=1.0).contains(x)));
            let mirrored = eve_information(&d, 1.0 - eps).unwrap();
            assert!((eve_information(&d, eps).unwrap() - mirrored).abs() < 1e-12);
        }
    }

    #[test]
    fn information_grows_with_disturbance_up_to_half() {
        let uni = OpDistribution::uniform();
        let mut prev = -1.0;
        for k in 0..=100 {
            let i0 = eve_information(&uni, k as f64 * 0.005).unwrap();
            assert!(i0 >= prev - 1e-15);
            prev = i0;
        }
    }

    #[test]
    fn distinguishability_values() {
        assert!((distinguishability_note(&OpDistribution::uniform()) - 1.0).abs() < 1e-15);
        assert_eq!(distinguishability_note(&dist([1.0, 0.0, 0.0, 0.0])), 0.0);
        assert!((distinguishability_note(&dist([0.5, 0.0, 0.5, 0.0])) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_distribution() {
        assert!(OpDistribution::new([0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(OpDistribution::new([0.3, 0.3, 0.3, 0.3]).is_err());
    }

    #[test]
    fn delay_bound() {
        let base = DelayInputs {
            distance_m: 3e4,
            signal_speed: 2e8,
            block_size: 1000.0,
            photon_rate: 1e6,
        };
        assert_eq!(min_delay(&base).unwrap(), 1.45e-3);
        let doubled = DelayInputs {
            distance_m: 6e4,
            ..base
        };
        let flight = 3.0 * 3e4 / 2e8;
        assert!((min_delay(&doubled).unwrap() - min_delay(&base).unwrap() - flight).abs() < 1e-15);
        let tiny_block = DelayInputs {
            block_size: 1.0,
            photon_rate: 1e30,
            ..base
        };
        assert!((min_delay(&tiny_block).unwrap() - flight).abs() < 1e-15);
        let bad = DelayInputs {
            block_size: 0.0,
            ..base
        };
        assert!(matches!(
            min_delay(&bad),
            Err(SecurityError::BadDelayInput {
                name: "block_size",
                ..
            })
        ));
    }
}
