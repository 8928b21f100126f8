//! Transmission models and adversaries acting on in-flight particles.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bellcode::{code_of, op_for_bits, TwoBits};
use crate::qcore::{
    c, make_bell, LabeledRegister, MeasBasis, QuantumError, StateVector, Unitary2, Unitary4,
    ALGEBRAIC_TOL,
};
use crate::BellState;

/// Roles a particle can play in one pair's register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Particle {
    /// Checking-sequence particle (as Bob sees it).
    C,
    /// Message-coding particle.
    M,
    /// Eve's ancilla for the unitary probe attack.
    Probe,
    /// Genuine C particle withheld by Eve in the fake-EPR attack.
    EveHeldC,
    /// Eve's own half of the substitute pair in the fake-EPR attack.
    EvePartner,
}

/// All particles belonging to one EPR pair, including any an adversary has
/// attached.
pub type PairSystem = LabeledRegister<Particle>;

/// A fresh singlet with qubit 0 = C and qubit 1 = M.
pub fn fresh_pair() -> PairSystem {
    LabeledRegister::new(make_bell(BellState::PsiMinus), &[Particle::C, Particle::M])
        .expect("two labels for a two-qubit state")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("probability {name} = {value} outside [0, 1]")]
    BadProbability { name: &'static str, value: f64 },
    #[error("probe amplitudes violate α² + β² = 1 (got {0})")]
    BadProbe(f64),
    #[error("fake-EPR harvest on pair {0} without a stored C particle")]
    NoStoredC(usize),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

fn check_probability(name: &'static str, value: f64) -> Result<(), ChannelError> {
    if !(0.0..=1.0).contains(&value) {
        return Err(ChannelError::BadProbability { name, value });
    }
    Ok(())
}

/// Transmission leg of the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    C,
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseKind {
    #[default]
    Ideal,
    /// σx with probability `p`.
    BitFlip { p: f64 },
    /// Each of σx, σy, σz with probability `p / 3`.
    Depolarizing { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ChannelModel {
    pub noise: NoiseKind,
    pub loss: f64,
}

impl ChannelModel {
    pub const IDEAL: ChannelModel = ChannelModel {
        noise: NoiseKind::Ideal,
        loss: 0.0,
    };

    pub fn validate(&self) -> Result<(), ChannelError> {
        check_probability("loss", self.loss)?;
        match self.noise {
            NoiseKind::Ideal => Ok(()),
            NoiseKind::BitFlip { p } | NoiseKind::Depolarizing { p } => check_probability("p", p),
        }
    }

    fn sample_noise<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Unitary2> {
        match self.noise {
            NoiseKind::Ideal => None,
            NoiseKind::BitFlip { p } => rng.random_bool(p).then_some(Unitary2::PAULI_X),
            NoiseKind::Depolarizing { p } => rng.random_bool(p).then(|| {
                [Unitary2::PAULI_X, Unitary2::PAULI_Y, Unitary2::PAULI_Z][rng.random_range(0..3)]
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TransmitResult {
    Delivered(StateVector),
    Lost,
}

/// Sends qubit `qubit` of `state` through `channel`.
pub fn transmit<R: Rng + ?Sized>(
    state: &StateVector,
    qubit: usize,
    channel: &ChannelModel,
    rng: &mut R,
) -> Result<TransmitResult, ChannelError> {
    channel.validate()?;
    if qubit >= state.num_qubits() {
        return Err(QuantumError::QubitOutOfRange {
            index: qubit,
            num_qubits: state.num_qubits(),
        }
        .into());
    }
    if rng.random_bool(channel.loss) {
        return Ok(TransmitResult::Lost);
    }
    Ok(TransmitResult::Delivered(match channel.sample_noise(rng) {
        Some(u) => state.apply_single(qubit, &u)?,
        None => state.clone(),
    }))
}

/// Register-level [`transmit`]: a lost particle is removed from the system.
/// Returns whether the particle arrived.
pub fn transmit_particle<R: Rng + ?Sized>(
    sys: &mut PairSystem,
    particle: Particle,
    channel: &ChannelModel,
    rng: &mut R,
) -> Result<bool, ChannelError> {
    if rng.random_bool(channel.loss) {
        sys.discard(particle, rng)?;
        return Ok(false);
    }
    if let Some(u) = channel.sample_noise(rng) {
        sys.apply(particle, &u)?;
    }
    Ok(true)
}

/// Real amplitudes of Eve's probe, `|0,E⟩ → α|0,ε₀₀⟩ + β|1,ε₀₁⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProbe", into = "RawProbe")]
pub struct ProbeParams {
    alpha: f64,
    beta: f64,
}

/// Either explicit amplitudes or the error rate they produce.
#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawProbe {
    Amplitudes { alpha: f64, beta: f64 },
    ErrorRate { eps: f64 },
}

impl TryFrom<RawProbe> for ProbeParams {
    type Error = ChannelError;

    fn try_from(r: RawProbe) -> Result<Self, Self::Error> {
        match r {
            RawProbe::Amplitudes { alpha, beta } => ProbeParams::new(alpha, beta),
            RawProbe::ErrorRate { eps } => ProbeParams::from_error_rate(eps),
        }
    }
}

impl From<ProbeParams> for RawProbe {
    fn from(p: ProbeParams) -> Self {
        RawProbe::Amplitudes {
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

impl ProbeParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ChannelError> {
        let norm = alpha * alpha + beta * beta;
        if !norm.is_finite() || (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(ChannelError::BadProbe(norm));
        }
        Ok(ProbeParams { alpha, beta })
    }

    /// Canonical representative with α = √(1−ε), β = √ε.
    pub fn from_error_rate(eps: f64) -> Result<Self, ChannelError> {
        check_probability("eps", eps)?;
        Ok(ProbeParams {
            alpha: (1.0 - eps).sqrt(),
            beta: eps.sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_prime(&self) -> f64 {
        self.alpha
    }

    pub fn beta_prime(&self) -> f64 {
        -self.beta
    }
}

/// Joint unitary on (photon ⊗ probe), probe starting in `|0⟩`.
///
/// Probe states are ε₀₀ = ε₁₁ = |0⟩ and ε₀₁ = ε₁₀ = |1⟩, so
///
/// ```text
/// |0⟩|0⟩ → α |0⟩|0⟩ + β  |1⟩|1⟩
/// |1⟩|0⟩ → β′|0⟩|1⟩ + α′ |1⟩|0⟩     (α′ = α, β′ = −β)
/// ```
///
/// The probe-|1⟩ columns complete the matrix to a unitary. Tracing the probe
/// out leaves `(1 − β²)·ρ + β²·YρY` on the photon.
pub fn probe_unitary(params: &ProbeParams) -> Unitary4 {
    let (a, b) = (params.alpha, params.beta);
    let r = |x: f64| c(x, 0.0);
    let z = r(0.0);
    Unitary4::new([
        [r(a), z, z, r(-b)],
        [z, r(a), r(params.beta_prime()), z],
        [z, r(b), r(params.alpha_prime()), z],
        [r(b), z, z, r(a)],
    ])
    .expect("real α² + β² = 1 gives a unitary")
}

/// Adversary strategy, fixed for a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttackModel {
    #[default]
    None,
    /// Measures every C particle and resends the eigenstate found.
    InterceptResend { basis: MeasBasis },
    /// Keeps the genuine C particles, substitutes halves of her own singlets,
    /// and Bell-measures the genuine pair once the M particle flies by.
    FakeEpr,
    /// Entangles a probe qubit with each C particle.
    UnitaryProbe { params: ProbeParams },
    /// Measures every M particle and resends the eigenstate found.
    InterceptMOnly { basis: MeasBasis },
}

impl AttackModel {
    pub fn acts_on(&self, leg: Leg) -> bool {
        match self {
            AttackModel::None => false,
            AttackModel::InterceptResend { .. } | AttackModel::UnitaryProbe { .. } => leg == Leg::C,
            AttackModel::FakeEpr => true,
            AttackModel::InterceptMOnly { .. } => leg == Leg::M,
        }
    }

    /// Short machine name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            AttackModel::None => "none",
            AttackModel::InterceptResend { .. } => "intercept_resend",
            AttackModel::FakeEpr => "fake_epr",
            AttackModel::UnitaryProbe { .. } => "unitary_probe",
            AttackModel::InterceptMOnly { .. } => "intercept_m_only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EveAction {
    Measured {
        basis: MeasBasis,
        outcome: u8,
    },
    StoredC,
    ProbeAttached,
    /// Eve's 2-bit guess at what Alice encoded on this pair.
    Harvested {
        code: TwoBits,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EveEntry {
    pub pair: usize,
    pub leg: Leg,
    pub action: EveAction,
}

/// Append-only log of everything Eve did and learned during a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EveRecord {
    entries: Vec<EveEntry>,
}

impl EveRecord {
    fn push(&mut self, pair: usize, leg: Leg, action: EveAction) {
        self.entries.push(EveEntry { pair, leg, action });
    }

    pub fn entries(&self) -> &[EveEntry] {
        &self.entries
    }

    /// `(pair, guessed code)` for every pair Eve produced a guess on.
    pub fn harvests(&self) -> impl Iterator<Item = (usize, TwoBits)> + '_ {
        self.entries.iter().filter_map(|e| match e.action {
            EveAction::Harvested { code } => Some((e.pair, code)),
            _ => None,
        })
    }

    pub fn measurements(&self, leg: Leg) -> impl Iterator<Item = (usize, MeasBasis, u8)> + '_ {
        self.entries.iter().filter_map(move |e| match e.action {
            EveAction::Measured { basis, outcome } if e.leg == leg => {
                Some((e.pair, basis, outcome))
            }
            _ => None,
        })
    }

    fn stored_c(&self, pair: usize) -> bool {
        self.entries
            .iter()
            .any(|e| e.pair == pair && e.action == EveAction::StoredC)
    }
}

/// Lets the adversary act on one pair's particle as it crosses `leg`.
///
/// Eve sits at the sender's end of the line, so this runs before the
/// channel's own noise and loss.
pub fn eve_intercept<R: Rng + ?Sized>(
    attack: &AttackModel,
    leg: Leg,
    pair: usize,
    sys: &mut PairSystem,
    eve: &mut EveRecord,
    rng: &mut R,
) -> Result<(), ChannelError> {
    if !attack.acts_on(leg) {
        return Ok(());
    }
    let target = match leg {
        Leg::C => Particle::C,
        Leg::M => Particle::M,
    };
    match (*attack, leg) {
        (AttackModel::InterceptResend { basis }, _)
        | (AttackModel::InterceptMOnly { basis }, _) => {
            let outcome = sys.measure(target, basis, rng)?;
            eve.push(pair, leg, EveAction::Measured { basis, outcome });
            if leg == Leg::M {
                // one lone particle says nothing about the code; the outcome
                // is the best a guess can lean on
                let code = TwoBits::from_bits(outcome == 1, rng.random_bool(0.5));
                eve.push(pair, leg, EveAction::Harvested { code });
            }
        }
        (AttackModel::FakeEpr, Leg::C) => {
            sys.relabel(Particle::C, Particle::EveHeldC)?;
            sys.adjoin(
                make_bell(BellState::PsiMinus),
                &[Particle::C, Particle::EvePartner],
            )?;
            eve.push(pair, leg, EveAction::StoredC);
        }
        (AttackModel::FakeEpr, Leg::M) => {
            if !eve.stored_c(pair) || !sys.contains(Particle::EveHeldC) {
                return Err(ChannelError::NoStoredC(pair));
            }
            let which = sys.bell_measure(Particle::EveHeldC, Particle::M, rng)?;
            let code = code_of(which);
            eve.push(pair, leg, EveAction::Harvested { code });
            // re-encode onto the substitute pair so Bob still reads the message
            sys.discard(Particle::EveHeldC, rng)?;
            sys.discard(Particle::M, rng)?;
            sys.apply(Particle::EvePartner, &op_for_bits(code).matrix())?;
            sys.relabel(Particle::EvePartner, Particle::M)?;
        }
        (AttackModel::UnitaryProbe { params }, Leg::C) => {
            sys.adjoin(StateVector::basis(1, 0)?, &[Particle::Probe])?;
            sys.apply_two(Particle::C, Particle::Probe, &probe_unitary(&params))?;
            eve.push(pair, leg, EveAction::ProbeAttached);
        }
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellcode::{encode_pair, CodeOp};
    use crate::seeded_rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn singlet() -> StateVector {
        make_bell(BellState::PsiMinus)
    }

    #[test]
    fn ideal_channel_delivers_unchanged() {
        let mut rng = seeded_rng(20);
        for _ in 0..100 {
            match transmit(&singlet(), 0, &ChannelModel::IDEAL, &mut rng).unwrap() {
                TransmitResult::Delivered(s) => assert_eq!(s, singlet()),
                TransmitResult::Lost => panic!("ideal channel lost a photon"),
            }
        }
    }

    #[test]
    fn total_loss_always_loses() {
        let mut rng = seeded_rng(21);
        let ch = ChannelModel {
            noise: NoiseKind::Ideal,
            loss: 1.0,
        };
        for _ in 0..100 {
            assert_eq!(
                transmit(&singlet(), 0, &ch, &mut rng).unwrap(),
                TransmitResult::Lost
            );
        }
    }

    #[test]
    fn invalid_channel_rejected() {
        let ch = ChannelModel {
            noise: NoiseKind::BitFlip { p: 1.5 },
            loss: 0.0,
        };
        assert!(matches!(
            transmit(&singlet(), 0, &ch, &mut seeded_rng(0)),
            Err(ChannelError::BadProbability { name: "p", .. })
        ));
        assert!(transmit(&singlet(), 5, &ChannelModel::IDEAL, &mut seeded_rng(0)).is_err());
    }

    #[test]
    fn bit_flip_rate_shows_up_in_z_check() {
        let p = 0.1;
        let ch = ChannelModel {
            noise: NoiseKind::BitFlip { p },
            loss: 0.0,
        };
        let mut rng = seeded_rng(22);
        let trials = 100_000;
        let mut errors = 0;
        for _ in 0..trials {
            let TransmitResult::Delivered(s) = transmit(&singlet(), 0, &ch, &mut rng).unwrap()
            else {
                unreachable!()
            };
            let (a, post) = s.measure_qubit(0, MeasBasis::Z, &mut rng).unwrap();
            let (b, _) = post.measure_qubit(1, MeasBasis::Z, &mut rng).unwrap();
            errors += usize::from(a == b);
        }
        let rate = errors as f64 / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((rate - p).abs() < 4.0 * sigma, "{rate}");
    }

    #[test]
    fn loss_frequency_is_independent_of_encoding() {
        let loss = 0.3;
        let ch = ChannelModel {
            noise: NoiseKind::Depolarizing { p: 0.2 },
            loss,
        };
        let mut rng = seeded_rng(23);
        let trials = 40_000;
        let sigma = (loss * (1.0 - loss) / trials as f64).sqrt();
        for op in CodeOp::ALL {
            let s = encode_pair(&singlet(), op.bits()).unwrap();
            let lost = (0..trials)
                .filter(|_| transmit(&s, 1, &ch, &mut rng).unwrap() == TransmitResult::Lost)
                .count();
            let f = lost as f64 / trials as f64;
            assert!((f - loss).abs() < 4.0 * sigma, "{op:?}: {f}");
        }
    }

    #[test]
    fn probe_with_zero_beta_is_identity_on_photon() {
        let u = probe_unitary(&ProbeParams::new(1.0, 0.0).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((u.get(i, j) - c(e, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn probe_is_unitary_over_theta_grid() {
        for k in 0..=64 {
            let theta = k as f64 * std::f64::consts::PI / 32.0;
            let p = ProbeParams::new(theta.cos(), theta.sin()).unwrap();
            assert!(probe_unitary(&p).unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn probe_action_matches_definition() {
        let (a, b) = (0.8, 0.6);
        let u = probe_unitary(&ProbeParams::new(a, b).unwrap());
        // column |0⟩|E⟩ = α|00⟩ + β|11⟩
        let col0: Vec<_> = (0..4).map(|r| u.get(r, 0).re).collect();
        assert_eq!(col0, vec![a, 0.0, 0.0, b]);
        // column |1⟩|E⟩ = β′|01⟩ + α′|10⟩
        let col2: Vec<_> = (0..4).map(|r| u.get(r, 2).re).collect();
        assert_eq!(col2, vec![0.0, -b, a, 0.0]);
    }

    #[test]
    fn probe_params_validation() {
        assert!(matches!(
            ProbeParams::new(0.9, 0.9),
            Err(ChannelError::BadProbe(_))
        ));
        let p = ProbeParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        assert!((p.beta() * p.beta() - 0.5).abs() < 1e-15);
        assert!(ProbeParams::from_error_rate(1.2).is_err());
        let json = serde_json::to_string(&p).unwrap();
        let back: ProbeParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ProbeParams>(r#"{"alpha":1.0,"beta":1.0}"#).is_err());
        let q: ProbeParams = serde_json::from_str(r#"{"eps":0.25}"#).unwrap();
        assert!((q.beta() - 0.5).abs() < 1e-15);
        assert!(serde_json::from_str::<ProbeParams>(r#"{"eps":0.25,"gamma":1}"#).is_err());
    }

    #[test]
    fn no_attack_leaves_pair_alone() {
        let mut sys = fresh_pair();
        let mut eve = EveRecord::default();
        let mut rng = seeded_rng(24);
        eve_intercept(&AttackModel::None, Leg::C, 0, &mut sys, &mut eve, &mut rng).unwrap();
        let (s, _) = sys.state_of(Particle::C).unwrap();
        assert_eq!(s, &singlet());
        assert!(eve.entries().is_empty());
    }

    #[test]
    fn fake_epr_harvest_needs_stored_c() {
        let mut sys = fresh_pair();
        let mut eve = EveRecord::default();
        let err = eve_intercept(
            &AttackModel::FakeEpr,
            Leg::M,
            3,
            &mut sys,
            &mut eve,
            &mut seeded_rng(0),
        );
        assert_eq!(err, Err(ChannelError::NoStoredC(3)));
    }

    #[test]
    fn fake_epr_without_check_reads_every_code() {
        let mut rng = seeded_rng(25);
        for i in 0..400 {
            let code = TwoBits::ALL[i % 4];
            let mut sys = fresh_pair();
            let mut eve = EveRecord::default();
            eve_intercept(
                &AttackModel::FakeEpr,
                Leg::C,
                i,
                &mut sys,
                &mut eve,
                &mut rng,
            )
            .unwrap();
            sys.apply(Particle::M, &op_for_bits(code).matrix()).unwrap();
            eve_intercept(
                &AttackModel::FakeEpr,
                Leg::M,
                i,
                &mut sys,
                &mut eve,
                &mut rng,
            )
            .unwrap();
            let harvested: Vec<_> = eve.harvests().collect();
            assert_eq!(harvested, vec![(i, code)]);
            // Bob still reads the right code off the substitute pair
            let bob = sys
                .bell_measure(Particle::C, Particle::M, &mut rng)
                .unwrap();
            assert_eq!(code_of(bob), code);
        }
    }

    fn first_check_error_rate(
        attack: AttackModel,
        basis: MeasBasis,
        trials: usize,
        seed: u64,
    ) -> f64 {
        let mut rng = seeded_rng(seed);
        let mut errors = 0;
        for i in 0..trials {
            let mut sys = fresh_pair();
            let mut eve = EveRecord::default();
            eve_intercept(&attack, Leg::C, i, &mut sys, &mut eve, &mut rng).unwrap();
            let bob = sys.measure(Particle::C, basis, &mut rng).unwrap();
            let alice = sys.measure(Particle::M, basis, &mut rng).unwrap();
            errors += usize::from(alice == bob);
        }
        errors as f64 / trials as f64
    }

    #[test]
    fn probe_error_rate_is_sin_squared_theta_in_both_bases() {
        let theta: f64 = 0.5;
        let eps = theta.sin().powi(2);
        let attack = AttackModel::UnitaryProbe {
            params: ProbeParams::new(theta.cos(), theta.sin()).unwrap(),
        };
        let trials = 100_000;
        let sigma = (eps * (1.0 - eps) / trials as f64).sqrt();
        for (k, basis) in MeasBasis::ALL.into_iter().enumerate() {
            let rate = first_check_error_rate(attack, basis, trials, 30 + k as u64);
            assert!(
                (rate - eps).abs() < 4.0 * sigma,
                "{basis:?}: {rate} vs {eps}"
            );
        }
    }

    #[test]
    fn intercept_resend_z_errors_only_on_x_checks() {
        let attack = AttackModel::InterceptResend {
            basis: MeasBasis::Z,
        };
        assert_eq!(first_check_error_rate(attack, MeasBasis::Z, 5000, 40), 0.0);
        let trials = 40_000;
        let rate = first_check_error_rate(attack, MeasBasis::X, trials, 41);
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((rate - 0.5).abs() < 4.0 * sigma, "{rate}");
    }

    #[test]
    fn fake_epr_decorrelates_first_check() {
        let trials = 40_000;
        let sigma = (0.25 / trials as f64).sqrt();
        for (k, basis) in MeasBasis::ALL.into_iter().enumerate() {
            let rate = first_check_error_rate(AttackModel::FakeEpr, basis, trials, 50 + k as u64);
            assert!((rate - 0.5).abs() < 4.0 * sigma, "{rate}");
        }
    }

    #[test]
    fn attack_leg_routing() {
        let probe = AttackModel::UnitaryProbe {
            params: ProbeParams::from_error_rate(0.1).unwrap(),
        };
        assert!(probe.acts_on(Leg::C) && !probe.acts_on(Leg::M));
        let m_only = AttackModel::InterceptMOnly {
            basis: MeasBasis::Z,
        };
        assert!(!m_only.acts_on(Leg::C) && m_only.acts_on(Leg::M));
        assert!(AttackModel::FakeEpr.acts_on(Leg::C) && AttackModel::FakeEpr.acts_on(Leg::M));
        assert!(!AttackModel::None.acts_on(Leg::C));
    }
}
