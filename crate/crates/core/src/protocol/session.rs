use rand::seq::index;
use rand::Rng;

use super::config::portion;
use super::swap::entanglement_swap;
use super::{
    Bits, CheckOutcome, ConfigError, Event, Measurement, PairRecord, Phase, ProtocolConfig,
    ProtocolError, Role, RunOutcome, RunReport, SwapSummary, Verdict,
};
use crate::bellcode::{bell_of, chunk_message, code_of, op_for_bits, unchunk, CodeOp, TwoBits};
use crate::channel::{
    eve_intercept, fresh_pair, transmit_particle, EveRecord, Leg, PairSystem, Particle,
};
use crate::qcore::MeasBasis;
use crate::security::{min_delay, DelayInputs};
use crate::{seeded_rng, SimRng};

/// One pair of the block: Alice's bookkeeping plus the physical system.
#[derive(Debug, Clone)]
pub struct PairSlot {
    pub record: PairRecord,
    sys: PairSystem,
}

impl PairSlot {
    pub fn system(&self) -> &PairSystem {
        &self.sys
    }
}

/// Validates `config` and prepares `n_pairs` singlets, all unassigned.
pub fn prepare_block(config: &ProtocolConfig) -> Result<Vec<PairSlot>, ConfigError> {
    config.validate()?;
    Ok((0..config.n_pairs)
        .map(|i| PairSlot {
            record: PairRecord::new(i),
            sys: fresh_pair(),
        })
        .collect())
}

/// Alice and Bob working through one block, phase by phase.
///
/// Each step checks that the previous one has happened; calling them out of
/// order is a [`ProtocolError::PhaseOrder`].
#[derive(Debug, Clone)]
pub struct Session {
    config: ProtocolConfig,
    rng: SimRng,
    slots: Vec<PairSlot>,
    eve: EveRecord,
    events: Vec<Event>,
    phase: Phase,
    min_delay_s: f64,
    swap: Option<SwapSummary>,
    first: Option<CheckOutcome>,
    second: Option<CheckOutcome>,
    pad_bits: usize,
    unsent_bits: usize,
}

impl Session {
    pub fn new(config: ProtocolConfig) -> Result<Self, ProtocolError> {
        let slots = prepare_block(&config)?;
        let min_delay_s = min_delay(&DelayInputs {
            distance_m: config.link.distance_m,
            signal_speed: config.link.signal_speed,
            block_size: config.n_pairs as f64,
            photon_rate: config.link.photon_rate,
        })
        .map_err(|e| ConfigError::new("link", e.to_string()))?;
        let rng = seeded_rng(config.seed);
        let events = vec![Event::BlockPrepared {
            n_pairs: config.n_pairs,
        }];
        Ok(Session {
            config,
            rng,
            slots,
            eve: EveRecord::default(),
            events,
            phase: Phase::Prepared,
            min_delay_s,
            swap: None,
            first: None,
            second: None,
            pad_bits: 0,
            unsent_bits: 0,
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn slots(&self) -> &[PairSlot] {
        &self.slots
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn eve(&self) -> &EveRecord {
        &self.eve
    }

    fn require(&self, operation: &'static str, allowed: &[Phase]) -> Result<(), ProtocolError> {
        if allowed.contains(&self.phase) {
            Ok(())
        } else {
            Err(ProtocolError::PhaseOrder {
                operation,
                phase: self.phase,
            })
        }
    }

    /// Alice sends every C particle to Bob. Eve acts first, then the channel.
    pub fn send_c_leg(&mut self) -> Result<(), ProtocolError> {
        self.require("send_c_leg", &[Phase::Prepared])?;
        let mut lost = 0;
        for slot in &mut self.slots {
            let i = slot.record.index;
            eve_intercept(
                &self.config.attack,
                Leg::C,
                i,
                &mut slot.sys,
                &mut self.eve,
                &mut self.rng,
            )?;
            let arrived = transmit_particle(
                &mut slot.sys,
                Particle::C,
                &self.config.channel_c,
                &mut self.rng,
            )?;
            if !arrived {
                slot.record.lost_c = true;
                slot.record.role = Some(Role::Discarded);
                lost += 1;
            }
        }
        self.events.push(Event::CLegSent {
            delivered: self.slots.len() - lost,
            lost,
        });
        self.phase = Phase::CLegSent;
        Ok(())
    }

    /// Existence detection: Bob Bell-measures the C particles of pairs
    /// `(2k, 2k + 1)` on copies of the pairs and keeps only groups where both
    /// photons arrived. An odd last pair has no partner and is discarded.
    pub fn swap_filter(&mut self) -> Result<SwapSummary, ProtocolError> {
        self.require("swap_filter", &[Phase::CLegSent])?;
        if !self.config.swap_filter {
            return Err(ProtocolError::SwapDisabled);
        }
        let mut summary = SwapSummary {
            groups: self.slots.len() / 2,
            failed_groups: 0,
            discarded_pairs: 0,
        };
        for k in 0..summary.groups {
            let (a, b) = (2 * k, 2 * k + 1);
            if self.slots[a].record.lost_c || self.slots[b].record.lost_c {
                summary.failed_groups += 1;
                for i in [a, b] {
                    self.slots[i].record.role = Some(Role::Discarded);
                }
                continue;
            }
            let swap = entanglement_swap(&self.slots[a].sys, &self.slots[b].sys, &mut self.rng)?;
            self.slots[a].record.swap_outcome = Some(swap.outcome);
            self.slots[b].record.swap_outcome = Some(swap.outcome);
        }
        if self.slots.len() % 2 == 1 {
            self.slots
                .last_mut()
                .expect("odd block is non-empty")
                .record
                .role = Some(Role::Discarded);
        }
        summary.discarded_pairs = self
            .slots
            .iter()
            .filter(|s| s.record.role == Some(Role::Discarded))
            .count();
        self.events.push(Event::SwapFilterApplied(summary));
        self.swap = Some(summary);
        self.phase = Phase::SwapFiltered;
        Ok(summary)
    }

    fn unassigned(&self) -> Vec<usize> {
        self.slots
            .iter()
            .filter(|s| s.record.role.is_none())
            .map(|s| s.record.index)
            .collect()
    }

    /// Bob picks a random subset of the delivered pairs and measures each C
    /// in a random basis; Alice measures the matching M in the same basis.
    /// The singlet is anti-correlated in both bases, so equal outcomes count
    /// as errors.
    pub fn first_check(&mut self) -> Result<CheckOutcome, ProtocolError> {
        let allowed: &[Phase] = if self.config.swap_filter {
            &[Phase::SwapFiltered]
        } else {
            &[Phase::CLegSent]
        };
        self.require("first_check", allowed)?;
        let candidates = self.unassigned();
        let outcome = if candidates.len() < self.config.min_delivered.max(1) {
            self.events
                .push(Event::FirstCheckAnnounced { positions: 0 });
            CheckOutcome {
                checked: 0,
                errors: 0,
                error_rate: 1.0,
                accepted: false,
            }
        } else {
            let k = portion(self.config.check_fraction, candidates.len());
            let mut chosen: Vec<usize> = index::sample(&mut self.rng, candidates.len(), k)
                .into_iter()
                .map(|j| candidates[j])
                .collect();
            chosen.sort_unstable();
            self.events
                .push(Event::FirstCheckAnnounced { positions: k });
            let mut errors = 0;
            for i in chosen {
                let basis = if self.rng.random_bool(0.5) {
                    MeasBasis::X
                } else {
                    MeasBasis::Z
                };
                let slot = &mut self.slots[i];
                let bob = slot.sys.measure(Particle::C, basis, &mut self.rng)?;
                let alice = slot.sys.measure(Particle::M, basis, &mut self.rng)?;
                slot.record.role = Some(Role::FirstCheck);
                slot.record.bob_meas = Some(Measurement {
                    basis,
                    outcome: bob,
                });
                slot.record.alice_meas = Some(Measurement {
                    basis,
                    outcome: alice,
                });
                errors += usize::from(bob == alice);
            }
            let error_rate = errors as f64 / k as f64;
            CheckOutcome {
                checked: k,
                errors,
                error_rate,
                accepted: error_rate <= self.config.error_threshold,
            }
        };
        self.events.push(Event::FirstCheckCompleted(outcome));
        self.first = Some(outcome);
        self.phase = Phase::FirstChecked;
        Ok(outcome)
    }

    /// Alice picks sampling pairs among the rest, encodes random operations
    /// on those and the message on the others, then sends the M particles.
    pub fn encode_and_send(&mut self) -> Result<(), ProtocolError> {
        self.require("encode_and_send", &[Phase::FirstChecked])?;
        if !self.first.is_some_and(|c| c.accepted) {
            return Err(ProtocolError::Aborted("encode_and_send"));
        }
        let available = self.unassigned();
        let s = portion(self.config.sample_fraction, available.len());
        let mut is_sample = vec![false; available.len()];
        for j in index::sample(&mut self.rng, available.len(), s) {
            is_sample[j] = true;
        }
        let (chunks, pad) = chunk_message(self.config.message.as_slice());
        let mut next_chunk = chunks.iter();
        let mut message_pairs = 0;
        for (j, &i) in available.iter().enumerate() {
            let (role, op) = if is_sample[j] {
                (Role::Sample, CodeOp::ALL[self.rng.random_range(0..4)])
            } else if let Some(&bits) = next_chunk.next() {
                message_pairs += 1;
                (Role::Message, op_for_bits(bits))
            } else {
                self.slots[i].record.role = Some(Role::Discarded);
                continue;
            };
            let slot = &mut self.slots[i];
            slot.sys.apply(Particle::M, &op.matrix())?;
            slot.record.role = Some(role);
            slot.record.applied_op = Some(op);
        }
        let msg_len = self.config.message.len();
        let sent_bits = msg_len.min(2 * message_pairs);
        self.unsent_bits = msg_len - sent_bits;
        self.pad_bits = if self.unsent_bits == 0 { pad } else { 0 };
        self.events.push(Event::MessageEncoded {
            message_pairs,
            sample_pairs: s,
        });

        let mut delivered = 0;
        let mut lost = 0;
        for slot in &mut self.slots {
            if !matches!(slot.record.role, Some(Role::Sample | Role::Message)) {
                continue;
            }
            let i = slot.record.index;
            eve_intercept(
                &self.config.attack,
                Leg::M,
                i,
                &mut slot.sys,
                &mut self.eve,
                &mut self.rng,
            )?;
            if transmit_particle(
                &mut slot.sys,
                Particle::M,
                &self.config.channel_m,
                &mut self.rng,
            )? {
                delivered += 1;
            } else {
                slot.record.lost_m = true;
                lost += 1;
            }
        }
        self.events.push(Event::MLegSent { delivered, lost });
        self.phase = Phase::MLegSent;
        Ok(())
    }

    /// Bob Bell-measures every complete sample and message pair.
    pub fn decode(&mut self) -> Result<(), ProtocolError> {
        self.require("decode", &[Phase::MLegSent])?;
        let mut pairs = 0;
        for slot in &mut self.slots {
            if slot.record.lost_m || !matches!(slot.record.role, Some(Role::Sample | Role::Message))
            {
                continue;
            }
            let which = slot
                .sys
                .bell_measure(Particle::C, Particle::M, &mut self.rng)?;
            slot.record.bob_bell_result = Some(which);
            pairs += 1;
        }
        self.events.push(Event::BellMeasured { pairs });
        self.phase = Phase::Decoded;
        Ok(())
    }

    /// Alice reveals sampling positions and operations; Bob compares them
    /// with his Bell outcomes.
    pub fn second_check(&mut self) -> Result<CheckOutcome, ProtocolError> {
        self.require("second_check", &[Phase::Decoded])?;
        let revealed = self
            .slots
            .iter()
            .filter(|s| s.record.role == Some(Role::Sample))
            .count();
        self.events.push(Event::SamplesRevealed {
            positions: revealed,
        });
        let mut checked = 0;
        let mut errors = 0;
        for r in self.slots.iter().map(|s| &s.record) {
            if r.role != Some(Role::Sample) {
                continue;
            }
            let (Some(op), Some(got)) = (r.applied_op, r.bob_bell_result) else {
                continue;
            };
            checked += 1;
            errors += usize::from(got != bell_of(op.bits()));
        }
        let error_rate = if checked == 0 {
            0.0
        } else {
            errors as f64 / checked as f64
        };
        let outcome = CheckOutcome {
            checked,
            errors,
            error_rate,
            accepted: error_rate <= self.config.error_threshold,
        };
        self.events.push(Event::SecondCheckCompleted(outcome));
        self.second = Some(outcome);
        self.phase = Phase::SecondChecked;
        Ok(outcome)
    }

    /// Closes the session once a verdict is reachable: after an aborted
    /// first check or after the second check.
    pub fn finish(mut self) -> Result<RunOutcome, ProtocolError> {
        let first = match self.first {
            Some(f) if !f.accepted || self.phase == Phase::SecondChecked => f,
            _ => {
                return Err(ProtocolError::PhaseOrder {
                    operation: "finish",
                    phase: self.phase,
                })
            }
        };
        let verdict = match self.second {
            _ if !first.accepted => Verdict::AbortFirstCheck,
            Some(s) if !s.accepted => Verdict::AbortSecondCheck,
            _ => Verdict::Accept,
        };
        self.events.push(Event::Finished { verdict });

        let records: Vec<PairRecord> = self.slots.into_iter().map(|s| s.record).collect();
        let message: Vec<&PairRecord> = records
            .iter()
            .filter(|r| r.role == Some(Role::Message))
            .collect();
        let message_pairs_lost = message.iter().filter(|r| r.lost_m).count();
        let decoded_message = (verdict == Verdict::Accept).then(|| {
            let codes: Vec<TwoBits> = message
                .iter()
                .map(|r| r.bob_bell_result.map_or(TwoBits::ALL[0], code_of))
                .collect();
            let mut bits = unchunk(&codes);
            bits.truncate(self.config.message.len() - self.unsent_bits);
            Bits(bits)
        });

        let harvested: Vec<(usize, TwoBits)> = self
            .eve
            .harvests()
            .filter(|(i, _)| records[*i].role == Some(Role::Message))
            .collect();
        let correct = harvested
            .iter()
            .filter(|(i, code)| records[*i].applied_op.map(CodeOp::bits) == Some(*code))
            .count();
        let eve_harvest_accuracy =
            (!harvested.is_empty()).then(|| correct as f64 / harvested.len() as f64);

        let report = RunReport {
            seed: self.config.seed,
            attack: self.config.attack.name().to_string(),
            verdict,
            first_check_pairs: first.checked,
            first_check_error_rate: first.error_rate,
            second_check_pairs: self.second.map_or(0, |s| s.checked),
            second_check_error_rate: self.second.map(|s| s.error_rate),
            decoded_message,
            pad_bits: self.pad_bits,
            unsent_bits: self.unsent_bits,
            message_pairs: message.len(),
            message_pairs_lost,
            eve_harvest_bits: 2 * harvested.len(),
            eve_harvest_accuracy,
            pairs_lost: records.iter().filter(|r| r.lost_c || r.lost_m).count(),
            swap: self.swap,
            min_delay_s: self.min_delay_s,
        };
        Ok(RunOutcome {
            report,
            records,
            eve: self.eve,
            events: self.events,
        })
    }
}
