//! Entanglement swapping on a four-qubit register and the repeater-chain
//! fidelity fold built on top of it.
//!
//! The swap applies CNOT(1->3) and CNOT(2->4) as exact basis permutations,
//! then measures qubits 1 and 2 in the |+->=(|0>+-|1>)/sqrt(2) basis. All
//! four outcomes are returned with probabilities and the normalized
//! post-measurement state of qubits 3 and 4; a seeded sampler wraps the
//! exhaustive list for Monte Carlo use.

use super::{CompositeSystem, EngineError, PureState};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use std::fmt;

/// |+> or |-> measurement result for one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasurementSign {
    Plus,
    Minus,
}

impl MeasurementSign {
    fn weight(self, bit: usize) -> f64 {
        match (self, bit) {
            (MeasurementSign::Minus, 1) => -std::f64::consts::FRAC_1_SQRT_2,
            _ => std::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

impl fmt::Display for MeasurementSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasurementSign::Plus => "+",
            MeasurementSign::Minus => "-",
        })
    }
}

/// One branch of the swap measurement: the outcome on qubits (1, 2), its
/// probability, and the normalized post-state of qubits (3, 4). A
/// zero-probability branch carries the zero vector.
#[derive(Debug, Clone)]
pub struct SwapOutcome {
    pub outcome: (MeasurementSign, MeasurementSign),
    pub probability: f64,
    pub post_state: PureState,
}

impl SwapOutcome {
    pub fn label(&self) -> String {
        format!("{}{}", self.outcome.0, self.outcome.1)
    }
}

/// Validates that a system is exactly four two-level subsystems.
fn require_four_qubits(system: &CompositeSystem) -> Result<(), EngineError> {
    if system.subsystems().len() != 4
        || system.subsystems().iter().any(|s| s.levels().len() != 2)
    {
        return Err(EngineError::Schema(
            "entanglement swap needs four two-level subsystems".into(),
        ));
    }
    Ok(())
}

/// CNOT(1->3), CNOT(2->4), then projective |+-> measurement of qubits 1, 2.
/// Input must be normalized to 1e-9; outcome probabilities sum to 1.
pub fn entanglement_swap(input: &PureState) -> Result<Vec<SwapOutcome>, EngineError> {
    let system = input.system();
    require_four_qubits(system)?;
    let norm = input.norm_sq();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(EngineError::Precondition(format!(
            "input norm^2 = {norm} is not 1 within 1e-9"
        )));
    }

    // CNOTs as permutations: target bit XOR control bit.
    let dim = system.dimension();
    let mut after = vec![Complex64::ZERO; dim];
    for index in 0..dim {
        let bits = system.decompose(index);
        let mut out = bits.clone();
        out[2] ^= bits[0];
        out[3] ^= bits[1];
        after[system.compose(&out)] = input.amplitude(index);
    }

    let s3 = &system.subsystems()[2];
    let s4 = &system.subsystems()[3];
    let pair_system = CompositeSystem::new(&[
        (s3.name(), &[s3.levels()[0].as_str(), s3.levels()[1].as_str()]),
        (s4.name(), &[s4.levels()[0].as_str(), s4.levels()[1].as_str()]),
    ])?;

    let signs = [MeasurementSign::Plus, MeasurementSign::Minus];
    let mut outcomes = Vec::with_capacity(4);
    for s1 in signs {
        for s2 in signs {
            let mut projected = DVector::from_element(4, Complex64::ZERO);
            for (index, amp) in after.iter().enumerate() {
                let bits = system.decompose(index);
                let weight = s1.weight(bits[0]) * s2.weight(bits[1]);
                projected[2 * bits[2] + bits[3]] += *amp * weight;
            }
            let probability: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
            let amplitudes = if probability > 1e-300 {
                projected.map(|a| a / probability.sqrt())
            } else {
                DVector::from_element(4, Complex64::ZERO)
            };
            outcomes.push(SwapOutcome {
                outcome: (s1, s2),
                probability,
                post_state: PureState::from_amplitudes(
                    pair_system.clone(),
                    amplitudes.iter().copied().collect(),
                )?,
            });
        }
    }
    Ok(outcomes)
}

/// Draws one outcome according to the listed probabilities.
pub fn sample_outcome<'a, R: Rng + ?Sized>(
    outcomes: &'a [SwapOutcome],
    rng: &mut R,
) -> Result<&'a SwapOutcome, EngineError> {
    if outcomes.is_empty() {
        return Err(EngineError::Precondition("no outcomes to sample".into()));
    }
    let total: f64 = outcomes.iter().map(|o| o.probability).sum();
    if !(total > 0.0) {
        return Err(EngineError::Precondition(
            "outcome probabilities sum to zero".into(),
        ));
    }
    let mut draw = rng.random::<f64>() * total;
    for outcome in outcomes {
        draw -= outcome.probability;
        if draw <= 0.0 {
            return Ok(outcome);
        }
    }
    Ok(outcomes.last().expect("nonempty"))
}

/// Maps the fidelities of two adjacent pairs to the fidelity after one swap.
pub trait SwapFidelityModel {
    fn swap(&self, f1: f64, f2: f64) -> f64;
}

/// F_out = F1 * F2 * F_gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSwapModel {
    pub gate_fidelity: f64,
}

impl SwapFidelityModel for ProductSwapModel {
    fn swap(&self, f1: f64, f2: f64) -> f64 {
        f1 * f2 * self.gate_fidelity
    }
}

/// Folds the swap model over a left-leaning connection tree of `num_links`
/// elementary pairs: each round swaps adjacent pairs and carries an odd
/// leftover to the next round, so any link count works.
pub fn repeater_chain(
    num_links: usize,
    elementary_fidelity: f64,
    model: &dyn SwapFidelityModel,
) -> Result<f64, EngineError> {
    if num_links < 1 {
        return Err(EngineError::Domain("need at least one link".into()));
    }
    if !(0.0..=1.0).contains(&elementary_fidelity) {
        return Err(EngineError::Domain(
            "elementary fidelity must lie in [0, 1]".into(),
        ));
    }
    let mut level: Vec<f64> = vec![elementary_fidelity; num_links];
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut chunks = level.chunks_exact(2);
        for pair in &mut chunks {
            next.push(model.swap(pair[0], pair[1]));
        }
        next.extend_from_slice(chunks.remainder());
        level = next;
    }
    Ok(level[0])
}
