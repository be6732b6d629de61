//! Few-level composite quantum systems evolved under piecewise-constant
//! pulses: the phase-gate, CNOT, addressing, and entanglement-swap protocols
//! of a Rydberg-atom-mediated molecular qubit architecture.
//!
//! States are immutable values over a labeled product basis; the first
//! subsystem is the most significant index. Evolution is an exact matrix
//! exponential per pulse segment, optionally non-Hermitian to model decay
//! out of Rydberg levels (norm loss reported as survival, never renormalized
//! implicitly).

mod gates;
mod pulse;
mod swap;

pub use gates::{
    addressing_crosstalk, blockade_phase_gate, cnot_atom_target, cnot_molecule_target,
    prepare_lr_superposition, GateResult,
};
pub use pulse::{apply_pulse, propagator, pulses_from_toml, ConditionalShift, Decay, Pulse};
pub use swap::{
    entanglement_swap, repeater_chain, sample_outcome, MeasurementSign, ProductSwapModel,
    SwapFidelityModel, SwapOutcome,
};

use nalgebra::DVector;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    /// Structural problems: unknown or duplicate labels, dimension mismatches.
    #[error("schema error: {0}")]
    Schema(String),
    /// Out-of-range numeric inputs.
    #[error("domain error: {0}")]
    Domain(String),
    /// Violated operation precondition, e.g. an unnormalized input state.
    #[error("precondition error: {0}")]
    Precondition(String),
}

/// Ordered product of named subsystems, each with its own level labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSystem {
    subsystems: Vec<Subsystem>,
    dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    name: String,
    levels: Vec<String>,
}

impl Subsystem {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }
}

impl CompositeSystem {
    pub fn new(subsystems: &[(&str, &[&str])]) -> Result<Self, EngineError> {
        let mut built = Vec::with_capacity(subsystems.len());
        let mut dimension = 1usize;
        for (name, levels) in subsystems {
            if built.iter().any(|s: &Subsystem| s.name == *name) {
                return Err(EngineError::Schema(format!("duplicate subsystem '{name}'")));
            }
            if levels.is_empty() {
                return Err(EngineError::Schema(format!("subsystem '{name}' has no levels")));
            }
            for (i, level) in levels.iter().enumerate() {
                if levels[..i].contains(level) {
                    return Err(EngineError::Schema(format!(
                        "duplicate level '{level}' in subsystem '{name}'"
                    )));
                }
            }
            dimension *= levels.len();
            built.push(Subsystem {
                name: name.to_string(),
                levels: levels.iter().map(|l| l.to_string()).collect(),
            });
        }
        if dimension < 2 {
            return Err(EngineError::Schema(format!(
                "composite dimension {dimension} is below 2"
            )));
        }
        Ok(CompositeSystem {
            subsystems: built,
            dimension,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn subsystem_index(&self, name: &str) -> Result<usize, EngineError> {
        self.subsystems
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| EngineError::Schema(format!("unknown subsystem '{name}'")))
    }

    pub fn level_index(&self, subsystem: usize, label: &str) -> Result<usize, EngineError> {
        let sub = &self.subsystems[subsystem];
        sub.levels.iter().position(|l| l == label).ok_or_else(|| {
            EngineError::Schema(format!(
                "unknown level '{label}' in subsystem '{}'",
                sub.name
            ))
        })
    }

    /// Stride of a subsystem in the flattened basis index.
    fn stride(&self, subsystem: usize) -> usize {
        self.subsystems[subsystem + 1..]
            .iter()
            .map(|s| s.levels.len())
            .product()
    }

    /// Per-subsystem level indices of a flattened basis index.
    pub fn decompose(&self, mut index: usize) -> Vec<usize> {
        let mut levels = Vec::with_capacity(self.subsystems.len());
        for k in 0..self.subsystems.len() {
            let stride = self.stride(k);
            levels.push(index / stride);
            index %= stride;
        }
        levels
    }

    /// Flattened basis index from per-subsystem level indices.
    pub fn compose(&self, levels: &[usize]) -> usize {
        levels
            .iter()
            .enumerate()
            .map(|(k, &l)| l * self.stride(k))
            .sum()
    }

    /// Human-readable basis label, subsystem levels joined by commas.
    pub fn basis_label(&self, index: usize) -> String {
        self.decompose(index)
            .iter()
            .enumerate()
            .map(|(k, &l)| self.subsystems[k].levels[l].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Pure state over a composite basis. The norm may sit below 1 after decay;
/// it never exceeds 1 beyond rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    system: CompositeSystem,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn from_amplitudes(
        system: CompositeSystem,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, EngineError> {
        if amplitudes.len() != system.dimension() {
            return Err(EngineError::Schema(format!(
                "amplitude vector length {} does not match dimension {}",
                amplitudes.len(),
                system.dimension()
            )));
        }
        let state = PureState {
            system,
            amplitudes: DVector::from_vec(amplitudes),
        };
        if state.norm_sq() > 1.0 + 1e-12 {
            return Err(EngineError::Domain(format!(
                "state norm^2 = {} exceeds 1",
                state.norm_sq()
            )));
        }
        Ok(state)
    }

    /// Basis state |levels[0], levels[1], ...>, one label per subsystem.
    pub fn basis_state(system: CompositeSystem, levels: &[&str]) -> Result<Self, EngineError> {
        if levels.len() != system.subsystems().len() {
            return Err(EngineError::Schema(format!(
                "need {} level labels, got {}",
                system.subsystems().len(),
                levels.len()
            )));
        }
        let mut indices = Vec::with_capacity(levels.len());
        for (k, label) in levels.iter().enumerate() {
            indices.push(system.level_index(k, label)?);
        }
        let index = system.compose(&indices);
        let mut amplitudes = DVector::from_element(system.dimension(), Complex64::ZERO);
        amplitudes[index] = Complex64::ONE;
        Ok(PureState {
            system,
            amplitudes,
        })
    }

    pub fn system(&self) -> &CompositeSystem {
        &self.system
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Total population of a named subsystem level.
    pub fn level_population(&self, subsystem: &str, label: &str) -> Result<f64, EngineError> {
        let sub = self.system.subsystem_index(subsystem)?;
        let level = self.system.level_index(sub, label)?;
        let mut p = 0.0;
        for (index, amp) in self.amplitudes.iter().enumerate() {
            if self.system.decompose(index)[sub] == level {
                p += amp.norm_sqr();
            }
        }
        Ok(p)
    }

    pub(crate) fn with_amplitudes(&self, amplitudes: DVector<Complex64>) -> Self {
        PureState {
            system: self.system.clone(),
            amplitudes,
        }
    }
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (index, amp) in self.amplitudes.iter().enumerate() {
            if amp.norm_sqr() < 1e-24 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)|{}>", amp.re, amp.im, self.system.basis_label(index))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
