//! Piecewise-constant rotating-frame pulses and their exact propagators.
//!
//! A pulse drives one transition of one subsystem: coupling (Omega/2)
//! e^{i phi} |upper><lower| + h.c., diagonal -Delta on the upper level, plus
//! any conditional shifts. A conditional shift adds energy to the upper
//! level of the driven transition whenever a named other subsystem occupies
//! a named level; it encodes blockade interactions and state-dependent Stark
//! shifts. Decay acts as -i Gamma/2 per occupied decaying level, so norm
//! decreases and is never restored.

use super::{CompositeSystem, EngineError, PureState};
use crate::units::{Quantity, Unit, UnitError};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;
use std::f64::consts::PI;

impl From<UnitError> for EngineError {
    fn from(err: UnitError) -> Self {
        EngineError::Schema(err.to_string())
    }
}

/// Driven transition: `lower` and `upper` are level labels of `subsystem`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub subsystem: String,
    pub lower: String,
    pub upper: String,
}

/// Extra detuning of the driven upper level when `subsystem` (never the
/// driven one) occupies `level`. Positive shift pushes the transition up.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalShift {
    pub subsystem: String,
    pub level: String,
    pub shift: Quantity,
}

/// One piecewise-constant drive segment. `rabi`, `detuning` and shifts are
/// angular frequencies; `phase` is in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct Pulse {
    pub transition: Transition,
    pub rabi: Quantity,
    pub detuning: Quantity,
    pub phase: f64,
    pub duration: Quantity,
    pub conditional_shifts: Vec<ConditionalShift>,
}

impl Pulse {
    pub fn new(
        subsystem: &str,
        lower: &str,
        upper: &str,
        rabi: Quantity,
        duration: Quantity,
    ) -> Self {
        Pulse {
            transition: Transition {
                subsystem: subsystem.to_string(),
                lower: lower.to_string(),
                upper: upper.to_string(),
            },
            rabi,
            detuning: Quantity::rad_per_s(0.0),
            phase: 0.0,
            duration,
            conditional_shifts: Vec::new(),
        }
    }

    /// Resonant pulse of area pi (full population transfer).
    pub fn pi(subsystem: &str, lower: &str, upper: &str, rabi: Quantity) -> Result<Self, EngineError> {
        Ok(Pulse::new(subsystem, lower, upper, rabi, area_duration(rabi, PI)?))
    }

    /// Resonant pulse of area 2 pi (full Rabi cycle).
    pub fn two_pi(
        subsystem: &str,
        lower: &str,
        upper: &str,
        rabi: Quantity,
    ) -> Result<Self, EngineError> {
        Ok(Pulse::new(subsystem, lower, upper, rabi, area_duration(rabi, 2.0 * PI)?))
    }

    pub fn with_detuning(mut self, detuning: Quantity) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_conditional_shift(mut self, subsystem: &str, level: &str, shift: Quantity) -> Self {
        self.conditional_shifts.push(ConditionalShift {
            subsystem: subsystem.to_string(),
            level: level.to_string(),
            shift,
        });
        self
    }
}

fn area_duration(rabi: Quantity, area: f64) -> Result<Quantity, EngineError> {
    let rabi_rad = rabi.convert(Unit::RadiansPerSecond)?.value();
    if !(rabi_rad > 0.0) {
        return Err(EngineError::Domain(format!(
            "pulse area {area} needs a positive Rabi frequency"
        )));
    }
    Ok(Quantity::seconds(area / rabi_rad))
}

/// Amplitude decay at angular rate `rate` applied to every subsystem level
/// whose label equals `level_label`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decay {
    pub rate: Quantity,
    pub level_label: String,
}

impl Decay {
    /// Decay of levels labeled "r" at rate 1/lifetime.
    pub fn rydberg(rate: Quantity) -> Self {
        Decay {
            rate,
            level_label: "r".to_string(),
        }
    }
}

/// Exact propagator exp(-i H_eff t) of one pulse on a composite system.
pub fn propagator(
    system: &CompositeSystem,
    pulse: &Pulse,
    decay: Option<&Decay>,
) -> Result<DMatrix<Complex64>, EngineError> {
    let dim = system.dimension();
    let sub = system.subsystem_index(&pulse.transition.subsystem)?;
    let lower = system.level_index(sub, &pulse.transition.lower)?;
    let upper = system.level_index(sub, &pulse.transition.upper)?;
    if lower == upper {
        return Err(EngineError::Schema(format!(
            "transition endpoints coincide: '{}'",
            pulse.transition.lower
        )));
    }

    let rabi_rad = pulse.rabi.convert(Unit::RadiansPerSecond)?.value();
    if !(rabi_rad >= 0.0) {
        return Err(EngineError::Domain("Rabi frequency must be non-negative".into()));
    }
    let detuning_rad = pulse.detuning.convert(Unit::RadiansPerSecond)?.value();
    let duration_s = pulse.duration.convert(Unit::Second)?.value();
    if !(duration_s >= 0.0) {
        return Err(EngineError::Domain("pulse duration must be non-negative".into()));
    }

    let mut shifts = Vec::with_capacity(pulse.conditional_shifts.len());
    for cs in &pulse.conditional_shifts {
        let cs_sub = system.subsystem_index(&cs.subsystem)?;
        if cs_sub == sub {
            return Err(EngineError::Schema(format!(
                "conditional shift must reference another subsystem, got the driven '{}'",
                cs.subsystem
            )));
        }
        let cs_level = system.level_index(cs_sub, &cs.level)?;
        shifts.push((cs_sub, cs_level, cs.shift.convert(Unit::RadiansPerSecond)?.value()));
    }

    let decay_terms = match decay {
        Some(d) => {
            let rate = d.rate.convert(Unit::RadiansPerSecond)?.value();
            if !(rate >= 0.0) {
                return Err(EngineError::Domain("decay rate must be non-negative".into()));
            }
            Some((rate, d.level_label.as_str()))
        }
        None => None,
    };

    let coupling = Complex64::from_polar(rabi_rad / 2.0, pulse.phase);
    let mut h = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for index in 0..dim {
        let levels = system.decompose(index);
        if levels[sub] == lower {
            let mut raised = levels.clone();
            raised[sub] = upper;
            let partner = system.compose(&raised);
            h[(partner, index)] += coupling;
            h[(index, partner)] += coupling.conj();
        }
        if levels[sub] == upper {
            let mut diag = -detuning_rad;
            for &(cs_sub, cs_level, cs_shift) in &shifts {
                if levels[cs_sub] == cs_level {
                    diag += cs_shift;
                }
            }
            h[(index, index)] += Complex64::new(diag, 0.0);
        }
        if let Some((rate, label)) = decay_terms {
            let occupied = levels
                .iter()
                .enumerate()
                .filter(|&(k, &l)| system.subsystems()[k].levels()[l] == label)
                .count();
            if occupied > 0 {
                h[(index, index)] += Complex64::new(0.0, -rate / 2.0 * occupied as f64);
            }
        }
    }

    let exponent = h.map(|z| Complex64::new(0.0, -duration_s) * z);
    Ok(exponent.exp())
}

/// Advances a state by one pulse. Deterministic; with decay the norm drops
/// and the missing weight is the decayed fraction.
pub fn apply_pulse(
    state: &PureState,
    pulse: &Pulse,
    decay: Option<&Decay>,
) -> Result<PureState, EngineError> {
    let u = propagator(state.system(), pulse, decay)?;
    Ok(state.with_amplitudes(&u * state.amplitudes()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseDoc {
    #[serde(default)]
    pulse: Vec<PulseRecord>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseRecord {
    subsystem: String,
    from: String,
    to: String,
    rabi_2pi_mhz: f64,
    #[serde(default)]
    detuning_2pi_mhz: f64,
    #[serde(default)]
    phase_rad: f64,
    duration_us: f64,
    #[serde(default)]
    conditional_shift: Vec<ShiftRecord>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftRecord {
    subsystem: String,
    level: String,
    shift_2pi_mhz: f64,
}

fn angular_from_2pi_mhz(f_mhz: f64) -> Quantity {
    Quantity::rad_per_s(2.0 * PI * f_mhz * 1e6)
}

/// Loads a pulse sequence from a TOML document of `[[pulse]]` records with
/// lab-unit fields: rabi_2pi_mhz, detuning_2pi_mhz, phase_rad, duration_us,
/// and optional `[[pulse.conditional_shift]]` entries with shift_2pi_mhz.
pub fn pulses_from_toml(doc: &str) -> Result<Vec<Pulse>, EngineError> {
    let parsed: PulseDoc =
        toml::from_str(doc).map_err(|e| EngineError::Schema(format!("pulse config: {e}")))?;
    Ok(parsed
        .pulse
        .into_iter()
        .map(|rec| {
            let mut pulse = Pulse::new(
                &rec.subsystem,
                &rec.from,
                &rec.to,
                angular_from_2pi_mhz(rec.rabi_2pi_mhz),
                Quantity::microseconds(rec.duration_us),
            )
            .with_detuning(angular_from_2pi_mhz(rec.detuning_2pi_mhz))
            .with_phase(rec.phase_rad);
            for cs in rec.conditional_shift {
                pulse = pulse.with_conditional_shift(
                    &cs.subsystem,
                    &cs.level,
                    angular_from_2pi_mhz(cs.shift_2pi_mhz),
                );
            }
            pulse
        })
        .collect())
}
