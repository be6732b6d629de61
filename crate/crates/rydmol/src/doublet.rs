//! CH X state Lambda-doublet hyperfine Zeeman structure and magic-field
//! search for the pi transitions between the e and f manifolds.
//!
//! Energies follow the closed-form two-level expression for a J state with
//! nuclear spin 1/2; the f manifold sits `doublet_splitting` above e. All
//! returned energies are in MHz, the natural unit of the tabulated
//! hyperfine constants.

use crate::constants::BOHR_MAGNETON_MHZ_PER_GAUSS;
use crate::units::{Quantity, Unit, UnitError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DoubletError {
    #[error("invalid doublet spec: {0}")]
    InvalidSpec(String),
    #[error("invalid hyperfine level {level}: {reason}")]
    InvalidLevel { level: HyperfineLevel, reason: String },
    #[error("pi transition requires equal m_f, got m_f = {m_a} and m_f = {m_b}")]
    SelectionRule { m_a: i32, m_b: i32 },
    #[error("Zeeman formula leaves its validity range at B = {b_gauss} G (negative radicand)")]
    Domain { b_gauss: f64 },
    #[error("no magnetic-field-insensitive point in [{lo_gauss}, {hi_gauss}] G: the transition slope does not change sign")]
    MagicNotFound { lo_gauss: f64, hi_gauss: f64 },
    #[error(transparent)]
    Unit(#[from] UnitError),
}

/// Lambda-doublet parity label. The e manifold lies below f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    E,
    F,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::E => "e",
            Parity::F => "f",
        })
    }
}

/// Doublet constants. `j` is half-odd-integer; hyperfine splittings keep
/// their signs (negative = inverted ordering), both quoted in MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaDoubletSpec {
    j: f64,
    de_hf_f_mhz: f64,
    de_hf_e_mhz: f64,
    g_f: f64,
    g_e: f64,
    doublet_splitting_mhz: f64,
    transition_dipole_debye: f64,
}

impl LambdaDoubletSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        j: f64,
        de_hf_f: Quantity,
        de_hf_e: Quantity,
        g_f: f64,
        g_e: f64,
        doublet_splitting: Quantity,
        transition_dipole: Quantity,
    ) -> Result<Self, DoubletError> {
        let two_j = 2.0 * j;
        if !(j > 0.0) || two_j.fract() != 0.0 || (two_j as i64) % 2 == 0 {
            return Err(DoubletError::InvalidSpec(format!(
                "j must be a positive half-odd-integer, got {j}"
            )));
        }
        if !(g_f > 0.0 && g_e > 0.0) {
            return Err(DoubletError::InvalidSpec("g factors must be positive".into()));
        }
        let spec = LambdaDoubletSpec {
            j,
            de_hf_f_mhz: de_hf_f.convert(Unit::Megahertz)?.value(),
            de_hf_e_mhz: de_hf_e.convert(Unit::Megahertz)?.value(),
            g_f,
            g_e,
            doublet_splitting_mhz: doublet_splitting.convert(Unit::Megahertz)?.value(),
            transition_dipole_debye: transition_dipole.convert(Unit::Debye)?.value(),
        };
        if spec.de_hf_f_mhz == 0.0 || spec.de_hf_e_mhz == 0.0 {
            return Err(DoubletError::InvalidSpec(
                "hyperfine splittings must be nonzero".into(),
            ));
        }
        Ok(spec)
    }

    /// Built-in CH 2Pi_3/2 constants.
    pub fn ch() -> Self {
        let ch = &crate::species::builtin().ch;
        LambdaDoubletSpec::new(
            ch.j,
            Quantity::megahertz(ch.de_hf_f_mhz),
            Quantity::megahertz(ch.de_hf_e_mhz),
            ch.g_f,
            ch.g_e,
            Quantity::megahertz(ch.doublet_splitting_mhz),
            Quantity::debye(ch.transition_dipole_debye),
        )
        .expect("built-in CH constants are valid")
    }

    pub fn with_g_factors(mut self, g_f: f64, g_e: f64) -> Result<Self, DoubletError> {
        if !(g_f > 0.0 && g_e > 0.0) {
            return Err(DoubletError::InvalidSpec("g factors must be positive".into()));
        }
        self.g_f = g_f;
        self.g_e = g_e;
        Ok(self)
    }

    pub fn with_hyperfine_splittings(
        mut self,
        de_hf_f: Quantity,
        de_hf_e: Quantity,
    ) -> Result<Self, DoubletError> {
        self.de_hf_f_mhz = de_hf_f.convert(Unit::Megahertz)?.value();
        self.de_hf_e_mhz = de_hf_e.convert(Unit::Megahertz)?.value();
        if self.de_hf_f_mhz == 0.0 || self.de_hf_e_mhz == 0.0 {
            return Err(DoubletError::InvalidSpec(
                "hyperfine splittings must be nonzero".into(),
            ));
        }
        Ok(self)
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn g_factor(&self, parity: Parity) -> f64 {
        match parity {
            Parity::E => self.g_e,
            Parity::F => self.g_f,
        }
    }

    pub fn hyperfine_splitting_mhz(&self, parity: Parity) -> f64 {
        match parity {
            Parity::E => self.de_hf_e_mhz,
            Parity::F => self.de_hf_f_mhz,
        }
    }

    pub fn doublet_splitting(&self) -> Quantity {
        Quantity::megahertz(self.doublet_splitting_mhz)
    }

    pub fn transition_dipole(&self) -> Quantity {
        Quantity::debye(self.transition_dipole_debye)
    }

    fn f_low(&self) -> u32 {
        (self.j - 0.5).round() as u32
    }

    fn f_high(&self) -> u32 {
        (self.j + 0.5).round() as u32
    }

    fn validate_level(&self, level: &HyperfineLevel) -> Result<(), DoubletError> {
        if level.f_qn != self.f_low() && level.f_qn != self.f_high() {
            return Err(DoubletError::InvalidLevel {
                level: *level,
                reason: format!(
                    "F must be {} or {} for j = {}",
                    self.f_low(),
                    self.f_high(),
                    self.j
                ),
            });
        }
        if level.m_f.unsigned_abs() > level.f_qn {
            return Err(DoubletError::InvalidLevel {
                level: *level,
                reason: "|m_f| exceeds F".into(),
            });
        }
        Ok(())
    }
}

/// One hyperfine Zeeman level of the doublet, identified by parity, total F
/// (electronic J coupled to nuclear spin 1/2) and its projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperfineLevel {
    pub parity: Parity,
    pub f_qn: u32,
    pub m_f: i32,
}

impl HyperfineLevel {
    pub fn new(parity: Parity, f_qn: u32, m_f: i32) -> Self {
        HyperfineLevel { parity, f_qn, m_f }
    }

    /// Energy relative to the parity manifold's hyperfine centroid, in MHz.
    pub fn energy_at(&self, spec: &LambdaDoubletSpec, b: Quantity) -> Result<Quantity, DoubletError> {
        zeeman_energy(spec, self.parity, self.f_qn, self.m_f, b)
    }
}

impl fmt::Display for HyperfineLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|F={},m={},{}>", self.f_qn, self.m_f, self.parity)
    }
}

/// Two-level Zeeman energy in MHz. `sign` is +1 or -1 for the upper or
/// lower branch of the square root. The radicand is non-negative for every
/// |m_f| <= j + 1/2; values below -1e-12 signal leaving the formula's
/// validity range, tiny negatives are rounding and clamp to zero.
fn branch_energy_mhz(
    de_mhz: f64,
    g: f64,
    two_j_plus_1: f64,
    m_f: f64,
    b_gauss: f64,
    sign: f64,
) -> Result<f64, DoubletError> {
    let mu = BOHR_MAGNETON_MHZ_PER_GAUSS * g * b_gauss;
    let radicand = 1.0 - 4.0 * mu * m_f / (de_mhz * two_j_plus_1) + (mu / de_mhz).powi(2);
    if radicand < -1e-12 {
        return Err(DoubletError::Domain { b_gauss });
    }
    Ok(-de_mhz / (2.0 * two_j_plus_1)
        + mu * m_f
        + sign * (de_mhz.abs() / 2.0) * radicand.max(0.0).sqrt())
}

/// Branch sign of the square root: + for F = J - 1/2 in the e manifold and
/// F = J + 1/2 in the f manifold, - otherwise.
fn branch_sign(spec: &LambdaDoubletSpec, parity: Parity, f_qn: u32) -> f64 {
    let plus = match parity {
        Parity::E => f_qn == spec.f_low(),
        Parity::F => f_qn == spec.f_high(),
    };
    if plus {
        1.0
    } else {
        -1.0
    }
}

/// Hyperfine Zeeman energy of |parity, F, m_F> at field `b`, relative to the
/// parity manifold's centroid, in MHz.
pub fn zeeman_energy(
    spec: &LambdaDoubletSpec,
    parity: Parity,
    f_qn: u32,
    m_f: i32,
    b: Quantity,
) -> Result<Quantity, DoubletError> {
    let level = HyperfineLevel::new(parity, f_qn, m_f);
    spec.validate_level(&level)?;
    let b_gauss = b.convert(Unit::Gauss)?.value();
    if !(b_gauss >= 0.0) {
        return Err(DoubletError::Domain { b_gauss });
    }
    let e = branch_energy_mhz(
        spec.hyperfine_splitting_mhz(parity),
        spec.g_factor(parity),
        2.0 * spec.j + 1.0,
        m_f as f64,
        b_gauss,
        branch_sign(spec, parity, f_qn),
    )?;
    Ok(Quantity::megahertz(e))
}

/// Signed pi-transition frequency from `a` to `b`: the f manifold sits
/// `doublet_splitting` above e, so for a in e and b in f this is
/// doublet_splitting + E_b - E_a. Requires m_f(a) = m_f(b).
pub fn transition_frequency(
    spec: &LambdaDoubletSpec,
    level_a: &HyperfineLevel,
    level_b: &HyperfineLevel,
    b: Quantity,
) -> Result<Quantity, DoubletError> {
    if level_a.m_f != level_b.m_f {
        return Err(DoubletError::SelectionRule {
            m_a: level_a.m_f,
            m_b: level_b.m_f,
        });
    }
    let offset = |parity: Parity| match parity {
        Parity::E => 0.0,
        Parity::F => spec.doublet_splitting_mhz,
    };
    let ea = level_a.energy_at(spec, b)?.value();
    let eb = level_b.energy_at(spec, b)?.value();
    Ok(Quantity::megahertz(
        offset(level_b.parity) + eb - (offset(level_a.parity) + ea),
    ))
}

/// Finite-difference step for transition slopes, in G.
const SLOPE_STEP_GAUSS: f64 = 1e-3;
/// Bracket march step for the magic-field search, in G.
const MARCH_STEP_GAUSS: f64 = 1e-2;
/// Bisection convergence width, in G.
const MAGIC_TOLERANCE_GAUSS: f64 = 1e-4;

/// d(nu)/dB in MHz/G by central finite difference with a 1 mG step.
pub fn transition_slope_mhz_per_gauss(
    spec: &LambdaDoubletSpec,
    level_a: &HyperfineLevel,
    level_b: &HyperfineLevel,
    b_gauss: f64,
) -> Result<f64, DoubletError> {
    let nu = |b: f64| -> Result<f64, DoubletError> {
        Ok(transition_frequency(spec, level_a, level_b, Quantity::gauss(b))?.value())
    };
    let hi = nu(b_gauss + SLOPE_STEP_GAUSS)?;
    let lo = nu(b_gauss - SLOPE_STEP_GAUSS)?;
    Ok((hi - lo) / (2.0 * SLOPE_STEP_GAUSS))
}

/// Locates the field where d(nu)/dB vanishes: marches `b_range` in 10 mG
/// steps to bracket a sign change of the finite-difference slope, then
/// bisects to 0.1 mG. Returns the bracketing failure as its own error so a
/// missing magic point is distinguishable from a solver fault.
pub fn find_magic_field(
    spec: &LambdaDoubletSpec,
    level_a: &HyperfineLevel,
    level_b: &HyperfineLevel,
    b_range: (Quantity, Quantity),
) -> Result<Quantity, DoubletError> {
    let lo_gauss = b_range.0.convert(Unit::Gauss)?.value();
    let hi_gauss = b_range.1.convert(Unit::Gauss)?.value();
    if !(lo_gauss >= SLOPE_STEP_GAUSS) || !(hi_gauss > lo_gauss) {
        return Err(DoubletError::InvalidSpec(format!(
            "field range [{lo_gauss}, {hi_gauss}] G must be increasing and start at or above the {SLOPE_STEP_GAUSS} G derivative step"
        )));
    }
    let slope = |b: f64| transition_slope_mhz_per_gauss(spec, level_a, level_b, b);

    let mut b_prev = lo_gauss;
    let mut s_prev = slope(b_prev)?;
    let mut bracket = None;
    while b_prev < hi_gauss {
        let b_next = (b_prev + MARCH_STEP_GAUSS).min(hi_gauss);
        let s_next = slope(b_next)?;
        if s_prev == 0.0 {
            return Ok(Quantity::gauss(b_prev));
        }
        if s_prev * s_next <= 0.0 {
            bracket = Some((b_prev, s_prev, b_next));
            break;
        }
        b_prev = b_next;
        s_prev = s_next;
    }
    let (mut lo, s_lo, mut hi) = bracket.ok_or(DoubletError::MagicNotFound { lo_gauss, hi_gauss })?;

    let sign_lo = s_lo.signum();
    while hi - lo > MAGIC_TOLERANCE_GAUSS {
        let mid = 0.5 * (lo + hi);
        let s_mid = slope(mid)?;
        if s_mid == 0.0 {
            return Ok(Quantity::gauss(mid));
        }
        if s_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Quantity::gauss(0.5 * (lo + hi)))
}
