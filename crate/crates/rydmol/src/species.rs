//! Default species parameters, loaded from the versioned `data/species.toml`
//! shipped with the crate. These are configuration values that downstream
//! code (and the CLI config file) may override.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

pub const SPECIES_TOML: &str = include_str!("../data/species.toml");

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesData {
    pub version: String,
    pub krb: KrbSpecies,
    pub ch: ChSpecies,
    pub rb: RbSpecies,
}

/// Rigid-rotor parameters of the molecular qubit.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrbSpecies {
    /// J=0 -> J=1 level spacing in GHz under the J(J+1)/2 diagonal convention.
    pub b_rot_ghz: f64,
    /// Body-fixed permanent dipole, atomic units.
    pub d0_au: f64,
}

/// Lambda-doublet constants of the CH-like magnetic-qubit host.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChSpecies {
    pub j: f64,
    pub de_hf_f_mhz: f64,
    pub de_hf_e_mhz: f64,
    pub g_f: f64,
    pub g_e: f64,
    pub doublet_splitting_mhz: f64,
    pub transition_dipole_debye: f64,
}

/// Rydberg-atom parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbSpecies {
    /// Quantum defect of ns states.
    pub defect_s: f64,
    /// Lifetime budget of the Rydberg state, microseconds.
    pub t_ryd_us: f64,
}

/// The built-in defaults. Panics only if the bundled file is malformed,
/// which the test suite guards against.
pub fn builtin() -> &'static SpeciesData {
    static DATA: OnceLock<SpeciesData> = OnceLock::new();
    DATA.get_or_init(|| toml::from_str(SPECIES_TOML).expect("bundled species.toml is valid"))
}
