//! Strict TOML run configuration. Unknown keys are rejected, every physical
//! value carries its unit in the key name, and species constants default to
//! the versioned table shipped with the library.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{io_error, CliError};
use rydmol::species::{self, SpeciesData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub species: SpeciesOverrides,
    pub run: RunBlock,
    pub output: OutputBlock,
}

impl RunConfig {
    /// Loads a config file. A missing file is an I/O failure; a schema
    /// violation is a usage failure naming the offending key.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| io_error("cannot read config", path, err))?;
        toml::from_str(&text)
            .map_err(|err| CliError::Usage(format!("config {}: {err}", path.display())))
    }
}

/// Per-species overrides; unset fields keep the shipped defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpeciesOverrides {
    pub krb: KrbOverride,
    pub ch: ChOverride,
    pub rb: RbOverride,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KrbOverride {
    pub b_rot_ghz: Option<f64>,
    pub d0_au: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChOverride {
    pub j: Option<f64>,
    pub de_hf_f_mhz: Option<f64>,
    pub de_hf_e_mhz: Option<f64>,
    pub g_f: Option<f64>,
    pub g_e: Option<f64>,
    pub doublet_splitting_mhz: Option<f64>,
    pub transition_dipole_debye: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RbOverride {
    pub defect_s: Option<f64>,
    pub t_ryd_us: Option<f64>,
}

impl SpeciesOverrides {
    /// Shipped defaults with the configured overrides applied.
    pub fn resolve(&self) -> SpeciesData {
        let mut data = species::builtin().clone();
        if let Some(v) = self.krb.b_rot_ghz {
            data.krb.b_rot_ghz = v;
        }
        if let Some(v) = self.krb.d0_au {
            data.krb.d0_au = v;
        }
        if let Some(v) = self.ch.j {
            data.ch.j = v;
        }
        if let Some(v) = self.ch.de_hf_f_mhz {
            data.ch.de_hf_f_mhz = v;
        }
        if let Some(v) = self.ch.de_hf_e_mhz {
            data.ch.de_hf_e_mhz = v;
        }
        if let Some(v) = self.ch.g_f {
            data.ch.g_f = v;
        }
        if let Some(v) = self.ch.g_e {
            data.ch.g_e = v;
        }
        if let Some(v) = self.ch.doublet_splitting_mhz {
            data.ch.doublet_splitting_mhz = v;
        }
        if let Some(v) = self.ch.transition_dipole_debye {
            data.ch.transition_dipole_debye = v;
        }
        if let Some(v) = self.rb.defect_s {
            data.rb.defect_s = v;
        }
        if let Some(v) = self.rb.t_ryd_us {
            data.rb.t_ryd_us = v;
        }
        data
    }
}

/// Subcommand parameter tables; the active subcommand reads its own block
/// and CLI flags override file values.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunBlock {
    pub shift_scan: ShiftScanParams,
    pub magic_field: MagicFieldParams,
    pub scales: ScalesParams,
    pub gate: GateBlock,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShiftScanParams {
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub defect: Option<f64>,
    pub r_min_nm: Option<f64>,
    pub r_max_nm: Option<f64>,
    pub points: Option<usize>,
    pub j_max: Option<usize>,
    pub j_report: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MagicFieldParams {
    pub from: Option<String>,
    pub to: Option<String>,
    pub b_min_g: Option<f64>,
    pub b_max_g: Option<f64>,
    pub scan_out: Option<PathBuf>,
    pub scan_points: Option<usize>,
    pub scan_b_min_g: Option<f64>,
    pub scan_b_max_g: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScalesParams {
    pub n: Option<u32>,
    pub rabi_khz: Option<f64>,
    pub mu_debye: Option<f64>,
    pub t_gate_us: Option<f64>,
    pub sep_nm: Option<f64>,
    pub a_coeff: Option<f64>,
    pub n_dipole: Option<u32>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateBlock {
    pub blockade_phase: BlockadePhaseParams,
    pub cnot_mol: CnotMolParams,
    pub cnot_atom: CnotAtomParams,
    pub address: AddressParams,
    pub swap: SwapParams,
    pub chain: ChainParams,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlockadePhaseParams {
    pub rabi_mhz: Option<f64>,
    pub v_over_omega: Option<f64>,
    pub t_ryd_us: Option<f64>,
    pub sweep_points: Option<usize>,
    pub v_min_over_omega: Option<f64>,
    pub v_max_over_omega: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CnotMolParams {
    pub stark_shift_mhz: Option<f64>,
    pub omega_mw_khz: Option<f64>,
    pub omega_ryd_mhz: Option<f64>,
    pub shift_csv: Option<PathBuf>,
    pub r_nm: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CnotAtomParams {
    pub state_shift_mhz: Option<f64>,
    pub omega_raman_khz: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AddressParams {
    pub shift_mhz: Option<f64>,
    pub omega_mw_khz: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SwapParams {
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChainParams {
    pub links: Option<usize>,
    pub elementary_fidelity: Option<f64>,
    pub gate_fidelity: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    pub format: Option<OutputFormat>,
    pub path: Option<PathBuf>,
    pub precision: Option<usize>,
}
