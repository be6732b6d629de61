//! Flag surface. Every subcommand accepts `--config <file>`; flags override
//! file values, file values override built-in defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "rydmol",
    version,
    about = "Rydberg-atom mediated molecular qubits: shift scans, magic fields, interaction scales, and gate protocols"
)]
pub struct Cli {
    /// TOML run configuration; flags override file values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads for grid sweeps. Output bytes do not depend on this.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Report errors as one-line JSON on stderr.
    #[arg(long, global = true)]
    pub json_errors: bool,

    /// Seed for sampling commands, recorded in the manifest.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output file (default stdout). A `<file>.manifest.json` sidecar is
    /// written alongside any file output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Output format. Defaults to csv for tables and json for gate results.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Significant digits for CSV numbers.
    #[arg(long, global = true)]
    pub precision: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rydberg-line shift and mixing per molecular J over a separation grid.
    ShiftScan(ShiftScanArgs),
    /// Magnetic-field-insensitive point of a Lambda-doublet transition.
    MagicField(MagicFieldArgs),
    /// Closed-form interaction scales: blockade radii, gate range, dipoles.
    Scales(ScalesArgs),
    /// Two-qubit gate and entanglement protocol simulations.
    #[command(subcommand)]
    Gate(GateCommand),
}

#[derive(Debug, Args)]
pub struct ShiftScanArgs {
    /// Principal quantum number of the Rydberg state.
    #[arg(long)]
    pub n: Option<u32>,
    /// Orbital angular momentum of the Rydberg state.
    #[arg(long)]
    pub l: Option<u32>,
    /// Quantum defect; defaults to the species table for l = 0, else 0.
    #[arg(long)]
    pub defect: Option<f64>,
    /// Smallest atom-molecule separation on the grid.
    #[arg(long)]
    pub r_min_nm: Option<f64>,
    /// Largest atom-molecule separation on the grid.
    #[arg(long)]
    pub r_max_nm: Option<f64>,
    /// Grid points, spaced uniformly over [r_min_nm, r_max_nm].
    #[arg(long)]
    pub points: Option<usize>,
    /// Rotor basis truncation.
    #[arg(long)]
    pub j_max: Option<usize>,
    /// Highest J column written to the table.
    #[arg(long)]
    pub j_report: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MagicFieldArgs {
    /// Lower level as "F,mF,parity", e.g. "1,1,e".
    #[arg(long)]
    pub from: Option<String>,
    /// Upper level as "F,mF,parity", e.g. "2,1,f".
    #[arg(long)]
    pub to: Option<String>,
    /// Lower edge of the search bracket.
    #[arg(long)]
    pub b_min_g: Option<f64>,
    /// Upper edge of the search bracket.
    #[arg(long)]
    pub b_max_g: Option<f64>,
    /// Also write a dense nu(B) CSV to this file.
    #[arg(long, value_name = "FILE")]
    pub scan_out: Option<PathBuf>,
    /// Rows in the scan CSV.
    #[arg(long)]
    pub scan_points: Option<usize>,
    /// Lower edge of the scan grid.
    #[arg(long)]
    pub scan_b_min_g: Option<f64>,
    /// Upper edge of the scan grid.
    #[arg(long)]
    pub scan_b_max_g: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScalesArgs {
    /// Principal quantum number for the blockade radii.
    #[arg(long)]
    pub n: Option<u32>,
    /// Excitation Rabi frequency for the blockade radii.
    #[arg(long)]
    pub rabi_khz: Option<f64>,
    /// Molecular dipole for gate range and direct coupling.
    #[arg(long)]
    pub mu_debye: Option<f64>,
    /// Gate duration defining the interaction range row.
    #[arg(long)]
    pub t_gate_us: Option<f64>,
    /// Separation for the direct dipole-dipole coupling row.
    #[arg(long)]
    pub sep_nm: Option<f64>,
    /// Rydberg-molecule mixing amplitude for the giant-dipole row.
    #[arg(long)]
    pub a_coeff: Option<f64>,
    /// Principal quantum number for the giant-dipole row.
    #[arg(long)]
    pub n_dipole: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum GateCommand {
    /// Rydberg-blockade controlled-phase gate; optional v/Omega sweep CSV.
    BlockadePhase(BlockadePhaseArgs),
    /// CNOT with the atom controlling a molecular rotational flip.
    CnotMol(CnotMolArgs),
    /// CNOT with the molecule controlling an effective atomic Raman flip.
    CnotAtom(CnotAtomArgs),
    /// Crosstalk of shift-based addressing on the non-addressed molecule.
    Address(AddressArgs),
    /// Entanglement-swap outcome table for a Bell-pair input.
    Swap(SwapArgs),
    /// Repeater-chain fidelity after hierarchical swapping.
    Chain(ChainArgs),
}

#[derive(Debug, Args)]
pub struct BlockadePhaseArgs {
    /// Rabi frequency of both excitation pulses.
    #[arg(long)]
    pub rabi_mhz: Option<f64>,
    /// Blockade-to-Rabi ratio for a single run.
    #[arg(long)]
    pub v_over_omega: Option<f64>,
    /// Rydberg lifetime; enables decay when set.
    #[arg(long)]
    pub t_ryd_us: Option<f64>,
    /// Log-spaced sweep over v/Omega; writes a curve table instead of a
    /// single gate record.
    #[arg(long)]
    pub sweep_points: Option<usize>,
    /// Lower edge of the sweep.
    #[arg(long)]
    pub v_min_over_omega: Option<f64>,
    /// Upper edge of the sweep.
    #[arg(long)]
    pub v_max_over_omega: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CnotMolArgs {
    /// Conditional Stark shift of the rotational line; ignored when
    /// --shift-csv is given.
    #[arg(long)]
    pub stark_shift_mhz: Option<f64>,
    /// Microwave Rabi frequency on the rotational transition.
    #[arg(long)]
    pub omega_mw_khz: Option<f64>,
    /// Rabi frequency of the Rydberg pi pulses.
    #[arg(long)]
    pub omega_ryd_mhz: Option<f64>,
    /// Take the shift from a prior shift-scan table (J1 minus J0 column at
    /// the row nearest --r-nm).
    #[arg(long, value_name = "FILE")]
    pub shift_csv: Option<PathBuf>,
    /// Separation whose nearest shift-scan row supplies the shift.
    #[arg(long)]
    pub r_nm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CnotAtomArgs {
    /// Molecular-state-conditioned shift of the dressed atomic transition.
    #[arg(long)]
    pub state_shift_mhz: Option<f64>,
    /// Effective Raman Rabi frequency on the atomic qubit.
    #[arg(long)]
    pub omega_raman_khz: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AddressArgs {
    /// Detuning of the non-addressed molecule from the driven line.
    #[arg(long)]
    pub shift_mhz: Option<f64>,
    /// Rabi frequency of the addressing drive.
    #[arg(long)]
    pub omega_mw_khz: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    /// Monte Carlo draws appended as a sampled_count column; 0 disables.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Elementary links in the chain.
    #[arg(long)]
    pub links: Option<usize>,
    /// Fidelity of one elementary entangled pair.
    #[arg(long)]
    pub elementary_fidelity: Option<f64>,
    /// Fidelity of one swap operation.
    #[arg(long)]
    pub gate_fidelity: Option<f64>,
}
