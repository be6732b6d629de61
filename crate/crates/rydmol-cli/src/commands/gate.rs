//! `gate`: protocol simulations. Single runs emit the gate record as JSON
//! (or a metric/value table under csv); the blockade sweep and the swap
//! table are tabular in both formats.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::Path;

use rydmol::engine::{
    addressing_crosstalk, blockade_phase_gate, cnot_atom_target, cnot_molecule_target,
    entanglement_swap, repeater_chain, sample_outcome, CompositeSystem, Decay, GateResult,
    ProductSwapModel, PureState, SwapOutcome,
};
use rydmol::{Quantity, Unit};

use super::{pick, Context};
use crate::cli::{
    AddressArgs, BlockadePhaseArgs, ChainArgs, CnotAtomArgs, CnotMolArgs, GateCommand, SwapArgs,
};
use crate::config::OutputFormat;
use crate::error::{io_error, CliError};
use crate::output::{Cell, Table};

pub fn run(ctx: &Context, command: &GateCommand) -> Result<(), CliError> {
    match command {
        GateCommand::BlockadePhase(args) => blockade_phase(ctx, args),
        GateCommand::CnotMol(args) => cnot_mol(ctx, args),
        GateCommand::CnotAtom(args) => cnot_atom(ctx, args),
        GateCommand::Address(args) => address(ctx, args),
        GateCommand::Swap(args) => swap(ctx, args),
        GateCommand::Chain(args) => chain(ctx, args),
    }
}

/// Scalar view of a gate record for csv output.
fn summary_table(result: &GateResult) -> Table {
    let mut table = Table::new(vec!["metric".into(), "value".into()]);
    table.push(vec![
        Cell::Text("fidelity".into()),
        Cell::Num(result.fidelity),
    ]);
    table.push(vec![
        Cell::Text("leakage".into()),
        Cell::Num(result.leakage),
    ]);
    table.push(vec![
        Cell::Text("survival".into()),
        Cell::Num(result.survival),
    ]);
    for (name, value) in &result.metrics {
        table.push(vec![Cell::Text(name.clone()), Cell::Num(*value)]);
    }
    for (label, phase) in result.basis_labels.iter().zip(&result.conditional_phases) {
        table.push(vec![
            Cell::Text(format!("conditional_phase_{label}")),
            Cell::Num(*phase),
        ]);
    }
    table
}

fn write_gate_result(ctx: &Context, command: &str, resolved: Value, result: &GateResult) -> Result<(), CliError> {
    let sink = ctx.sink(OutputFormat::Json);
    let manifest = ctx.manifest(command, resolved);
    match sink.format {
        OutputFormat::Json => sink.write_document(&result.to_json(), manifest),
        OutputFormat::Csv => sink.write_table(&summary_table(result), manifest),
    }
}

fn blockade_phase(ctx: &Context, args: &BlockadePhaseArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.blockade_phase;
    let rabi_mhz = pick(args.rabi_mhz, cfg.rabi_mhz, 1.0);
    let t_ryd_us = args.t_ryd_us.or(cfg.t_ryd_us);
    if let Some(us) = t_ryd_us {
        if !(us > 0.0) {
            return Err(CliError::Usage(format!(
                "Rydberg lifetime must be positive, got {us} us"
            )));
        }
    }
    let decay = t_ryd_us.map(|us| Decay::rydberg(Quantity::rad_per_s(1.0 / (us * 1e-6))));
    let omega = Quantity::megahertz(rabi_mhz);
    let sweep_points = args.sweep_points.or(cfg.sweep_points);

    match sweep_points {
        Some(points) => {
            if points < 2 {
                return Err(CliError::Usage(format!(
                    "sweep needs at least 2 points, got {points}"
                )));
            }
            let lo = pick(args.v_min_over_omega, cfg.v_min_over_omega, 1e1);
            let hi = pick(args.v_max_over_omega, cfg.v_max_over_omega, 1e6);
            if !(lo > 0.0 && hi > lo) {
                return Err(CliError::Usage(format!(
                    "sweep range [{lo}, {hi}] is empty"
                )));
            }
            let ratios: Vec<f64> = (0..points)
                .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
                .collect();
            let rows: Vec<[f64; 5]> = ctx.pool.install(|| {
                ratios
                    .par_iter()
                    .map(|&ratio| {
                        blockade_phase_gate(
                            omega,
                            omega,
                            Quantity::megahertz(rabi_mhz * ratio),
                            decay.as_ref(),
                        )
                        .map(|r| {
                            [
                                ratio,
                                r.nonlocal_phase().unwrap_or(f64::NAN),
                                r.fidelity,
                                r.leakage,
                                r.survival,
                            ]
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let mut table = Table::new(vec![
                "v_over_omega".into(),
                "nonlocal_phase_rad".into(),
                "fidelity".into(),
                "leakage".into(),
                "survival".into(),
            ]);
            for row in rows {
                table.push(row.iter().map(|v| Cell::Num(*v)).collect());
            }
            let sink = ctx.sink(OutputFormat::Csv);
            let resolved = json!({
                "command": "gate blockade-phase",
                "rabi_mhz": rabi_mhz,
                "t_ryd_us": t_ryd_us,
                "sweep_points": points,
                "v_min_over_omega": lo,
                "v_max_over_omega": hi,
                "output": sink.describe(),
            });
            sink.write_table(&table, ctx.manifest("gate blockade-phase", resolved))
        }
        None => {
            let v_over_omega = pick(args.v_over_omega, cfg.v_over_omega, 1e6);
            let result = blockade_phase_gate(
                omega,
                omega,
                Quantity::megahertz(rabi_mhz * v_over_omega),
                decay.as_ref(),
            )?;
            let sink = ctx.sink(OutputFormat::Json);
            let resolved = json!({
                "command": "gate blockade-phase",
                "rabi_mhz": rabi_mhz,
                "t_ryd_us": t_ryd_us,
                "v_over_omega": v_over_omega,
                "output": sink.describe(),
            });
            write_gate_result(ctx, "gate blockade-phase", resolved, &result)
        }
    }
}

/// J1-minus-J0 line shift at the grid row nearest `r_nm`; the file must be
/// a shift-scan table. A missing file is an I/O failure, a present but
/// malformed one a usage failure.
fn differential_shift_from_scan(path: &Path, r_nm: f64) -> Result<f64, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|err| io_error("cannot read shift table", path, err))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Usage(format!("shift table {} is empty", path.display())))?;
    let columns: Vec<&str> = header.split(',').collect();
    let index_of = |name: &str| {
        columns.iter().position(|c| *c == name).ok_or_else(|| {
            CliError::Usage(format!(
                "shift table {} lacks column {name}; run shift-scan with csv output first",
                path.display()
            ))
        })
    };
    let r_col = index_of("r_nm")?;
    let j0_col = index_of("shift_j0_mhz")?;
    let j1_col = index_of("shift_j1_mhz")?;

    let mut best: Option<(f64, f64)> = None;
    for (number, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let cell = |col: usize| -> Result<f64, CliError> {
            fields
                .get(col)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "shift table {} row {}: column {} is not a number",
                        path.display(),
                        number + 2,
                        col + 1
                    ))
                })
        };
        let r = cell(r_col)?;
        let shift = cell(j1_col)? - cell(j0_col)?;
        let distance = (r - r_nm).abs();
        if best.is_none_or(|(closest, _)| distance < closest) {
            best = Some((distance, shift));
        }
    }
    best.map(|(_, shift)| shift).ok_or_else(|| {
        CliError::Usage(format!("shift table {} has no data rows", path.display()))
    })
}

fn cnot_mol(ctx: &Context, args: &CnotMolArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.cnot_mol;
    let omega_mw = Quantity::new(pick(args.omega_mw_khz, cfg.omega_mw_khz, 100.0), Unit::Kilohertz);
    let omega_ryd = Quantity::megahertz(pick(args.omega_ryd_mhz, cfg.omega_ryd_mhz, 1.0));
    let shift_csv = args.shift_csv.clone().or_else(|| cfg.shift_csv.clone());
    let (stark_shift_mhz, shift_source) = match &shift_csv {
        Some(path) => {
            let r_nm = pick(args.r_nm, cfg.r_nm, 100.0);
            (
                differential_shift_from_scan(path, r_nm)?,
                json!({"shift_csv": path.display().to_string(), "r_nm": r_nm}),
            )
        }
        None => (
            pick(args.stark_shift_mhz, cfg.stark_shift_mhz, 1.0),
            json!("parameter"),
        ),
    };
    let result = cnot_molecule_target(
        Quantity::megahertz(stark_shift_mhz),
        omega_mw,
        omega_ryd,
    )?;
    let sink = ctx.sink(OutputFormat::Json);
    let resolved = json!({
        "command": "gate cnot-mol",
        "stark_shift_mhz": stark_shift_mhz,
        "shift_source": shift_source,
        "omega_mw_khz": omega_mw.value(),
        "omega_ryd_mhz": omega_ryd.value(),
        "output": sink.describe(),
    });
    write_gate_result(ctx, "gate cnot-mol", resolved, &result)
}

fn cnot_atom(ctx: &Context, args: &CnotAtomArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.cnot_atom;
    let state_shift_mhz = pick(args.state_shift_mhz, cfg.state_shift_mhz, 1.0);
    let omega_raman_khz = pick(args.omega_raman_khz, cfg.omega_raman_khz, 100.0);
    let result = cnot_atom_target(
        Quantity::megahertz(state_shift_mhz),
        Quantity::new(omega_raman_khz, Unit::Kilohertz),
    )?;
    let sink = ctx.sink(OutputFormat::Json);
    let resolved = json!({
        "command": "gate cnot-atom",
        "state_shift_mhz": state_shift_mhz,
        "omega_raman_khz": omega_raman_khz,
        "output": sink.describe(),
    });
    write_gate_result(ctx, "gate cnot-atom", resolved, &result)
}

fn address(ctx: &Context, args: &AddressArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.address;
    let shift_mhz = pick(args.shift_mhz, cfg.shift_mhz, 5.0);
    let omega_mw_khz = pick(args.omega_mw_khz, cfg.omega_mw_khz, 100.0);
    let crosstalk = addressing_crosstalk(
        Quantity::megahertz(shift_mhz),
        Quantity::new(omega_mw_khz, Unit::Kilohertz),
    )?;
    let sink = ctx.sink(OutputFormat::Json);
    let resolved = json!({
        "command": "gate address",
        "shift_mhz": shift_mhz,
        "omega_mw_khz": omega_mw_khz,
        "output": sink.describe(),
    });
    let manifest = ctx.manifest("gate address", resolved);
    match sink.format {
        OutputFormat::Json => sink.write_document(
            &json!({
                "protocol": "address",
                "shift_mhz": shift_mhz,
                "omega_mw_khz": omega_mw_khz,
                "crosstalk": crosstalk,
            }),
            manifest,
        ),
        OutputFormat::Csv => {
            let mut table = Table::new(vec![
                "shift_mhz".into(),
                "omega_mw_khz".into(),
                "crosstalk".into(),
            ]);
            table.push(vec![
                Cell::Num(shift_mhz),
                Cell::Num(omega_mw_khz),
                Cell::Num(crosstalk),
            ]);
            sink.write_table(&table, manifest)
        }
    }
}

/// Overlap of the heralded two-qubit state with the Bell state of the given
/// relative sign.
fn bell_fidelity(outcome: &SwapOutcome) -> (&'static str, f64) {
    let sign = if outcome.outcome.0 == outcome.outcome.1 {
        1.0
    } else {
        -1.0
    };
    let x = outcome.post_state.amplitude(0);
    let y = outcome.post_state.amplitude(3);
    let overlap = ((x + y * sign) / Complex64::new(std::f64::consts::SQRT_2, 0.0)).norm_sqr();
    let label = if sign > 0.0 { "phi_plus" } else { "phi_minus" };
    (label, overlap)
}

fn swap(ctx: &Context, args: &SwapArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.swap;
    let samples = pick(args.samples, cfg.samples, 0);

    let system = CompositeSystem::new(&[
        ("q1", &["0", "1"]),
        ("q2", &["0", "1"]),
        ("q3", &["0", "1"]),
        ("q4", &["0", "1"]),
    ])?;
    let mut amps = vec![Complex64::ZERO; 16];
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[system.compose(&[0, 0, 0, 0])] = a;
    amps[system.compose(&[1, 1, 0, 0])] = a;
    let input = PureState::from_amplitudes(system, amps)?;
    let outcomes = entanglement_swap(&input)?;

    let mut counts = vec![0u64; outcomes.len()];
    let effective_seed = if samples > 0 {
        let seed = ctx.seed.unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let drawn = sample_outcome(&outcomes, &mut rng)?;
            let index = outcomes
                .iter()
                .position(|o| o.label() == drawn.label())
                .expect("sampled outcome is one of the listed outcomes");
            counts[index] += 1;
        }
        Some(seed)
    } else {
        ctx.seed
    };

    let mut columns = vec![
        "outcome".to_string(),
        "probability".to_string(),
        "heralded_state".to_string(),
        "bell_fidelity".to_string(),
    ];
    if samples > 0 {
        columns.push("sampled_count".to_string());
    }
    let mut table = Table::new(columns);
    for (outcome, count) in outcomes.iter().zip(&counts) {
        let (label, fidelity) = bell_fidelity(outcome);
        let mut row = vec![
            Cell::Text(outcome.label()),
            Cell::Num(outcome.probability),
            Cell::Text(label.to_string()),
            Cell::Num(fidelity),
        ];
        if samples > 0 {
            row.push(Cell::Int(*count));
        }
        table.push(row);
    }

    let sink = ctx.sink(OutputFormat::Csv);
    let resolved = json!({
        "command": "gate swap",
        "samples": samples,
        "seed": effective_seed,
        "output": sink.describe(),
    });
    let mut manifest = ctx.manifest("gate swap", resolved);
    manifest.seed = effective_seed;
    sink.write_table(&table, manifest)
}

fn chain(ctx: &Context, args: &ChainArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.gate.chain;
    let links = pick(args.links, cfg.links, 4);
    let elementary_fidelity = pick(args.elementary_fidelity, cfg.elementary_fidelity, 0.95);
    let gate_fidelity = pick(args.gate_fidelity, cfg.gate_fidelity, 0.99);
    let final_fidelity = repeater_chain(
        links,
        elementary_fidelity,
        &ProductSwapModel { gate_fidelity },
    )?;
    let sink = ctx.sink(OutputFormat::Json);
    let resolved = json!({
        "command": "gate chain",
        "links": links,
        "elementary_fidelity": elementary_fidelity,
        "gate_fidelity": gate_fidelity,
        "output": sink.describe(),
    });
    let manifest = ctx.manifest("gate chain", resolved);
    match sink.format {
        OutputFormat::Json => sink.write_document(
            &json!({
                "protocol": "chain",
                "links": links,
                "elementary_fidelity": elementary_fidelity,
                "gate_fidelity": gate_fidelity,
                "final_fidelity": final_fidelity,
            }),
            manifest,
        ),
        OutputFormat::Csv => {
            let mut table = Table::new(vec![
                "links".into(),
                "elementary_fidelity".into(),
                "gate_fidelity".into(),
                "final_fidelity".into(),
            ]);
            table.push(vec![
                Cell::Int(links as u64),
                Cell::Num(elementary_fidelity),
                Cell::Num(gate_fidelity),
                Cell::Num(final_fidelity),
            ]);
            sink.write_table(&table, manifest)
        }
    }
}
