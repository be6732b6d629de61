//! `shift-scan`: Rydberg-excitation-line shift and rotational mixing per
//! molecular J over a uniform separation grid. Rows are computed in
//! parallel and emitted in grid order, so the bytes do not depend on the
//! thread count.

use rayon::prelude::*;
use serde_json::json;

use rydmol::rotor::{shift_row, RigidRotorSpec};
use rydmol::rydberg::{solve_radial, GridSpec, RydbergLevel};
use rydmol::{Quantity, Unit};

use super::{pick, Context};
use crate::cli::ShiftScanArgs;
use crate::config::OutputFormat;
use crate::error::CliError;
use crate::output::{Cell, Table};

pub fn run(ctx: &Context, args: &ShiftScanArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.shift_scan;
    let species = ctx.config.species.resolve();
    let n = pick(args.n, cfg.n, 50);
    let l = pick(args.l, cfg.l, 0);
    let default_defect = if l == 0 { species.rb.defect_s } else { 0.0 };
    let defect = pick(args.defect, cfg.defect, default_defect);
    let r_min_nm = pick(args.r_min_nm, cfg.r_min_nm, 60.0);
    let r_max_nm = pick(args.r_max_nm, cfg.r_max_nm, 250.0);
    let points = pick(args.points, cfg.points, 100);
    let j_max = pick(args.j_max, cfg.j_max, 8);
    let j_report = pick(args.j_report, cfg.j_report, 3);

    if points < 2 {
        return Err(CliError::Usage(format!(
            "separation grid needs at least 2 points, got {points}"
        )));
    }
    if !(r_min_nm > 0.0 && r_max_nm > r_min_nm) {
        return Err(CliError::Usage(format!(
            "separation range [{r_min_nm}, {r_max_nm}] nm is empty"
        )));
    }

    let spec = RigidRotorSpec::new(
        Quantity::gigahertz(species.krb.b_rot_ghz),
        Quantity::new(species.krb.d0_au, Unit::AtomicDipole),
        j_max,
    )?;
    if j_report >= spec.reported_states() {
        return Err(CliError::Usage(format!(
            "j_report {j_report} exceeds the trustworthy J range of a j_max {j_max} basis (highest reported J is {})",
            spec.reported_states() - 1
        )));
    }

    let level = RydbergLevel::new(n, l, defect)?;
    let wf = solve_radial(level, GridSpec::for_level(&level))?;

    let r_nm_grid: Vec<f64> = (0..points)
        .map(|i| r_min_nm + (r_max_nm - r_min_nm) * i as f64 / (points - 1) as f64)
        .collect();
    let rows: Vec<(Vec<f64>, Vec<f64>)> = ctx.pool.install(|| {
        r_nm_grid
            .par_iter()
            .map(|&r_nm| shift_row(&spec, &wf, Quantity::nanometers(r_nm).to_au()))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut columns = vec!["r_nm".to_string()];
    for j in 0..=j_report {
        columns.push(format!("shift_j{j}_mhz"));
        columns.push(format!("mixing_j{j}"));
    }
    let mut table = Table::new(columns);
    for (r_nm, (shifts, mixing)) in r_nm_grid.iter().zip(&rows) {
        let mut row = vec![Cell::Num(*r_nm)];
        for j in 0..=j_report {
            row.push(Cell::Num(shifts[j]));
            row.push(Cell::Num(mixing[j]));
        }
        table.push(row);
    }

    let sink = ctx.sink(OutputFormat::Csv);
    let resolved = json!({
        "command": "shift-scan",
        "species": species,
        "n": n,
        "l": l,
        "defect": defect,
        "r_min_nm": r_min_nm,
        "r_max_nm": r_max_nm,
        "points": points,
        "j_max": j_max,
        "j_report": j_report,
        "output": sink.describe(),
    });
    sink.write_table(&table, ctx.manifest("shift-scan", resolved))
}
