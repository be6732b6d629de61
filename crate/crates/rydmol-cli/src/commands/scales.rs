//! `scales`: closed-form interaction scales as a (quantity, value, unit)
//! table. The giant-dipole row is repeated in a.u., Debye, and kilodebye.

use serde_json::json;

use rydmol::scales::{
    ddi_blockade_radius, direct_ddi_strength, gate_range, rydberg_molecule_dipole,
    vdw_blockade_radius,
};
use rydmol::{Quantity, Unit};

use super::{pick, Context};
use crate::cli::ScalesArgs;
use crate::config::OutputFormat;
use crate::error::CliError;
use crate::output::{Cell, Table};

pub fn run(ctx: &Context, args: &ScalesArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.scales;
    let n = pick(args.n, cfg.n, 50);
    let rabi_khz = pick(args.rabi_khz, cfg.rabi_khz, 100.0);
    let mu_debye = pick(args.mu_debye, cfg.mu_debye, 1.0);
    let t_gate_us = pick(args.t_gate_us, cfg.t_gate_us, 1.0);
    let sep_nm = pick(args.sep_nm, cfg.sep_nm, 100.0);
    let a_coeff = pick(args.a_coeff, cfg.a_coeff, 0.6);
    let n_dipole = pick(args.n_dipole, cfg.n_dipole, 25);

    let omega = Quantity::new(rabi_khz, Unit::Kilohertz);
    let mu = Quantity::debye(mu_debye);
    let dipole = rydberg_molecule_dipole(a_coeff, n_dipole)?;
    let rows: Vec<(&str, f64, &str)> = vec![
        (
            "vdw_blockade_radius",
            vdw_blockade_radius(n, omega)?.convert(Unit::Micrometer)?.value(),
            "um",
        ),
        (
            "ddi_blockade_radius",
            ddi_blockade_radius(n, omega)?.convert(Unit::Micrometer)?.value(),
            "um",
        ),
        (
            "gate_range",
            gate_range(mu, Quantity::microseconds(t_gate_us))?
                .convert(Unit::Nanometer)?
                .value(),
            "nm",
        ),
        (
            "direct_ddi_strength",
            direct_ddi_strength(mu, Quantity::nanometers(sep_nm))?
                .convert(Unit::RadiansPerSecond)?
                .value(),
            "rad/s",
        ),
        (
            "rydberg_molecule_dipole",
            dipole.convert(Unit::AtomicDipole)?.value(),
            "a.u.",
        ),
        (
            "rydberg_molecule_dipole",
            dipole.convert(Unit::Debye)?.value(),
            "D",
        ),
        (
            "rydberg_molecule_dipole",
            dipole.convert(Unit::Kilodebye)?.value(),
            "kD",
        ),
    ];

    let mut table = Table::new(vec!["quantity".into(), "value".into(), "unit".into()]);
    for (quantity, value, unit) in rows {
        table.push(vec![
            Cell::Text(quantity.to_string()),
            Cell::Num(value),
            Cell::Text(unit.to_string()),
        ]);
    }

    let sink = ctx.sink(OutputFormat::Csv);
    let resolved = json!({
        "command": "scales",
        "n": n,
        "rabi_khz": rabi_khz,
        "mu_debye": mu_debye,
        "t_gate_us": t_gate_us,
        "sep_nm": sep_nm,
        "a_coeff": a_coeff,
        "n_dipole": n_dipole,
        "output": sink.describe(),
    });
    sink.write_table(&table, ctx.manifest("scales", resolved))
}
