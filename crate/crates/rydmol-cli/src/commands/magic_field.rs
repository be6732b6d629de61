//! `magic-field`: locate the field-insensitive point of a Lambda-doublet
//! hyperfine transition and optionally emit a dense nu(B) scan CSV.

use rayon::prelude::*;
use serde_json::json;

use rydmol::doublet::{
    find_magic_field, transition_frequency, transition_slope_mhz_per_gauss, HyperfineLevel,
    LambdaDoubletSpec, Parity,
};
use rydmol::species::ChSpecies;
use rydmol::{Quantity, Unit};

use super::{pick, Context};
use crate::cli::MagicFieldArgs;
use crate::config::OutputFormat;
use crate::error::CliError;
use crate::output::{Cell, Table};

/// "F,mF,parity" with parity e or f, e.g. "2,-1,f".
fn parse_level(text: &str) -> Result<(HyperfineLevel, String), CliError> {
    let bad = |why: &str| {
        CliError::Usage(format!(
            "level '{text}' must be 'F,mF,parity' like '1,1,e' ({why})"
        ))
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad("three comma-separated fields"));
    }
    let f_qn: u32 = parts[0].parse().map_err(|_| bad("F is a non-negative integer"))?;
    let m_f: i32 = parts[1].parse().map_err(|_| bad("mF is an integer"))?;
    let (parity, tag) = match parts[2].to_ascii_lowercase().as_str() {
        "e" => (Parity::E, "e"),
        "f" => (Parity::F, "f"),
        _ => return Err(bad("parity is e or f")),
    };
    Ok((
        HyperfineLevel::new(parity, f_qn, m_f),
        format!("{f_qn},{m_f},{tag}"),
    ))
}

fn doublet_spec(ch: &ChSpecies) -> Result<LambdaDoubletSpec, CliError> {
    Ok(LambdaDoubletSpec::new(
        ch.j,
        Quantity::megahertz(ch.de_hf_f_mhz),
        Quantity::megahertz(ch.de_hf_e_mhz),
        ch.g_f,
        ch.g_e,
        Quantity::megahertz(ch.doublet_splitting_mhz),
        Quantity::debye(ch.transition_dipole_debye),
    )?)
}

pub fn run(ctx: &Context, args: &MagicFieldArgs) -> Result<(), CliError> {
    let cfg = &ctx.config.run.magic_field;
    let species = ctx.config.species.resolve();
    let spec = doublet_spec(&species.ch)?;

    let from_text = pick(args.from.clone(), cfg.from.clone(), "1,1,e".to_string());
    let to_text = pick(args.to.clone(), cfg.to.clone(), "2,1,f".to_string());
    let (from, from_label) = parse_level(&from_text)?;
    let (to, to_label) = parse_level(&to_text)?;
    let b_min_g = pick(args.b_min_g, cfg.b_min_g, 0.1);
    let b_max_g = pick(args.b_max_g, cfg.b_max_g, 10.0);
    if !(b_min_g > 0.0 && b_max_g > b_min_g) {
        return Err(CliError::Usage(format!(
            "search range [{b_min_g}, {b_max_g}] G is empty"
        )));
    }

    let b_star = find_magic_field(
        &spec,
        &from,
        &to,
        (Quantity::gauss(b_min_g), Quantity::gauss(b_max_g)),
    )?;
    let b_star_g = b_star.convert(Unit::Gauss)?.value();
    let nu_mhz = transition_frequency(&spec, &from, &to, b_star)?.value();
    let slope = transition_slope_mhz_per_gauss(&spec, &from, &to, b_star_g)?;

    let transition = format!("{from_label} -> {to_label}");
    let sink = ctx.sink(OutputFormat::Json);
    let scan_out = args.scan_out.clone().or_else(|| cfg.scan_out.clone());
    let scan_points = pick(args.scan_points, cfg.scan_points, 1001);
    let scan_b_min_g = pick(args.scan_b_min_g, cfg.scan_b_min_g, 0.0);
    let scan_b_max_g = pick(args.scan_b_max_g, cfg.scan_b_max_g, 10.0);
    let resolved = json!({
        "command": "magic-field",
        "ch": species.ch,
        "from": from_label,
        "to": to_label,
        "b_min_g": b_min_g,
        "b_max_g": b_max_g,
        "scan_out": scan_out.as_ref().map(|p| p.display().to_string()),
        "scan_points": scan_points,
        "scan_b_min_g": scan_b_min_g,
        "scan_b_max_g": scan_b_max_g,
        "output": sink.describe(),
    });

    if let Some(scan_path) = scan_out {
        if scan_points < 2 {
            return Err(CliError::Usage(format!(
                "scan grid needs at least 2 points, got {scan_points}"
            )));
        }
        if !(scan_b_min_g >= 0.0 && scan_b_max_g > scan_b_min_g) {
            return Err(CliError::Usage(format!(
                "scan range [{scan_b_min_g}, {scan_b_max_g}] G is empty"
            )));
        }
        let grid: Vec<f64> = (0..scan_points)
            .map(|i| {
                scan_b_min_g
                    + (scan_b_max_g - scan_b_min_g) * i as f64 / (scan_points - 1) as f64
            })
            .collect();
        let nus: Vec<f64> = ctx.pool.install(|| {
            grid.par_iter()
                .map(|&b| {
                    transition_frequency(&spec, &from, &to, Quantity::gauss(b))
                        .map(|q| q.value())
                })
                .collect::<Result<Vec<_>, _>>()
        })?;
        let mut scan_table = Table::new(vec!["b_g".into(), "nu_mhz".into()]);
        for (b, nu) in grid.iter().zip(&nus) {
            scan_table.push(vec![Cell::Num(*b), Cell::Num(*nu)]);
        }
        let scan_sink = crate::output::Sink {
            format: OutputFormat::Csv,
            path: Some(scan_path),
            precision: sink.precision,
        };
        scan_sink.write_table(&scan_table, ctx.manifest("magic-field", resolved.clone()))?;
    }

    let manifest = ctx.manifest("magic-field", resolved);
    match sink.format {
        OutputFormat::Json => sink.write_document(
            &json!({
                "transition": transition,
                "b_star_g": b_star_g,
                "nu_at_b_star_mhz": nu_mhz,
                "slope_at_b_star_mhz_per_g": slope,
            }),
            manifest,
        ),
        OutputFormat::Csv => {
            let mut table = Table::new(vec![
                "transition".into(),
                "b_star_g".into(),
                "nu_at_b_star_mhz".into(),
                "slope_at_b_star_mhz_per_g".into(),
            ]);
            table.push(vec![
                Cell::Text(transition),
                Cell::Num(b_star_g),
                Cell::Num(nu_mhz),
                Cell::Num(slope),
            ]);
            sink.write_table(&table, manifest)
        }
    }
}
