//! Plot-ready tables for the four figures and a manifest tying files to
//! figure numbers.

use std::path::PathBuf;

use serde_json::json;

use susyqm::eigen::bound_states;
use susyqm::sip::SipEntry;
use susyqm::susy::partner_potentials;
use susyqm::Grid;

use crate::commands::{family_members, well};
use crate::config::{Lambda, RunConfig};
use crate::error::{CliError, Op};
use crate::output::{Cell, Outcome, Table, OUT_DIR_VAR};

const LEVELS: usize = 5;
const WELL_POINTS: usize = 2001;
const CURVE_POINTS: usize = 201;
/// Family grid for the oscillator figures and the half-width actually
/// written out.
const FAMILY_GRID: (f64, f64, usize) = (-8.0, 8.0, 1601);
const FAMILY_SHOWN: f64 = 5.0;

pub fn out_dir(cfg: &RunConfig) -> PathBuf {
    cfg.output
        .as_ref()
        .and_then(|o| o.path.clone())
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("figures"))
}

/// Levels of the well and its partner, closed form and numeric.
fn fig1() -> Result<Table, CliError> {
    let e = well();
    let grid = e.grid(WELL_POINTS).op("grid construction")?;
    let pair = partner_potentials(&e.superpotential(), &grid).op("partner potentials")?;
    let n1 = bound_states(&pair.v1, LEVELS).op("numeric spectrum")?.energies();
    let n2 = bound_states(&pair.v2, LEVELS).op("numeric spectrum")?.energies();
    let mut t = Table::new(["n", "E1", "E2", "E1_numeric", "E2_numeric"]);
    for n in 0..LEVELS {
        t.push(vec![
            n.into(),
            e.energy(n).into(),
            e.energy(n + 1).into(),
            n1[n].into(),
            n2[n].into(),
        ]);
    }
    Ok(t)
}

/// `V = 0` and `V = 2 cosec²x` on `(0, π)` with their ground states.
fn fig2() -> Result<Table, CliError> {
    let e = well();
    let grid = e.grid(CURVE_POINTS).op("grid construction")?;
    let w = e.superpotential();
    let shift = -e.v1(grid.x(CURVE_POINTS / 2));
    let psi1 = e.eigenfunction(0, &grid).op("ground state")?;
    let psi2 = e.step().eigenfunction(0, &grid).op("ground state")?;
    let mut t = Table::new(["x", "V1", "V2", "psi1_0", "psi2_0"]);
    for i in 1..CURVE_POINTS - 1 {
        let x = grid.x(i);
        t.push(vec![
            x.into(),
            (w.v1(x) + shift).into(),
            (w.v2(x) + shift).into(),
            psi1.values()[i].into(),
            psi2.values()[i].into(),
        ]);
    }
    Ok(t)
}

/// Potentials (`with_psi = false`) or ground states of the deformed
/// oscillator family.
fn family_table(lambdas: &[Lambda], with_psi: bool) -> Result<Table, CliError> {
    let base = SipEntry::lookup("oscillator", &[("omega", 2.0)])
        .expect("admissible")
        .superpotential();
    let grid = Grid::new(FAMILY_GRID.0, FAMILY_GRID.1, FAMILY_GRID.2).op("grid construction")?;
    let members = family_members(&base, &grid, lambdas)?;
    let prefix = if with_psi { "psi0" } else { "V" };
    let mut cols = vec!["x".to_string()];
    cols.extend(members.iter().map(|m| format!("{prefix}[{}]", m.label)));
    let mut t = Table::new(cols);
    for (i, x) in grid.points().enumerate() {
        if x.abs() > FAMILY_SHOWN + 1e-12 {
            continue;
        }
        let mut row: Vec<Cell> = vec![x.into()];
        for m in &members {
            let y = if with_psi {
                m.psi0.as_ref().map_or(f64::NAN, |p| p.values()[i])
            } else {
                m.v.values()[i]
            };
            row.push(y.into());
        }
        t.push(row);
    }
    Ok(t)
}

fn lambdas(values: &[f64]) -> Vec<Lambda> {
    values
        .iter()
        .map(|v| if v.is_infinite() { Lambda::Text("inf".into()) } else { Lambda::Value(*v) })
        .collect()
}

pub fn figures(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let dir = out_dir(cfg);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let specs: [(u32, &str, &str); 4] = [
        (1, "fig1_levels.csv", "levels of the width-pi well (E1) and its partner (E2)"),
        (
            2,
            "fig2_well_partners.csv",
            "V = 0 and V = 2 cosec^2 x on (0, pi) with their ground states",
        ),
        (
            3,
            "fig3_isospectral_potentials.csv",
            "deformed oscillator (omega = 2) potentials, lambda = 0 (Pursey), 0.5, 1, 5, inf",
        ),
        (
            4,
            "fig4_isospectral_ground_states.csv",
            "ground states of the same family, lambda = 0.5, 1, 5, inf",
        ),
    ];
    let tables = [
        fig1()?,
        fig2()?,
        family_table(&lambdas(&[0.0, 0.5, 1.0, 5.0, f64::INFINITY]), false)?,
        family_table(&lambdas(&[0.5, 1.0, 5.0, f64::INFINITY]), true)?,
    ];
    let mut listing = Table::new(["figure", "file", "rows"]);
    let mut manifest = Vec::new();
    for ((fig, file, what), t) in specs.iter().zip(&tables) {
        t.write_csv(&dir.join(file))?;
        listing.push(vec![(*fig as usize).into(), (*file).into(), t.rows.len().into()]);
        manifest.push(json!({"figure": fig, "file": file, "description": what, "columns": t.columns}));
    }
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&json!({"version": susyqm::VERSION, "files": manifest}))
        .expect("manifest serializes");
    std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
    let mut out = Outcome::new(listing);
    out.diag("directory", dir.display().to_string());
    Ok(out)
}
