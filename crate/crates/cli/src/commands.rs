//! One function per subcommand. Each returns a table plus diagnostics;
//! nothing here writes to disk except [`figures`].

use rayon::prelude::*;
use serde_json::{json, Value};

use susyqm::eigen::bound_states;
use susyqm::isospectral::{conserved_charges, deformed_family, pursey_abraham_moses, IsoFamily};
use susyqm::periodic::{
    classify_pair, dispersion, lame1_superpotential, lame_partner, numeric_band_edges, self_isospectral_classify,
    zero_mode_check, BandBoundary, BandEdge, LameSpec, PeriodTag, PeriodicSuperpotential, ZeroMode,
};
use susyqm::scattering::{asymptotic_levels, numeric_rt};
use susyqm::sip::{HierarchyConvention, SipEntry};
use susyqm::susy::partner_potentials;
use susyqm::swkb::{exactness_audit, quantize, QuantizationMode, QuantizationProblem};
use susyqm::{Error, Grid, PotentialOnGrid, SampledFunction, Superpotential};

use crate::config::{Command, Convention, Lambda, RunConfig};
use crate::error::{CliError, Op};
use crate::output::{Cell, Outcome, Table};
use crate::source::{resolve, Source};

pub const PARTNER_POINTS: usize = 801;
pub const SPECTRUM_POINTS: usize = 4001;
pub const SCATTER_POINTS: usize = 8001;
pub const ISO_POINTS: usize = 4001;
pub const BAND_INTERVALS: usize = 256;
const DEFAULT_LEVELS: usize = 5;
const DEFAULT_K: [f64; 3] = [0.5, 1.0, 2.0];
const DEFAULT_ISO_LEVELS: usize = 3;

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let src = resolve(cfg)?;
    let need = || src.as_ref().expect("validated: potential present");
    match cfg.subcommand {
        Command::Partner => partner(cfg, need()),
        Command::Spectrum => spectrum(cfg, need()),
        Command::Scatter => scatter(cfg, need()),
        Command::Isospectral => isospectral(cfg, need()),
        Command::Swkb => swkb(cfg, need()),
        Command::Bands => bands(cfg, src.as_ref()),
        Command::Check => Ok(crate::suite::check(cfg.opts().seed.unwrap_or(crate::suite::DEFAULT_SEED))),
        Command::Figures => crate::figures::figures(cfg),
    }
}

fn grid_diag(out: &mut Outcome, grid: &Grid) {
    out.diag(
        "grid",
        json!({"lo": grid.x_min(), "hi": grid.x_max(), "points": grid.len(), "spacing": grid.spacing()}),
    );
}

fn partner(cfg: &RunConfig, src: &Source) -> Result<Outcome, CliError> {
    let grid = src.grid(cfg, PARTNER_POINTS)?;
    let o = cfg.opts();
    if let (Some(s), Source::Catalog(entry)) = (o.hierarchy, src) {
        let conv = match o.convention.unwrap_or(Convention::Step) {
            Convention::Step => HierarchyConvention::StepPartner,
            Convention::Cumulative => HierarchyConvention::Cumulative,
        };
        let v = entry.hierarchy_potential(s, &grid, conv).op("hierarchy potential")?;
        let mut t = Table::new(["x".to_string(), format!("V{s}")]);
        for (x, y) in grid.points().zip(v.values()) {
            t.push(vec![x.into(), (*y).into()]);
        }
        let mut out = Outcome::new(t);
        grid_diag(&mut out, &grid);
        out.diag("hierarchy", s);
        out.diag(
            "convention",
            if conv == HierarchyConvention::Cumulative { "cumulative" } else { "step" },
        );
        let levels = entry.nth(s).spectrum(DEFAULT_LEVELS - 1).op("hierarchy spectrum")?;
        let shift = v.values()[grid.len() / 2] - entry.nth(s).v1(grid.x(grid.len() / 2));
        out.diag(
            "member_levels",
            levels.energies.iter().map(|e| e + shift).collect::<Vec<_>>(),
        );
        return Ok(out);
    }
    let w = src.superpotential();
    let pair = partner_potentials(&w, &grid).op("partner potentials")?;
    let mut t = Table::new(["x", "W", "V1", "V2"]);
    for (i, x) in grid.points().enumerate() {
        t.push(vec![x.into(), w.w(x).into(), pair.v1.values()[i].into(), pair.v2.values()[i].into()]);
    }
    let mut out = Outcome::new(t);
    grid_diag(&mut out, &grid);
    out.diag("c", w.units().c());
    Ok(out)
}

fn levels(cfg: &RunConfig) -> usize {
    cfg.opts().levels.unwrap_or(DEFAULT_LEVELS)
}

fn spectrum(cfg: &RunConfig, src: &Source) -> Result<Outcome, CliError> {
    let grid = src.grid(cfg, SPECTRUM_POINTS)?;
    let want = levels(cfg);
    let mut t = Table::new(["n", "energy"]);
    let mut out;
    match src {
        Source::Catalog(entry) => {
            let s = entry.spectrum(want - 1).op("closed-form spectrum")?;
            for (n, e) in s.energies.iter().enumerate() {
                t.push(vec![n.into(), (*e).into()]);
            }
            let numeric = bound_states(&entry.v1_on_grid(&grid).op("potential sampling")?, s.energies.len())
                .op("numeric spectrum")?;
            let dev = numeric
                .energies()
                .iter()
                .zip(&s.energies)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            out = Outcome::new(t);
            out.diag("source", "closed form");
            out.diag("truncated", s.truncated);
            out.diag("numeric", numeric.energies());
            out.diag("max_numeric_deviation", dev);
        }
        Source::Inline { w, .. } => {
            let v = partner_potentials(w, &grid).op("partner potentials")?.v1;
            let s = bound_states(&v, want).op("numeric spectrum")?;
            for (n, e) in s.energies().iter().enumerate() {
                t.push(vec![n.into(), (*e).into()]);
            }
            out = Outcome::new(t);
            out.diag("source", "numeric");
            out.diag("truncated", s.truncated);
            out.diag("nodes", s.levels.iter().map(|l| l.nodes).collect::<Vec<_>>());
            out.diag("continuum_edge", s.continuum_edge);
            out.diag("max_edge_leakage", s.max_edge_leakage);
        }
    }
    grid_diag(&mut out, &grid);
    Ok(out)
}

fn scatter(cfg: &RunConfig, src: &Source) -> Result<Outcome, CliError> {
    let grid = src.grid(cfg, SCATTER_POINTS)?;
    let w = src.superpotential();
    let v = partner_potentials(&w, &grid).op("partner potentials")?.v1;
    let (vl, vr) = asymptotic_levels(&v).op("asymptotic levels")?;
    let ks = cfg.opts().k.unwrap_or_else(|| DEFAULT_K.to_vec());
    let kin = w.units().kinetic();
    let amps: Vec<_> = ks
        .par_iter()
        .map(|k| numeric_rt(&v, vl + kin * k * k))
        .collect::<Result<_, _>>()
        .op("scattering amplitudes")?;
    let mut t = Table::new(["k", "re_r", "im_r", "re_t", "im_t", "abs_r2", "abs_t2"]);
    for (k, a) in ks.iter().zip(&amps) {
        t.push(vec![
            (*k).into(),
            a.r_amp.re.into(),
            a.r_amp.im.into(),
            a.t_amp.re.into(),
            a.t_amp.im.into(),
            a.reflection().into(),
            a.t_amp.norm_sqr().into(),
        ]);
    }
    let mut out = Outcome::new(t);
    grid_diag(&mut out, &grid);
    out.diag("v_minus", vl);
    out.diag("v_plus", vr);
    out.diag("k_prime", amps.iter().map(|a| a.k_prime).collect::<Vec<_>>());
    out.diag(
        "max_flux_defect",
        amps.iter().map(|a| a.flux_defect().abs()).fold(0.0, f64::max),
    );
    Ok(out)
}

/// One member of an isospectral family on the family grid. The ground
/// state is `None` for the Pursey and Abraham-Moses limits.
pub struct Member {
    pub label: String,
    pub lambda: f64,
    pub v: PotentialOnGrid,
    pub psi0: Option<SampledFunction>,
}

pub fn family_members(base: &Superpotential, grid: &Grid, lambdas: &[Lambda]) -> Result<Vec<Member>, CliError> {
    let fam = IsoFamily::new(base.clone(), grid, 1.0).op("isospectral family")?;
    lambdas
        .par_iter()
        .map(|l| {
            let lambda = l.value()?;
            let (v, psi0) = if lambda.is_infinite() {
                let v = partner_potentials(base, grid).op("partner potentials")?.v1;
                (v, Some(fam.psi0().clone()))
            } else if lambda == 0.0 || lambda == -1.0 {
                let (p, am) = pursey_abraham_moses(&fam).op("Pursey/Abraham-Moses limit")?;
                (if lambda == 0.0 { p } else { am }, None)
            } else {
                let d = deformed_family(&fam.with_lambda(lambda).op("isospectral family")?)
                    .op("deformed family")?;
                (d.v_hat, Some(d.psi0_hat))
            };
            Ok(Member {
                label: l.label(),
                lambda,
                v,
                psi0,
            })
        })
        .collect()
}

pub fn default_lambdas() -> Vec<Lambda> {
    vec![
        Lambda::Value(0.5),
        Lambda::Value(1.0),
        Lambda::Value(5.0),
        Lambda::Text("inf".into()),
    ]
}

fn isospectral(cfg: &RunConfig, src: &Source) -> Result<Outcome, CliError> {
    let grid = src.grid(cfg, ISO_POINTS)?;
    let base = src.superpotential();
    let o = cfg.opts();
    let lambdas = o.lambda.clone().unwrap_or_else(default_lambdas);
    let count = o.levels.unwrap_or(DEFAULT_ISO_LEVELS);
    let members = family_members(&base, &grid, &lambdas)?;
    let mut cols = vec!["x".to_string()];
    for m in &members {
        cols.push(format!("V[{}]", m.label));
        cols.push(format!("psi0[{}]", m.label));
    }
    let mut t = Table::new(cols);
    for (i, x) in grid.points().enumerate() {
        let mut row: Vec<Cell> = vec![x.into()];
        for m in &members {
            row.push(m.v.values()[i].into());
            row.push(m.psi0.as_ref().map_or(f64::NAN, |p| p.values()[i]).into());
        }
        t.push(row);
    }
    let per: Vec<Value> = members
        .par_iter()
        .map(|m| {
            let levels = bound_states(&m.v, count).op("numeric spectrum")?.energies();
            let charges = if m.lambda.is_finite() && m.lambda != 0.0 && m.lambda != -1.0 {
                IsoFamily::new(base.clone(), &grid, m.lambda)
                    .and_then(|f| conserved_charges(&f))
                    .ok()
            } else {
                None
            };
            Ok(json!({
                "lambda": m.label,
                "levels": levels,
                "q1": charges.map(|c| c.0),
                "q2": charges.map(|c| c.1),
            }))
        })
        .collect::<Result<_, CliError>>()?;
    let mut out = Outcome::new(t);
    grid_diag(&mut out, &grid);
    out.diag("members", per);
    Ok(out)
}

fn swkb(cfg: &RunConfig, src: &Source) -> Result<Outcome, CliError> {
    let want = levels(cfg);
    let mut out;
    match src {
        Source::Catalog(entry) => {
            let rows = exactness_audit(std::slice::from_ref(entry), want - 1).op("SWKB audit")?;
            let mut t = Table::new(["n", "exact", "wkb", "swkb", "wkb_rel_err", "swkb_rel_err"]);
            for r in &rows {
                let scale = r.exact.abs().max(1.0);
                t.push(vec![
                    r.n.into(),
                    r.exact.into(),
                    r.wkb.unwrap_or(f64::NAN).into(),
                    r.swkb.into(),
                    r.wkb_relative_error().unwrap_or(f64::NAN).into(),
                    ((r.swkb - r.exact).abs() / scale).into(),
                ]);
            }
            out = Outcome::new(t);
            out.diag("swkb_exact", rows.iter().all(|r| r.swkb_ok()));
        }
        Source::Inline { w, .. } => {
            let sw = QuantizationProblem::from_superpotential(w, QuantizationMode::SwkbV1);
            let wk = QuantizationProblem::from_superpotential(w, QuantizationMode::Wkb);
            let grid = src.grid(cfg, SPECTRUM_POINTS)?;
            let numeric = bound_states(&partner_potentials(w, &grid).op("partner potentials")?.v1, want)
                .op("numeric spectrum")?
                .energies();
            let mut t = Table::new(["n", "numeric", "wkb", "swkb"]);
            for (n, e) in numeric.iter().enumerate() {
                let s = match quantize(&sw, n) {
                    Ok(s) => s,
                    Err(Error::AboveThreshold { .. }) if n > 0 => break,
                    Err(e) => return Err(e).op("SWKB quantization"),
                };
                t.push(vec![n.into(), (*e).into(), quantize(&wk, n).unwrap_or(f64::NAN).into(), s.into()]);
            }
            out = Outcome::new(t);
            grid_diag(&mut out, &grid);
        }
    }
    Ok(out)
}

fn edge_row(i: usize, e: &BandEdge) -> Vec<Cell> {
    vec![
        i.into(),
        e.energy.into(),
        match e.period_tag {
            PeriodTag::L => "L",
            PeriodTag::TwoL => "2L",
        }
        .into(),
        e.nodes_per_l.into(),
        match e.boundary {
            BandBoundary::Bottom => "bottom",
            BandBoundary::Top => "top",
            BandBoundary::ContinuumBottom => "continuum",
        }
        .into(),
    ]
}

fn edges_json(edges: &[BandEdge]) -> Value {
    edges.iter().map(|e| e.energy).collect::<Vec<_>>().into()
}

fn bands(cfg: &RunConfig, src: Option<&Source>) -> Result<Outcome, CliError> {
    let o = cfg.opts();
    let intervals = cfg.points().map_or(BAND_INTERVALS, |p| p - 1);
    let partner = o.partner.unwrap_or(false);
    let mut diags: Vec<(&str, Value)> = vec![("intervals", intervals.into())];
    let (v, edges) = if let Some(l) = o.lame {
        let spec = LameSpec::new(l.a, l.m).op("Lame potential")?;
        let count = 2 * l.a as usize + 1;
        let v = if !partner {
            spec.potential(intervals).op("Lame potential")?
        } else if l.a == 1 {
            let w = lame1_superpotential(l.m).op("Lame superpotential")?;
            diags.push(("shift", (-l.m).into()));
            w.partners(intervals).op("partner potentials")?.1
        } else {
            let p = lame_partner(l.m).op("Lame superpotential")?;
            diags.push(("shift", (-p.shift).into()));
            let rel = classify_pair(|x| p.v1(x), |x| p.v2(x), spec.period());
            diags.push(("self_isospectral", rel.is_self_isospectral().into()));
            p.w.partners(intervals).op("partner potentials")?.1
        };
        let mut edges = numeric_band_edges(&v, count).op("band edges")?;
        if let Some(last) = edges.last_mut() {
            last.boundary = BandBoundary::ContinuumBottom;
        }
        if !partner && l.a <= 2 {
            let exact = spec.analytic_band_edges().op("analytic band edges")?;
            let dev = exact
                .iter()
                .zip(&edges)
                .map(|(a, b)| (a.energy - b.energy).abs())
                .fold(0.0, f64::max);
            diags.push(("analytic_edges", edges_json(&exact)));
            diags.push(("max_analytic_deviation", dev.into()));
        }
        diags.push(("period", spec.period().into()));
        (v, edges)
    } else {
        let Some(Source::Inline { w, period: Some(period) }) = src else {
            unreachable!("validated: periodic inline source")
        };
        let pw = PeriodicSuperpotential::new(w.clone(), *period).op("periodic superpotential")?;
        let (v1, v2) = pw.partners(intervals).op("partner potentials")?;
        diags.push(("phi_l", pw.phi_l().into()));
        let unbroken = zero_mode_check(&pw) == ZeroMode::Unbroken;
        diags.push(("susy", if unbroken { "unbroken" } else { "broken" }.into()));
        if unbroken {
            let kind = self_isospectral_classify(&pw).op("self-isospectrality test")?;
            diags.push(("self_isospectral", format!("{kind:?}").into()));
        }
        diags.push(("period", (*period).into()));
        let v = if partner { v2 } else { v1 };
        let edges = numeric_band_edges(&v, levels(cfg)).op("band edges")?;
        (v, edges)
    };
    let table = if let Some(samples) = o.dispersion {
        let nb = edges.len().div_ceil(2);
        let d = dispersion(&v, nb, samples).op("dispersion")?;
        let mut cols = vec!["kL".to_string()];
        cols.extend((0..nb).map(|b| format!("E{b}")));
        let mut t = Table::new(cols);
        for (kl, es) in d {
            let mut row: Vec<Cell> = vec![kl.into()];
            row.extend(es.into_iter().take(nb).map(Cell::from));
            t.push(row);
        }
        diags.push(("edges", edges_json(&edges)));
        t
    } else {
        let mut t = Table::new(["index", "energy", "period", "nodes", "boundary"]);
        for (i, e) in edges.iter().enumerate() {
            t.push(edge_row(i, e));
        }
        t
    };
    let mut out = Outcome::new(table);
    for (k, v) in diags {
        out.diag(k, v);
    }
    Ok(out)
}

/// The well of width `π`, the reference system for the figures.
pub fn well() -> SipEntry {
    SipEntry::lookup("well", &[]).expect("default well is admissible")
}
