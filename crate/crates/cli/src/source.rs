//! Turns the `potential` block of a config into a superpotential.

use std::collections::BTreeMap;
use std::path::Path;

use susyqm::sip::SipEntry;
use susyqm::{Domain, Edge, Grid, SampledFunction, Superpotential, Units};

use crate::config::{PotentialSource, RunConfig};
use crate::error::{CliError, Op};
use crate::expr::Expression;

/// Half-width used for an infinite side of an inline domain.
const DEFAULT_REACH: f64 = 20.0;

pub enum Source {
    Catalog(SipEntry),
    Inline {
        w: Superpotential,
        period: Option<f64>,
    },
}

pub fn catalog_entry(name: &str, params: &BTreeMap<String, f64>) -> Result<SipEntry, CliError> {
    let p: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    SipEntry::lookup(name, &p).map_err(|e| CliError::config("potential.catalog", e))
}

pub fn units(cfg: &RunConfig) -> Result<Units, CliError> {
    match cfg.units {
        None => Ok(Units::default()),
        Some(u) => Units::new(u.hbar, u.mass2).map_err(|e| CliError::config("units", e)),
    }
}

fn read_samples(path: &Path) -> Result<SampledFunction, CliError> {
    let field = "potential.file.path";
    let mut rdr = csv::Reader::from_path(path).map_err(|e| CliError::config(field, e))?;
    let headers = rdr.headers().map_err(|e| CliError::config(field, e))?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "w" {
        return Err(CliError::config(field, "expected header 'x,w'"));
    }
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::config(field, e))?;
        let num = |j: usize| -> Result<f64, CliError> {
            rec[j]
                .trim()
                .parse()
                .map_err(|_| CliError::config(field, format!("row {}: '{}' is not a number", i + 2, &rec[j])))
        };
        xs.push(num(0)?);
        ws.push(num(1)?);
    }
    if xs.len() < 8 {
        return Err(CliError::config(field, "need at least 8 samples"));
    }
    let n = xs.len();
    let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    let uniform = xs
        .iter()
        .enumerate()
        .all(|(i, x)| (x - (xs[0] + i as f64 * h)).abs() <= 1e-9 * h.abs().max(1e-300) * n as f64);
    if !(h > 0.0) || !uniform {
        return Err(CliError::config(field, "x must be increasing and uniformly spaced"));
    }
    let grid = Grid::new(xs[0], xs[n - 1], n).map_err(|e| CliError::config(field, e))?;
    SampledFunction::new(grid, ws).map_err(|e| CliError::config(field, e))
}

/// Builds the source named in `cfg`; `None` for commands without one.
pub fn resolve(cfg: &RunConfig) -> Result<Option<Source>, CliError> {
    let units = units(cfg)?;
    Ok(match &cfg.potential {
        None => None,
        Some(PotentialSource::Catalog { name, params }) => Some(Source::Catalog(catalog_entry(name, params)?)),
        Some(PotentialSource::Expression { w, params, lo, hi, period }) => {
            let e = Expression::parse(w, params, true).map_err(|m| CliError::config("potential.expression.w", m))?;
            let domain = Domain {
                lo: lo.unwrap_or(f64::NEG_INFINITY),
                hi: hi.unwrap_or(f64::INFINITY),
                left: if lo.is_some() { Edge::Wall } else { Edge::Open },
                right: if hi.is_some() { Edge::Wall } else { Edge::Open },
            };
            let w = Superpotential::analytic(domain, move |x| e.eval(x)).with_units(units);
            Some(Source::Inline { w, period: *period })
        }
        Some(PotentialSource::File { path, period }) => {
            let w = Superpotential::sampled(read_samples(path)?).with_units(units);
            Some(Source::Inline { w, period: *period })
        }
    })
}

impl Source {
    pub fn superpotential(&self) -> Superpotential {
        match self {
            Source::Catalog(e) => e.superpotential(),
            Source::Inline { w, .. } => w.clone(),
        }
    }

    /// Default box: the catalog window, or the inline domain with infinite
    /// sides cut at a fixed reach.
    pub fn window(&self) -> (f64, f64) {
        match self {
            Source::Catalog(e) => e.window(),
            Source::Inline { w, .. } => {
                let d = w.domain();
                match (d.lo.is_finite(), d.hi.is_finite()) {
                    (true, true) => (d.lo, d.hi),
                    (true, false) => (d.lo, d.lo + 2.0 * DEFAULT_REACH),
                    (false, true) => (d.hi - 2.0 * DEFAULT_REACH, d.hi),
                    (false, false) => (-DEFAULT_REACH, DEFAULT_REACH),
                }
            }
        }
    }

    pub fn grid(&self, cfg: &RunConfig, default_points: usize) -> Result<Grid, CliError> {
        let (a, b) = cfg.window().unwrap_or_else(|| self.window());
        Grid::new(a, b, cfg.points().unwrap_or(default_points)).op("grid construction")
    }
}
