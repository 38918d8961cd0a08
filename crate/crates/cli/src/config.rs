//! The JSON run configuration. Flags are translated into the same type.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Partner,
    Spectrum,
    Scatter,
    Isospectral,
    Swkb,
    Bands,
    Check,
    Figures,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Partner => "partner",
            Command::Spectrum => "spectrum",
            Command::Scatter => "scatter",
            Command::Isospectral => "isospectral",
            Command::Swkb => "swkb",
            Command::Bands => "bands",
            Command::Check => "check",
            Command::Figures => "figures",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

/// Exactly one way of specifying `W`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum PotentialSource {
    Catalog {
        name: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        params: BTreeMap<String, f64>,
    },
    /// `W(x)` in the expression grammar. A finite `lo`/`hi` is a wall.
    Expression {
        w: String,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        params: BTreeMap<String, f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lo: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hi: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<f64>,
    },
    /// CSV with header `x,w` on a uniform grid.
    File {
        path: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSpec {
    pub hbar: f64,
    pub mass2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Step,
    Cumulative,
}

/// A deformation parameter: a number or `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lambda {
    Value(f64),
    Text(String),
}

impl Lambda {
    pub fn value(&self) -> Result<f64, CliError> {
        let v = match self {
            Lambda::Value(v) => *v,
            Lambda::Text(s) => match s.trim() {
                "inf" | "infinity" | "Inf" => f64::INFINITY,
                t => t
                    .parse()
                    .map_err(|_| CliError::config("options.lambda", format!("'{t}' is not a number")))?,
            },
        };
        let ok = v == f64::INFINITY || !(-1.0..=0.0).contains(&v) || v == 0.0 || v == -1.0;
        if v.is_nan() || !ok {
            return Err(CliError::config(
                "options.lambda",
                format!("{v} is singular; need lambda > 0, lambda < -1, 0, -1 or inf"),
            ));
        }
        Ok(v)
    }

    pub fn label(&self) -> String {
        match self.value() {
            Ok(v) if v.is_infinite() => "inf".into(),
            Ok(v) => format!("{v}"),
            Err(_) => "?".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LameOptions {
    pub a: u32,
    pub m: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<Convention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Lambda>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lame: Option<LameOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(subcommand: Command) -> Self {
        Self {
            subcommand,
            potential: None,
            grid: None,
            units: None,
            output: None,
            options: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn opts(&self) -> Options {
        self.options.clone().unwrap_or_default()
    }

    pub fn format(&self) -> Format {
        self.output.as_ref().and_then(|o| o.format).unwrap_or_default()
    }

    pub fn points(&self) -> Option<usize> {
        self.grid.as_ref().and_then(|g| g.points)
    }

    pub fn window(&self) -> Option<(f64, f64)> {
        self.grid.as_ref().and_then(|g| g.window).map(|w| (w[0], w[1]))
    }

    pub fn is_unit_system(&self) -> bool {
        self.units.is_none_or(|u| u.hbar == 1.0 && u.mass2 == 1.0)
    }

    /// Schema-level checks that need no numerics beyond catalog constraints.
    pub fn validate(&self) -> Result<(), CliError> {
        use Command::*;
        let o = self.opts();
        match (self.subcommand, &self.potential) {
            (Check | Figures, Some(_)) => {
                return Err(CliError::config("potential", format!("not accepted by {}", self.subcommand.name())))
            }
            (Bands, p) => match (o.lame, p) {
                (Some(_), Some(_)) => return Err(CliError::config("potential", "give either options.lame or a potential")),
                (None, None) => return Err(CliError::config("potential", "bands needs options.lame or a periodic potential")),
                (None, Some(PotentialSource::Catalog { .. })) => {
                    return Err(CliError::config("potential.catalog", "catalog entries are not periodic"))
                }
                (None, Some(PotentialSource::Expression { period: None, .. } | PotentialSource::File { period: None, .. })) => {
                    return Err(CliError::config("potential.period", "bands needs a period"))
                }
                _ => {}
            },
            (Partner | Spectrum | Scatter | Isospectral | Swkb, None) => {
                return Err(CliError::config("potential", format!("required by {}", self.subcommand.name())))
            }
            _ => {}
        }
        if let Some(u) = self.units {
            if !(u.hbar > 0.0 && u.hbar.is_finite() && u.mass2 > 0.0 && u.mass2.is_finite()) {
                return Err(CliError::config("units", "hbar and mass2 must be positive"));
            }
        }
        if let Some(PotentialSource::Catalog { name, params }) = &self.potential {
            if !self.is_unit_system() {
                return Err(CliError::config("units", "catalog entries are defined for hbar = 2m = 1"));
            }
            crate::source::catalog_entry(name, params)?;
        }
        if let Some(PotentialSource::Expression { w, params, lo, hi, period }) = &self.potential {
            crate::expr::Expression::parse(w, params, true).map_err(|e| CliError::config("potential.expression.w", e))?;
            if let (Some(a), Some(b)) = (lo, hi) {
                if !(a < b) {
                    return Err(CliError::config("potential.expression", "need lo < hi"));
                }
            }
            if period.is_some_and(|p| !(p > 0.0 && p.is_finite())) {
                return Err(CliError::config("potential.expression.period", "must be positive"));
            }
        }
        if let Some(g) = &self.grid {
            if g.points.is_some_and(|n| n < 8) {
                return Err(CliError::config("grid.points", "need at least 8"));
            }
            if let Some([a, b]) = g.window {
                if !(a < b && a.is_finite() && b.is_finite()) {
                    return Err(CliError::config("grid.window", "need finite lo < hi"));
                }
            }
        }
        if o.levels == Some(0) {
            return Err(CliError::config("options.levels", "must be at least 1"));
        }
        if let Some(s) = o.hierarchy {
            if s == 0 {
                return Err(CliError::config("options.hierarchy", "members are numbered from 1"));
            }
            if !matches!(self.potential, Some(PotentialSource::Catalog { .. })) {
                return Err(CliError::config("options.hierarchy", "needs a catalog entry"));
            }
        }
        if let Some(ks) = &o.k {
            if ks.is_empty() || ks.iter().any(|k| !(*k > 0.0 && k.is_finite())) {
                return Err(CliError::config("options.k", "need positive wavenumbers"));
            }
        }
        if let Some(ls) = &o.lambda {
            if ls.is_empty() {
                return Err(CliError::config("options.lambda", "empty list"));
            }
            for l in ls {
                l.value()?;
            }
        }
        if let Some(l) = o.lame {
            susyqm::periodic::LameSpec::new(l.a, l.m).map_err(|e| CliError::config("options.lame", e))?;
            if o.partner == Some(true) && l.a > 2 {
                return Err(CliError::config("options.partner", "partners are built for a = 1 and a = 2 only"));
            }
        }
        if o.dispersion.is_some_and(|d| d < 2) {
            return Err(CliError::config("options.dispersion", "need at least 2 samples"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_exactly() {
        let text = r#"{"subcommand":"isospectral","potential":{"catalog":{"name":"oscillator","params":{"omega":2.0}}},"grid":{"points":2001,"window":[-8.0,8.0]},"output":{"format":"json"},"options":{"lambda":[0.5,"inf",1.0]}}"#;
        let cfg = RunConfig::from_json(text).unwrap();
        assert_eq!(serde_json::to_string(&cfg).unwrap(), text);
    }

    #[test]
    fn schema_errors_name_the_place() {
        let e = RunConfig::from_json("{\"subcommand\":\"spectrum\",\n\"grid\":{\"pts\":3}}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("pts") && msg.contains("line 2"), "{msg}");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn semantic_errors() {
        let bad = [
            r#"{"subcommand":"spectrum"}"#,
            r#"{"subcommand":"check","potential":{"catalog":{"name":"well"}}}"#,
            r#"{"subcommand":"spectrum","potential":{"catalog":{"name":"morse","params":{"B":-1}}}}"#,
            r#"{"subcommand":"spectrum","potential":{"catalog":{"name":"well"}},"units":{"hbar":2,"mass2":1}}"#,
            r#"{"subcommand":"isospectral","potential":{"catalog":{"name":"oscillator"}},"options":{"lambda":[-0.5]}}"#,
            r#"{"subcommand":"bands","options":{"lame":{"a":1,"m":1.5}}}"#,
            r#"{"subcommand":"partner","potential":{"expression":{"w":"y"}}}"#,
        ];
        for b in bad {
            assert_eq!(RunConfig::from_json(b).unwrap_err().exit_code(), 2, "{b}");
        }
    }
}
