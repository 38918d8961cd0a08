use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use susyqm_cli::config::{
    Command, Convention, Format, GridSpec, Lambda, LameOptions, Options, OutputSpec, PotentialSource, RunConfig,
    UnitsSpec,
};
use susyqm_cli::expr::{constant, param_list};
use susyqm_cli::{output, CliError};

#[derive(Parser)]
#[command(name = "susyqm", version, about = "Supersymmetric quantum mechanics toolkit")]
struct Cli {
    /// Run the JSON configuration in FILE instead of a subcommand.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Args, Default)]
struct SourceArgs {
    /// Catalog entry, e.g. morse, sech2, well.
    #[arg(long)]
    potential: Option<String>,
    /// Parameters as NAME=VALUE,... (values may be expressions like pi/2).
    #[arg(long)]
    params: Option<String>,
    /// Inline superpotential W(x).
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    w: Option<String>,
    /// Left wall of an inline W.
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<String>,
    /// Right wall of an inline W.
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<String>,
    /// CSV file with columns x,w.
    #[arg(long, value_name = "FILE")]
    w_file: Option<PathBuf>,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Number of grid points.
    #[arg(long)]
    points: Option<usize>,
    /// Solver box as LO,HI.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long)]
    hbar: Option<f64>,
    /// Twice the mass.
    #[arg(long)]
    mass2: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file (directory for `figures`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample W and the partner potentials, or a hierarchy member.
    Partner {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Member s of the Hamiltonian hierarchy (catalog entries).
        #[arg(long)]
        hierarchy: Option<usize>,
        /// Shift members cumulatively instead of as step partners.
        #[arg(long)]
        cumulative: bool,
    },
    /// Bound-state energies.
    Spectrum {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Reflection and transmission amplitudes.
    Scatter {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Wavenumbers, comma separated.
        #[arg(long, value_delimiter = ',')]
        k: Vec<f64>,
    },
    /// Isospectral deformations of V1.
    Isospectral {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Deformation parameters, comma separated; `inf` for the base.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// WKB and SUSY-WKB levels.
    Swkb {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Band edges and dispersion of periodic potentials.
    Bands {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Lamé order, as `a=N` or `N`.
        #[arg(long)]
        lame: Option<String>,
        /// Elliptic parameter for --lame.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Period of an inline W.
        #[arg(long)]
        period: Option<String>,
        /// Use V2 instead of V1.
        #[arg(long)]
        partner: bool,
        /// Sample the dispersion at this many kL values.
        #[arg(long)]
        dispersion: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Run the verification suite.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the figure data files and a manifest.
    Figures {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn num(field: &str, src: &str) -> Result<f64, CliError> {
    constant(src).map_err(|e| CliError::config(field, e))
}

fn potential(src: SourceArgs, period: Option<f64>) -> Result<Option<PotentialSource>, CliError> {
    let params = match &src.params {
        Some(p) => param_list(p).map_err(|e| CliError::config("--params", e))?,
        None => BTreeMap::new(),
    };
    let wall = |field: &str, v: &Option<String>| -> Result<Option<f64>, CliError> {
        match v.as_deref() {
            None => Ok(None),
            Some(s) => num(field, s).map(|x| x.is_finite().then_some(x)),
        }
    };
    let given = [src.potential.is_some(), src.w.is_some(), src.w_file.is_some()];
    if given.iter().filter(|g| **g).count() > 1 {
        return Err(CliError::config("--potential/--w/--w-file", "give exactly one potential source"));
    }
    Ok(if let Some(name) = src.potential {
        Some(PotentialSource::Catalog { name, params })
    } else if let Some(w) = src.w {
        Some(PotentialSource::Expression {
            w,
            params,
            lo: wall("--lo", &src.lo)?,
            hi: wall("--hi", &src.hi)?,
            period,
        })
    } else {
        src.w_file.map(|path| PotentialSource::File { path, period })
    })
}

fn apply_common(cfg: &mut RunConfig, c: CommonArgs) -> Result<(), CliError> {
    let window = match c.window {
        None => None,
        Some(w) => {
            let (a, b) = w
                .split_once(',')
                .ok_or_else(|| CliError::config("--window", "expected LO,HI"))?;
            Some([num("--window", a.trim())?, num("--window", b.trim())?])
        }
    };
    if c.points.is_some() || window.is_some() {
        cfg.grid = Some(GridSpec {
            points: c.points,
            window,
        });
    }
    if c.hbar.is_some() || c.mass2.is_some() {
        cfg.units = Some(UnitsSpec {
            hbar: c.hbar.unwrap_or(1.0),
            mass2: c.mass2.unwrap_or(1.0),
        });
    }
    if c.format.is_some() || c.out.is_some() {
        cfg.output = Some(OutputSpec {
            format: c.format.map(|f| match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            }),
            path: c.out,
        });
    }
    Ok(())
}

fn lame_order(s: &str) -> Result<u32, CliError> {
    let v = s.strip_prefix("a=").unwrap_or(s);
    v.trim()
        .parse()
        .map_err(|_| CliError::config("--lame", format!("expected a=N, got '{s}'")))
}

fn build(cmd: Cmd) -> Result<RunConfig, CliError> {
    let mut o = Options::default();
    let (command, src, common, period) = match cmd {
        Cmd::Partner {
            src,
            common,
            hierarchy,
            cumulative,
        } => {
            o.hierarchy = hierarchy;
            o.convention = cumulative.then_some(Convention::Cumulative);
            (Command::Partner, src, common, None)
        }
        Cmd::Spectrum { src, common, levels } => {
            o.levels = levels;
            (Command::Spectrum, src, common, None)
        }
        Cmd::Scatter { src, common, k } => {
            o.k = (!k.is_empty()).then_some(k);
            (Command::Scatter, src, common, None)
        }
        Cmd::Isospectral {
            src,
            common,
            lambda,
            levels,
        } => {
            let ls = lambda
                .iter()
                .map(|s| match s.trim() {
                    "inf" | "infinity" => Ok(Lambda::Text("inf".into())),
                    t => num("--lambda", t).map(Lambda::Value),
                })
                .collect::<Result<Vec<_>, _>>()?;
            o.lambda = (!ls.is_empty()).then_some(ls);
            o.levels = levels;
            (Command::Isospectral, src, common, None)
        }
        Cmd::Swkb { src, common, levels } => {
            o.levels = levels;
            (Command::Swkb, src, common, None)
        }
        Cmd::Bands {
            src,
            common,
            lame,
            m,
            period,
            partner,
            dispersion,
            levels,
        } => {
            if let Some(a) = lame {
                let m = m.ok_or_else(|| CliError::config("--m", "required with --lame"))?;
                o.lame = Some(LameOptions {
                    a: lame_order(&a)?,
                    m: num("--m", &m)?,
                });
            }
            o.partner = partner.then_some(true);
            o.dispersion = dispersion;
            o.levels = levels;
            let period = period.map(|p| num("--period", &p)).transpose()?;
            (Command::Bands, src, common, period)
        }
        Cmd::Check { common, seed } => {
            o.seed = seed;
            (Command::Check, SourceArgs::default(), common, None)
        }
        Cmd::Figures { common } => (Command::Figures, SourceArgs::default(), common, None),
    };
    let mut cfg = RunConfig::new(command);
    cfg.potential = potential(src, period)?;
    apply_common(&mut cfg, common)?;
    if o != Options::default() {
        cfg.options = Some(o);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(CliError::Config("--config cannot be combined with a subcommand".into())),
        (None, None) => Err(CliError::Config("a subcommand or --config is required (see --help)".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
                other => other,
            })
        }
        (None, Some(cmd)) => build(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = config(cli).and_then(|cfg| {
        let outcome = susyqm_cli::run(&cfg)?;
        output::emit(&cfg, &outcome)?;
        Ok(outcome.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("susyqm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
