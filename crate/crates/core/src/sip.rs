//! The shape-invariant potential catalog.
//!
//! Every entry is a closed-form superpotential `W(x; a)` whose partners obey
//! `V₂(x; a₁) = V₁(x; a₂) + R(a₁)` with `a₂ = f(a₁)` a translation of one
//! parameter. The spectrum of `V₁` then follows algebraically,
//! `Eₙ = Σ_{k=1}^{n} R(a_k)`, and excited states come from the operator
//! chain `ψₙ(x; a₁) ∝ A†(a₁) ⋯ A†(aₙ) ψ₀(x; a_{n+1})`.
//!
//! All entries use `ħ = 2m = 1`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::numerics::{Grid, SampledFunction};
use crate::potential::PotentialOnGrid;
use crate::susy::{apply_adag, partner_potentials, Domain, Superpotential};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SipKind {
    ShiftedOscillator,
    ThreeDOscillator,
    Coulomb,
    Morse,
    ScarfII,
    RosenMorseII,
    Eckart,
    ScarfI,
    PoschlTeller,
    RosenMorseI,
}

impl SipKind {
    pub const ALL: [SipKind; 10] = [
        SipKind::ShiftedOscillator,
        SipKind::ThreeDOscillator,
        SipKind::Coulomb,
        SipKind::Morse,
        SipKind::ScarfII,
        SipKind::RosenMorseII,
        SipKind::Eckart,
        SipKind::ScarfI,
        SipKind::PoschlTeller,
        SipKind::RosenMorseI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SipKind::ShiftedOscillator => "shifted_oscillator",
            SipKind::ThreeDOscillator => "oscillator_3d",
            SipKind::Coulomb => "coulomb",
            SipKind::Morse => "morse",
            SipKind::ScarfII => "scarf2",
            SipKind::RosenMorseII => "rosen_morse2",
            SipKind::Eckart => "eckart",
            SipKind::ScarfI => "scarf1",
            SipKind::PoschlTeller => "poschl_teller",
            SipKind::RosenMorseI => "rosen_morse1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let key = name.to_ascii_lowercase().replace('-', "_");
        Self::ALL.into_iter().find(|k| k.name() == key)
    }

    /// Parameter names accepted by [`SipParams::set`] for this entry.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            SipKind::ShiftedOscillator => &["omega", "b"],
            SipKind::ThreeDOscillator => &["omega", "l"],
            SipKind::Coulomb => &["e2", "l"],
            _ => &["A", "B", "alpha", "x0"],
        }
    }

    /// Parameters used when none are given; each leaves at least three
    /// bound states.
    pub fn default_params(self) -> SipParams {
        let p = SipParams::default();
        match self {
            SipKind::ShiftedOscillator => SipParams { omega: 2.0, ..p },
            SipKind::ThreeDOscillator => SipParams {
                omega: 2.0,
                l: 1.0,
                ..p
            },
            SipKind::Coulomb => SipParams { e2: 2.0, ..p },
            SipKind::Morse => SipParams {
                a: 3.0,
                b: 1.0,
                ..p
            },
            SipKind::ScarfII => SipParams {
                a: 6.5,
                b: 1.0,
                ..p
            },
            SipKind::RosenMorseII => SipParams {
                a: 7.0,
                b: 2.0,
                ..p
            },
            SipKind::Eckart => SipParams {
                a: 3.0,
                b: 70.0,
                ..p
            },
            SipKind::ScarfI => SipParams {
                a: 2.0,
                b: 1.0,
                ..p
            },
            SipKind::PoschlTeller => SipParams {
                a: 6.5,
                b: 8.5,
                ..p
            },
            SipKind::RosenMorseI => SipParams {
                a: 1.0,
                b: 1.0,
                ..p
            },
        }
    }

    /// Maps four numbers in `[0, 1)` to an admissible parameter set, for
    /// randomised checks.
    pub fn sample_params(self, u: [f64; 4]) -> SipParams {
        let lerp = |t: f64, lo: f64, hi: f64| lo + t * (hi - lo);
        let p = SipParams::default();
        let alpha = lerp(u[2], 0.3, 2.0);
        match self {
            SipKind::ShiftedOscillator => SipParams {
                omega: lerp(u[0], 0.5, 4.0),
                b: lerp(u[1], -1.0, 1.0),
                ..p
            },
            SipKind::ThreeDOscillator => SipParams {
                omega: lerp(u[0], 0.5, 4.0),
                l: libm::floor(u[1] * 5.0),
                ..p
            },
            SipKind::Coulomb => SipParams {
                e2: lerp(u[0], 0.5, 4.0),
                l: libm::floor(u[1] * 5.0),
                ..p
            },
            SipKind::Morse => SipParams {
                a: lerp(u[0], 1.0, 5.0),
                b: lerp(u[1], 0.2, 3.0),
                alpha,
                ..p
            },
            SipKind::ScarfII => SipParams {
                a: lerp(u[0], 0.5, 6.0),
                b: lerp(u[1], -3.0, 3.0),
                alpha,
                ..p
            },
            SipKind::RosenMorseII => {
                let a = lerp(u[0], 1.0, 6.0);
                SipParams {
                    a,
                    b: lerp(u[1], -0.9, 0.9) * a * a,
                    alpha,
                    ..p
                }
            }
            SipKind::Eckart => {
                let a = lerp(u[0], 0.5, 4.0);
                SipParams {
                    a,
                    b: lerp(u[1], 1.2, 5.0) * a * a,
                    alpha,
                    ..p
                }
            }
            SipKind::ScarfI => {
                let a = lerp(u[0], 1.0, 5.0);
                SipParams {
                    a,
                    b: lerp(u[1], -0.9, 0.9) * a,
                    alpha,
                    ..p
                }
            }
            SipKind::PoschlTeller => {
                let a = lerp(u[0], 0.5, 5.0);
                SipParams {
                    a,
                    b: a + lerp(u[1], 0.5, 3.0),
                    alpha,
                    ..p
                }
            }
            SipKind::RosenMorseI => SipParams {
                a: lerp(u[0], 0.5, 5.0),
                b: lerp(u[1], -3.0, 3.0),
                alpha,
                ..p
            },
        }
    }

    fn translatable(self) -> bool {
        !matches!(
            self,
            SipKind::ShiftedOscillator | SipKind::ThreeDOscillator | SipKind::Coulomb
        )
    }
}

/// Parameters of a catalog entry. Each entry reads only the fields it
/// needs (see [`SipKind::param_names`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SipParams {
    pub a: f64,
    /// `B`, or the oscillator offset `b`.
    pub b: f64,
    pub alpha: f64,
    pub omega: f64,
    pub l: f64,
    /// `e²`.
    pub e2: f64,
    /// Translation `W(x − x₀)`; not allowed for the first three entries.
    pub x0: f64,
}

impl Default for SipParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            alpha: 1.0,
            omega: 1.0,
            l: 0.0,
            e2: 1.0,
            x0: 0.0,
        }
    }
}

impl SipParams {
    pub fn set(&mut self, kind: SipKind, name: &str, value: f64) -> Result<()> {
        if !kind.param_names().contains(&name) {
            return Err(Error::Unknown(format!(
                "parameter '{name}' for {}",
                kind.name()
            )));
        }
        match name {
            "A" => self.a = value,
            "B" | "b" => self.b = value,
            "alpha" => self.alpha = value,
            "omega" => self.omega = value,
            "l" => self.l = value,
            "e2" => self.e2 = value,
            "x0" => self.x0 = value,
            _ => unreachable!(),
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "A" => self.a,
            "B" | "b" => self.b,
            "alpha" => self.alpha,
            "omega" => self.omega,
            "l" => self.l,
            "e2" => self.e2,
            "x0" => self.x0,
            _ => return None,
        })
    }
}

/// `ln cosh y` without overflow.
fn ln_cosh(y: f64) -> f64 {
    let a = libm::fabs(y);
    a + libm::log1p(libm::exp(-2.0 * a)) - core::f64::consts::LN_2
}

/// `ln sinh y` for `y > 0` without overflow.
fn ln_sinh(y: f64) -> f64 {
    y + libm::log1p(-libm::exp(-2.0 * y)) - core::f64::consts::LN_2
}

fn sech(y: f64) -> f64 {
    1.0 / libm::cosh(y)
}

fn cosech(y: f64) -> f64 {
    1.0 / libm::sinh(y)
}

/// A catalog entry at a definite parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SipEntry {
    pub kind: SipKind,
    pub params: SipParams,
}

/// Algebraic spectrum from [`SipEntry::spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct SipSpectrum {
    pub energies: Vec<f64>,
    /// The entry has fewer bound states than requested.
    pub truncated: bool,
}

/// How the members of a Hamiltonian hierarchy are shifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyConvention {
    /// `V₁(x; a_s) + Σ_{k<s} R(a_k)`: every member shares the base
    /// spectrum with its lowest `s − 1` levels removed.
    Cumulative,
    /// `V₁(x; a_s) + R(a_{s−1}) = V₂(x; a_{s−1})`: each member is the plain
    /// partner of the previous one's zero-energy form.
    StepPartner,
}

impl SipEntry {
    /// Validates the parameter constraints of `kind` and the defining
    /// shape-invariance residual.
    pub fn new(kind: SipKind, params: SipParams) -> Result<Self> {
        let e = Self { kind, params };
        e.check_constraints()?;
        let r = e.shape_invariance_residual(801)?;
        if r > 1e-8 {
            return Err(Error::Inconsistent("shape-invariance residual too large"));
        }
        Ok(e)
    }

    pub fn with_defaults(kind: SipKind) -> Self {
        Self {
            kind,
            params: kind.default_params(),
        }
    }

    /// Entry by name, including the aliases `sech2` (`B`: the strength in
    /// `W = B tanh x`), `well` (`L`: the infinite square well of width `L`)
    /// and `oscillator`. Unlisted parameters keep their defaults.
    pub fn lookup(name: &str, params: &[(&str, f64)]) -> Result<Self> {
        let key = name.to_ascii_lowercase();
        match key.as_str() {
            "sech2" | "reflectionless" => {
                let mut b = 1.0;
                for &(k, v) in params {
                    match k {
                        "B" | "p" => b = v,
                        _ => return Err(Error::Unknown(format!("parameter '{k}' for sech2"))),
                    }
                }
                let p = SipParams {
                    a: b,
                    b: 0.0,
                    alpha: 1.0,
                    ..SipParams::default()
                };
                Self::new(SipKind::ScarfII, p)
            }
            "well" | "square_well" => {
                let mut l = PI;
                for &(k, v) in params {
                    match k {
                        "L" => l = v,
                        _ => return Err(Error::Unknown(format!("parameter '{k}' for well"))),
                    }
                }
                if !(l > 0.0) {
                    return Err(Error::Constraint {
                        entry: "well",
                        constraint: "L > 0",
                    });
                }
                let p = SipParams {
                    a: PI / l,
                    b: 0.0,
                    alpha: PI / l,
                    ..SipParams::default()
                };
                Self::new(SipKind::RosenMorseI, p)
            }
            _ => {
                let kind = if key == "oscillator" || key == "harmonic" {
                    SipKind::ShiftedOscillator
                } else {
                    SipKind::from_name(&key).ok_or_else(|| Error::Unknown(name.to_string()))?
                };
                let mut p = kind.default_params();
                for &(k, v) in params {
                    p.set(kind, k, v)?;
                }
                Self::new(kind, p)
            }
        }
    }

    fn check_constraints(&self) -> Result<()> {
        let p = &self.params;
        let name = self.kind.name();
        let fail = |constraint| {
            Err(Error::Constraint {
                entry: name,
                constraint,
            })
        };
        let finite = [p.a, p.b, p.alpha, p.omega, p.l, p.e2, p.x0]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return fail("parameters must be finite");
        }
        if !self.kind.translatable() && p.x0 != 0.0 {
            return fail("x0 shift is not available for this entry");
        }
        match self.kind {
            SipKind::ShiftedOscillator => {
                if !(p.omega > 0.0) {
                    return fail("omega > 0");
                }
            }
            SipKind::ThreeDOscillator => {
                if !(p.omega > 0.0) {
                    return fail("omega > 0");
                }
                if !(p.l >= 0.0) {
                    return fail("l >= 0");
                }
            }
            SipKind::Coulomb => {
                if !(p.e2 > 0.0) {
                    return fail("e2 > 0");
                }
                if !(p.l >= 0.0) {
                    return fail("l >= 0");
                }
            }
            _ => {
                if !(p.alpha > 0.0) {
                    return fail("alpha > 0");
                }
                if !(p.a > 0.0) {
                    return fail("A > 0");
                }
                match self.kind {
                    SipKind::Morse if !(p.b > 0.0) => return fail("B > 0"),
                    SipKind::RosenMorseII if !(libm::fabs(p.b) < p.a * p.a) => {
                        return fail("|B| < A^2")
                    }
                    SipKind::Eckart if !(p.b > p.a * p.a) => return fail("B > A^2"),
                    SipKind::ScarfI if !(libm::fabs(p.b) < p.a) => return fail("|B| < A"),
                    SipKind::PoschlTeller if !(p.a < p.b) => return fail("A < B"),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// `a₂ = f(a₁)`. The result is not validated: leaving the admissible
    /// region is how a finite spectrum ends.
    pub fn step(&self) -> SipEntry {
        let mut p = self.params;
        match self.kind {
            SipKind::ShiftedOscillator => {}
            SipKind::ThreeDOscillator | SipKind::Coulomb => p.l += 1.0,
            SipKind::Morse | SipKind::ScarfII | SipKind::RosenMorseII | SipKind::PoschlTeller => {
                p.a -= p.alpha
            }
            SipKind::Eckart | SipKind::ScarfI | SipKind::RosenMorseI => p.a += p.alpha,
        }
        SipEntry {
            kind: self.kind,
            params: p,
        }
    }

    /// `a_{s}` after `s − 1` steps.
    pub fn nth(&self, s: usize) -> SipEntry {
        let mut e = *self;
        for _ in 1..s {
            e = e.step();
        }
        e
    }

    pub fn domain(&self) -> Domain {
        let p = &self.params;
        let d = match self.kind {
            SipKind::ShiftedOscillator
            | SipKind::Morse
            | SipKind::ScarfII
            | SipKind::RosenMorseII => Domain::LINE,
            SipKind::ThreeDOscillator
            | SipKind::Coulomb
            | SipKind::Eckart
            | SipKind::PoschlTeller => Domain::half_line(0.0),
            SipKind::ScarfI => Domain::interval(-FRAC_PI_2 / p.alpha, FRAC_PI_2 / p.alpha),
            SipKind::RosenMorseI => Domain::interval(0.0, PI / p.alpha),
        };
        d.translated(p.x0)
    }

    /// Default solver box: the domain itself when it is bounded, otherwise
    /// a window wide enough for the low-lying states.
    pub fn window(&self) -> (f64, f64) {
        let p = &self.params;
        let x0 = p.x0;
        match self.kind {
            SipKind::ShiftedOscillator => {
                let c = 2.0 * p.b / p.omega;
                let half = 10.0 * libm::sqrt(2.0 / p.omega);
                (c - half, c + half)
            }
            SipKind::ThreeDOscillator => (0.0, 10.0 * libm::sqrt(2.0 / p.omega)),
            SipKind::Coulomb => (0.0, 100.0 * 2.0 * (p.l + 1.0) / p.e2),
            SipKind::Morse => (x0 - 5.0 / p.alpha, x0 + 25.0 / p.alpha),
            SipKind::ScarfII | SipKind::RosenMorseII => (x0 - 25.0 / p.alpha, x0 + 25.0 / p.alpha),
            SipKind::Eckart => (x0, x0 + 30.0 / p.alpha),
            SipKind::PoschlTeller => (x0, x0 + 30.0 / p.alpha),
            SipKind::ScarfI | SipKind::RosenMorseI => {
                let d = self.domain();
                (d.lo, d.hi)
            }
        }
    }

    pub fn grid(&self, n_points: usize) -> Result<Grid> {
        let (a, b) = self.window();
        Grid::new(a, b, n_points)
    }

    /// `W(x)`.
    pub fn w(&self, x: f64) -> f64 {
        let p = &self.params;
        let u = x - p.x0;
        let y = p.alpha * u;
        match self.kind {
            SipKind::ShiftedOscillator => 0.5 * p.omega * u - p.b,
            SipKind::ThreeDOscillator => 0.5 * p.omega * u - (p.l + 1.0) / u,
            SipKind::Coulomb => p.e2 / (2.0 * (p.l + 1.0)) - (p.l + 1.0) / u,
            SipKind::Morse => p.a - p.b * libm::exp(-y),
            SipKind::ScarfII => p.a * libm::tanh(y) + p.b * sech(y),
            SipKind::RosenMorseII => p.a * libm::tanh(y) + p.b / p.a,
            SipKind::Eckart => -p.a / libm::tanh(y) + p.b / p.a,
            SipKind::ScarfI => (p.a * libm::sin(y) - p.b) / libm::cos(y),
            SipKind::PoschlTeller => p.a / libm::tanh(y) - p.b * cosech(y),
            SipKind::RosenMorseI => -p.a / libm::tan(y) - p.b / p.a,
        }
    }

    /// `W'(x)`.
    pub fn dw(&self, x: f64) -> f64 {
        let p = &self.params;
        let u = x - p.x0;
        let y = p.alpha * u;
        let al = p.alpha;
        match self.kind {
            SipKind::ShiftedOscillator => 0.5 * p.omega,
            SipKind::ThreeDOscillator => 0.5 * p.omega + (p.l + 1.0) / (u * u),
            SipKind::Coulomb => (p.l + 1.0) / (u * u),
            SipKind::Morse => al * p.b * libm::exp(-y),
            SipKind::ScarfII => {
                let s = sech(y);
                al * s * (p.a * s - p.b * libm::tanh(y))
            }
            SipKind::RosenMorseII => {
                let s = sech(y);
                al * p.a * s * s
            }
            SipKind::Eckart => {
                let c = cosech(y);
                al * p.a * c * c
            }
            SipKind::ScarfI => {
                let sec = 1.0 / libm::cos(y);
                al * sec * (p.a * sec - p.b * libm::tan(y))
            }
            SipKind::PoschlTeller => {
                let c = cosech(y);
                al * c * (p.b / libm::tanh(y) - p.a * c)
            }
            SipKind::RosenMorseI => {
                let s = libm::sin(y);
                al * p.a / (s * s)
            }
        }
    }

    /// `Φ(x) = ∫ˣ W`, up to a constant; `ψ₀ ∝ e^{−Φ}`.
    pub fn antiderivative(&self, x: f64) -> f64 {
        let p = &self.params;
        let u = x - p.x0;
        let y = p.alpha * u;
        let al = p.alpha;
        match self.kind {
            SipKind::ShiftedOscillator => 0.25 * p.omega * u * u - p.b * u,
            SipKind::ThreeDOscillator => 0.25 * p.omega * u * u - (p.l + 1.0) * libm::log(u),
            SipKind::Coulomb => p.e2 * u / (2.0 * (p.l + 1.0)) - (p.l + 1.0) * libm::log(u),
            SipKind::Morse => p.a * u + p.b / al * libm::exp(-y),
            SipKind::ScarfII => p.a / al * ln_cosh(y) + p.b / al * libm::atan(libm::sinh(y)),
            SipKind::RosenMorseII => p.a / al * ln_cosh(y) + p.b / p.a * u,
            SipKind::Eckart => -p.a / al * ln_sinh(y) + p.b / p.a * u,
            SipKind::ScarfI => {
                let c = libm::cos(y);
                -p.a / al * libm::log(c) - p.b / al * libm::log((1.0 + libm::sin(y)) / c)
            }
            SipKind::PoschlTeller => {
                p.a / al * ln_sinh(y) - p.b / al * libm::log(libm::tanh(0.5 * y))
            }
            SipKind::RosenMorseI => -p.a / al * libm::log(libm::sin(y)) - p.b / p.a * u,
        }
    }

    pub fn v1(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w - self.dw(x)
    }

    pub fn v2(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w + self.dw(x)
    }

    /// `(W₋, W₊)` where they are finite.
    pub fn asymptotes(&self) -> (Option<f64>, Option<f64>) {
        let p = &self.params;
        match self.kind {
            SipKind::Coulomb => (None, Some(p.e2 / (2.0 * (p.l + 1.0)))),
            SipKind::Morse | SipKind::PoschlTeller => (None, Some(p.a)),
            SipKind::ScarfII => (Some(-p.a), Some(p.a)),
            SipKind::RosenMorseII => (Some(-p.a + p.b / p.a), Some(p.a + p.b / p.a)),
            SipKind::Eckart => (None, Some(-p.a + p.b / p.a)),
            _ => (None, None),
        }
    }

    /// The entry as a general [`Superpotential`] with analytic derivative
    /// and antiderivative.
    pub fn superpotential(&self) -> Superpotential {
        let (e1, e2, e3) = (*self, *self, *self);
        let (wm, wp) = self.asymptotes();
        let mut s = Superpotential::analytic(self.domain(), move |x| e1.w(x))
            .with_derivative(move |x| e2.dw(x))
            .with_antiderivative(move |x| e3.antiderivative(x))
            .with_asymptotes(wm, wp);
        for &name in self.kind.param_names() {
            if let Some(v) = self.params.get(name) {
                s = s.with_param(name, v);
            }
        }
        s
    }

    /// Closed-form `Eₙ` of `V₁`.
    pub fn energy(&self, n: usize) -> f64 {
        let p = &self.params;
        let nf = n as f64;
        let sq = |v: f64| v * v;
        match self.kind {
            SipKind::ShiftedOscillator => nf * p.omega,
            SipKind::ThreeDOscillator => 2.0 * nf * p.omega,
            SipKind::Coulomb => {
                let e4 = p.e2 * p.e2;
                e4 / (4.0 * sq(p.l + 1.0)) - e4 / (4.0 * sq(nf + p.l + 1.0))
            }
            SipKind::Morse | SipKind::ScarfII | SipKind::PoschlTeller => {
                sq(p.a) - sq(p.a - nf * p.alpha)
            }
            SipKind::RosenMorseII => {
                let an = p.a - nf * p.alpha;
                sq(p.a) - sq(an) + sq(p.b) / sq(p.a) - sq(p.b) / sq(an)
            }
            SipKind::Eckart => {
                let an = p.a + nf * p.alpha;
                sq(p.a) - sq(an) - sq(p.b) / sq(an) + sq(p.b) / sq(p.a)
            }
            SipKind::ScarfI => sq(p.a + nf * p.alpha) - sq(p.a),
            SipKind::RosenMorseI => {
                let an = p.a + nf * p.alpha;
                sq(an) - sq(p.a) - sq(p.b) / sq(an) + sq(p.b) / sq(p.a)
            }
        }
    }

    /// `R(a₁)`, the constant in `V₂(x; a₁) = V₁(x; a₂) + R(a₁)`.
    pub fn remainder(&self) -> f64 {
        self.energy(1)
    }

    /// Whether `exp(−Φ)` is normalizable at these parameters.
    pub fn is_normalizable(&self) -> bool {
        let p = &self.params;
        match self.kind {
            SipKind::ShiftedOscillator | SipKind::ThreeDOscillator => p.omega > 0.0,
            SipKind::Coulomb => p.e2 > 0.0 && p.l > -1.0,
            SipKind::Morse => p.a > 0.0 && p.b > 0.0,
            SipKind::ScarfII => p.a > 0.0,
            SipKind::RosenMorseII => p.a > 0.0 && libm::fabs(p.b) < p.a * p.a,
            SipKind::Eckart => p.a > 0.0 && p.b > p.a * p.a,
            SipKind::ScarfI => p.a > libm::fabs(p.b),
            SipKind::PoschlTeller => p.a > 0.0 && p.b > p.a,
            SipKind::RosenMorseI => p.a > 0.0,
        }
    }

    /// Number of bound states of `V₁`; `None` when infinite.
    pub fn bound_state_count(&self) -> Option<usize> {
        match self.kind {
            SipKind::ShiftedOscillator
            | SipKind::ThreeDOscillator
            | SipKind::Coulomb
            | SipKind::ScarfI
            | SipKind::RosenMorseI => None,
            _ => {
                let mut n = 0;
                let mut e = *self;
                while e.is_normalizable() && n < 100_000 {
                    n += 1;
                    e = e.step();
                }
                Some(n)
            }
        }
    }

    /// `E₀ … E_{n_max}` as partial sums of the remainders along the
    /// parameter chain, cross-checked against the closed form.
    pub fn spectrum(&self, n_max: usize) -> Result<SipSpectrum> {
        let count = self.bound_state_count();
        let last = count.map_or(n_max, |c| n_max.min(c.saturating_sub(1)));
        let mut energies = Vec::with_capacity(last + 1);
        let mut sum = 0.0;
        let mut a = *self;
        for n in 0..=last {
            if n > 0 {
                sum += a.remainder();
                a = a.step();
            }
            let closed = self.energy(n);
            if libm::fabs(sum - closed) > 1e-10 * libm::fmax(1.0, libm::fabs(closed)) {
                return Err(Error::Inconsistent(
                    "sum of remainders differs from the closed-form spectrum",
                ));
            }
            energies.push(closed);
        }
        Ok(SipSpectrum {
            truncated: count.is_some_and(|c| c <= n_max),
            energies,
        })
    }

    /// Largest `|V₂(x; a₁) − V₁(x; a₂) − R(a₁)|` on `n_points` points of a
    /// window that stays clear of singular ends.
    pub fn shape_invariance_residual(&self, n_points: usize) -> Result<f64> {
        let next = self.step();
        let r = self.remainder();
        let (lo, hi) = self.check_window();
        let g = Grid::new(lo, hi, n_points)?;
        let mut worst = 0.0_f64;
        for x in g.points() {
            let d = self.v2(x) - next.v1(x) - r;
            if !d.is_finite() {
                return Err(Error::NonFiniteEvaluation { x });
            }
            worst = worst.max(libm::fabs(d));
        }
        Ok(worst)
    }

    fn check_window(&self) -> (f64, f64) {
        let p = &self.params;
        let x0 = p.x0;
        let s = 1.0 / p.alpha;
        match self.kind {
            SipKind::ShiftedOscillator => {
                let c = 2.0 * p.b / p.omega;
                (c - 8.0, c + 8.0)
            }
            SipKind::ThreeDOscillator | SipKind::Coulomb => (0.05, 15.0),
            SipKind::Morse => (x0 - 2.0 * s, x0 + 20.0 * s),
            SipKind::ScarfII | SipKind::RosenMorseII => (x0 - 15.0 * s, x0 + 15.0 * s),
            SipKind::Eckart | SipKind::PoschlTeller => (x0 + 0.05 * s, x0 + 15.0 * s),
            SipKind::ScarfI | SipKind::RosenMorseI => {
                let d = self.domain();
                let m = 0.05 * (d.hi - d.lo);
                (d.lo + m, d.hi - m)
            }
        }
    }

    /// `V₁` sampled on `grid`, with wall tags from the domain.
    pub fn v1_on_grid(&self, grid: &Grid) -> Result<PotentialOnGrid> {
        Ok(partner_potentials(&self.superpotential(), grid)?.v1)
    }

    /// Normalised `ψ₀ ∝ e^{−Φ}` on `grid`.
    pub fn ground_state(&self, grid: &Grid) -> Result<SampledFunction> {
        if !self.is_normalizable() {
            return Err(Error::NotNormalizable);
        }
        let d = self.domain();
        let phi: Vec<f64> = grid
            .points()
            .map(|x| {
                if d.contains(x) {
                    self.antiderivative(x)
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
        let values = phi.iter().map(|&f| libm::exp(-(f - min))).collect();
        SampledFunction::new(*grid, values)?.normalized()
    }

    /// `ψₙ` of `V₁` from the chain `A†(a₁) ⋯ A†(aₙ) ψ₀(a_{n+1})`, normalised
    /// and oriented so that its first lobe is positive.
    pub fn eigenfunction(&self, n: usize, grid: &Grid) -> Result<SampledFunction> {
        if self.bound_state_count().is_some_and(|c| n >= c) {
            return Err(Error::NotNormalizable);
        }
        let top = self.nth(n + 1);
        let mut psi = top.ground_state(grid)?;
        for s in (1..=n).rev() {
            psi = apply_adag(&self.nth(s).superpotential(), &psi)?;
        }
        let mut psi = psi.normalized()?;
        let max = psi.max_modulus();
        if let Some(first) = psi.values().iter().find(|v| libm::fabs(**v) > 1e-3 * max) {
            if *first < 0.0 {
                psi = psi.scaled(-1.0);
            }
        }
        Ok(psi)
    }

    /// Member `s ≥ 1` of the Hamiltonian hierarchy, sampled on `grid`.
    pub fn hierarchy_potential(
        &self,
        s: usize,
        grid: &Grid,
        convention: HierarchyConvention,
    ) -> Result<PotentialOnGrid> {
        if s == 0 {
            return Err(Error::Domain {
                what: "hierarchy depth",
                value: 0.0,
            });
        }
        let member = self.nth(s);
        let shift = match convention {
            HierarchyConvention::Cumulative => (1..s).map(|k| self.nth(k).remainder()).sum(),
            HierarchyConvention::StepPartner if s > 1 => self.nth(s - 1).remainder(),
            HierarchyConvention::StepPartner => 0.0,
        };
        Ok(member.v1_on_grid(grid)?.shifted(shift))
    }
}
