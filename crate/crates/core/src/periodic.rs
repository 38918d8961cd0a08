//! Periodic superpotentials, Lamé potentials and band edges.
//!
//! A periodic `W` with zero mean over a period has both `exp(∓∫W/c)`
//! periodic, so `V₁` and `V₂` share every band edge including the lowest.
//! Band edges are eigenvalues of the periodic (`kL = 0`, period `L`) and
//! antiperiodic (`kL = π`, period `2L`) problems on one period.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::eigen::{band_solve, bloch_energies, hill_discriminant};
use crate::numerics::{elliptic_k, jacobi_sn_cn_dn, Grid};
use crate::potential::{Boundary, PotentialOnGrid};
use crate::susy::{Domain, RealFn, Superpotential, Units};
use crate::{Error, Result};

/// `|φ_L|` below which SUSY counts as unbroken.
pub const ZERO_MODE_TOL: f64 = 1e-10;
/// Tolerance of the `W` symmetry tests in [`self_isospectral_classify`].
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Tolerance of the shift/reflection scan in [`classify_pair`].
pub const PAIR_TOL: f64 = 1e-8;
/// Shifts per period in [`classify_pair`].
pub const PAIR_SHIFTS: usize = 1000;

const CHECK_SAMPLES: usize = 1001;

/// A superpotential with `W(x + L) = W(x)`.
#[derive(Debug, Clone)]
pub struct PeriodicSuperpotential {
    w: Superpotential,
    period: f64,
    phi_l: f64,
}

impl PeriodicSuperpotential {
    /// Checks periodicity on samples (to `1e−10`) and integrates `W` over one
    /// period.
    pub fn new(w: Superpotential, period: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Domain {
                what: "period",
                value: period,
            });
        }
        for i in 0..CHECK_SAMPLES {
            let x = period * i as f64 / (CHECK_SAMPLES - 1) as f64;
            let (a, b) = (w.w(x), w.w(x + period));
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::NonFiniteEvaluation { x });
            }
            if libm::fabs(a - b) > 1e-10 * libm::fmax(1.0, libm::fabs(a)) {
                return Err(Error::Inconsistent("W is not periodic with the given period"));
            }
        }
        let phi_l = w.integral(0.0, period)?;
        Ok(Self { w, period, phi_l })
    }

    pub fn from_fn(w: impl Fn(f64) -> f64 + Send + Sync + 'static, period: f64) -> Result<Self> {
        Self::new(Superpotential::analytic(Domain::LINE, w), period)
    }

    pub fn superpotential(&self) -> &Superpotential {
        &self.w
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// `∫₀ᴸ W dx`.
    pub fn phi_l(&self) -> f64 {
        self.phi_l
    }

    pub fn units(&self) -> Units {
        self.w.units()
    }

    /// One period `[0, L]` with `n_intervals` steps.
    pub fn grid(&self, n_intervals: usize) -> Result<Grid> {
        Grid::new(0.0, self.period, n_intervals + 1)
    }

    /// `V₁` and `V₂` on one period, tagged periodic.
    pub fn partners(&self, n_intervals: usize) -> Result<(PotentialOnGrid, PotentialOnGrid)> {
        let g = self.grid(n_intervals)?;
        let u = self.units();
        let w = &self.w;
        Ok((
            PotentialOnGrid::from_fn(g, Boundary::Periodic, u, |x| w.v1(x))?,
            PotentialOnGrid::from_fn(g, Boundary::Periodic, u, |x| w.v2(x))?,
        ))
    }

    /// `exp(−∫₀ˣ W/c)`, the zero mode of `V₁` (periodic iff `φ_L = 0`).
    pub fn zero_mode(&self, x: f64) -> Result<f64> {
        Ok(libm::exp(-self.w.integral(0.0, x)? / self.units().c()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMode {
    Unbroken,
    Broken,
}

pub fn zero_mode_check(w: &PeriodicSuperpotential) -> ZeroMode {
    if libm::fabs(w.phi_l()) <= ZERO_MODE_TOL {
        ZeroMode::Unbroken
    } else {
        ZeroMode::Broken
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfIsospectral {
    /// `W(x + L/2) = −W(x)`, hence `V₂(x) = V₁(x + L/2)`.
    HalfPeriodAntisymmetric,
    /// `W(−x) = W(x)`, hence `V₂(x) = V₁(−x)`.
    EvenReflection,
    Neither,
}

fn max_deviation(n: usize, period: f64, f: impl Fn(f64) -> f64) -> f64 {
    (0..n)
        .map(|i| libm::fabs(f(period * i as f64 / (n - 1) as f64)))
        .fold(0.0, f64::max)
}

/// Tests the two sufficient symmetries of `W` on samples, then confirms
/// the implied relation on the potentials themselves. Requires unbroken
/// SUSY.
pub fn self_isospectral_classify(w: &PeriodicSuperpotential) -> Result<SelfIsospectral> {
    if zero_mode_check(w) == ZeroMode::Broken {
        return Err(Error::Unsupported("self-isospectrality needs phi_L = 0"));
    }
    let l = w.period();
    let s = w.superpotential();
    let scale = max_deviation(CHECK_SAMPLES, l, |x| s.w(x)).max(1.0);
    let vscale = max_deviation(CHECK_SAMPLES, l, |x| s.v1(x)).max(1.0);
    let half = max_deviation(CHECK_SAMPLES, l, |x| s.w(x + 0.5 * l) + s.w(x));
    let kind = if half <= SYMMETRY_TOL * scale {
        let dv = max_deviation(CHECK_SAMPLES, l, |x| s.v2(x) - s.v1(x + 0.5 * l));
        if dv > PAIR_TOL * vscale {
            return Err(Error::Inconsistent("half-period symmetry without V2(x) = V1(x + L/2)"));
        }
        SelfIsospectral::HalfPeriodAntisymmetric
    } else if max_deviation(CHECK_SAMPLES, l, |x| s.w(-x) - s.w(x)) <= SYMMETRY_TOL * scale {
        let dv = max_deviation(CHECK_SAMPLES, l, |x| s.v2(x) - s.v1(-x));
        if dv > PAIR_TOL * vscale {
            return Err(Error::Inconsistent("even W without V2(x) = V1(-x)"));
        }
        SelfIsospectral::EvenReflection
    } else {
        SelfIsospectral::Neither
    };
    Ok(kind)
}

/// How two periodic potentials were found to be related.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairRelation {
    /// `V₂(x) = V₁(x + s)`.
    Translation(f64),
    /// `V₂(x) = V₁(s − x)`.
    Reflection(f64),
    None,
}

impl PairRelation {
    pub fn is_self_isospectral(&self) -> bool {
        !matches!(self, PairRelation::None)
    }
}

/// Scans [`PAIR_SHIFTS`] translations and as many reflections of `v1`
/// against `v2`; a numeric classifier, not a proof.
pub fn classify_pair(
    v1: impl Fn(f64) -> f64,
    v2: impl Fn(f64) -> f64,
    period: f64,
) -> PairRelation {
    const SAMPLES: usize = 257;
    let xs: Vec<f64> = (0..SAMPLES)
        .map(|i| period * i as f64 / (SAMPLES - 1) as f64)
        .collect();
    let target: Vec<f64> = xs.iter().map(|&x| v2(x)).collect();
    let scale = target.iter().fold(1.0_f64, |m, v| m.max(libm::fabs(*v)));
    let fits = |f: &dyn Fn(f64) -> f64| {
        xs.iter()
            .zip(&target)
            .all(|(&x, &t)| libm::fabs(f(x) - t) <= PAIR_TOL * scale)
    };
    for k in 0..PAIR_SHIFTS {
        let s = period * k as f64 / PAIR_SHIFTS as f64;
        if fits(&|x| v1(x + s)) {
            return PairRelation::Translation(s);
        }
    }
    for k in 0..PAIR_SHIFTS {
        let s = period * k as f64 / PAIR_SHIFTS as f64;
        if fits(&|x| v1(s - x)) {
            return PairRelation::Reflection(s);
        }
    }
    PairRelation::None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodTag {
    /// Periodic with the potential's period (`kL = 0`).
    L,
    /// Antiperiodic over `L` (`kL = π`).
    TwoL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandBoundary {
    Bottom,
    Top,
    ContinuumBottom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEdge {
    pub energy: f64,
    pub period_tag: PeriodTag,
    pub nodes_per_l: usize,
    pub boundary: BandBoundary,
}

fn tag_boundaries(edges: &mut [BandEdge], finite_gap: bool) {
    let n = edges.len();
    for (i, e) in edges.iter_mut().enumerate() {
        e.boundary = if finite_gap && i + 1 == n {
            BandBoundary::ContinuumBottom
        } else if i % 2 == 0 {
            BandBoundary::Bottom
        } else {
            BandBoundary::Top
        };
    }
}

/// Lowest `count` band edges of `v` (one period, periodic grid): the union
/// of the `kL = 0` and `kL = π` levels, with period tags from the sector
/// and node counts from the eigenvectors. Edges alternate bottom/top.
pub fn numeric_band_edges(v: &PotentialOnGrid, count: usize) -> Result<Vec<BandEdge>> {
    let mut edges: Vec<BandEdge> = Vec::with_capacity(2 * count);
    for (tag, kl) in [(PeriodTag::L, 0.0), (PeriodTag::TwoL, PI)] {
        for p in band_solve(v, kl, count)? {
            edges.push(BandEdge {
                energy: p.energy,
                period_tag: tag,
                nodes_per_l: p.nodes,
                boundary: BandBoundary::Bottom,
            });
        }
    }
    edges.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    edges.truncate(count);
    tag_boundaries(&mut edges, false);
    Ok(edges)
}

/// `E(kL)` for the lowest `bands` bands at `samples` phases in `[0, π]`.
pub fn dispersion(v: &PotentialOnGrid, bands: usize, samples: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let samples = samples.max(2);
    (0..samples)
        .map(|i| {
            let kl = PI * i as f64 / (samples - 1) as f64;
            Ok((kl, bloch_energies(v, kl, bands)?))
        })
        .collect()
}

/// Trace of the one-period transfer matrix; re-exported for diagnostics.
pub fn hill_trace(v: &PotentialOnGrid, energy: f64) -> Result<f64> {
    hill_discriminant(v, energy)
}

/// Whether the edges follow the oscillation-theorem pattern: tags
/// `L, 2L, 2L, L, L, …` and nodes `0, 1, 1, 2, 2, …`.
pub fn follows_oscillation_theorem(edges: &[BandEdge]) -> bool {
    edges.iter().enumerate().all(|(i, e)| {
        let nodes = i.div_ceil(2);
        let tag = if nodes % 2 == 0 { PeriodTag::L } else { PeriodTag::TwoL };
        e.nodes_per_l == nodes && e.period_tag == tag
    })
}

/// The Lamé potential `V = a(a+1) m sn²(x, m)` with period `2K(m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LameSpec {
    a: u32,
    m: f64,
    period: f64,
}

impl LameSpec {
    pub fn new(a: u32, m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::Domain {
                what: "elliptic parameter m",
                value: m,
            });
        }
        if a == 0 {
            return Err(Error::Domain {
                what: "Lame order a",
                value: 0.0,
            });
        }
        Ok(Self {
            a,
            m,
            period: 2.0 * elliptic_k(m)?,
        })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn p(&self) -> f64 {
        let a = self.a as f64;
        a * (a + 1.0)
    }

    /// `√(1 − m + m²)`.
    pub fn delta(&self) -> f64 {
        libm::sqrt(1.0 - self.m + self.m * self.m)
    }

    /// `2K(m)`.
    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn value(&self, x: f64) -> f64 {
        let (sn, _, _) = jacobi_sn_cn_dn(x, self.m).expect("m validated");
        self.p() * self.m * sn * sn
    }

    /// One period with `n_intervals` steps, tagged periodic.
    pub fn potential(&self, n_intervals: usize) -> Result<PotentialOnGrid> {
        let g = Grid::new(0.0, self.period, n_intervals + 1)?;
        PotentialOnGrid::from_fn(g, Boundary::Periodic, Units::default(), |x| self.value(x))
    }

    /// Closed-form band edges for `a = 1` and `a = 2`, ending with the
    /// bottom of the continuum.
    pub fn analytic_band_edges(&self) -> Result<Vec<BandEdge>> {
        use PeriodTag::{TwoL, L};
        let m = self.m;
        let list: Vec<(f64, PeriodTag, usize)> = match self.a {
            1 => alloc::vec![(m, L, 0), (1.0, TwoL, 1), (1.0 + m, TwoL, 1)],
            2 => {
                let d = self.delta();
                alloc::vec![
                    (2.0 + 2.0 * m - 2.0 * d, L, 0),
                    (1.0 + m, TwoL, 1),
                    (1.0 + 4.0 * m, TwoL, 1),
                    (4.0 + m, L, 2),
                    (2.0 + 2.0 * m + 2.0 * d, L, 2),
                ]
            }
            _ => return Err(Error::Unsupported("analytic Lame band edges only for a = 1, 2")),
        };
        let mut edges: Vec<BandEdge> = list
            .into_iter()
            .map(|(energy, period_tag, nodes_per_l)| BandEdge {
                energy,
                period_tag,
                nodes_per_l,
                boundary: BandBoundary::Bottom,
            })
            .collect();
        tag_boundaries(&mut edges, true);
        Ok(edges)
    }

    /// `2a + 1` numeric edges, the count of a finite-gap Lamé spectrum.
    pub fn numeric_band_edges(&self, n_intervals: usize) -> Result<Vec<BandEdge>> {
        let mut edges = numeric_band_edges(&self.potential(n_intervals)?, 2 * self.a as usize + 1)?;
        tag_boundaries(&mut edges, true);
        Ok(edges)
    }
}

/// `W = m sn cn / dn = −(ln dn)'`, the superpotential whose `V₁` is the
/// `a = 1` Lamé potential shifted down by `m`.
pub fn lame1_superpotential(m: f64) -> Result<PeriodicSuperpotential> {
    let spec = LameSpec::new(1, m)?;
    let w = move |x: f64| {
        let (sn, cn, dn) = jacobi_sn_cn_dn(x, m).expect("m validated");
        m * sn * cn / dn
    };
    let dw = move |x: f64| {
        let (sn, cn, dn) = jacobi_sn_cn_dn(x, m).expect("m validated");
        // (sn cn / dn)' = cn² − sn² + m sn² cn² / dn²
        m * ((cn * cn - sn * sn) + m * sn * sn * cn * cn / (dn * dn))
    };
    PeriodicSuperpotential::new(
        Superpotential::analytic(Domain::LINE, w).with_derivative(dw),
        spec.period(),
    )
}

/// The `a = 2` Lamé superpotential and its partner.
#[derive(Debug, Clone)]
pub struct LamePartner {
    pub spec: LameSpec,
    pub w: PeriodicSuperpotential,
    /// `2 + 2m − 2δ`, subtracted from `6m sn²` to put the ground edge at 0.
    pub shift: f64,
}

impl LamePartner {
    /// `V₁ = −2 − 2m + 2δ + 6m sn²`.
    pub fn v1(&self, x: f64) -> f64 {
        self.spec.value(x) - self.shift
    }

    /// `V₂ = −V₁ + 72m² sn²cn²dn²/ψ₀²`.
    pub fn v2(&self, x: f64) -> f64 {
        self.w.superpotential().v2(x)
    }

    /// `ψ₀ = 1 + m + δ − 3m sn²`.
    pub fn psi0(&self, x: f64) -> f64 {
        psi0_a2(self.spec.m, self.spec.delta(), x)
    }
}

fn psi0_a2(m: f64, delta: f64, x: f64) -> f64 {
    let (sn, _, _) = jacobi_sn_cn_dn(x, m).expect("m validated");
    1.0 + m + delta - 3.0 * m * sn * sn
}

pub fn lame_partner(m: f64) -> Result<LamePartner> {
    let spec = LameSpec::new(2, m)?;
    let delta = spec.delta();
    let shift = 2.0 + 2.0 * m - 2.0 * delta;
    // ψ₀ ≥ 1 + δ − 2m > 0 on (0, 1)
    if 1.0 + delta - 2.0 * m <= 0.0 {
        return Err(Error::Inconsistent("ground state of the a = 2 partner has a node"));
    }
    let w: RealFn = Arc::new(move |x: f64| {
        let (sn, cn, dn) = jacobi_sn_cn_dn(x, m).expect("m validated");
        6.0 * m * sn * cn * dn / psi0_a2(m, delta, x)
    });
    let w2 = w.clone();
    // W' = W² − V₁ since ψ₀ is an exact zero mode
    let dw = move |x: f64| {
        let (sn, _, _) = jacobi_sn_cn_dn(x, m).expect("m validated");
        let wv = w2(x);
        wv * wv - (6.0 * m * sn * sn - shift)
    };
    let w1 = w.clone();
    let sp = Superpotential::analytic(Domain::LINE, move |x| w1(x)).with_derivative(dw);
    Ok(LamePartner {
        spec,
        w: PeriodicSuperpotential::new(sp, spec.period())?,
        shift,
    })
}
