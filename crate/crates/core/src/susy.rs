//! Superpotentials, partner potentials, the intertwining operators and the
//! discretised superalgebra.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numerics::{
    cumulative, derivative, gauss_legendre, integrate_samples, integrate_with, Grid, Sample,
    Sampled, SampledFunction,
};
use crate::potential::{Boundary, Edge, PotentialOnGrid};
use crate::sparse::SparseMatrix;
use crate::{Error, Result};

/// Physical constants. The kinetic operator is `-(ħ²/2m) d²/dx²` and the
/// partner potentials are `W² ∓ (ħ/√(2m)) W'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub hbar: f64,
    /// `2m`.
    pub mass2: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass2: 1.0,
        }
    }
}

impl Units {
    pub fn new(hbar: f64, mass2: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Domain {
                what: "hbar",
                value: hbar,
            });
        }
        if !(mass2 > 0.0 && mass2.is_finite()) {
            return Err(Error::Domain {
                what: "2m",
                value: mass2,
            });
        }
        Ok(Self { hbar, mass2 })
    }

    /// `ħ/√(2m)`, the coefficient of `W'` in the partner potentials.
    pub fn c(&self) -> f64 {
        self.hbar / libm::sqrt(self.mass2)
    }

    /// `ħ²/2m`, the coefficient of the kinetic term.
    pub fn kinetic(&self) -> f64 {
        self.hbar * self.hbar / self.mass2
    }
}

/// Interval on which a superpotential is defined. Infinite ends are open;
/// a finite end tagged [`Edge::Wall`] is a singular point of `W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub left: Edge,
    pub right: Edge,
}

impl Domain {
    pub const LINE: Domain = Domain {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        left: Edge::Open,
        right: Edge::Open,
    };

    /// `(lo, ∞)` with `W` singular at `lo`.
    pub fn half_line(lo: f64) -> Self {
        Self {
            lo,
            hi: f64::INFINITY,
            left: Edge::Wall,
            right: Edge::Open,
        }
    }

    /// `(lo, hi)` with `W` singular at both ends.
    pub fn interval(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            left: Edge::Wall,
            right: Edge::Wall,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn translated(&self, dx: f64) -> Self {
        Self {
            lo: self.lo + dx,
            hi: self.hi + dx,
            ..*self
        }
    }

    fn is_at(end: f64, x: f64) -> bool {
        end.is_finite() && libm::fabs(x - end) <= 1e-12 * libm::fmax(1.0, libm::fabs(end))
    }

    /// Boundary tags for a box `[a, b]` inside this domain: an endpoint that
    /// sits on a wall of the domain is a wall, anything else is open.
    pub fn boundary_for(&self, grid: &Grid) -> Result<Boundary> {
        let (a, b) = (grid.x_min(), grid.x_max());
        let tol = 1e-12 * libm::fmax(1.0, libm::fmax(libm::fabs(a), libm::fabs(b)));
        if a < self.lo - tol || b > self.hi + tol {
            return Err(Error::Domain {
                what: "grid endpoint outside the superpotential domain",
                value: if a < self.lo - tol { a } else { b },
            });
        }
        let left = if self.left == Edge::Wall && Self::is_at(self.lo, a) {
            Edge::Wall
        } else {
            Edge::Open
        };
        let right = if self.right == Edge::Wall && Self::is_at(self.hi, b) {
            Edge::Wall
        } else {
            Edge::Open
        };
        Ok(Boundary::Box { left, right })
    }
}

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Profile {
    Analytic {
        w: RealFn,
        dw: Option<RealFn>,
        antiderivative: Option<RealFn>,
    },
    Sampled {
        w: SampledFunction,
        dw: Vec<f64>,
        integral: Vec<f64>,
    },
}

/// A real superpotential `W(x)` together with its domain, units, declared
/// asymptotic values and the named parameters it was built from.
#[derive(Clone)]
pub struct Superpotential {
    profile: Profile,
    domain: Domain,
    units: Units,
    w_minus: Option<f64>,
    w_plus: Option<f64>,
    params: Vec<(String, f64)>,
}

impl fmt::Debug for Superpotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.profile {
            Profile::Analytic { .. } => "analytic",
            Profile::Sampled { .. } => "sampled",
        };
        f.debug_struct("Superpotential")
            .field("profile", &kind)
            .field("domain", &self.domain)
            .field("units", &self.units)
            .field("w_minus", &self.w_minus)
            .field("w_plus", &self.w_plus)
            .field("params", &self.params)
            .finish()
    }
}

/// Four-point Lagrange interpolation on uniform samples.
fn interpolate(grid: &Grid, values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let h = grid.spacing();
    let t = (x - grid.x_min()) / h;
    let i = (libm::floor(t) as isize).clamp(1, n as isize - 3) as usize;
    let s = t - i as f64;
    let (y0, y1, y2, y3) = (values[i - 1], values[i], values[i + 1], values[i + 2]);
    -s * (s - 1.0) * (s - 2.0) / 6.0 * y0 + (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0 * y1
        - (s + 1.0) * s * (s - 2.0) / 2.0 * y2
        + (s + 1.0) * s * (s - 1.0) / 6.0 * y3
}

impl Superpotential {
    /// Closed-form `W` on `domain`. Without [`with_derivative`] the derivative
    /// is taken by a fourth-order central difference.
    ///
    /// [`with_derivative`]: Superpotential::with_derivative
    pub fn analytic(domain: Domain, w: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            profile: Profile::Analytic {
                w: Arc::new(w),
                dw: None,
                antiderivative: None,
            },
            domain,
            units: Units::default(),
            w_minus: None,
            w_plus: None,
            params: Vec::new(),
        }
    }

    /// `W` given by samples; it lives on the span of the grid, and values
    /// between samples are interpolated with cubic polynomials.
    pub fn sampled(w: SampledFunction) -> Self {
        let h = w.grid().spacing();
        let dw = derivative(w.values(), h);
        let integral = cumulative(w.values(), h);
        let domain = Domain {
            lo: w.grid().x_min(),
            hi: w.grid().x_max(),
            left: Edge::Open,
            right: Edge::Open,
        };
        Self {
            profile: Profile::Sampled { w, dw, integral },
            domain,
            units: Units::default(),
            w_minus: None,
            w_plus: None,
            params: Vec::new(),
        }
    }

    pub fn with_derivative(mut self, dw: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        if let Profile::Analytic { dw: d, .. } = &mut self.profile {
            *d = Some(Arc::new(dw));
        }
        self
    }

    /// Supplies an antiderivative `∫W dx` (any constant of integration).
    pub fn with_antiderivative(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        if let Profile::Analytic { antiderivative, .. } = &mut self.profile {
            *antiderivative = Some(Arc::new(f));
        }
        self
    }

    pub fn with_units(mut self, units: Units) -> Self {
        self.units = units;
        self
    }

    pub fn with_asymptotes(mut self, w_minus: Option<f64>, w_plus: Option<f64>) -> Self {
        self.w_minus = w_minus;
        self.w_plus = w_plus;
        self
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.push((String::from(name), value));
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn w_minus(&self) -> Option<f64> {
        self.w_minus
    }

    pub fn w_plus(&self) -> Option<f64> {
        self.w_plus
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|p| p.1)
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.profile, Profile::Sampled { .. })
    }

    pub fn w(&self, x: f64) -> f64 {
        match &self.profile {
            Profile::Analytic { w, .. } => w(x),
            Profile::Sampled { w, .. } => interpolate(w.grid(), w.values(), x),
        }
    }

    pub fn dw(&self, x: f64) -> f64 {
        match &self.profile {
            Profile::Analytic { dw: Some(d), .. } => d(x),
            Profile::Analytic { w, .. } => {
                let room = libm::fmin(x - self.domain.lo, self.domain.hi - x);
                let h = libm::fmin(1e-3, room / 50.0);
                (w(x - 2.0 * h) - 8.0 * w(x - h) + 8.0 * w(x + h) - w(x + 2.0 * h)) / (12.0 * h)
            }
            Profile::Sampled { w, dw, .. } => interpolate(w.grid(), dw, x),
        }
    }

    /// `∫_a^b W dx`.
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        match &self.profile {
            Profile::Analytic {
                antiderivative: Some(f),
                ..
            } => Ok(f(b) - f(a)),
            Profile::Analytic { w, .. } => match integrate_with(a, b, 1e-13, |x| w(x)) {
                Ok(v) => Ok(v),
                Err(Error::NoConvergence(_)) => {
                    // split once: slowly varying but wide integrands
                    let m = 0.5 * (a + b);
                    Ok(integrate_with(a, m, 1e-11, |x| w(x))?
                        + integrate_with(m, b, 1e-11, |x| w(x))?)
                }
                Err(e) => Err(e),
            },
            Profile::Sampled { w, integral, .. } => {
                Ok(interpolate(w.grid(), integral, b) - interpolate(w.grid(), integral, a))
            }
        }
    }

    /// `V₁ = W² − (ħ/√(2m)) W'`.
    pub fn v1(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w - self.units.c() * self.dw(x)
    }

    /// `V₂ = W² + (ħ/√(2m)) W'`.
    pub fn v2(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w + self.units.c() * self.dw(x)
    }

    /// The same superpotential evaluated at `x − x0`.
    pub fn translated(&self, x0: f64) -> Self {
        let mut out = self.clone();
        out.domain = self.domain.translated(x0);
        match &mut out.profile {
            Profile::Analytic {
                w,
                dw,
                antiderivative,
            } => {
                let shift = |f: &RealFn| -> RealFn {
                    let f = f.clone();
                    Arc::new(move |x| f(x - x0))
                };
                let moved = shift(w);
                *w = moved;
                *dw = dw.as_ref().map(shift);
                *antiderivative = antiderivative.as_ref().map(shift);
            }
            Profile::Sampled { w: samples, .. } => {
                let g = samples.grid();
                let moved = Grid::new(g.x_min() + x0, g.x_max() + x0, g.len())
                    .expect("translated grid is valid");
                *samples = Sampled::new(moved, samples.values().to_vec())
                    .expect("samples already validated");
            }
        }
        out
    }

    /// `W` at the grid points; `None` on walls of the domain.
    pub(crate) fn on_grid(&self, grid: &Grid) -> Result<Vec<Option<f64>>> {
        let boundary = self.domain.boundary_for(grid)?;
        let n = grid.len();
        Ok(grid
            .points()
            .enumerate()
            .map(|(i, x)| match boundary {
                Boundary::Box {
                    left: Edge::Wall, ..
                } if i == 0 => None,
                Boundary::Box {
                    right: Edge::Wall, ..
                } if i == n - 1 => None,
                _ => Some(self.w(x)),
            })
            .collect())
    }
}

/// `V₁` and `V₂` sampled on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PartnerPair {
    pub v1: PotentialOnGrid,
    pub v2: PotentialOnGrid,
}

/// Samples both partner potentials of `w` on `grid`.
pub fn partner_potentials(w: &Superpotential, grid: &Grid) -> Result<PartnerPair> {
    let boundary = w.domain().boundary_for(grid)?;
    let v1 = PotentialOnGrid::from_fn(*grid, boundary, w.units(), |x| w.v1(x))?;
    let v2 = PotentialOnGrid::from_fn(*grid, boundary, w.units(), |x| w.v2(x))?;
    Ok(PartnerPair { v1, v2 })
}

/// `ψ₀ ∝ exp(−(√(2m)/ħ) ∫ˣ W)`, normalised on `grid`.
///
/// Fails with [`Error::NotNormalizable`] when the result has not decayed at
/// an open edge of the grid that lies inside the domain, which is what a
/// non-normalizable candidate looks like on a finite box.
pub fn ground_state_from_w(w: &Superpotential, grid: &Grid) -> Result<SampledFunction> {
    let values = w.on_grid(grid)?;
    let n = grid.len();
    let c = w.units().c();
    let first = values.iter().position(Option::is_some).unwrap_or(0);
    let mut phi = vec![f64::NAN; n];
    match &w.profile {
        Profile::Analytic {
            antiderivative: Some(f),
            ..
        } => {
            for (i, x) in grid.points().enumerate() {
                if values[i].is_some() {
                    phi[i] = f(x);
                }
            }
        }
        _ => {
            let gl = gauss_legendre(8);
            phi[first] = 0.0;
            for i in first + 1..n {
                if values[i].is_none() {
                    break;
                }
                let piece = match &w.profile {
                    Profile::Sampled { .. } => w.integral(grid.x(i - 1), grid.x(i))?,
                    _ => gl.integrate(grid.x(i - 1), grid.x(i), |x| w.w(x)),
                };
                phi[i] = phi[i - 1] + piece;
            }
        }
    }
    let phi_min = phi
        .iter()
        .copied()
        .filter(|p| p.is_finite())
        .fold(f64::INFINITY, f64::min);
    let psi: Vec<f64> = phi
        .iter()
        .map(|&p| {
            if p.is_finite() {
                libm::exp(-(p - phi_min) / c)
            } else {
                0.0
            }
        })
        .collect();
    let f = SampledFunction::new(*grid, psi)?;
    let max = f.max_modulus();
    let dom = w.domain();
    let leaks = |i: usize, inside: bool| inside && f.values()[i] > 1e-3 * max;
    if leaks(0, grid.x_min() > dom.lo) || leaks(n - 1, grid.x_max() < dom.hi) {
        return Err(Error::NotNormalizable);
    }
    f.normalized()
}

/// `W = −(ħ/√(2m)) ψ₀'/ψ₀` from samples of a nodeless ground state.
///
/// End samples that vanish (hard walls) are dropped, so the returned
/// superpotential lives on the remaining points.
pub fn w_from_ground_state(psi0: &SampledFunction, units: Units) -> Result<Superpotential> {
    let grid = psi0.grid();
    let sign = if psi0.values().iter().sum::<f64>() < 0.0 {
        -1.0
    } else {
        1.0
    };
    let psi: Vec<f64> = psi0.values().iter().map(|v| sign * v).collect();
    let max = psi.iter().fold(0.0_f64, |m, v| m.max(*v));
    let n = psi.len();
    let tiny = 1e-300_f64.max(1e-14 * max);
    let start = usize::from(psi[0] <= tiny);
    let end = if psi[n - 1] <= tiny { n - 2 } else { n - 1 };
    for i in start..=end {
        if psi[i] <= 0.0 {
            return Err(Error::InteriorNode { x: grid.x(i) });
        }
    }
    if end < start + 2 {
        return Err(Error::InvalidGrid("too few nonzero samples"));
    }
    let d = derivative(&psi, grid.spacing());
    let c = units.c();
    let sub = Grid::new(grid.x(start), grid.x(end), end - start + 1)?;
    let w: Vec<f64> = (start..=end).map(|i| -c * d[i] / psi[i]).collect();
    Ok(Superpotential::sampled(SampledFunction::new(sub, w)?).with_units(units))
}

fn apply_first_order<T: Sample>(
    w: &Superpotential,
    psi: &Sampled<T>,
    sign: f64,
) -> Result<Sampled<T>> {
    let grid = *psi.grid();
    let ws = w.on_grid(&grid)?;
    let c = w.units().c();
    let d = derivative(psi.values(), grid.spacing());
    let out = psi
        .values()
        .iter()
        .zip(&d)
        .zip(&ws)
        .map(|((&p, &dp), wv)| match wv {
            Some(wv) => dp * (sign * c) + p * *wv,
            None => T::zero(),
        })
        .collect();
    Sampled::new(grid, out)
}

/// `Aψ = (ħ/√(2m)) ψ' + Wψ`. Wall endpoints are set to zero.
pub fn apply_a<T: Sample>(w: &Superpotential, psi: &Sampled<T>) -> Result<Sampled<T>> {
    apply_first_order(w, psi, 1.0)
}

/// `A†ψ = −(ħ/√(2m)) ψ' + Wψ`. Wall endpoints are set to zero.
pub fn apply_adag<T: Sample>(w: &Superpotential, psi: &Sampled<T>) -> Result<Sampled<T>> {
    apply_first_order(w, psi, -1.0)
}

/// `E^{-1/2} A ψ`: maps a normalised `H₁` eigenstate of energy `E > 0` to
/// the normalised `H₂` eigenstate at the same energy.
pub fn map_to_h2(
    w: &Superpotential,
    psi: &SampledFunction,
    energy: f64,
) -> Result<SampledFunction> {
    if !(energy > 0.0) {
        return Err(Error::Domain {
            what: "energy (must be positive to map between partners)",
            value: energy,
        });
    }
    Ok(apply_a(w, psi)?.scaled(1.0 / libm::sqrt(energy)))
}

/// `E^{-1/2} A† ψ`: the inverse map, from `H₂` to `H₁`.
pub fn map_to_h1(
    w: &Superpotential,
    psi: &SampledFunction,
    energy: f64,
) -> Result<SampledFunction> {
    if !(energy > 0.0) {
        return Err(Error::Domain {
            what: "energy (must be positive to map between partners)",
            value: energy,
        });
    }
    Ok(apply_adag(w, psi)?.scaled(1.0 / libm::sqrt(energy)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    V1,
    V2,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyStatus {
    pub broken: bool,
    pub ground_state_side: Side,
    /// `∫ψ²` of the unnormalised normalizable candidate (`∞` when broken).
    pub norm_of_candidate: f64,
}

const BREAKING_REL_TOL: f64 = 1e-8;
const BREAKING_MAX_STEPS: usize = 60;

const SHELL_POINTS: usize = 2001;

/// `∫ exp(2sΦ/c)` between `from` and `to` with `Φ(from) = phi_from`, on a
/// fixed uniform sampling; also returns `Φ(to)`.
fn shell_norm(w: &Superpotential, s: f64, from: f64, phi_from: f64, to: f64) -> Option<(f64, f64)> {
    let c = w.units().c();
    let h = (to - from) / (SHELL_POINTS - 1) as f64;
    let ws: Vec<f64> = (0..SHELL_POINTS)
        .map(|i| w.w(from + i as f64 * h))
        .collect();
    if ws.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let phi = cumulative(&ws, h);
    let weight: Vec<f64> = phi
        .iter()
        .map(|p| libm::exp(2.0 * s * (phi_from + p) / c))
        .collect();
    let norm = integrate_samples(&weight, libm::fabs(h));
    if norm.is_finite() && norm < 1e300 {
        Some((norm, phi_from + phi[SHELL_POINTS - 1]))
    } else {
        None
    }
}

/// Norm of `exp(2sΦ/c)` on expanding subdomains; `None` when divergent.
fn candidate_norm(w: &Superpotential, s: f64, x0: f64) -> Option<f64> {
    let dom = w.domain();
    let reach = |end: f64, edge: Edge, k: usize| -> f64 {
        if end.is_finite() && edge == Edge::Open {
            end
        } else if end.is_finite() {
            end + (x0 - end) * libm::pow(0.5, (k + 1) as f64)
        } else {
            x0 + libm::copysign(libm::pow(2.0, k as f64), end)
        }
    };
    let mut left = reach(dom.lo, dom.left, 0);
    let mut right = reach(dom.hi, dom.right, 0);
    let (nl, mut phi_left) = shell_norm(w, s, x0, 0.0, left)?;
    let (nr, mut phi_right) = shell_norm(w, s, x0, 0.0, right)?;
    let mut total = nl + nr;
    for k in 1..BREAKING_MAX_STEPS {
        let next_left = reach(dom.lo, dom.left, k);
        let next_right = reach(dom.hi, dom.right, k);
        if next_left == left && next_right == right {
            // both ends are hard edges of a finite domain
            return if k == 1 { Some(total) } else { None };
        }
        let mut added = 0.0;
        if next_left != left {
            let (n, p) = shell_norm(w, s, left, phi_left, next_left)?;
            added += n;
            phi_left = p;
            left = next_left;
        }
        if next_right != right {
            let (n, p) = shell_norm(w, s, right, phi_right, next_right)?;
            added += n;
            phi_right = p;
            right = next_right;
        }
        total += added;
        if !total.is_finite() {
            return None;
        }
        if added <= BREAKING_REL_TOL * total {
            return Some(total);
        }
    }
    None
}

/// Decides whether `exp(−Φ/c)` or `exp(+Φ/c)` is normalizable on the
/// domain of `w`, by integrating on expanding subdomains (infinite ends
/// double, gaps to singular ends halve) until the norm settles.
pub fn detect_breaking(w: &Superpotential) -> Result<SusyStatus> {
    let dom = w.domain();
    let x0 = match (dom.lo.is_finite(), dom.hi.is_finite()) {
        (true, true) => 0.5 * (dom.lo + dom.hi),
        (true, false) => dom.lo + 1.0,
        (false, true) => dom.hi - 1.0,
        (false, false) => 0.0,
    };
    let n1 = candidate_norm(w, -1.0, x0);
    let n2 = candidate_norm(w, 1.0, x0);
    match (n1, n2) {
        (Some(_), Some(_)) => Err(Error::Inconsistent(
            "both zero-mode candidates are normalizable",
        )),
        (Some(n), None) => Ok(SusyStatus {
            broken: false,
            ground_state_side: Side::V1,
            norm_of_candidate: n,
        }),
        (None, Some(n)) => Ok(SusyStatus {
            broken: false,
            ground_state_side: Side::V2,
            norm_of_candidate: n,
        }),
        (None, None) => Ok(SusyStatus {
            broken: true,
            ground_state_side: Side::Neither,
            norm_of_candidate: f64::INFINITY,
        }),
    }
}

/// Residuals of the discretised superalgebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    /// Number of interior grid points (the size of the `H₁` block).
    pub n_interior: usize,
    pub spacing: f64,
    /// `‖[H, Q]‖_F`.
    pub commutator: f64,
    /// `‖{Q, Q†} − H‖_F`.
    pub anticommutator: f64,
    /// `‖Q²‖_F`.
    pub nilpotency: f64,
    /// `max |H₁φ − (−c²φ'' + V₁φ)|` for `φ = sin(π(x − a)/(b − a))`; the
    /// discretisation error of `H₁ = AᵀA`, which is `O(h²)`.
    pub consistency: f64,
}

impl AlgebraReport {
    pub fn max_algebra_residual(&self) -> f64 {
        self.commutator
            .max(self.anticommutator)
            .max(self.nilpotency)
    }
}

/// Staggered-grid discretisation of `A`: it maps the `N` interior nodes to
/// the `N + 1` cell midpoints, with Dirichlet values at the grid ends.
pub fn discrete_a(w: &Superpotential, grid: &Grid) -> Result<SparseMatrix> {
    w.domain().boundary_for(grid)?;
    let n = grid.len() - 2;
    let h = grid.spacing();
    let c = w.units().c();
    let mut a = SparseMatrix::zeros(n + 1, n);
    for j in 0..=n {
        let xm = grid.x_min() + (j as f64 + 0.5) * h;
        let wm = w.w(xm);
        if !wm.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: xm });
        }
        // midpoint j sits between full-grid nodes j and j + 1 (interior j - 1, j)
        if j >= 1 {
            a.add_to(j, j - 1, -c / h + 0.5 * wm);
        }
        if j < n {
            a.add_to(j, j, c / h + 0.5 * wm);
        }
    }
    Ok(a)
}

/// Assembles `H = diag(AᵀA, AAᵀ)`, `Q = [[0, 0], [A, 0]]` and `Q† = Qᵀ` and
/// measures the superalgebra relations.
pub fn algebra_check(w: &Superpotential, grid: &Grid) -> Result<AlgebraReport> {
    let a = discrete_a(w, grid)?;
    let n = a.ncols();
    let at = a.transpose();
    let h1 = at.mul(&a);
    let h2 = a.mul(&at);
    let size = 2 * n + 1;
    let mut h = SparseMatrix::zeros(size, size);
    h.place(0, 0, &h1);
    h.place(n, n, &h2);
    let mut q = SparseMatrix::zeros(size, size);
    q.place(n, 0, &a);
    let qt = q.transpose();

    let commutator = h.mul(&q).add_scaled(-1.0, &q.mul(&h)).frobenius_norm();
    let anticommutator = q
        .mul(&qt)
        .add_scaled(1.0, &qt.mul(&q))
        .add_scaled(-1.0, &h)
        .frobenius_norm();
    let nilpotency = q.mul(&q).frobenius_norm();

    let len = grid.x_max() - grid.x_min();
    let k = core::f64::consts::PI / len;
    let c2 = w.units().kinetic();
    let phi: Vec<f64> = (1..=n)
        .map(|i| libm::sin(k * (grid.x(i) - grid.x_min())))
        .collect();
    let h1phi = h1.mul_vec(&phi);
    let consistency = (1..=n)
        .map(|i| {
            let exact = (c2 * k * k + w.v1(grid.x(i))) * phi[i - 1];
            libm::fabs(h1phi[i - 1] - exact)
        })
        .fold(0.0, f64::max);

    Ok(AlgebraReport {
        n_interior: n,
        spacing: grid.spacing(),
        commutator,
        anticommutator,
        nilpotency,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use core::f64::consts::PI;
    use num_complex::Complex64;

    fn oscillator() -> Superpotential {
        Superpotential::analytic(Domain::LINE, |x| x)
            .with_derivative(|_| 1.0)
            .with_antiderivative(|x| 0.5 * x * x)
    }

    fn tanh_w(b: f64) -> Superpotential {
        Superpotential::analytic(Domain::LINE, move |x| b * libm::tanh(x))
            .with_asymptotes(Some(-b), Some(b))
    }

    fn well() -> Superpotential {
        Superpotential::analytic(Domain::interval(0.0, PI), |x| -libm::cos(x) / libm::sin(x))
    }

    #[test]
    fn oscillator_partners() {
        let w = Superpotential::analytic(Domain::LINE, |x| x); // ω = 2
        for x in [-2.0, 0.3, 1.7] {
            assert!((w.v1(x) - (x * x - 1.0)).abs() < 1e-10);
            assert!((w.v2(x) - (x * x + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn tanh_partner_is_free() {
        let w = tanh_w(1.0);
        for x in [-3.0, -0.5, 0.0, 2.5] {
            let sech = 1.0 / libm::cosh(x);
            assert!((w.v1(x) - (1.0 - 2.0 * sech * sech)).abs() < 1e-10);
            assert!((w.v2(x) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn well_partner_on_grid() {
        let g = Grid::new(0.0, PI, 201).unwrap();
        let pair = partner_potentials(&well(), &g).unwrap();
        assert_eq!(pair.v2.values()[0], f64::INFINITY);
        assert_eq!(pair.v2.boundary(), Boundary::WALLS);
        for i in 1..200 {
            let x = g.x(i);
            let s = libm::sin(x);
            assert!((pair.v2.values()[i] - (2.0 / (s * s) - 1.0)).abs() < 1e-6 * (1.0 / (s * s)));
            assert!((pair.v1.values()[i] + 1.0).abs() < 1e-6 / (s * s));
        }
    }

    #[test]
    fn ground_states() {
        let g = Grid::new(-10.0, 10.0, 2001).unwrap();
        let psi = ground_state_from_w(&oscillator(), &g).unwrap();
        let norm = libm::pow(1.0 / PI, 0.25);
        for (i, x) in g.points().enumerate() {
            assert!((psi.values()[i] - norm * libm::exp(-x * x / 2.0)).abs() < 1e-10);
        }
        // the same state from quadrature of W alone
        let bare = Superpotential::analytic(Domain::LINE, |x| x);
        let q = ground_state_from_w(&bare, &g).unwrap();
        assert!(q
            .values()
            .iter()
            .zip(psi.values())
            .all(|(a, b)| (a - b).abs() < 1e-10));

        let psi =
            ground_state_from_w(&tanh_w(1.0), &Grid::new(-30.0, 30.0, 3001).unwrap()).unwrap();
        let g = *psi.grid();
        for (i, x) in g.points().enumerate() {
            let exact = libm::sqrt(0.5) / libm::cosh(x);
            assert!((psi.values()[i] - exact).abs() < 1e-8);
        }

        let g = Grid::new(0.0, PI, 1001).unwrap();
        let psi = ground_state_from_w(&well(), &g).unwrap();
        for (i, x) in g.points().enumerate() {
            assert!((psi.values()[i] - libm::sqrt(2.0 / PI) * libm::sin(x)).abs() < 1e-8);
        }
    }

    #[test]
    fn unbounded_candidate_is_rejected() {
        let g = Grid::new(-10.0, 10.0, 201).unwrap();
        let w = Superpotential::analytic(Domain::LINE, |x| -x);
        assert_eq!(ground_state_from_w(&w, &g), Err(Error::NotNormalizable));
    }

    #[test]
    fn superpotential_from_ground_states() {
        let g = Grid::new(0.0, PI, 2001).unwrap();
        let sin = g.sample(libm::sin).unwrap();
        let w = w_from_ground_state(&sin, Units::default()).unwrap();
        let sin2 = g.sample(|x| libm::sin(x) * libm::sin(x)).unwrap();
        let w2 = w_from_ground_state(&sin2, Units::default()).unwrap();
        for x in [0.2, 1.0, 2.0, 2.9] {
            let cot = libm::cos(x) / libm::sin(x);
            assert!((w.w(x) + cot).abs() < 1e-6, "{} {}", w.w(x), -cot);
            assert!((w2.w(x) + 2.0 * cot).abs() < 1e-6);
        }
        let g = Grid::new(-6.0, 6.0, 1201).unwrap();
        let gauss = g.sample(|x| libm::exp(-x * x / 2.0)).unwrap();
        let w = w_from_ground_state(&gauss, Units::default()).unwrap();
        for x in [-3.0, -1.0, 0.0, 2.2] {
            assert!((w.w(x) - x).abs() < 1e-6);
        }
        let odd = g.sample(|x| x * libm::exp(-x * x)).unwrap();
        assert!(matches!(
            w_from_ground_state(&odd, Units::default()),
            Err(Error::InteriorNode { .. })
        ));
    }

    #[test]
    fn units_rescale_the_superpotential() {
        let units = Units::new(2.0, 4.0).unwrap();
        let g = Grid::new(-6.0, 6.0, 1201).unwrap();
        let gauss = g.sample(|x| libm::exp(-x * x / 2.0)).unwrap();
        let w = w_from_ground_state(&gauss, units).unwrap();
        assert!((w.w(1.5) - 1.5).abs() < 1e-8); // c = 2/√4 = 1
        let units = Units::new(3.0, 1.0).unwrap();
        let w = w_from_ground_state(&gauss, units).unwrap();
        assert!((w.w(1.5) - 4.5).abs() < 1e-7);
    }

    #[test]
    fn annihilation_and_creation() {
        let g = Grid::new(-20.0, 20.0, 4001).unwrap();
        let psi0 = g.sample(|x| 1.0 / libm::cosh(x)).unwrap();
        let a0 = apply_a(&tanh_w(1.0), &psi0).unwrap();
        assert!(a0.max_modulus() < 1e-7);

        // W = 2 tanh x: A(sech x tanh x) = sech x, and A†(sech x) = 3 sech x tanh x
        let w2 = tanh_w(2.0);
        let psi1 = g.sample(|x| libm::tanh(x) / libm::cosh(x)).unwrap();
        let down = apply_a(&w2, &psi1).unwrap();
        let up = apply_adag(&w2, &psi0).unwrap();
        for (i, x) in g.points().enumerate().skip(2).take(3996) {
            let sech = 1.0 / libm::cosh(x);
            assert!((down.values()[i] - sech).abs() < 1e-7);
            assert!((up.values()[i] - 3.0 * sech * libm::tanh(x)).abs() < 1e-7);
        }
    }

    #[test]
    fn well_excited_state_maps_to_partner_ground_state() {
        let g = Grid::new(0.0, PI, 4001).unwrap();
        let psi1 = g
            .sample(|x| libm::sqrt(2.0 / PI) * libm::sin(2.0 * x))
            .unwrap();
        // first excited level of V₁ = −1 sits at E = 3
        let mapped = map_to_h2(&well(), &psi1, 3.0).unwrap();
        let target = g
            .sample(|x| -2.0 * libm::sqrt(2.0 / (3.0 * PI)) * libm::sin(x) * libm::sin(x))
            .unwrap();
        let n2 = mapped.norm_squared();
        assert!((n2 - 1.0).abs() < 1e-6, "{n2}");
        let overlap = mapped.overlap(&target).unwrap();
        assert!((overlap.abs() - 1.0).abs() < 1e-6, "{overlap}");
        assert_eq!(psi1.nodes(1e-9), 1);
        assert_eq!(mapped.nodes(1e-9), 0);
    }

    #[test]
    fn creation_on_plane_wave() {
        let g = Grid::new(-5.0, 5.0, 2001).unwrap();
        let k = 1.3;
        let wave = Sampled::from_fn(g, |x| Complex64::new(0.0, k * x).exp()).unwrap();
        let out = apply_adag(&tanh_w(1.0), &wave).unwrap();
        for (i, x) in g.points().enumerate().skip(2).take(1996) {
            let expect = Complex64::new(libm::tanh(x), -k) * Complex64::new(0.0, k * x).exp();
            assert!((out.values()[i] - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn breaking_detection() {
        let s = detect_breaking(&oscillator()).unwrap();
        assert!(!s.broken);
        assert_eq!(s.ground_state_side, Side::V1);
        assert!((s.norm_of_candidate - libm::sqrt(PI)).abs() < 1e-6);

        let s = detect_breaking(&tanh_w(1.0)).unwrap();
        assert!(!s.broken);
        assert_eq!(s.ground_state_side, Side::V1);
        assert!((s.norm_of_candidate - 2.0).abs() < 1e-6);

        let even = Superpotential::analytic(Domain::LINE, |x| x * x);
        let s = detect_breaking(&even).unwrap();
        assert!(s.broken);
        assert_eq!(s.ground_state_side, Side::Neither);

        let flipped = Superpotential::analytic(Domain::LINE, |x| -x);
        assert_eq!(
            detect_breaking(&flipped).unwrap().ground_state_side,
            Side::V2
        );

        let s = detect_breaking(&well()).unwrap();
        assert_eq!(s.ground_state_side, Side::V1);
        assert!((s.norm_of_candidate - PI / 2.0).abs() < 1e-6);
    }

    #[test]
    fn both_normalizable_is_inconsistent() {
        let g = Grid::new(-1.0, 1.0, 101).unwrap();
        let w = Superpotential::sampled(g.sample(|x| x).unwrap());
        assert!(matches!(detect_breaking(&w), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn superalgebra_on_oscillator() {
        let g = Grid::new(-8.0, 8.0, 800).unwrap();
        let r = algebra_check(&oscillator(), &g).unwrap();
        assert_eq!(r.nilpotency, 0.0);
        assert!(r.commutator <= 1e-8, "{}", r.commutator);
        assert!(r.anticommutator <= 1e-8, "{}", r.anticommutator);
        // the staggered factorisation is a second-order discretisation
        let fine = algebra_check(&oscillator(), &Grid::new(-8.0, 8.0, 1599).unwrap()).unwrap();
        let ratio = r.consistency / fine.consistency;
        assert!(ratio > 3.5 && ratio < 4.5, "{ratio}");
    }

    #[test]
    fn discrete_factorisation_matches_continuum_spectrum() {
        // eigenvalues of AᵀA approximate 0, 2, 4 for W = x
        let g = Grid::new(-8.0, 8.0, 801).unwrap();
        let a = discrete_a(&oscillator(), &g).unwrap();
        let h1 = a.transpose().mul(&a);
        let psi = ground_state_from_w(&oscillator(), &g).unwrap();
        let inner: Vec<f64> = psi.values()[1..800].to_vec();
        let r = h1.mul_vec(&inner);
        let res = r.iter().map(|v| v * v).sum::<f64>() * g.spacing();
        assert!(libm::sqrt(res) < 1e-3);
        assert!((integrate(&psi).unwrap() - libm::sqrt(2.0) * libm::pow(PI, 0.25)).abs() < 1e-8);
    }
}
