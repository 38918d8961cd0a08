//! Lowest-order WKB and SUSY-inspired WKB quantization.
//!
//! WKB: `(1/c) ∫ √(E − V) dx = (n + ½)π` between the classical turning
//! points. SWKB replaces `V` by `W²`: `nπ` for `V₁`, `(n + 1)π` for `V₂`.
//! Both are exact for the harmonic oscillator; SWKB is exact for every
//! shape-invariant `W`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::numerics::{bisect_root, gauss_legendre, integrate_with, Bracket};
use crate::sip::SipEntry;
use crate::susy::{Domain, RealFn, Superpotential, Units};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantizationMode {
    Wkb,
    SwkbV1,
    SwkbV2,
}

/// A single-well quantization problem: `f = V` for WKB, `f = W²` for SWKB.
#[derive(Clone)]
pub struct QuantizationProblem {
    mode: QuantizationMode,
    f: RealFn,
    w: Option<Superpotential>,
    domain: Domain,
    units: Units,
}

impl core::fmt::Debug for QuantizationProblem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("QuantizationProblem")
            .field("mode", &self.mode)
            .field("domain", &self.domain)
            .field("units", &self.units)
            .finish()
    }
}

const SCAN_POINTS: usize = 4001;

impl QuantizationProblem {
    pub fn wkb(v: impl Fn(f64) -> f64 + Send + Sync + 'static, domain: Domain, units: Units) -> Self {
        Self {
            mode: QuantizationMode::Wkb,
            f: Arc::new(v),
            w: None,
            domain,
            units,
        }
    }

    /// SWKB for `V₁` or `V₂` of `w`. [`QuantizationMode::Wkb`] gives
    /// ordinary WKB on `V₁ = W² − cW'`.
    pub fn from_superpotential(w: &Superpotential, mode: QuantizationMode) -> Self {
        let f: RealFn = if mode == QuantizationMode::Wkb {
            let w = w.clone();
            Arc::new(move |x| w.v1(x))
        } else {
            let w = w.clone();
            Arc::new(move |x| {
                let v = w.w(x);
                v * v
            })
        };
        Self {
            mode,
            f,
            w: Some(w.clone()),
            domain: w.domain(),
            units: w.units(),
        }
    }

    pub fn for_entry(entry: &SipEntry, mode: QuantizationMode) -> Self {
        Self::from_superpotential(&entry.superpotential(), mode)
    }

    pub fn mode(&self) -> QuantizationMode {
        self.mode
    }

    /// Right-hand side of the quantization condition in units of `π`.
    pub fn target(&self, n: usize) -> f64 {
        let n = n as f64;
        match self.mode {
            QuantizationMode::Wkb => n + 0.5,
            QuantizationMode::SwkbV1 => n,
            QuantizationMode::SwkbV2 => n + 1.0,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Scan window inside the domain, widened on infinite sides until the
    /// minimum of `f` is interior.
    fn window(&self) -> (f64, f64) {
        let d = self.domain;
        let inset = |a: f64, b: f64| 1e-9 * libm::fmax(1.0, libm::fabs(b - a));
        let mut half = 50.0;
        loop {
            let lo = if d.lo.is_finite() {
                d.lo + inset(d.lo, d.hi.min(d.lo + 2.0 * half))
            } else if d.hi.is_finite() {
                d.hi - 2.0 * half
            } else {
                -half
            };
            let hi = if d.hi.is_finite() {
                d.hi - inset(d.hi.max(d.hi - 2.0 * half), d.hi)
            } else {
                lo.max(0.0) + 2.0 * half
            };
            let (k, _) = self.scan_min(lo, hi);
            let at_open_edge =
                (k == 0 && !d.lo.is_finite()) || (k == SCAN_POINTS - 1 && !d.hi.is_finite());
            if !at_open_edge || half > 1e6 {
                return (lo, hi);
            }
            half *= 4.0;
        }
    }

    fn scan_min(&self, lo: f64, hi: f64) -> (usize, f64) {
        let h = (hi - lo) / (SCAN_POINTS - 1) as f64;
        (0..SCAN_POINTS)
            .map(|i| (i, self.eval(lo + i as f64 * h)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
    }

    /// Location and value of the bottom of the well. For SWKB this is the
    /// zero of `W` when SUSY is unbroken.
    pub fn minimum(&self) -> Result<(f64, f64)> {
        let (lo, hi) = self.window();
        let h = (hi - lo) / (SCAN_POINTS - 1) as f64;
        let (k, _) = self.scan_min(lo, hi);
        let a = lo + (k.max(1) - 1) as f64 * h;
        let b = lo + (k + 1).min(SCAN_POINTS - 1) as f64 * h;
        if let (Some(w), true) = (&self.w, self.mode != QuantizationMode::Wkb) {
            if let Ok(br) = Bracket::new(|x| w.w(x), a, b) {
                let x0 = bisect_root(|x| w.w(x), br, 1e-15 * libm::fmax(1.0, libm::fabs(a)))?;
                let v = w.w(x0);
                return Ok((x0, v * v));
            }
        }
        // golden-section refinement of the scanned minimum
        let g = 0.5 * (libm::sqrt(5.0) - 1.0);
        let (mut a, mut b) = (a, b);
        for _ in 0..200 {
            if b - a <= 1e-14 * libm::fmax(1.0, libm::fabs(a)) {
                break;
            }
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if self.eval(c) < self.eval(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let x = 0.5 * (a + b);
        Ok((x, self.eval(x)))
    }

    /// Point on one side of `x_min` where `f > energy`.
    fn outer_point(&self, x_min: f64, energy: f64, right: bool) -> Option<f64> {
        let end = if right { self.domain.hi } else { self.domain.lo };
        let sign = if right { 1.0 } else { -1.0 };
        for k in 0..200 {
            let x = if end.is_finite() {
                end + (x_min - end) * libm::pow(0.5, (k + 1) as f64)
            } else {
                x_min + sign * 1e-3 * libm::pow(2.0, k as f64)
            };
            if x == end {
                return None;
            }
            if self.eval(x) > energy {
                return Some(x);
            }
        }
        None
    }

    fn turning_points_from(&self, x_min: f64, energy: f64) -> Result<(f64, f64)> {
        let g = |x: f64| {
            let v = self.eval(x);
            if v.is_finite() {
                energy - v
            } else {
                -1.0
            }
        };
        let xl = self.outer_point(x_min, energy, false);
        let xr = self.outer_point(x_min, energy, true);
        let (Some(xl), Some(xr)) = (xl, xr) else {
            let found = usize::from(xl.is_some()) + usize::from(xr.is_some());
            return Err(Error::TurningPoints { found });
        };
        let a = bisect_root(g, Bracket::new(g, xl, x_min)?, 1e-12 * libm::fmax(1.0, libm::fabs(xl)))?;
        let b = bisect_root(g, Bracket::new(g, x_min, xr)?, 1e-12 * libm::fmax(1.0, libm::fabs(xr)))?;
        if let (Some(w), true) = (&self.w, self.mode != QuantizationMode::Wkb) {
            if !(w.w(a) < 0.0 && w.w(b) > 0.0) {
                return Err(Error::Unsupported(
                    "SWKB needs W < 0 at the left and W > 0 at the right turning point",
                ));
            }
        }
        Ok((a, b))
    }

    /// Action phase `(1/c) ∫ₐᵇ √(E − f) dx`, with `x = m + s·sin θ`
    /// removing the square-root endpoint behaviour.
    fn phase_between(&self, a: f64, b: f64, energy: f64) -> Result<f64> {
        let (m, s) = (0.5 * (a + b), 0.5 * (b - a));
        let c = self.units.c();
        let integral = integrate_with(-FRAC_PI_2, FRAC_PI_2, 1e-12, |t| {
            let x = m + s * libm::sin(t);
            let d = energy - self.eval(x);
            if d > 0.0 {
                libm::sqrt(d) * s * libm::cos(t)
            } else {
                0.0
            }
        })?;
        Ok(integral / c)
    }
}

/// The two classical turning points `a < b` at `energy`, located by a scan
/// for sign changes of `E − f` and refined by bisection to `1e−12`.
pub fn turning_points(problem: &QuantizationProblem, energy: f64) -> Result<(f64, f64)> {
    let (lo, hi) = problem.window();
    let h = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let allowed: Vec<bool> = (0..SCAN_POINTS)
        .map(|i| energy - problem.eval(lo + i as f64 * h) > 0.0)
        .collect();
    let changes = allowed.windows(2).filter(|w| w[0] != w[1]).count();
    let inside = allowed.iter().filter(|a| **a).count();
    if changes != 2 || allowed[0] || allowed[SCAN_POINTS - 1] {
        if inside == 0 {
            return Err(Error::TurningPoints { found: 0 });
        }
        return Err(Error::TurningPoints { found: changes });
    }
    let k = allowed.iter().position(|a| *a).unwrap();
    problem.turning_points_from(lo + k as f64 * h, energy)
}

/// `(1/c) ∫ₐᵇ √(E − f) dx` between the turning points; zero at or below
/// the bottom of the well.
pub fn action_integral(problem: &QuantizationProblem, energy: f64) -> Result<f64> {
    let (x_min, f_min) = problem.minimum()?;
    if energy <= f_min {
        return Ok(0.0);
    }
    let (a, b) = problem.turning_points_from(x_min, energy)?;
    problem.phase_between(a, b, energy)
}

/// The `O(ħ)` term `½ ∫ₐᵇ W'/√(E − W²) dx` of the expanded WKB condition
/// for `V₁`; it equals `π/2` whenever `W` changes sign between the turning
/// points.
pub fn subleading_phase(w: &Superpotential, energy: f64) -> Result<f64> {
    let p = QuantizationProblem::from_superpotential(w, QuantizationMode::SwkbV1);
    let (x_min, _) = p.minimum()?;
    let (a, b) = p.turning_points_from(x_min, energy)?;
    let (m, s) = (0.5 * (a + b), 0.5 * (b - a));
    // composite Gauss-Legendre: the integrand is finite but noisy at θ = ±π/2
    let gl = gauss_legendre(20);
    let panels = 64;
    let dt = PI / panels as f64;
    let integral: f64 = (0..panels)
        .map(|k| {
            let t0 = -FRAC_PI_2 + k as f64 * dt;
            gl.integrate(t0, t0 + dt, |t| {
                let x = m + s * libm::sin(t);
                let wv = w.w(x);
                let d = energy - wv * wv;
                if d > 0.0 {
                    w.dw(x) * s * libm::cos(t) / libm::sqrt(d)
                } else {
                    0.0
                }
            })
        })
        .sum();
    Ok(0.5 * integral)
}

/// Energy of level `n` from the quantization condition, by bisection to
/// `1e−10` relative on an automatically grown bracket.
pub fn quantize(problem: &QuantizationProblem, n: usize) -> Result<f64> {
    let (x_min, f_min) = problem.minimum()?;
    let target = problem.target(n) * PI;
    if target == 0.0 {
        return Ok(f_min);
    }
    let phase = |e: f64| -> Result<f64> {
        if e <= f_min {
            return Ok(0.0);
        }
        let (a, b) = problem.turning_points_from(x_min, e)?;
        problem.phase_between(a, b, e)
    };
    let scale = libm::fmax(1.0, libm::fabs(f_min));
    let mut lo = f_min;
    let mut step = scale;
    let mut hi = f_min + step;
    let mut guard = 0;
    loop {
        guard += 1;
        if guard > 400 {
            return Err(Error::NoConvergence("quantization bracket"));
        }
        match phase(hi) {
            Ok(p) if p >= target => break,
            Ok(_) => {
                lo = hi;
                step *= 2.0;
                hi = lo + step;
            }
            Err(Error::TurningPoints { .. }) => {
                // past the top of the well: close in on the threshold
                let bad = hi;
                hi = 0.5 * (lo + bad);
                if bad - lo <= 1e-13 * libm::fmax(1.0, libm::fabs(bad)) {
                    return Err(Error::AboveThreshold {
                        energy: lo,
                        threshold: bad,
                    });
                }
                step = 0.5 * (bad - lo);
            }
            Err(e) => return Err(e),
        }
    }
    let mut fail = None;
    let g = |e: f64| match phase(e) {
        Ok(p) => p - target,
        Err(err) => {
            fail.get_or_insert(err);
            f64::NAN
        }
    };
    let e = {
        let g_cell = core::cell::RefCell::new(g);
        let call = |e: f64| (g_cell.borrow_mut())(e);
        let br = Bracket::new(call, lo, hi)?;
        bisect_root(call, br, 1e-10 * libm::fmax(1.0, libm::fabs(hi)))?
    };
    match fail {
        Some(err) => Err(err),
        None => Ok(e),
    }
}

/// One line of [`exactness_audit`].
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub entry: &'static str,
    pub n: usize,
    pub exact: f64,
    pub swkb: f64,
    /// `None` when ordinary WKB has no two turning points for `V₁`.
    pub wkb: Option<f64>,
}

impl AuditRow {
    pub fn swkb_ok(&self) -> bool {
        libm::fabs(self.swkb - self.exact) <= 1e-7 * libm::fmax(1.0, libm::fabs(self.exact))
    }

    pub fn wkb_relative_error(&self) -> Option<f64> {
        self.wkb
            .map(|w| libm::fabs(w - self.exact) / libm::fmax(1.0, libm::fabs(self.exact)))
    }
}

/// SWKB and WKB levels against the closed form for `n ≤ n_max` (capped at
/// the bound-state count) of each entry.
pub fn exactness_audit(entries: &[SipEntry], n_max: usize) -> Result<Vec<AuditRow>> {
    let mut rows = Vec::new();
    for e in entries {
        let swkb = QuantizationProblem::for_entry(e, QuantizationMode::SwkbV1);
        let wkb = QuantizationProblem::for_entry(e, QuantizationMode::Wkb);
        let last = e
            .bound_state_count()
            .map_or(n_max, |c| n_max.min(c.saturating_sub(1)));
        for n in 0..=last {
            rows.push(AuditRow {
                entry: e.kind.name(),
                n,
                exact: e.energy(n),
                swkb: quantize(&swkb, n)?,
                wkb: quantize(&wkb, n).ok(),
            });
        }
    }
    Ok(rows)
}
