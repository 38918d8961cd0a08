//! Bound states of `−(ħ²/2m) d²/dx² + V` on a box, and Bloch-sector
//! eigenvalues of periodic potentials.
//!
//! Box problems use Dirichlet conditions at both grid endpoints. The
//! discretisation is a tridiagonal pencil (three-point or Numerov); levels
//! come from Sturm-count bisection, vectors from inverse iteration, and the
//! energies are Richardson-extrapolated over three nested grids when the
//! point count allows it. Periodic problems use a sixth-order cyclic stencil
//! and a dense symmetric eigensolver.

mod dense;
mod tridiag;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::numerics::{Grid, SampledFunction};
use crate::potential::{Boundary, Edge, PotentialOnGrid};
use crate::susy::Units;
use crate::{Error, Result};

use dense::{symmetric_eigen, Dense};
use tridiag::Pencil;

/// Relative amplitude below which samples are ignored when counting nodes.
pub const NODE_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    /// Second-order `(ψ_{i−1} − 2ψ_i + ψ_{i+1})/h²`.
    ThreePoint,
    /// Fourth-order Numerov weighting of the potential term.
    Numerov,
    /// Numerov on open boxes, three-point when an edge is a wall. Numerov
    /// drops the finite limit of `Vψ` at a singular wall and degrades to
    /// second order there, which extrapolation cannot repair.
    Auto,
}

impl Stencil {
    fn resolve(self, boundary: Boundary) -> Stencil {
        match (self, boundary) {
            (Stencil::Auto, Boundary::Box { left, right })
                if left == Edge::Wall || right == Edge::Wall =>
            {
                Stencil::ThreePoint
            }
            (Stencil::Auto, _) => Stencil::Numerov,
            (s, _) => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub stencil: Stencil,
    /// Extrapolate energies over `h`, `2h`, `4h` when `(n − 1) % 4 == 0`.
    pub richardson: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            stencil: Stencil::Auto,
            richardson: true,
        }
    }
}

/// Boundary condition for a single solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    Dirichlet,
    /// `ψ(x + L) = e^{ikL} ψ(x)` with the given `kL`.
    Bloch(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub energy: f64,
    /// Normalised on the grid (over one period for Bloch problems).
    pub psi: SampledFunction,
    /// Interior sign changes; per period for Bloch problems.
    pub nodes: usize,
    /// `|E_extrapolated − E_lower order|` when extrapolation ran.
    pub error_estimate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<EigenPair>,
    /// Fewer levels than requested lie below the continuum edge (or the
    /// grid ran out of unknowns).
    pub truncated: bool,
    pub continuum_edge: Option<f64>,
    /// Largest `max|ψ|` over the outer 2% of an open edge, relative to
    /// `max|ψ|`, across the returned levels.
    pub max_edge_leakage: f64,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

fn box_pencil(v: &PotentialOnGrid, stencil: Stencil) -> Pencil {
    let stencil = stencil.resolve(v.boundary());
    let vals = v.values();
    let n = vals.len() - 2;
    let h = v.grid().spacing();
    let t = v.units().kinetic() / (h * h);
    let inner = &vals[1..vals.len() - 1];
    match stencil {
        Stencil::ThreePoint | Stencil::Auto => Pencil {
            a_diag: inner.iter().map(|&vi| 2.0 * t + vi).collect(),
            a_lower: vec![-t; n.saturating_sub(1)],
            a_upper: vec![-t; n.saturating_sub(1)],
            b_diag: 1.0,
            b_off: 0.0,
        },
        Stencil::Numerov => Pencil {
            a_diag: inner.iter().map(|&vi| 2.0 * t + 10.0 * vi / 12.0).collect(),
            // row i+1, column i
            a_lower: inner.windows(2).map(|w| -t + w[0] / 12.0).collect(),
            // row i, column i+1
            a_upper: inner.windows(2).map(|w| -t + w[1] / 12.0).collect(),
            b_diag: 10.0 / 12.0,
            b_off: 1.0 / 12.0,
        },
    }
}

fn lowest_levels(v: &PotentialOnGrid, count: usize, stencil: Stencil) -> Result<Vec<f64>> {
    let p = box_pencil(v, stencil);
    (0..count.min(p.len())).map(|k| p.eigenvalue(k)).collect()
}

fn orient(values: &mut [f64]) {
    let max = values.iter().fold(0.0_f64, |m, v| m.max(libm::fabs(*v)));
    if let Some(first) = values.iter().find(|v| libm::fabs(**v) > 1e-3 * max) {
        if *first < 0.0 {
            for v in values.iter_mut() {
                *v = -*v;
            }
        }
    }
}

fn edge_leakage(values: &[f64], boundary: Boundary) -> f64 {
    let Boundary::Box { left, right } = boundary else {
        return 0.0;
    };
    let n = values.len();
    let max = values.iter().fold(0.0_f64, |m, v| m.max(libm::fabs(*v)));
    if max == 0.0 {
        return 0.0;
    }
    let window = (n / 50).max(2).min(n);
    let peak = |s: &[f64]| s.iter().fold(0.0_f64, |m, v| m.max(libm::fabs(*v)));
    let mut leak = 0.0_f64;
    if left == Edge::Open {
        leak = leak.max(peak(&values[..window]) / max);
    }
    if right == Edge::Open {
        leak = leak.max(peak(&values[n - window..]) / max);
    }
    leak
}

/// Lowest `count` bound states with the default options (automatic
/// stencil, Richardson extrapolation).
pub fn bound_states(v: &PotentialOnGrid, count: usize) -> Result<Spectrum> {
    bound_states_with(v, count, SolverOptions::default())
}

/// Lowest `count` Dirichlet eigenpairs of `v`.
///
/// Levels at or above the continuum edge (the lower potential value at an
/// open end of the box) are dropped and the spectrum is flagged truncated.
pub fn bound_states_with(
    v: &PotentialOnGrid,
    count: usize,
    opts: SolverOptions,
) -> Result<Spectrum> {
    if v.boundary() == Boundary::Periodic {
        return Err(Error::Unsupported(
            "periodic potentials are solved with band_solve",
        ));
    }
    let n = v.grid().len();
    if n < 5 {
        return Err(Error::InvalidGrid("need at least 5 points"));
    }
    let stencil = opts.stencil.resolve(v.boundary());
    let pencil = box_pencil(v, stencil);
    let wanted = count.min(pencil.len());
    let fine: Vec<f64> = (0..wanted)
        .map(|k| pencil.eigenvalue(k))
        .collect::<Result<_>>()?;

    let mut energies = fine.clone();
    let mut estimates = vec![None; wanted];
    if opts.richardson {
        if let Some(mid) = v.coarsen().filter(|_| (n - 1).is_multiple_of(4)) {
            if let Some(coarse) = mid.coarsen() {
                if coarse.grid().len() - 2 >= wanted {
                    let e2 = lowest_levels(&mid, wanted, stencil)?;
                    let e1 = lowest_levels(&coarse, wanted, stencil)?;
                    for k in 0..wanted {
                        let (r2, r1) = match stencil {
                            Stencil::ThreePoint | Stencil::Auto => {
                                let r1 = (4.0 * fine[k] - e2[k]) / 3.0;
                                let r1c = (4.0 * e2[k] - e1[k]) / 3.0;
                                ((16.0 * r1 - r1c) / 15.0, r1)
                            }
                            Stencil::Numerov => {
                                let r1 = (16.0 * fine[k] - e2[k]) / 15.0;
                                let r1c = (16.0 * e2[k] - e1[k]) / 15.0;
                                ((64.0 * r1 - r1c) / 63.0, r1)
                            }
                        };
                        energies[k] = r2;
                        estimates[k] = Some(libm::fabs(r2 - r1));
                    }
                }
            }
        }
    }

    let edge = v.continuum_edge();
    let mut levels = Vec::with_capacity(wanted);
    let mut leakage = 0.0_f64;
    for k in 0..wanted {
        if edge.is_some_and(|e| energies[k] >= e) {
            break;
        }
        let inner = pencil.eigenvector(fine[k])?;
        let mut values = Vec::with_capacity(n);
        values.push(0.0);
        values.extend_from_slice(&inner);
        values.push(0.0);
        orient(&mut values);
        let psi = SampledFunction::new(*v.grid(), values)?.normalized()?;
        leakage = leakage.max(edge_leakage(psi.values(), v.boundary()));
        levels.push(EigenPair {
            energy: energies[k],
            nodes: psi.nodes(NODE_THRESHOLD),
            psi,
            error_estimate: estimates[k],
        });
    }
    Ok(Spectrum {
        truncated: levels.len() < count,
        levels,
        continuum_edge: edge,
        max_edge_leakage: leakage,
    })
}

/// Reduced radial problem on `[0, r_max]`: adds `(ħ²/2m) l(l+1)/r²` to `v`,
/// imposes `u(0) = 0` at the origin itself and solves like
/// [`bound_states`].
pub fn radial_bound_states(
    v: impl Fn(f64) -> f64,
    l: u32,
    r_max: f64,
    n_points: usize,
    units: Units,
    count: usize,
) -> Result<Spectrum> {
    let grid = Grid::new(0.0, r_max, n_points)?;
    let boundary = Boundary::Box {
        left: Edge::Wall,
        right: Edge::Open,
    };
    let ll = (l * (l + 1)) as f64 * units.kinetic();
    let pot = PotentialOnGrid::from_fn(grid, boundary, units, |r| v(r) + ll / (r * r))?;
    bound_states(&pot, count)
}

const CYCLIC: [f64; 4] = [-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0];

fn period_samples(v: &PotentialOnGrid) -> Result<(usize, f64)> {
    if v.boundary() != Boundary::Periodic {
        return Err(Error::Unsupported(
            "Bloch conditions need a periodic potential",
        ));
    }
    let n = v.grid().len() - 1;
    if n < 7 {
        return Err(Error::InvalidGrid("need at least 8 points per period"));
    }
    Ok((n, v.grid().spacing()))
}

/// Real cyclic Hamiltonian for `kL = 0` (`sign = 1`) or `kL = π`
/// (`sign = −1`).
fn cyclic_real(v: &PotentialOnGrid, sign: f64) -> Result<Dense> {
    let (n, h) = period_samples(v)?;
    let t = v.units().kinetic() / (h * h);
    let mut m = Dense::zeros(n);
    for i in 0..n {
        m.add(i, i, v.values()[i] - t * CYCLIC[0]);
        for (d, &coef) in CYCLIC.iter().enumerate().skip(1) {
            let up = i + d;
            let (j, s) = if up >= n { (up - n, sign) } else { (up, 1.0) };
            m.add(i, j, -t * coef * s);
            m.add(j, i, -t * coef * s);
        }
    }
    Ok(m)
}

/// Sign changes around one period, including the wrap from the last sample
/// to `sign · ψ_0`.
fn cyclic_nodes(values: &[f64], sign: f64) -> usize {
    let max = values.iter().fold(0.0_f64, |m, v| m.max(libm::fabs(*v)));
    let signs: Vec<f64> = values
        .iter()
        .filter(|v| libm::fabs(**v) > NODE_THRESHOLD * max)
        .map(|v| if *v > 0.0 { 1.0 } else { -1.0 })
        .collect();
    if signs.is_empty() {
        return 0;
    }
    let inner = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let wrap = usize::from(signs[signs.len() - 1] != sign * signs[0]);
    inner + wrap
}

/// Lowest `count` eigenpairs for periodic (`kL = 0`) or antiperiodic
/// (`kL = π`) conditions over the period spanned by `v`'s grid, whose last
/// sample repeats the first. Other phases go through [`bloch_energies`].
pub fn band_solve(v: &PotentialOnGrid, k_l: f64, count: usize) -> Result<Vec<EigenPair>> {
    let sign = if libm::fabs(k_l) < 1e-12 {
        1.0
    } else if libm::fabs(k_l - PI) < 1e-12 {
        -1.0
    } else {
        return Err(Error::Unsupported(
            "eigenvectors only for kL = 0 or π; use bloch_energies",
        ));
    };
    let (n, _) = period_samples(v)?;
    let (vals, z) = symmetric_eigen(cyclic_real(v, sign)?)?;
    let mut out = Vec::with_capacity(count.min(n));
    for (k, &energy) in vals.iter().enumerate().take(count) {
        let mut values: Vec<f64> = (0..n).map(|i| z.at(i, k)).collect();
        let nodes = cyclic_nodes(&values, sign);
        values.push(sign * values[0]);
        orient(&mut values);
        let psi = SampledFunction::new(*v.grid(), values)?.normalized()?;
        out.push(EigenPair {
            energy,
            psi,
            nodes,
            error_estimate: None,
        });
    }
    Ok(out)
}

/// Lowest `count` energies for an arbitrary Bloch phase `kL`, from the real
/// symmetric embedding `[[Re H, −Im H], [Im H, Re H]]` of the Hermitian
/// cyclic Hamiltonian (every level appears twice there).
pub fn bloch_energies(v: &PotentialOnGrid, k_l: f64, count: usize) -> Result<Vec<f64>> {
    let (n, h) = period_samples(v)?;
    let t = v.units().kinetic() / (h * h);
    let (c, s) = (libm::cos(k_l), libm::sin(k_l));
    let mut m = Dense::zeros(2 * n);
    for i in 0..n {
        let d = v.values()[i] - t * CYCLIC[0];
        m.add(i, i, d);
        m.add(n + i, n + i, d);
        for (dd, &coef) in CYCLIC.iter().enumerate().skip(1) {
            let up = i + dd;
            // H[i][j] = −t·coef·e^{ikL} when the neighbour wraps
            let (j, re, im) = if up >= n {
                (up - n, -t * coef * c, -t * coef * s)
            } else {
                (up, -t * coef, 0.0)
            };
            // H[i][j] and its Hermitian mirror H[j][i] = conj
            m.add(i, j, re);
            m.add(n + i, n + j, re);
            m.add(n + i, j, im);
            m.add(i, n + j, -im);
            m.add(j, i, re);
            m.add(n + j, n + i, re);
            m.add(n + j, i, -im);
            m.add(j, n + i, im);
        }
    }
    let (vals, _) = symmetric_eigen(m)?;
    Ok(vals.into_iter().step_by(2).take(count).collect())
}

/// Trace of the one-period transfer matrix at energy `e` (RK4 with step
/// `2h` so that midpoints fall on samples). Allowed bands have `|D| ≤ 2`.
pub fn hill_discriminant(v: &PotentialOnGrid, e: f64) -> Result<f64> {
    period_samples(v)?;
    let n = v.grid().len();
    if !(n - 1).is_multiple_of(2) {
        return Err(Error::InvalidGrid(
            "need an even number of intervals per period",
        ));
    }
    let h = 2.0 * v.grid().spacing();
    let k = v.units().kinetic();
    let q = |i: usize| (v.values()[i] - e) / k;
    let step = |y: [f64; 2], i: usize| -> [f64; 2] {
        let (q0, q1, q2) = (q(i), q(i + 1), q(i + 2));
        let f = |y: [f64; 2], qq: f64| [y[1], qq * y[0]];
        let k1 = f(y, q0);
        let k2 = f([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]], q1);
        let k3 = f([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]], q1);
        let k4 = f([y[0] + h * k3[0], y[1] + h * k3[1]], q2);
        [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    };
    let mut a = [1.0, 0.0];
    let mut b = [0.0, 1.0];
    let mut i = 0;
    while i + 2 < n {
        a = step(a, i);
        b = step(b, i);
        i += 2;
    }
    Ok(a[0] + b[1])
}

/// `Hψ` with a fourth-order second difference (three-point next to the
/// edges). Wall endpoints and box endpoints map to zero.
pub fn apply_hamiltonian(v: &PotentialOnGrid, psi: &[f64]) -> Result<Vec<f64>> {
    let n = v.grid().len();
    if psi.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: psi.len(),
        });
    }
    let k = v.units().kinetic();
    let h = v.grid().spacing();
    let vals = v.values();
    let mut out = vec![0.0; n];
    match v.boundary() {
        Boundary::Periodic => {
            let p = n - 1;
            let at = |i: isize| psi[i.rem_euclid(p as isize) as usize];
            for i in 0..p {
                let ii = i as isize;
                let d2 = (-at(ii - 2) + 16.0 * at(ii - 1) - 30.0 * at(ii) + 16.0 * at(ii + 1)
                    - at(ii + 2))
                    / (12.0 * h * h);
                out[i] = -k * d2 + vals[i] * psi[i];
            }
            out[p] = out[0];
        }
        Boundary::Box { .. } => {
            let d2 = crate::numerics::second_derivative(psi, h);
            for i in 1..n - 1 {
                out[i] = -k * d2[i] + vals[i] * psi[i];
            }
        }
    }
    Ok(out)
}

/// `(∫ |Hψ − Eψ|² dx)^{1/2}` over the interior of the grid.
pub fn residual_norm(v: &PotentialOnGrid, energy: f64, psi: &SampledFunction) -> Result<f64> {
    if psi.grid() != v.grid() {
        return Err(Error::GridMismatch);
    }
    let hpsi = apply_hamiltonian(v, psi.values())?;
    let n = hpsi.len();
    let r: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                0.0
            } else {
                let d = hpsi[i] - energy * psi.values()[i];
                d * d
            }
        })
        .collect();
    Ok(libm::sqrt(crate::numerics::integrate_samples(
        &r,
        v.grid().spacing(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(v: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> PotentialOnGrid {
        PotentialOnGrid::from_fn(
            Grid::new(a, b, n).unwrap(),
            Boundary::OPEN,
            Units::default(),
            v,
        )
        .unwrap()
    }

    #[test]
    fn shifted_oscillator_levels() {
        let v = line(|x| x * x - 1.0, -8.0, 8.0, 2001);
        let s = bound_states(&v, 6).unwrap();
        for (n, l) in s.levels.iter().enumerate() {
            assert!((l.energy - 2.0 * n as f64).abs() < 1e-6, "{n} {}", l.energy);
            assert_eq!(l.nodes, n);
            assert!((l.psi.norm_squared() - 1.0).abs() < 1e-10);
        }
        assert!(s.max_edge_leakage < 1e-6);
        let three = bound_states_with(
            &v,
            4,
            SolverOptions {
                stencil: Stencil::ThreePoint,
                richardson: true,
            },
        )
        .unwrap();
        for (n, l) in three.levels.iter().enumerate() {
            assert!((l.energy - 2.0 * n as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn ground_state_matches_gaussian() {
        let v = line(|x| x * x - 1.0, -8.0, 8.0, 1601);
        let s = bound_states(&v, 1).unwrap();
        let g = v
            .grid()
            .sample(|x| libm::pow(PI, -0.25) * libm::exp(-0.5 * x * x))
            .unwrap();
        assert!((s.levels[0].psi.overlap(&g).unwrap() - 1.0).abs() < 1e-8);
        assert!(residual_norm(&v, s.levels[0].energy, &s.levels[0].psi).unwrap() < 1e-5);
    }

    #[test]
    fn reflectionless_well_has_one_level() {
        let v = line(
            |x| 1.0 - 2.0 / libm::pow(libm::cosh(x), 2.0),
            -20.0,
            20.0,
            4001,
        );
        let s = bound_states(&v, 3).unwrap();
        assert_eq!(s.levels.len(), 1);
        assert!(s.truncated);
        assert!(s.levels[0].energy.abs() < 1e-6);
    }

    #[test]
    fn cosec_well_with_walls() {
        let g = Grid::new(0.0, PI, 4001).unwrap();
        let v = PotentialOnGrid::from_fn(g, Boundary::WALLS, Units::default(), |x| {
            2.0 / libm::pow(libm::sin(x), 2.0) - 1.0
        })
        .unwrap();
        let s = bound_states(&v, 4).unwrap();
        for (n, l) in s.levels.iter().enumerate() {
            let exact = ((n + 2) * (n + 2)) as f64 - 1.0;
            assert!((l.energy - exact).abs() < 1e-5, "{n} {}", l.energy);
            assert_eq!(l.nodes, n);
        }
    }

    #[test]
    fn radial_problems() {
        // 3-D oscillator ω = 2, l = 1: V = r² − 5 gives 4n
        let s = radial_bound_states(|r| r * r - 5.0, 1, 10.0, 4001, Units::default(), 4).unwrap();
        for (n, l) in s.levels.iter().enumerate() {
            assert!((l.energy - 4.0 * n as f64).abs() < 1e-6, "{n} {}", l.energy);
        }
        let s = radial_bound_states(|_| 0.0, 0, PI, 2001, Units::default(), 3).unwrap();
        for (n, l) in s.levels.iter().enumerate() {
            assert!((l.energy - ((n + 1) * (n + 1)) as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn widening_the_box_lowers_levels() {
        let narrow = bound_states(&line(|x| x * x, -2.0, 2.0, 801), 3).unwrap();
        let wide = bound_states(&line(|x| x * x, -3.0, 3.0, 801), 3).unwrap();
        for (a, b) in narrow.levels.iter().zip(&wide.levels) {
            assert!(b.energy < a.energy);
        }
    }

    fn periodic(v: impl Fn(f64) -> f64, l: f64, n: usize) -> PotentialOnGrid {
        PotentialOnGrid::from_fn(
            Grid::new(0.0, l, n + 1).unwrap(),
            Boundary::Periodic,
            Units::default(),
            v,
        )
        .unwrap()
    }

    #[test]
    fn free_rotor_sectors() {
        let v = periodic(|_| 0.0, PI, 128);
        let even = band_solve(&v, 0.0, 5).unwrap();
        let odd = band_solve(&v, PI, 4).unwrap();
        let expect_even = [0.0, 4.0, 4.0, 16.0, 16.0];
        let expect_odd = [1.0, 1.0, 9.0, 9.0];
        for (l, e) in even.iter().zip(expect_even) {
            assert!((l.energy - e).abs() < 1e-6, "{}", l.energy);
        }
        for (l, e) in odd.iter().zip(expect_odd) {
            assert!((l.energy - e).abs() < 1e-6, "{}", l.energy);
        }
        assert_eq!(even[0].nodes, 0);
        assert_eq!(odd[0].nodes, 1);
        assert_eq!(even[1].nodes, 2);
        let shifted = band_solve(&v.shifted(0.7), 0.0, 5).unwrap();
        for (a, b) in even.iter().zip(&shifted) {
            assert!((b.energy - a.energy - 0.7).abs() < 1e-10);
        }
    }

    #[test]
    fn bloch_phase_interpolates_free_dispersion() {
        let v = periodic(|_| 0.0, 2.0 * PI, 128);
        for &kl in &[0.0, 0.9, 2.0, PI] {
            let e = bloch_energies(&v, kl, 3).unwrap();
            let q = kl / (2.0 * PI);
            let mut exact: Vec<f64> = [-1.0, 0.0, 1.0].iter().map(|m| (m + q) * (m + q)).collect();
            exact.sort_by(f64::total_cmp);
            for (a, b) in e.iter().zip(&exact) {
                assert!((a - b).abs() < 1e-8, "{kl} {a} {b}");
            }
        }
    }

    #[test]
    fn hill_discriminant_of_free_particle() {
        let v = periodic(|_| 0.0, 2.0, 2000);
        for &e in &[0.3, 2.0, 7.5] {
            let exact = 2.0 * libm::cos(2.0 * libm::sqrt(e));
            assert!((hill_discriminant(&v, e).unwrap() - exact).abs() < 1e-7);
        }
    }
}
