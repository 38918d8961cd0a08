//! One-parameter families of strictly isospectral potentials.
//!
//! Given `W` with normalised ground state `ψ₀` and `I(x) = ∫_{−∞}^x ψ₀²`,
//! every `Ŵ = W + c ψ₀²/(I + λ)` with `λ > 0` or `λ < −1` has the same
//! partner `V₂`, so `V̂₁ = Ŵ² − cŴ'` shares the spectrum (and `R`, `T`) of
//! `V₁`. With `φ = cψ₀²/(I + λ)` this is `V̂₁ = V₁ + 4Wφ + 2φ²`, which needs
//! no second derivatives.

use alloc::vec::Vec;

use crate::eigen::bound_states;
use crate::numerics::{cumulative, integrate_samples, Grid, SampledFunction};
use crate::potential::PotentialOnGrid;
use crate::scattering::asymptotic_levels;
use crate::susy::{apply_adag, ground_state_from_w, map_to_h2, partner_potentials, Superpotential};
use crate::{Error, Result};

/// Asymptotic mass beyond an edge sample, from the local decay rate.
fn tail_mass(p0: f64, p1: f64, h: f64) -> f64 {
    let (p0, p1) = (libm::fabs(p0), libm::fabs(p1));
    if p0 > 0.0 && p1 > p0 {
        p0 * p0 * h / (2.0 * libm::log(p1 / p0))
    } else {
        0.0
    }
}

/// `I(x)` and `1 − I(x)`, each accumulated from its own end so that both
/// stay accurate in the far tails. The mass beyond the grid is estimated
/// from the edge decay rate.
fn cumulative_pair(psi0: &SampledFunction) -> Result<(Vec<f64>, Vec<f64>)> {
    let norm = psi0.norm_squared();
    if libm::fabs(norm - 1.0) > 1e-6 {
        return Err(Error::NotNormalized { norm });
    }
    let h = psi0.grid().spacing();
    let p = psi0.values();
    let n = p.len();
    let sq: Vec<f64> = p.iter().map(|v| v * v).collect();
    let left_tail = tail_mass(p[0], p[1], h);
    let right_tail = tail_mass(p[n - 1], p[n - 2], h);
    let from_left = cumulative(&sq, h);
    let rev: Vec<f64> = sq.iter().rev().copied().collect();
    let from_right = cumulative(&rev, h);
    let total = left_tail + from_left[n - 1] + right_tail;
    let i_vals = from_left.iter().map(|v| (left_tail + v) / total).collect();
    let j_vals = from_right
        .iter()
        .rev()
        .map(|v| (right_tail + v) / total)
        .collect();
    Ok((i_vals, j_vals))
}

/// Running norm `I(x) = ∫_{−∞}^x ψ₀²` of a normalised ground state.
pub fn cumulative_norm(psi0: &SampledFunction) -> Result<SampledFunction> {
    let (i, _) = cumulative_pair(psi0)?;
    SampledFunction::new(*psi0.grid(), i)
}

#[derive(Debug, Clone)]
pub struct IsoFamily {
    base: Superpotential,
    psi0: SampledFunction,
    cumulative: SampledFunction,
    complement: Vec<f64>,
    w_samples: Vec<f64>,
    lambda: f64,
}

fn admissible(lambda: f64) -> Result<()> {
    if !(-1.0..=0.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::SingularFamily { lambda })
    }
}

impl IsoFamily {
    /// Family member `λ` built on `base` sampled on `grid`. `λ = ±∞` is the
    /// base itself.
    pub fn new(base: Superpotential, grid: &Grid, lambda: f64) -> Result<Self> {
        admissible(lambda)?;
        let psi0 = ground_state_from_w(&base, grid)?;
        let (i, j) = cumulative_pair(&psi0)?;
        let w_samples = base
            .on_grid(grid)?
            .into_iter()
            .zip(grid.points())
            .map(|(w, x)| {
                w.ok_or(Error::Unsupported(
                    "isospectral bases must be open on the grid",
                ))
                .and_then(|w| {
                    if w.is_finite() {
                        Ok(w)
                    } else {
                        Err(Error::NonFiniteEvaluation { x })
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            cumulative: SampledFunction::new(*grid, i)?,
            complement: j,
            psi0,
            base,
            w_samples,
            lambda,
        })
    }

    /// The same base with another `λ`.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        admissible(lambda)?;
        Ok(Self {
            lambda,
            ..self.clone()
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> &Superpotential {
        &self.base
    }

    pub fn grid(&self) -> &Grid {
        self.psi0.grid()
    }

    pub fn psi0(&self) -> &SampledFunction {
        &self.psi0
    }

    pub fn cumulative(&self) -> &SampledFunction {
        &self.cumulative
    }

    /// `I + λ` at sample `i`, taken from the side that avoids cancellation.
    fn shifted(&self, i: usize, lambda: f64) -> f64 {
        if lambda >= 0.0 {
            self.cumulative.values()[i] + lambda
        } else {
            -(self.complement[i] + (-1.0 - lambda))
        }
    }

    /// `φ = cψ₀²/(I + λ)`. Where both vanish in a tail the limit `−2W`
    /// is used.
    fn phi(&self, lambda: f64) -> Vec<f64> {
        let c = self.base.units().c();
        (0..self.grid().len())
            .map(|i| {
                let p = self.psi0.values()[i];
                let d = self.shifted(i, lambda);
                if d == 0.0 {
                    -2.0 * self.w_samples[i]
                } else {
                    c * p * p / d
                }
            })
            .collect()
    }

    fn v_hat(&self, lambda: f64) -> Result<PotentialOnGrid> {
        let phi = self.phi(lambda);
        let grid = *self.grid();
        let boundary = self.base.domain().boundary_for(&grid)?;
        let values = grid
            .points()
            .enumerate()
            .map(|(i, x)| {
                let w = self.w_samples[i];
                self.base.v1(x) + 4.0 * w * phi[i] + 2.0 * phi[i] * phi[i]
            })
            .collect();
        PotentialOnGrid::new(grid, values, boundary, self.base.units())
    }
}

/// Member `λ` of a family: its superpotential, potential and ground state.
#[derive(Debug, Clone)]
pub struct DeformedFamily {
    pub w_hat: Superpotential,
    pub v_hat: PotentialOnGrid,
    pub psi0_hat: SampledFunction,
}

/// `Ŵ`, `V̂₁` and `ψ̂₀ = √(λ(1+λ)) ψ₀/(I+λ)` on the family grid.
pub fn deformed_family(fam: &IsoFamily) -> Result<DeformedFamily> {
    let lambda = fam.lambda;
    let phi = fam.phi(lambda);
    let grid = *fam.grid();
    let w_hat: Vec<f64> = fam.w_samples.iter().zip(&phi).map(|(w, p)| w + p).collect();
    let w_hat = Superpotential::sampled(SampledFunction::new(grid, w_hat)?)
        .with_units(fam.base.units())
        .with_asymptotes(fam.base.w_minus(), fam.base.w_plus())
        .with_param("lambda", lambda);
    let scale = libm::sqrt(lambda * (1.0 + lambda));
    let psi = (0..grid.len())
        .map(|i| scale * fam.psi0.values()[i] / fam.shifted(i, lambda))
        .collect();
    let psi0_hat = SampledFunction::new(grid, psi)?;
    let norm = psi0_hat.norm_squared();
    if libm::fabs(norm - 1.0) > 1e-6 {
        return Err(Error::NotNormalized { norm });
    }
    Ok(DeformedFamily {
        w_hat,
        v_hat: fam.v_hat(lambda)?,
        psi0_hat,
    })
}

/// `ψ̂_{n+1} ∝ (−c d/dx + Ŵ) ψₙ⁽²⁾`, normalised, from a normalised eigenstate
/// of the common partner `V₂`.
pub fn deformed_excited(fam: &IsoFamily, psi2_n: &SampledFunction) -> Result<SampledFunction> {
    if psi2_n.grid() != fam.grid() {
        return Err(Error::GridMismatch);
    }
    let d = deformed_family(fam)?;
    apply_adag(&d.w_hat, psi2_n)?.normalized()
}

/// Level `n + 1` of the family member: the partner state `ψₙ⁽²⁾` is taken
/// from the numerically solved base level `n + 1` and mapped with `A`.
/// Returns the energy and the deformed state.
pub fn deformed_excited_level(fam: &IsoFamily, n: usize) -> Result<(f64, SampledFunction)> {
    let pair = partner_potentials(&fam.base, fam.grid())?;
    let spec = bound_states(&pair.v1, n + 2)?;
    let level = spec
        .levels
        .get(n + 1)
        .ok_or(Error::Inconsistent("base has too few bound states"))?;
    let psi2 = map_to_h2(&fam.base, &level.psi, level.energy)?.normalized()?;
    Ok((level.energy, deformed_excited(fam, &psi2)?))
}

/// `Q₁ = ∫(V̂₁ − V∞)` and `Q₂ = ∫x(V̂₁ − V∞)`.
pub fn conserved_charges(fam: &IsoFamily) -> Result<(f64, f64)> {
    let v = fam.v_hat(fam.lambda)?;
    let (vl, vr) = asymptotic_levels(&v)
        .map_err(|_| Error::Unsupported("charges need a potential that decays to a constant"))?;
    if libm::fabs(vl - vr) > 1e-8 * libm::fmax(1.0, libm::fabs(vl)) {
        return Err(Error::Unsupported(
            "charges need equal asymptotes on both sides",
        ));
    }
    let g = v.grid();
    let dv: Vec<f64> = v.values().iter().map(|x| x - vl).collect();
    let xdv: Vec<f64> = g.points().zip(&dv).map(|(x, d)| x * d).collect();
    let h = g.spacing();
    Ok((integrate_samples(&dv, h), integrate_samples(&xdv, h)))
}

/// The `λ = 0` (Pursey) and `λ = −1` (Abraham–Moses) members, each with
/// one bound state fewer than the base.
pub fn pursey_abraham_moses(fam: &IsoFamily) -> Result<(PotentialOnGrid, PotentialOnGrid)> {
    Ok((fam.v_hat(0.0)?, fam.v_hat(-1.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::residual_norm;
    use crate::numerics::erfc;
    use crate::susy::Domain;
    use proptest::prelude::*;

    fn oscillator(omega: f64) -> Superpotential {
        Superpotential::analytic(Domain::LINE, move |x| 0.5 * omega * x)
            .with_derivative(move |_| 0.5 * omega)
            .with_antiderivative(move |x| 0.25 * omega * x * x)
    }

    fn sech2(b: f64) -> Superpotential {
        Superpotential::analytic(Domain::LINE, move |x| b * libm::tanh(x))
            .with_derivative(move |x| b / libm::pow(libm::cosh(x), 2.0))
            .with_antiderivative(move |x| b * libm::log(libm::cosh(x)))
            .with_asymptotes(Some(-b), Some(b))
    }

    fn osc_family(lambda: f64) -> IsoFamily {
        IsoFamily::new(
            oscillator(2.0),
            &Grid::new(-10.0, 10.0, 4001).unwrap(),
            lambda,
        )
        .unwrap()
    }

    #[test]
    fn oscillator_cumulative_norm_is_erfc() {
        for &omega in &[2.0, 0.5] {
            let g = Grid::new(-12.0, 12.0, 4001).unwrap();
            let fam = IsoFamily::new(oscillator(omega), &g, 1.0).unwrap();
            let i = fam.cumulative();
            let s = libm::sqrt(omega / 2.0);
            for (k, x) in g.points().enumerate() {
                assert!(
                    (i.values()[k] - (1.0 - 0.5 * erfc(s * x))).abs() < 1e-10,
                    "{x}"
                );
            }
            assert!((i.values()[2000] - 0.5).abs() < 1e-12);
            assert!((i.values()[4000] - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn unnormalized_input_rejected() {
        let g = Grid::new(-5.0, 5.0, 101).unwrap();
        let f = g.sample(|x| libm::exp(-x * x)).unwrap();
        assert!(matches!(
            cumulative_norm(&f),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            IsoFamily::new(oscillator(2.0), &g, -0.5),
            Err(Error::SingularFamily { .. })
        ));
    }

    #[test]
    fn large_lambda_recovers_base() {
        let fam = osc_family(1e6);
        let d = deformed_family(&fam).unwrap();
        for (k, x) in fam.grid().points().enumerate() {
            assert!((d.v_hat.values()[k] - (x * x - 1.0)).abs() < 1e-4);
        }
    }

    #[test]
    fn same_partner_and_bernoulli_residual() {
        let fam = osc_family(0.7);
        let d = deformed_family(&fam).unwrap();
        let g = fam.grid();
        for k in (200..3800).step_by(37) {
            let x = g.x(k);
            let wh = d.w_hat.w(x);
            assert!(
                (wh * wh + d.w_hat.dw(x) - (x * x + 1.0)).abs() < 1e-8,
                "{x}"
            );
        }
        // y = 1/(Ŵ − W) solves y' = 1 + 2Wy
        let y: Vec<f64> = g.points().map(|x| 1.0 / (d.w_hat.w(x) - x)).collect();
        let dy = crate::numerics::derivative(&y, g.spacing());
        for (k, x) in g.points().enumerate().filter(|(_, x)| x.abs() <= 3.0) {
            let res = dy[k] - 1.0 - 2.0 * x * y[k];
            assert!(res.abs() < 1e-7 * dy[k].abs().max(1.0), "{x}: {res}");
        }
    }

    #[test]
    fn ground_state_normalised_for_several_lambdas() {
        for &l in &[0.5, 1.0, 5.0, -1.5, -4.0] {
            let d = deformed_family(&osc_family(l)).unwrap();
            assert!((d.psi0_hat.norm_squared() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn oscillator_family_is_isospectral() {
        for &l in &[0.3, 1.0, 10.0, -2.0] {
            let d = deformed_family(&osc_family(l)).unwrap();
            let s = bound_states(&d.v_hat, 5).unwrap();
            for (n, lev) in s.levels.iter().enumerate() {
                assert!(
                    (lev.energy - 2.0 * n as f64).abs() < 1e-5,
                    "λ={l} n={n}: {}",
                    lev.energy
                );
                assert_eq!(lev.nodes, n);
            }
        }
    }

    #[test]
    fn excited_states_of_deformed_oscillator() {
        let fam = osc_family(1.0);
        let d = deformed_family(&fam).unwrap();
        for n in 0..3 {
            let (e, psi) = deformed_excited_level(&fam, n).unwrap();
            assert_eq!(psi.nodes(1e-7), n + 1);
            assert!(psi.overlap(&d.psi0_hat).unwrap().abs() < 1e-5);
            assert!(residual_norm(&d.v_hat, e, &psi).unwrap() < 1e-4);
        }
        let far = osc_family(1e8);
        let (_, psi) = deformed_excited_level(&far, 0).unwrap();
        let g = far.grid();
        let exact = g
            .sample(|x| x * libm::exp(-0.5 * x * x))
            .unwrap()
            .normalized()
            .unwrap();
        assert!(psi.overlap(&exact).unwrap().abs() > 1.0 - 1e-6);
    }

    #[test]
    fn pursey_and_abraham_moses_lose_one_level() {
        let fam = osc_family(1.0);
        let (vp, vam) = pursey_abraham_moses(&fam).unwrap();
        for v in [&vp, &vam] {
            let s = bound_states(v, 6).unwrap();
            let below: Vec<f64> = s.energies().into_iter().filter(|e| *e < 9.0).collect();
            assert_eq!(below.len(), 4, "{below:?}");
            for (n, e) in below.iter().enumerate() {
                assert!((e - 2.0 * (n + 1) as f64).abs() < 1e-4, "{e}");
            }
        }
        // mirror images for a symmetric base
        let n = vp.values().len();
        for k in 0..n {
            let (a, b) = (vp.values()[k], vam.values()[n - 1 - k]);
            assert!((a - b).abs() < 1e-8 * a.abs().max(1.0), "{k}: {a} {b}");
        }
    }

    #[test]
    fn minimum_drifts_left_as_lambda_shrinks() {
        let fam = osc_family(1.0);
        let mut last = f64::INFINITY;
        for &l in &[1.0, 0.1, 1e-2, 1e-3, 1e-4] {
            let d = deformed_family(&fam.with_lambda(l).unwrap()).unwrap();
            let vals = d.v_hat.values();
            let k = (0..vals.len())
                .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
                .unwrap();
            let x = fam.grid().x(k);
            assert!(x < last, "λ={l}: {x} !< {last}");
            last = x;
        }
    }

    #[test]
    fn charges_of_sech2_family() {
        let g = Grid::new(-25.0, 25.0, 10001).unwrap();
        let base = IsoFamily::new(sech2(1.0), &g, 1e9).unwrap();
        let (q1_inf, q2_inf) = conserved_charges(&base).unwrap();
        assert!((q1_inf + 4.0).abs() < 1e-6);
        assert!(q2_inf.abs() < 1e-6);
        for &l in &[0.5, 1.0, 10.0] {
            let (q1, q2) = conserved_charges(&base.with_lambda(l).unwrap()).unwrap();
            assert!((q1 + 4.0).abs() < 1e-5, "λ={l}: {q1}");
            // the first moment follows 2c²·ln((1+λ)/λ), integrated by parts
            let expect = 2.0 * libm::log((1.0 + l) / l);
            assert!((q2 - q2_inf - expect).abs() < 1e-5, "λ={l}: {q2}");
        }
        assert!(matches!(
            conserved_charges(&osc_family(1.0)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn sech2_family_keeps_spectrum_and_scattering() {
        use crate::scattering::numeric_rt;
        let g = Grid::new(-25.0, 25.0, 8001).unwrap();
        let base = IsoFamily::new(sech2(2.0), &g, 1e12).unwrap();
        let v1 = deformed_family(&base).unwrap().v_hat;
        for &l in &[0.3, 1.0, 10.0] {
            let d = deformed_family(&base.with_lambda(l).unwrap()).unwrap();
            let s = bound_states(&d.v_hat, 2).unwrap();
            assert!((s.levels[0].energy).abs() < 1e-5);
            assert!((s.levels[1].energy - 3.0).abs() < 1e-5);
            for &k in &[0.5, 1.0, 2.0] {
                let a = numeric_rt(&d.v_hat, 4.0 + k * k).unwrap();
                let b = numeric_rt(&v1, 4.0 + k * k).unwrap();
                assert!((a.t_amp.norm() - b.t_amp.norm()).abs() < 1e-5);
                assert!((a.r_amp.norm() - b.r_amp.norm()).abs() < 1e-5);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn cumulative_norm_is_monotone(omega in 0.5f64..4.0, l in 0.01f64..100.0) {
            let g = Grid::new(-12.0, 12.0, 1201).unwrap();
            let fam = IsoFamily::new(oscillator(omega), &g, l).unwrap();
            let i = fam.cumulative().values();
            prop_assert!(i.windows(2).all(|w| w[1] >= w[0]));
            prop_assert!(i[0] >= 0.0 && (i[i.len() - 1] - 1.0).abs() < 1e-8);
            let d = deformed_family(&fam).unwrap();
            prop_assert!((d.psi0_hat.norm_squared() - 1.0).abs() < 1e-6);
        }
    }
}
