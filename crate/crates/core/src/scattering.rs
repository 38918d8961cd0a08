//! Reflection and transmission for potentials with flat asymptotes.
//!
//! Conventions: to the left `ψ ~ e^{ikx} + r e^{−ikx}`, to the right
//! `ψ ~ t e^{ik′x}`, with `c²k² = E − V(−∞)` and `c²k′² = E − V(+∞)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::potential::{Boundary, PotentialOnGrid};
use crate::sip::{SipEntry, SipKind};
use crate::susy::Superpotential;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Fraction of the grid at each end used for the tail checks and the fit.
const TAIL_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterAmplitudes {
    pub k: f64,
    pub k_prime: f64,
    pub r_amp: Complex64,
    pub t_amp: Complex64,
}

impl ScatterAmplitudes {
    pub fn reflection(&self) -> f64 {
        self.r_amp.norm_sqr()
    }

    /// Transmitted flux fraction `(k′/k)|t|²`.
    pub fn transmission(&self) -> f64 {
        self.k_prime / self.k * self.t_amp.norm_sqr()
    }

    /// `|r|² + (k′/k)|t|² − 1`.
    pub fn flux_defect(&self) -> f64 {
        self.reflection() + self.transmission() - 1.0
    }
}

fn tail_len(n: usize) -> usize {
    ((n as f64 * TAIL_FRACTION) as usize).max(4).min(n)
}

/// Asymptotic potential values `(V₋, V₊)`, checking that both tails are
/// flat to `1e−8` (relative to `max(1, |V|)`) over the outer 5%.
pub fn asymptotic_levels(v: &PotentialOnGrid) -> Result<(f64, f64)> {
    if v.boundary() != Boundary::OPEN {
        return Err(Error::Unsupported(
            "scattering needs open edges on both sides",
        ));
    }
    let vals = v.values();
    let m = tail_len(vals.len());
    let flat = |s: &[f64], edge: f64| {
        s.iter()
            .all(|x| libm::fabs(x - edge) <= 1e-8 * libm::fmax(1.0, libm::fabs(edge)))
    };
    let (vl, vr) = (vals[0], vals[vals.len() - 1]);
    if !flat(&vals[..m], vl) || !flat(&vals[vals.len() - m..], vr) {
        return Err(Error::NonFlatTails);
    }
    Ok((vl, vr))
}

/// Scattering amplitudes of `v` at `energy`.
///
/// A pure transmitted wave is integrated from the right edge to the left
/// with fourth-order Runge–Kutta (step `2h`, potential read at the grid
/// points); `r` and `t` follow from a least-squares fit of
/// `α e^{ikx} + β e^{−ikx}` over the leading 5% of the grid.
pub fn numeric_rt(v: &PotentialOnGrid, energy: f64) -> Result<ScatterAmplitudes> {
    let (vl, vr) = asymptotic_levels(v)?;
    let threshold = vl.max(vr);
    if !(energy > threshold) {
        return Err(Error::BelowThreshold { energy, threshold });
    }
    let kin = v.units().kinetic();
    let k = libm::sqrt((energy - vl) / kin);
    let kp = libm::sqrt((energy - vr) / kin);
    let g = v.grid();
    let vals = v.values();
    let n = vals.len();
    let h = g.spacing();
    let q = |i: usize| (vals[i] - energy) / kin;

    let x_end = g.x(n - 1);
    let mut psi = (I * kp * x_end).exp();
    let mut dpsi = I * kp * psi;
    let mut samples: Vec<(f64, Complex64)> = Vec::new();
    let m = tail_len(n);
    let step = -2.0 * h;
    let mut i = n - 1;
    while i >= 2 {
        let (q0, q1, q2) = (q(i), q(i - 1), q(i - 2));
        let k1 = (dpsi, q0 * psi);
        let k2 = (dpsi + 0.5 * step * k1.1, q1 * (psi + 0.5 * step * k1.0));
        let k3 = (dpsi + 0.5 * step * k2.1, q1 * (psi + 0.5 * step * k2.0));
        let k4 = (dpsi + step * k3.1, q2 * (psi + step * k3.0));
        psi += step / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        dpsi += step / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        i -= 2;
        if i < m {
            samples.push((g.x(i), psi));
        }
    }
    if samples.len() < 2 {
        return Err(Error::InvalidGrid("too few points in the matching window"));
    }

    let (mut g11, mut g12, mut g22) = (0.0, Complex64::new(0.0, 0.0), 0.0);
    let (mut b1, mut b2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for &(x, y) in &samples {
        let e1 = (I * k * x).exp();
        let e2 = (-I * k * x).exp();
        g11 += e1.norm_sqr();
        g22 += e2.norm_sqr();
        g12 += e1.conj() * e2;
        b1 += e1.conj() * y;
        b2 += e2.conj() * y;
    }
    let det = g11 * g22 - g12.norm_sqr();
    if !(libm::fabs(det) > 1e-12 * g11 * g22) {
        return Err(Error::Inconsistent(
            "matching window too short for this momentum",
        ));
    }
    let alpha = (g22 * b1 - g12 * b2) / det;
    let beta = (g11 * b2 - g12.conj() * b1) / det;
    Ok(ScatterAmplitudes {
        k,
        k_prime: kp,
        r_amp: beta / alpha,
        t_amp: 1.0 / alpha,
    })
}

/// Amplitudes of `V₁` from those of its partner `V₂` at the same energy.
pub fn partner_rt(r2_t2: &ScatterAmplitudes, w: &Superpotential) -> Result<ScatterAmplitudes> {
    let (Some(wm), Some(wp)) = (w.w_minus(), w.w_plus()) else {
        return Err(Error::Unsupported(
            "partner relations need finite asymptotes of W",
        ));
    };
    let c = w.units().c();
    let ck = c * r2_t2.k;
    let ckp = c * r2_t2.k_prime;
    let den = Complex64::new(wm, -ck);
    Ok(ScatterAmplitudes {
        r_amp: Complex64::new(wm, ck) / den * r2_t2.r_amp,
        t_amp: Complex64::new(wp, -ckp) / den * r2_t2.t_amp,
        ..*r2_t2
    })
}

/// Transmission amplitude of `p² − p(p+1) sech²x`:
/// `Π_{j=1}^{p} (j − ik)/(−j − ik)`.
pub fn reflectionless_t(p: u32, k: f64) -> Complex64 {
    (1..=p).fold(Complex64::new(1.0, 0.0), |acc, j| {
        let j = j as f64;
        acc * Complex64::new(j, -k) / Complex64::new(-j, -k)
    })
}

/// Poles of [`reflectionless_t`] in the complex `k` plane, `k = i j`.
pub fn reflectionless_poles(p: u32) -> Vec<Complex64> {
    (1..=p).map(|j| Complex64::new(0.0, j as f64)).collect()
}

/// S-matrix of the radial partner, `S₁ = ((W₊ − ik′)/(W₊ + ik′)) S₂`.
pub fn partner_phase_shift(s2: Complex64, w_plus: f64, k_prime: f64) -> Result<Complex64> {
    if k_prime == 0.0 || !k_prime.is_finite() {
        return Err(Error::Domain {
            what: "k'",
            value: k_prime,
        });
    }
    if libm::fabs(s2.norm() - 1.0) > 1e-9 {
        return Err(Error::Domain {
            what: "|S2|",
            value: s2.norm(),
        });
    }
    Ok(Complex64::new(w_plus, -k_prime) / Complex64::new(w_plus, k_prime) * s2)
}

/// Result of [`sip_scatter_recursion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionAmplitudes {
    pub amplitudes: ScatterAmplitudes,
    /// The chain ended on a vanishing superpotential (free particle); when
    /// false the endpoint amplitudes were computed numerically.
    pub analytic_endpoint: bool,
}

/// Amplitudes of `V₁(x; a₁)` at left momentum `k`, from `n_steps`
/// applications of the partner relation down the parameter chain.
pub fn sip_scatter_recursion(
    entry: &SipEntry,
    k: f64,
    n_steps: usize,
) -> Result<RecursionAmplitudes> {
    let (Some(wm0), Some(wp0)) = entry.asymptotes() else {
        return Err(Error::Unsupported(
            "entry has no scattering states on both sides",
        ));
    };
    if !(k > 0.0) {
        return Err(Error::Domain {
            what: "k",
            value: k,
        });
    }
    let kp2 = k * k + wm0 * wm0 - wp0 * wp0;
    if !(kp2 > 0.0) {
        return Err(Error::BelowThreshold {
            energy: k * k + wm0 * wm0,
            threshold: wp0 * wp0,
        });
    }
    let kp = libm::sqrt(kp2);
    let mut r_fac = Complex64::new(1.0, 0.0);
    let mut t_fac = Complex64::new(1.0, 0.0);
    let mut a = *entry;
    for _ in 0..n_steps {
        let (Some(wm), Some(wp)) = a.asymptotes() else {
            return Err(Error::Unsupported("chain left the scattering regime"));
        };
        let den = Complex64::new(wm, -k);
        r_fac *= Complex64::new(wm, k) / den;
        t_fac *= Complex64::new(wp, -kp) / den;
        a = a.step();
    }
    let p = &a.params;
    let free = a.kind == SipKind::ScarfII && p.a.abs() < 1e-12 && p.b.abs() < 1e-12;
    let (r_end, t_end) = if free {
        (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    } else {
        let (lo, hi) = (p.x0 - 25.0 / p.alpha, p.x0 + 25.0 / p.alpha);
        let grid = crate::numerics::Grid::new(lo, hi, 8001)?;
        let v = crate::potential::PotentialOnGrid::from_fn(
            grid,
            Boundary::OPEN,
            crate::susy::Units::default(),
            |x| a.v1(x),
        )?;
        let wm = a.asymptotes().0.unwrap_or(0.0);
        let amp = numeric_rt(&v, k * k + wm * wm)?;
        (amp.r_amp, amp.t_amp)
    };
    Ok(RecursionAmplitudes {
        amplitudes: ScatterAmplitudes {
            k,
            k_prime: kp,
            r_amp: r_fac * r_end,
            t_amp: t_fac * t_end,
        },
        analytic_endpoint: free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;
    use crate::susy::{partner_potentials, Units};
    use proptest::prelude::*;

    fn open(v: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> PotentialOnGrid {
        let g = Grid::new(a, b, n).unwrap();
        PotentialOnGrid::from_fn(g, Boundary::OPEN, Units::default(), v).unwrap()
    }

    fn sech2(x: f64) -> f64 {
        1.0 / libm::pow(libm::cosh(x), 2.0)
    }

    #[test]
    fn free_particle() {
        let v = open(|_| 0.0, -10.0, 10.0, 4001);
        for &k in &[0.5, 1.0, 3.0] {
            let a = numeric_rt(&v, k * k).unwrap();
            assert!(a.r_amp.norm() < 1e-6);
            assert!((a.t_amp - 1.0).norm() < 1e-6);
        }
    }

    #[test]
    fn reflectionless_sech2() {
        for p in 1..=3u32 {
            let pf = p as f64;
            let v = open(|x| pf * pf - pf * (pf + 1.0) * sech2(x), -25.0, 25.0, 8001);
            for &k in &[0.5, 1.0, 2.0] {
                let a = numeric_rt(&v, pf * pf + k * k).unwrap();
                assert!(a.r_amp.norm() < 1e-6, "p={p} k={k}: {}", a.r_amp.norm());
                assert!(a.flux_defect().abs() < 1e-6);
                let t = reflectionless_t(p, k);
                assert!(
                    (a.t_amp - t).norm() < 1e-5,
                    "p={p} k={k}: {} vs {t}",
                    a.t_amp
                );
            }
        }
    }

    #[test]
    fn square_well_against_closed_form() {
        // depth v0 on [−a, a]; the jump samples carry the mean value
        let (v0, a) = (3.0, 1.0);
        let n = 20001;
        let g = Grid::new(-10.0, 10.0, n).unwrap();
        let vals: Vec<f64> = g
            .points()
            .map(|x| {
                let d = libm::fabs(x) - a;
                if d.abs() < 1e-12 {
                    -v0 / 2.0
                } else if d < 0.0 {
                    -v0
                } else {
                    0.0
                }
            })
            .collect();
        let v = PotentialOnGrid::new(g, vals, Boundary::OPEN, Units::default()).unwrap();
        for &k in &[0.5, 1.0, 2.0] {
            let q = libm::sqrt(k * k + v0);
            let s = libm::sin(2.0 * q * a);
            let t2 = 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * k * k * q * q));
            let amp = numeric_rt(&v, k * k).unwrap();
            assert!((amp.t_amp.norm_sqr() - t2).abs() < 1e-6, "k={k}");
            assert!((amp.r_amp.norm_sqr() - (1.0 - t2)).abs() < 1e-6, "k={k}");
        }
    }

    #[test]
    fn step_potential_flux() {
        // smooth step: k ≠ k′, transmitted flux uses the k′/k factor
        let v = open(|x| 1.0 + libm::tanh(2.0 * x), -20.0, 20.0, 8001);
        let a = numeric_rt(&v, 3.0).unwrap();
        assert!((a.k - 3.0f64.sqrt()).abs() < 1e-12);
        assert!((a.k_prime - 1.0).abs() < 1e-9);
        assert!(a.flux_defect().abs() < 1e-6);
        assert!(a.reflection() > 1e-6);
    }

    #[test]
    fn rejects_bad_inputs() {
        let v = open(|x| x * x, -5.0, 5.0, 501);
        assert_eq!(numeric_rt(&v, 30.0), Err(Error::NonFlatTails));
        let v = open(|_| 1.0, -5.0, 5.0, 501);
        assert!(matches!(
            numeric_rt(&v, 0.5),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn partner_relation_matches_numerics() {
        for b in 1..=3 {
            let e = SipEntry::lookup("sech2", &[("B", b as f64)]).unwrap();
            let w = e.superpotential();
            let g = Grid::new(-25.0, 25.0, 8001).unwrap();
            let pair = partner_potentials(&w, &g).unwrap();
            for &k in &[0.5, 1.0, 2.0] {
                let en = (b * b) as f64 + k * k;
                let a1 = numeric_rt(&pair.v1, en).unwrap();
                let a2 = numeric_rt(&pair.v2, en).unwrap();
                let from2 = partner_rt(&a2, &w).unwrap();
                assert!((from2.t_amp - a1.t_amp).norm() < 1e-5);
                assert!((from2.r_amp - a1.r_amp).norm() < 1e-5);
            }
        }
    }

    #[test]
    fn scarf2_partner_has_reflection_but_matching_moduli() {
        let e = SipEntry::lookup("scarf2", &[("A", 2.0), ("B", 1.5)]).unwrap();
        let w = e.superpotential();
        let g = Grid::new(-30.0, 30.0, 12001).unwrap();
        let pair = partner_potentials(&w, &g).unwrap();
        let en = 4.0 + 1.0;
        let a1 = numeric_rt(&pair.v1, en).unwrap();
        let a2 = numeric_rt(&pair.v2, en).unwrap();
        assert!(a1.reflection() > 1e-4);
        assert!((a1.reflection() - a2.reflection()).abs() < 1e-6);
        let from2 = partner_rt(&a2, &w).unwrap();
        // symmetric asymptotes: k = k′ and the two ratios differ by a sign
        assert!((a1.k - a1.k_prime).abs() < 1e-9);
        let rr = a1.r_amp / a2.r_amp;
        let tt = a1.t_amp / a2.t_amp;
        assert!((rr + tt).norm() < 1e-5, "{rr} {tt}");
        assert!((from2.r_amp - a1.r_amp).norm() < 1e-5);
    }

    #[test]
    fn product_formula() {
        let k: f64 = 0.7;
        let t1 = reflectionless_t(1, k);
        let expect = Complex64::new(1.0, -k) / Complex64::new(-1.0, -k);
        assert!((t1 - expect).norm() < 1e-15);
        let t2 = reflectionless_t(2, k);
        let expect2 = expect * Complex64::new(2.0, -k) / Complex64::new(-2.0, -k);
        assert!((t2 - expect2).norm() < 1e-15);
    }

    #[test]
    fn poles_are_bound_state_momenta() {
        for p in 1..=4u32 {
            let e = SipEntry::lookup("sech2", &[("B", p as f64)]).unwrap();
            let energies = e.spectrum(10).unwrap().energies;
            let pf = p as f64;
            let mut kappas: Vec<f64> = energies.iter().map(|en| libm::sqrt(pf * pf - en)).collect();
            kappas.sort_by(f64::total_cmp);
            let poles = reflectionless_poles(p);
            assert_eq!(kappas.len(), poles.len());
            for (kap, pole) in kappas.iter().zip(&poles) {
                assert!((pole.im - kap).abs() < 1e-10 && pole.re == 0.0);
                // the j-th factor's denominator −j − ik vanishes there
                assert!((Complex64::new(-pole.im, 0.0) - I * *pole).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_shift_relation() {
        let s1 = partner_phase_shift(Complex64::new(1.0, 0.0), 1.0, 1.0).unwrap();
        assert!((s1 - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let s_far = partner_phase_shift(Complex64::new(0.6, 0.8), 1e12, 1.0).unwrap();
        assert!((s_far - Complex64::new(0.6, 0.8)).norm() < 1e-10);
        assert!(partner_phase_shift(Complex64::new(1.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn recursion_on_reflectionless_chains() {
        for b in 1..=3 {
            let e = SipEntry::lookup("sech2", &[("B", b as f64)]).unwrap();
            for &k in &[0.5, 1.0, 2.0] {
                let r = sip_scatter_recursion(&e, k, b).unwrap();
                assert!(r.analytic_endpoint);
                assert_eq!(r.amplitudes.r_amp, Complex64::new(0.0, 0.0));
                assert!((r.amplitudes.t_amp - reflectionless_t(b as u32, k)).norm() < 1e-14);
            }
        }
        let m = SipEntry::with_defaults(SipKind::Morse);
        assert!(matches!(
            sip_scatter_recursion(&m, 1.0, 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn recursion_with_numeric_endpoint() {
        let e = SipEntry::lookup("rosen_morse2", &[("A", 2.0), ("B", 1.0)]).unwrap();
        let w = e.superpotential();
        let g = Grid::new(-25.0, 25.0, 8001).unwrap();
        let v1 = partner_potentials(&w, &g).unwrap().v1;
        let k = 3.0;
        let wm = e.asymptotes().0.unwrap();
        let direct = numeric_rt(&v1, k * k + wm * wm).unwrap();
        let rec = sip_scatter_recursion(&e, k, 1).unwrap();
        assert!(!rec.analytic_endpoint);
        assert!((rec.amplitudes.k_prime - direct.k_prime).abs() < 1e-9);
        assert!((rec.amplitudes.t_amp - direct.t_amp).norm() < 1e-5);
        assert!((rec.amplitudes.r_amp - direct.r_amp).norm() < 1e-5);
    }

    proptest! {
        #[test]
        fn partner_map_preserves_moduli(
            wm in -3.0f64..3.0, wp in -3.0f64..3.0, k in 0.1f64..4.0,
            rr in 0.0f64..1.0, ph in 0.0f64..6.0,
        ) {
            let kp2 = k * k + wm * wm - wp * wp;
            prop_assume!(kp2 > 0.01);
            let kp = kp2.sqrt();
            let r2 = Complex64::from_polar(rr.sqrt(), ph);
            let t2 = Complex64::from_polar(((1.0 - rr) * k / kp).sqrt(), 0.3 * ph);
            let a2 = ScatterAmplitudes { k, k_prime: kp, r_amp: r2, t_amp: t2 };
            let w = Superpotential::analytic(crate::susy::Domain::LINE, |x| x)
                .with_asymptotes(Some(wm), Some(wp));
            let a1 = partner_rt(&a2, &w).unwrap();
            prop_assert!((a1.r_amp.norm() - r2.norm()).abs() < 1e-12);
            prop_assert!((a1.t_amp.norm() - t2.norm()).abs() < 1e-12);
        }

        #[test]
        fn product_formula_is_unimodular(p in 1u32..8, k in 0.01f64..10.0) {
            prop_assert!((reflectionless_t(p, k).norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn phase_shift_is_unimodular(ph in 0.0f64..6.3, wp in -5.0f64..5.0, kp in 0.05f64..5.0) {
            let s1 = partner_phase_shift(Complex64::from_polar(1.0, ph), wp, kp).unwrap();
            prop_assert!((s1.norm() - 1.0).abs() < 1e-12);
        }
    }
}
