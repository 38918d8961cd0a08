//! End-to-end checks of the public API against closed forms worked out
//! independently of the catalog.

use std::f64::consts::PI;

use proptest::prelude::*;
use susyqm::eigen::bound_states;
use susyqm::isospectral::{deformed_family, IsoFamily};
use susyqm::periodic::{numeric_band_edges, BandBoundary};
use susyqm::scattering::numeric_rt;
use susyqm::susy::partner_potentials;
use susyqm::swkb::{quantize, QuantizationMode, QuantizationProblem};
use susyqm::{Boundary, Domain, Grid, PotentialOnGrid, Superpotential, Units};

fn levels(w: &Superpotential, grid: &Grid, count: usize) -> (Vec<f64>, Vec<f64>) {
    let pair = partner_potentials(w, grid).unwrap();
    (
        bound_states(&pair.v1, count).unwrap().energies(),
        bound_states(&pair.v2, count).unwrap().energies(),
    )
}

#[test]
fn morse_ladder() {
    let (a, b) = (4.0, 1.5);
    let w = Superpotential::analytic(Domain::LINE, move |x| a - b * (-x).exp())
        .with_derivative(move |x| b * (-x).exp());
    let grid = Grid::new(-4.0, 30.0, 8001).unwrap();
    let (e1, _) = levels(&w, &grid, 4);
    for (n, e) in e1.iter().enumerate() {
        let want = a * a - (a - n as f64).powi(2);
        assert!((e - want).abs() < 1e-5, "n = {n}: {e} vs {want}");
    }
}

#[test]
fn rosen_morse_swkb_is_exact() {
    let (a, b) = (5.0, 3.0);
    let w = Superpotential::analytic(Domain::LINE, move |x| a * x.tanh() + b / a)
        .with_derivative(move |x| a / x.cosh().powi(2));
    let p = QuantizationProblem::from_superpotential(&w, QuantizationMode::SwkbV1);
    for n in 0..3 {
        let m = a - n as f64;
        let want = a * a - m * m + b * b / (a * a) - b * b / (m * m);
        let got = quantize(&p, n).unwrap();
        assert!((got - want).abs() <= 1e-7 * want.max(1.0), "n = {n}: {got} vs {want}");
    }
}

#[test]
fn units_rescale_the_oscillator() {
    // ħ = 2, 2m = 1: H₁ = −4 d² + x² − 2, levels 4n
    let units = Units::new(2.0, 1.0).unwrap();
    let w = Superpotential::analytic(Domain::LINE, |x| x)
        .with_derivative(|_| 1.0)
        .with_units(units);
    let grid = Grid::new(-12.0, 12.0, 4001).unwrap();
    let (e1, e2) = levels(&w, &grid, 3);
    for n in 0..3 {
        assert!((e1[n] - 4.0 * n as f64).abs() < 1e-6, "{e1:?}");
        assert!((e2[n] - 4.0 * (n + 1) as f64).abs() < 1e-6, "{e2:?}");
    }
}

#[test]
fn poschl_teller_transmission() {
    // V = −ν(ν+1) sech²x: |T|² = sinh²πk / (sinh²πk + cos²(π(ν+½)))
    let nu: f64 = 1.5;
    let grid = Grid::new(-30.0, 30.0, 12001).unwrap();
    let v = PotentialOnGrid::from_fn(grid, Boundary::OPEN, Units::default(), |x| {
        -nu * (nu + 1.0) / x.cosh().powi(2)
    })
    .unwrap();
    for k in [0.5, 1.0, 1.5] {
        let s = (PI * k).sinh().powi(2);
        let want = s / (s + (PI * (nu + 0.5)).cos().powi(2));
        let a = numeric_rt(&v, k * k).unwrap();
        assert!((a.transmission() - want).abs() < 1e-6, "k = {k}");
        assert!(a.flux_defect().abs() < 1e-6);
    }
}

#[test]
fn free_bands() {
    let l = 2.0;
    let grid = Grid::new(0.0, l, 257).unwrap();
    let v = PotentialOnGrid::from_fn(grid, Boundary::Periodic, Units::default(), |_| 0.0).unwrap();
    let edges = numeric_band_edges(&v, 5).unwrap();
    let q = (PI / l).powi(2);
    for (e, want) in edges.iter().zip([0.0, q, q, 4.0 * q, 4.0 * q]) {
        assert!((e.energy - want).abs() < 1e-6, "{edges:?}");
    }
    assert_eq!(edges[0].boundary, BandBoundary::Bottom);
}

#[test]
fn deformed_oscillator_keeps_levels() {
    let w = Superpotential::analytic(Domain::LINE, |x| x).with_derivative(|_| 1.0);
    let grid = Grid::new(-9.0, 9.0, 3001).unwrap();
    let fam = IsoFamily::new(w, &grid, 0.7).unwrap();
    let d = deformed_family(&fam).unwrap();
    let e = bound_states(&d.v_hat, 3).unwrap().energies();
    for (n, got) in e.iter().enumerate() {
        assert!((got - 2.0 * n as f64).abs() < 1e-5, "{e:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn partner_spectra_interlock(a in 2.2f64..4.0, b in 0.0f64..1.0) {
        let w = Superpotential::analytic(Domain::LINE, move |x| a * x.tanh() + b / x.cosh());
        let grid = Grid::new(-25.0, 25.0, 6001).unwrap();
        let (e1, e2) = levels(&w, &grid, 3);
        prop_assert!(e1[0].abs() < 1e-6);
        for (lo, hi) in e1.iter().skip(1).zip(&e2) {
            prop_assert!((lo - hi).abs() < 1e-6, "{:?} {:?}", e1, e2);
        }
    }
}
