use core::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// Complementary error function `erfc(x) = (2/√π) ∫_x^∞ e^{-t²} dt`.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = libm::sqrt(a * b);
        if libm::fabs(an - bn) <= 1e-16 * an {
            return 0.5 * (an + bn);
        }
        a = an;
        b = bn;
    }
    a
}

/// Complete elliptic integral of the first kind, `K(m)`, with parameter
/// `m = k²` in `[0, 1)`, via the arithmetic–geometric mean.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain {
            what: "elliptic parameter m",
            value: m,
        });
    }
    Ok(FRAC_PI_2 / agm(1.0, libm::sqrt(1.0 - m)))
}

/// Jacobi elliptic functions `(sn, cn, dn)` of argument `x` and parameter
/// `m ∈ [0, 1]`, by descending Landen transformation.
pub fn jacobi_sn_cn_dn(x: f64, m: f64) -> Result<(f64, f64, f64)> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain {
            what: "elliptic parameter m",
            value: m,
        });
    }
    if !x.is_finite() {
        return Err(Error::NonFiniteEvaluation { x });
    }
    if m == 1.0 {
        let sech = 1.0 / libm::cosh(x);
        return Ok((libm::tanh(x), sech, sech));
    }
    if m == 0.0 {
        return Ok((libm::sin(x), libm::cos(x), 1.0));
    }
    if libm::fabs(x) < 1e-9 {
        let x2 = x * x;
        return Ok((x, 1.0 - 0.5 * x2, 1.0 - 0.5 * m * x2));
    }

    const STEPS: usize = 24;
    let mut em = [0.0; STEPS];
    let mut en = [0.0; STEPS];
    let mut a = 1.0;
    let mut emc = 1.0 - m;
    let mut c = 1.0;
    let mut last = 0;
    for i in 0..STEPS {
        last = i;
        em[i] = a;
        emc = libm::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if libm::fabs(a - emc) <= 1e-9 * a {
            break;
        }
        emc *= a;
        a = c;
    }

    let u = x * c;
    let mut sn = libm::sin(u);
    let mut cn = libm::cos(u);
    let mut dn = 1.0;
    if sn != 0.0 {
        let mut a = cn / sn;
        c *= a;
        for i in (0..=last).rev() {
            let b = em[i];
            a *= c;
            c *= dn;
            dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        let s = 1.0 / libm::sqrt(c * c + 1.0);
        sn = if sn >= 0.0 { s } else { -s };
        cn = c * sn;
    }
    Ok((sn, cn, dn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre;
    use proptest::prelude::*;

    /// Incomplete elliptic integral `F(φ, m)` by composite Gauss–Legendre
    /// quadrature, used as an independent inverse of `sn`.
    fn incomplete_f(phi: f64, m: f64) -> f64 {
        let gl = gauss_legendre(40);
        let pieces = 64;
        let h = phi / pieces as f64;
        (0..pieces)
            .map(|j| {
                let a = j as f64 * h;
                gl.integrate(a, a + h, |t| {
                    1.0 / libm::sqrt(1.0 - m * libm::sin(t) * libm::sin(t))
                })
            })
            .sum()
    }

    #[test]
    fn erfc_reference_values() {
        assert_eq!(erfc(0.0), 1.0);
        assert!(erfc(40.0).abs() <= 1e-300);
        // (2/√π) ∫_{0.5}^{∞} e^{-t²} dt, evaluated by Gauss–Legendre on [0.5, 12]
        let q = 2.0 / libm::sqrt(core::f64::consts::PI)
            * crate::numerics::integrate_with(0.5, 12.0, 1e-15, |t| libm::exp(-t * t)).unwrap();
        assert!((erfc(0.5) - q).abs() < 1e-12, "{} {}", erfc(0.5), q);
        assert!((erfc(0.5) - 0.479_500_122_186_953_5).abs() < 1e-12);
    }

    #[test]
    fn elliptic_k_values() {
        assert!((elliptic_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let q = gauss_legendre(64).integrate(0.0, FRAC_PI_2, |t| {
            1.0 / libm::sqrt(1.0 - 0.5 * libm::sin(t) * libm::sin(t))
        });
        let k = elliptic_k(0.5).unwrap();
        assert!((k - q).abs() / q < 1e-13);
        assert!((k - 1.854_074_677_301_372).abs() < 1e-13);

        let m = 1.0 - 1e-12;
        let k = elliptic_k(m).unwrap();
        let asym = 0.5 * libm::log(16.0 / (1.0 - m));
        assert!(k.is_finite() && k > 14.0);
        assert!((k - asym).abs() < 1e-9);

        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
    }

    #[test]
    fn jacobi_limits() {
        for &x in &[-2.3, -0.4, 0.0, 0.7, 3.1] {
            let (s, c, d) = jacobi_sn_cn_dn(x, 0.0).unwrap();
            assert!((s - libm::sin(x)).abs() < 1e-15);
            assert!((c - libm::cos(x)).abs() < 1e-15);
            assert_eq!(d, 1.0);
            let (s, c, d) = jacobi_sn_cn_dn(x, 1.0).unwrap();
            assert!((s - libm::tanh(x)).abs() < 1e-15);
            assert!((c - 1.0 / libm::cosh(x)).abs() < 1e-15);
            assert!((d - 1.0 / libm::cosh(x)).abs() < 1e-15);
        }
        for &m in &[0.0, 0.3, 0.99, 1.0] {
            assert_eq!(jacobi_sn_cn_dn(0.0, m).unwrap(), (0.0, 1.0, 1.0));
        }
        assert!(jacobi_sn_cn_dn(0.3, 1.5).is_err());
        assert!(jacobi_sn_cn_dn(0.3, -0.5).is_err());
    }

    #[test]
    fn near_limit_parameters_approach_limits() {
        let (s, _, d) = jacobi_sn_cn_dn(0.8, 1e-14).unwrap();
        assert!((s - libm::sin(0.8)).abs() < 1e-12);
        assert!((d - 1.0).abs() < 1e-12);
        let (s, c, _) = jacobi_sn_cn_dn(0.8, 1.0 - 1e-14).unwrap();
        assert!((s - libm::tanh(0.8)).abs() < 1e-10);
        assert!((c - 1.0 / libm::cosh(0.8)).abs() < 1e-10);
    }

    #[test]
    fn sn_inverts_incomplete_integral() {
        for &m in &[0.1, 0.5, 0.9] {
            let k = elliptic_k(m).unwrap();
            for &x in &[0.2, 0.5 * k, 0.9 * k] {
                let (s, c, _) = jacobi_sn_cn_dn(x, m).unwrap();
                let phi = libm::atan2(s, c);
                assert!((incomplete_f(phi, m) - x).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn pythagorean_identities(x in -20.0f64..20.0, m in 0.0f64..=1.0) {
            let (s, c, d) = jacobi_sn_cn_dn(x, m).unwrap();
            prop_assert!((s * s + c * c - 1.0).abs() <= 1e-12);
            prop_assert!((m * s * s + d * d - 1.0).abs() <= 1e-11);
        }

        #[test]
        fn quarter_period_shift(x in -6.0f64..6.0, m in 0.0f64..0.99) {
            let k = elliptic_k(m).unwrap();
            let (s, c, d) = jacobi_sn_cn_dn(x, m).unwrap();
            let (s1, c1, d1) = jacobi_sn_cn_dn(x + k, m).unwrap();
            let mc = libm::sqrt(1.0 - m);
            prop_assert!((s1 - c / d).abs() <= 1e-10);
            prop_assert!((c1 + mc * s / d).abs() <= 1e-10);
            prop_assert!((d1 - mc / d).abs() <= 1e-10);
        }

        #[test]
        fn periods(x in -6.0f64..6.0, m in 0.0f64..0.95) {
            let k = elliptic_k(m).unwrap();
            let (s, c, d) = jacobi_sn_cn_dn(x, m).unwrap();
            let (s4, c4, _) = jacobi_sn_cn_dn(x + 4.0 * k, m).unwrap();
            let (_, _, d2) = jacobi_sn_cn_dn(x + 2.0 * k, m).unwrap();
            prop_assert!((s4 - s).abs() <= 1e-10);
            prop_assert!((c4 - c).abs() <= 1e-10);
            prop_assert!((d2 - d).abs() <= 1e-10);
        }

        #[test]
        fn derivative_identities(x in -5.0f64..5.0, m in 0.0f64..0.99) {
            let h = 1e-5;
            let (s, c, d) = jacobi_sn_cn_dn(x, m).unwrap();
            let (sp, cp, dp) = jacobi_sn_cn_dn(x + h, m).unwrap();
            let (sm, cm, dm) = jacobi_sn_cn_dn(x - h, m).unwrap();
            let fd = |p: f64, q: f64| (p - q) / (2.0 * h);
            prop_assert!((fd(sp, sm) - c * d).abs() <= 1e-8);
            prop_assert!((fd(cp, cm) + s * d).abs() <= 1e-8);
            prop_assert!((fd(dp, dm) + m * s * c).abs() <= 1e-8);
        }

        #[test]
        fn erfc_reflection(x in -30.0f64..30.0) {
            prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() <= 1e-13);
        }
    }
}
