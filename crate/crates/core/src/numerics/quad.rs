use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::grid::SampledFunction;
use crate::{Error, Result};

/// Composite Simpson integral of `f` over its grid.
///
/// Odd point counts use Simpson's 1/3 rule throughout; even counts close the
/// last three intervals with the 3/8 rule so the error stays `O(h⁴)`.
pub fn integrate(f: &SampledFunction) -> Result<f64> {
    if f.len() < 3 {
        return Err(Error::InvalidGrid("need at least 3 points"));
    }
    Ok(integrate_samples(f.values(), f.grid().spacing()))
}

/// Simpson integral of uniformly spaced samples (see [`integrate`]).
pub fn integrate_samples(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (y[0] + y[1]),
        _ if n % 2 == 1 => simpson(y, h),
        3 => simpson(y, h),
        4 => simpson38(y, h),
        _ => simpson(&y[..n - 3], h) + simpson38(&y[n - 4..], h),
    }
}

fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    debug_assert!(n % 2 == 1);
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in y.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (y[0] + y[n - 1] + 4.0 * odd + 2.0 * even)
}

fn simpson38(y: &[f64], h: f64) -> f64 {
    3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3])
}

/// Running integral `F_i = ∫_{x_0}^{x_i} f dx` with `F_0 = 0`.
///
/// Each interval uses the four-point cubic rule
/// `h/24 (-f_{i-1} + 13 f_i + 13 f_{i+1} - f_{i+2})`, switching to the
/// one-sided variant in the first and last interval.
pub fn cumulative(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (y[i - 1] + y[i]);
        }
        return out;
    }
    let c = h / 24.0;
    for i in 0..n - 1 {
        let piece = if i == 0 {
            c * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3])
        } else if i == n - 2 {
            c * (9.0 * y[n - 1] + 19.0 * y[n - 2] - 5.0 * y[n - 3] + y[n - 4])
        } else {
            c * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2])
        };
        out[i + 1] = out[i] + piece;
    }
    out
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Builds an `n`-point Gauss–Legendre rule by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if libm::fabs(dz) < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussLegendre { nodes, weights }
}

impl GaussLegendre {
    /// `∫_a^b f(x) dx` with this rule.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    }
}

/// Adaptive Gauss–Legendre integration on `[a, b]`: intervals are halved
/// until a 15-point rule on the halves agrees with the rule on the whole,
/// to `rel_tol · max(1, |I|)` distributed over the interval length.
pub fn integrate_with(a: f64, b: f64, rel_tol: f64, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    const MAX_DEPTH: usize = 48;
    const MAX_INTERVALS: usize = 200_000;
    if a == b {
        return Ok(0.0);
    }
    let gl = gauss_legendre(15);
    let whole = gl.integrate(a, b, &mut f);
    if !whole.is_finite() {
        return Err(Error::NonFiniteEvaluation { x: a });
    }
    let tol = rel_tol * libm::fmax(1.0, libm::fabs(whole));
    let span = libm::fabs(b - a);
    let mut stack = vec![(a, b, whole, 0usize)];
    let mut total = 0.0;
    let mut visited = 0;
    while let Some((lo, hi, est, depth)) = stack.pop() {
        visited += 1;
        if visited > MAX_INTERVALS {
            return Err(Error::NoConvergence("adaptive quadrature"));
        }
        let mid = 0.5 * (lo + hi);
        let left = gl.integrate(lo, mid, &mut f);
        let right = gl.integrate(mid, hi, &mut f);
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::NonFiniteEvaluation { x: mid });
        }
        let err = libm::fabs(left + right - est);
        if err <= tol * libm::fabs(hi - lo) / span {
            total += left + right;
        } else if depth >= MAX_DEPTH || mid <= lo.min(hi) || mid >= lo.max(hi) {
            return Err(Error::NoConvergence("adaptive quadrature"));
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    Ok(total)
}
