use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Tridiagonal pencil `M(λ) = A − λB`.
///
/// `A` may be unsymmetric as long as `a_lower[i]·a_upper[i] > 0` near the
/// spectrum of interest; `B` is symmetric positive definite. Row `i` of `M`
/// reads `lower[i-1], diag[i], upper[i]`.
#[derive(Debug, Clone)]
pub(crate) struct Pencil {
    pub a_diag: Vec<f64>,
    pub a_lower: Vec<f64>,
    pub a_upper: Vec<f64>,
    pub b_diag: f64,
    pub b_off: f64,
}

impl Pencil {
    pub fn len(&self) -> usize {
        self.a_diag.len()
    }

    fn entries(&self, lambda: f64, i: usize) -> (f64, f64, f64) {
        let d = self.a_diag[i] - lambda * self.b_diag;
        let l = if i > 0 {
            self.a_lower[i - 1] - lambda * self.b_off
        } else {
            0.0
        };
        let u = if i + 1 < self.len() {
            self.a_upper[i] - lambda * self.b_off
        } else {
            0.0
        };
        (l, d, u)
    }

    /// Number of pencil eigenvalues below `lambda` (negative pivots of the
    /// `LDU` factorisation of `M(λ)`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let n = self.len();
        let mut count = 0;
        let mut q = 1.0;
        let mut prev_u = 0.0;
        for i in 0..n {
            let (l, d, u) = self.entries(lambda, i);
            q = if i == 0 { d } else { d - l * prev_u / q };
            if q == 0.0 {
                q = -f64::EPSILON * (libm::fabs(d) + libm::fabs(l) + libm::fabs(u) + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
            prev_u = u;
        }
        count
    }

    /// Bounds that contain the whole spectrum.
    fn spectral_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let (l, d, u) = self.entries(0.0, i);
            let r = libm::fabs(l) + libm::fabs(u);
            lo = lo.min(d - r);
            hi = hi.max(d + r);
        }
        let scale = self.b_diag - 2.0 * libm::fabs(self.b_off);
        let (mut lo, mut hi) = (lo / scale, hi / scale);
        if lo > hi {
            core::mem::swap(&mut lo, &mut hi);
        }
        let pad = 1.0 + 1e-3 * (libm::fabs(lo) + libm::fabs(hi));
        let mut lo = lo.min(hi) - pad;
        while self.count_below(lo) > 0 {
            lo -= 2.0 * (libm::fabs(lo) + 1.0);
        }
        (lo, hi + pad)
    }

    /// The `k`-th eigenvalue (0-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::InvalidGrid(
                "more eigenvalues requested than unknowns",
            ));
        }
        let (mut lo, mut hi) = self.spectral_bounds();
        let mut guard = 0;
        while self.count_below(hi) <= k {
            hi += 2.0 * (libm::fabs(hi) + 1.0);
            guard += 1;
            if guard > 200 {
                return Err(Error::NoConvergence("eigenvalue bracket"));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * libm::fabs(mid) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Null vector of `M(λ)` by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            let (l, d, u) = self.entries(lambda, i);
            lower[i] = l;
            diag[i] = d;
            upper[i] = u;
        }
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.25 * libm::sin(1.3 * i as f64 + 0.7))
            .collect();
        for _ in 0..3 {
            x = solve_tridiagonal(&lower, &diag, &upper, &x)?;
            let norm = libm::sqrt(x.iter().map(|v| v * v).sum());
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::NoConvergence("inverse iteration"));
            }
            for v in &mut x {
                *v /= norm;
            }
        }
        Ok(x)
    }
}

/// Solves a general tridiagonal system by Gaussian elimination with partial
/// pivoting. `lower[0]` and `upper[n-1]` are ignored.
pub(crate) fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    // rows are stored as three bands plus a fill-in band created by pivoting
    let mut a = vec![[0.0_f64; 4]; n];
    let mut b = rhs.to_vec();
    for i in 0..n {
        a[i] = [
            if i > 0 { lower[i] } else { 0.0 },
            diag[i],
            if i + 1 < n { upper[i] } else { 0.0 },
            0.0,
        ];
    }
    // a[i] = [sub, diag, super, super2] in the coordinates of row i
    let tiny = 1e-300;
    for i in 0..n.saturating_sub(1) {
        if libm::fabs(a[i + 1][0]) > libm::fabs(a[i][1]) {
            let (ri, rn) = (a[i], a[i + 1]);
            a[i] = [0.0, rn[0], rn[1], rn[2]];
            a[i + 1] = [ri[1], ri[2], ri[3], 0.0];
            b.swap(i, i + 1);
        }
        let piv = if a[i][1] == 0.0 { tiny } else { a[i][1] };
        a[i][1] = piv;
        let m = a[i + 1][0] / piv;
        a[i + 1][1] -= m * a[i][2];
        a[i + 1][2] -= m * a[i][3];
        a[i + 1][0] = 0.0;
        b[i + 1] -= m * b[i];
    }
    if a[n - 1][1] == 0.0 {
        a[n - 1][1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= a[i][2] * x[i + 1];
        }
        if i + 2 < n {
            s -= a[i][3] * x[i + 2];
        }
        x[i] = s / a[i][1];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence("tridiagonal solve"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use std::vec::Vec;

    fn laplacian(n: usize) -> Pencil {
        Pencil {
            a_diag: vec![2.0; n],
            a_lower: vec![-1.0; n - 1],
            a_upper: vec![-1.0; n - 1],
            b_diag: 1.0,
            b_off: 0.0,
        }
    }

    #[test]
    fn discrete_laplacian_eigenvalues() {
        let n = 50;
        let p = laplacian(n);
        for k in 0..n {
            let exact = 2.0 - 2.0 * libm::cos((k + 1) as f64 * PI / (n + 1) as f64);
            assert!((p.eigenvalue(k).unwrap() - exact).abs() < 1e-13);
        }
        let v = p.eigenvector(p.eigenvalue(2).unwrap()).unwrap();
        let s: Vec<f64> = (0..n)
            .map(|i| libm::sin(3.0 * (i + 1) as f64 * PI / (n + 1) as f64))
            .collect();
        let dot: f64 = v.iter().zip(&s).map(|(a, b)| a * b).sum();
        let ns: f64 = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((dot.abs() / ns - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pivoting_solver_against_dense_check() {
        let lower = [0.0, 5.0, -1.0, 2.0];
        let diag = [1e-14, 1.0, 3.0, 0.5];
        let upper = [2.0, 1.0, 4.0, 0.0];
        let x_true = [1.0, -2.0, 0.5, 3.0];
        let mut rhs = [0.0; 4];
        for i in 0..4 {
            rhs[i] = diag[i] * x_true[i];
            if i > 0 {
                rhs[i] += lower[i] * x_true[i - 1];
            }
            if i < 3 {
                rhs[i] += upper[i] * x_true[i + 1];
            }
        }
        let x = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        for i in 0..4 {
            assert!((x[i] - x_true[i]).abs() < 1e-12, "{x:?}");
        }
    }

    #[test]
    fn unsymmetric_pencil_counts_like_its_symmetrisation() {
        // diagonal similarity of the Laplacian: lower·upper products unchanged
        let n = 30;
        let mut p = laplacian(n);
        for i in 0..n - 1 {
            let s = 1.0 + 0.5 * i as f64;
            p.a_lower[i] = -1.0 / s;
            p.a_upper[i] = -s;
        }
        let q = laplacian(n);
        for k in 0..n {
            assert!((p.eigenvalue(k).unwrap() - q.eigenvalue(k).unwrap()).abs() < 1e-13);
        }
    }
}
