use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Dense row-major square matrix used by the periodic solver.
#[derive(Debug, Clone)]
pub(crate) struct Dense {
    pub n: usize,
    pub a: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] += v;
    }
}

/// Eigen-decomposition of a real symmetric matrix: Householder reduction to
/// tridiagonal form followed by implicit QL. Eigenvalues come back
/// ascending; column `j` of the returned matrix is the `j`-th eigenvector.
pub(crate) fn symmetric_eigen(mut z: Dense) -> Result<(Vec<f64>, Dense)> {
    let n = z.n;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut z, &mut d, &mut e);
    tqli(&mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let mut sorted = Dense::zeros(n);
    let mut vals = Vec::with_capacity(n);
    for (col, &src) in order.iter().enumerate() {
        vals.push(d[src]);
        for k in 0..n {
            sorted.set(k, col, z.at(k, src));
        }
    }
    Ok((vals, sorted))
}

fn tred2(z: &mut Dense, d: &mut [f64], e: &mut [f64]) {
    let n = z.n;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += libm::fabs(z.at(i, k));
            }
            if scale == 0.0 {
                e[i] = z.at(i, l);
            } else {
                for k in 0..=l {
                    let v = z.at(i, k) / scale;
                    z.set(i, k, v);
                    h += v * v;
                }
                let f = z.at(i, l);
                let g = if f >= 0.0 {
                    -libm::sqrt(h)
                } else {
                    libm::sqrt(h)
                };
                e[i] = scale * g;
                h -= f * g;
                z.set(i, l, f - g);
                let mut f = 0.0;
                for j in 0..=l {
                    z.set(j, i, z.at(i, j) / h);
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += z.at(j, k) * z.at(i, k);
                    }
                    for k in j + 1..=l {
                        g += z.at(k, j) * z.at(i, k);
                    }
                    e[j] = g / h;
                    f += e[j] * z.at(i, j);
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = z.at(i, j);
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let v = z.at(j, k) - (f * e[k] + g * z.at(i, k));
                        z.set(j, k, v);
                    }
                }
            }
        } else {
            e[i] = z.at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += z.at(i, k) * z.at(k, j);
                }
                for k in 0..i {
                    let v = z.at(k, j) - g * z.at(k, i);
                    z.set(k, j, v);
                }
            }
        }
        d[i] = z.at(i, i);
        z.set(i, i, 1.0);
        for j in 0..i {
            z.set(j, i, 0.0);
            z.set(i, j, 0.0);
        }
    }
}

fn tqli(d: &mut [f64], e: &mut [f64], z: &mut Dense) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence("implicit QL"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z.at(k, i + 1);
                    let zi = z.at(k, i);
                    z.set(k, i + 1, s * zi + c * f);
                    z.set(k, i, c * zi - s * f);
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
