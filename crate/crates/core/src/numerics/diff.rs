use alloc::vec;
use alloc::vec::Vec;

use super::grid::Sample;

/// First derivative of uniformly spaced samples.
///
/// Fourth-order central stencil in the interior, second-order central one
/// point in from each edge and second-order one-sided at the edges.
pub fn derivative<T: Sample>(y: &[T], h: f64) -> Vec<T> {
    let n = y.len();
    let mut d = vec![T::zero(); n];
    if n < 3 {
        if n == 2 {
            let s = (y[1] - y[0]) * (1.0 / h);
            d[0] = s;
            d[1] = s;
        }
        return d;
    }
    let inv2h = 1.0 / (2.0 * h);
    d[0] = (y[0] * -3.0 + y[1] * 4.0 - y[2]) * inv2h;
    d[n - 1] = (y[n - 1] * 3.0 - y[n - 2] * 4.0 + y[n - 3]) * inv2h;
    if n < 5 {
        for i in 1..n - 1 {
            d[i] = (y[i + 1] - y[i - 1]) * inv2h;
        }
        return d;
    }
    d[1] = (y[2] - y[0]) * inv2h;
    d[n - 2] = (y[n - 1] - y[n - 3]) * inv2h;
    let inv12h = 1.0 / (12.0 * h);
    for i in 2..n - 2 {
        d[i] = (y[i - 2] - y[i - 1] * 8.0 + y[i + 1] * 8.0 - y[i + 2]) * inv12h;
    }
    d
}

/// Second derivative: fourth-order central interior stencil, three-point
/// stencil next to the edges and a one-sided second-order formula at them.
pub fn second_derivative<T: Sample>(y: &[T], h: f64) -> Vec<T> {
    let n = y.len();
    let mut d = vec![T::zero(); n];
    if n < 4 {
        return d;
    }
    let inv_h2 = 1.0 / (h * h);
    d[0] = (y[0] * 2.0 - y[1] * 5.0 + y[2] * 4.0 - y[3]) * inv_h2;
    d[n - 1] = (y[n - 1] * 2.0 - y[n - 2] * 5.0 + y[n - 3] * 4.0 - y[n - 4]) * inv_h2;
    for i in 1..n - 1 {
        if i == 1 || i == n - 2 || n < 5 {
            d[i] = (y[i - 1] - y[i] * 2.0 + y[i + 1]) * inv_h2;
        } else {
            d[i] = (-y[i - 2] + y[i - 1] * 16.0 - y[i] * 30.0 + y[i + 1] * 16.0 - y[i + 2])
                * (inv_h2 / 12.0);
        }
    }
    d
}
