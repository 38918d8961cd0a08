//! Grids, quadrature, finite differences, root finding and special functions.

mod diff;
mod grid;
mod quad;
mod roots;
mod special;

pub use diff::{derivative, second_derivative};
pub use grid::{count_nodes, ComplexSampled, Grid, Sample, Sampled, SampledFunction};
pub use quad::{
    cumulative, gauss_legendre, integrate, integrate_samples, integrate_with, GaussLegendre,
};
pub use roots::{bisect_root, expand_bracket_upward, Bracket, DEFAULT_ROOT_TOL};
pub use special::{elliptic_k, erfc, jacobi_sn_cn_dn};
