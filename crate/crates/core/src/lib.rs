//! Numerical toolkit for supersymmetric quantum mechanics.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`numerics`]: uniform grids, quadrature, finite differences, root
//!   bracketing and the special functions (erfc, complete elliptic integral,
//!   Jacobi elliptic functions).
//! - [`susy`]: superpotentials, partner potentials, the intertwining
//!   operators `A`/`A†`, ground states, SUSY-breaking detection and the
//!   discretised superalgebra.
//! - [`eigen`]: the independent bound-state and Bloch-band eigensolver used
//!   as an oracle for every analytic result.
//! - [`sip`]: the shape-invariant potential catalog, its algebraic spectra,
//!   operator-chain eigenfunctions and Hamiltonian hierarchies.
//! - [`scattering`]: numeric reflection/transmission, partner relations and
//!   the reflectionless family.
//! - [`isospectral`]: one-parameter strictly isospectral deformations.
//! - [`swkb`]: WKB and SUSY-WKB quantisation.
//! - [`periodic`]: periodic superpotentials, Lamé potentials and band edges.
//! - [`checks`]: the end-to-end verification suite.
//!
//! Units follow the usual convention: the kinetic operator is
//! `-(ħ²/2m) d²/dx²` and `W` enters the partner potentials through
//! `ħ/√(2m)`. Both constants live in [`Units`] and default to `ħ = 2m = 1`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod checks;
pub mod eigen;
mod error;
pub mod isospectral;
pub mod numerics;
pub mod periodic;
pub mod potential;
pub mod scattering;
pub mod sip;
pub mod sparse;
pub mod susy;
pub mod swkb;

pub use error::{Error, Result};
pub use numerics::{Bracket, Grid, SampledFunction};
pub use potential::{Boundary, Edge, PotentialOnGrid};
pub use susy::{Domain, Superpotential, Units};

pub use num_complex::Complex64;

/// Crate version, echoed into result envelopes.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
