//! Sampled potentials with boundary tags.

use alloc::vec::Vec;

use crate::numerics::Grid;
use crate::susy::Units;
use crate::{Error, Result};

/// How the wavefunction is constrained at one end of a finite box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// Infinite barrier at the grid endpoint (the potential diverges there).
    Wall,
    /// The physical domain continues past the grid endpoint; the box is a
    /// truncation and the edge value of `V` bounds the discrete spectrum.
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Dirichlet conditions at both grid endpoints.
    Box { left: Edge, right: Edge },
    /// The grid spans exactly one period `[x₀, x₀ + L]`; the last sample
    /// repeats the first.
    Periodic,
}

impl Boundary {
    pub const OPEN: Boundary = Boundary::Box {
        left: Edge::Open,
        right: Edge::Open,
    };
    pub const WALLS: Boundary = Boundary::Box {
        left: Edge::Wall,
        right: Edge::Wall,
    };
}

/// Potential samples on a uniform grid.
///
/// Interior samples are finite. An endpoint tagged [`Edge::Wall`] may hold
/// `+∞`; it is never read by the solvers because the wavefunction vanishes
/// there.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialOnGrid {
    grid: Grid,
    values: Vec<f64>,
    boundary: Boundary,
    units: Units,
}

impl PotentialOnGrid {
    pub fn new(grid: Grid, values: Vec<f64>, boundary: Boundary, units: Units) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let n = values.len();
        for (i, v) in values.iter().enumerate() {
            let wall_ok = match boundary {
                Boundary::Box { left, .. } if i == 0 => left == Edge::Wall,
                Boundary::Box { right, .. } if i == n - 1 => right == Edge::Wall,
                _ => false,
            };
            if !v.is_finite() && !(wall_ok && *v == f64::INFINITY) {
                return Err(Error::NonFiniteSample { index: i });
            }
        }
        Ok(Self {
            grid,
            values,
            boundary,
            units,
        })
    }

    /// Samples `v` on `grid`; wall endpoints are stored as `+∞` regardless of
    /// what `v` returns there.
    pub fn from_fn(
        grid: Grid,
        boundary: Boundary,
        units: Units,
        v: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let n = grid.len();
        let values = grid
            .points()
            .enumerate()
            .map(|(i, x)| match boundary {
                Boundary::Box {
                    left: Edge::Wall, ..
                } if i == 0 => f64::INFINITY,
                Boundary::Box {
                    right: Edge::Wall, ..
                } if i == n - 1 => f64::INFINITY,
                _ => v(x),
            })
            .collect();
        Self::new(grid, values, boundary, units)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Result<Self> {
        self.boundary = boundary;
        Self::new(self.grid, self.values, boundary, self.units)
    }

    /// `V + c`.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v + c).collect(),
            ..self.clone()
        }
    }

    /// Lowest energy at which the box truncation matters: the smaller of the
    /// potential values at [`Edge::Open`] endpoints. `None` for closed boxes
    /// and periodic problems.
    pub fn continuum_edge(&self) -> Option<f64> {
        match self.boundary {
            Boundary::Periodic => None,
            Boundary::Box { left, right } => {
                let mut edge: Option<f64> = None;
                if left == Edge::Open {
                    edge = Some(self.values[0]);
                }
                if right == Edge::Open {
                    let r = self.values[self.values.len() - 1];
                    edge = Some(edge.map_or(r, |l| l.min(r)));
                }
                edge
            }
        }
    }

    /// Every other sample, on [`Grid::coarsen`].
    pub fn coarsen(&self) -> Option<Self> {
        let grid = self.grid.coarsen()?;
        Some(Self {
            grid,
            values: self.values.iter().step_by(2).copied().collect(),
            ..self.clone()
        })
    }

    /// Smallest finite sample.
    pub fn min_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walls_may_hold_infinity_only_at_tagged_edges() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        let inf = f64::INFINITY;
        let vals = alloc::vec![inf, 0.0, 0.0, 0.0, inf];
        assert!(PotentialOnGrid::new(g, vals.clone(), Boundary::WALLS, Units::default()).is_ok());
        assert!(PotentialOnGrid::new(g, vals, Boundary::OPEN, Units::default()).is_err());
        let bad = alloc::vec![0.0, inf, 0.0, 0.0, 0.0];
        assert!(PotentialOnGrid::new(g, bad, Boundary::WALLS, Units::default()).is_err());
    }

    #[test]
    fn continuum_edge_is_lower_open_end() {
        let g = Grid::new(-1.0, 1.0, 5).unwrap();
        let v = PotentialOnGrid::from_fn(g, Boundary::OPEN, Units::default(), |x| x + 3.0).unwrap();
        assert_eq!(v.continuum_edge(), Some(2.0));
        let half = Boundary::Box {
            left: Edge::Wall,
            right: Edge::Open,
        };
        let v = PotentialOnGrid::from_fn(g, half, Units::default(), |x| x + 3.0).unwrap();
        assert_eq!(v.continuum_edge(), Some(4.0));
        assert_eq!(v.values()[0], f64::INFINITY);
        let v = PotentialOnGrid::from_fn(g, Boundary::WALLS, Units::default(), |_| 0.0).unwrap();
        assert_eq!(v.continuum_edge(), None);
        assert_eq!(v.shifted(1.5).values()[2], 1.5);
    }
}
