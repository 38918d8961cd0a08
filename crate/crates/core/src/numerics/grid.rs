use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Uniform grid `x_min, x_min + h, ..., x_max` with at least three points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite"));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid("need at least 3 points"));
        }
        if x_max <= x_min {
            return Err(Error::InvalidGrid("x_max must exceed x_min"));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Grid with spacing close to `h` whose point count satisfies
    /// `(n - 1) % multiple == 0`, so that the grid can be coarsened.
    pub fn with_spacing(x_min: f64, x_max: f64, h: f64, multiple: usize) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidGrid("spacing must be positive"));
        }
        let multiple = multiple.max(1);
        let intervals = libm::ceil((x_max - x_min) / h) as usize;
        let intervals = intervals.div_ceil(multiple).max(1) * multiple;
        Self::new(x_min, x_max, intervals.max(2) + 1)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    /// Every other point of this grid, when the point count allows it.
    pub fn coarsen(&self) -> Option<Grid> {
        if self.n_points % 2 == 1 && self.n_points >= 5 {
            Some(Grid {
                n_points: self.n_points.div_ceil(2),
                ..*self
            })
        } else {
            None
        }
    }

    /// Index of the grid point nearest to `x` (clamped).
    pub fn nearest(&self, x: f64) -> usize {
        let t = (x - self.x_min) / self.spacing();
        let i = libm::round(t);
        if i <= 0.0 {
            0
        } else {
            (i as usize).min(self.n_points - 1)
        }
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Result<SampledFunction> {
        Sampled::from_fn(*self, f)
    }
}

/// Scalar types that may be stored in a [`Sampled`] function.
pub trait Sample:
    Copy
    + PartialEq
    + core::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Mul<Output = Self>
{
    fn zero() -> Self;
    fn is_finite_sample(&self) -> bool;
    fn from_real(x: f64) -> Self;
    fn modulus(&self) -> f64;
}

impl Sample for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite_sample(&self) -> bool {
        self.is_finite()
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(&self) -> f64 {
        libm::fabs(*self)
    }
}

impl Sample for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite_sample(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

/// Values of a function on a [`Grid`]. Non-finite samples are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled<T> {
    grid: Grid,
    values: Vec<T>,
}

pub type SampledFunction = Sampled<f64>;
pub type ComplexSampled = Sampled<Complex64>;

impl<T: Sample> Sampled<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite_sample()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> T) -> Result<Self> {
        Self::new(grid, grid.points().map(f).collect())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map(&self, f: impl Fn(f64, T) -> T) -> Result<Self> {
        let values = self
            .grid
            .points()
            .zip(self.values.iter())
            .map(|(x, &v)| f(x, v))
            .collect();
        Self::new(self.grid, values)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| v * factor).collect(),
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(Sample::modulus).fold(0.0, f64::max)
    }
}

impl SampledFunction {
    /// `∫ f² dx` over the grid.
    pub fn norm_squared(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v * v).collect();
        super::quad::integrate_samples(&sq, self.grid.spacing())
    }

    /// Rescaled copy with `∫ f² dx = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::NotNormalizable);
        }
        Ok(self.scaled(1.0 / libm::sqrt(n2)))
    }

    /// `∫ f g dx`.
    pub fn overlap(&self, other: &SampledFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let prod: Vec<f64> = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .collect();
        Ok(super::quad::integrate_samples(&prod, self.grid.spacing()))
    }

    /// Interior sign changes, ignoring samples below `rel_threshold · max|f|`.
    pub fn nodes(&self, rel_threshold: f64) -> usize {
        count_nodes(&self.values, rel_threshold)
    }
}

/// Counts sign changes between successive samples whose magnitude exceeds
/// `rel_threshold` times the largest magnitude.
pub fn count_nodes(values: &[f64], rel_threshold: f64) -> usize {
    let max = values.iter().fold(0.0_f64, |m, v| m.max(libm::fabs(*v)));
    let floor = rel_threshold * max;
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for &v in values {
        if libm::fabs(v) <= floor {
            continue;
        }
        let s = if v > 0.0 { 1.0 } else { -1.0 };
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}
