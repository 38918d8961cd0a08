//! Row-wise sparse matrices, just enough for the discretised superalgebra.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates add up.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for &(r, c, v) in triplets {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: f64) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => row[k].1 += v,
            Err(k) => row.insert(k, (c, v)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0)
            .map_or(0.0, |k| row[k].1)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                t.rows[c].push((r, v));
            }
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = Self::zeros(self.nrows, other.ncols);
        let mut acc = vec![0.0; other.ncols];
        let mut touched = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in &other.rows[k] {
                    if acc[c] == 0.0 && !touched.contains(&c) {
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            out.rows[r] = touched.iter().map(|&c| (c, acc[c])).collect();
            for &c in &touched {
                acc[c] = 0.0;
            }
            touched.clear();
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.ncols, x.len(), "dimension mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c]).sum())
            .collect()
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, s: f64, other: &SparseMatrix) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for &(c, v) in row {
                out.add_to(r, c, s * v);
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &SparseMatrix) {
        for (r, row) in block.rows.iter().enumerate() {
            for &(c, v) in row {
                self.add_to(r0 + r, c0 + c, v);
            }
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(
            self.rows
                .iter()
                .flat_map(|row| row.iter())
                .map(|&(_, v)| v * v)
                .sum(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose_agree_with_dense() {
        let a = SparseMatrix::from_triplets(2, 3, &[(0, 0, 1.0), (0, 2, 2.0), (1, 1, 3.0)]);
        let b = SparseMatrix::from_triplets(3, 2, &[(0, 1, 4.0), (1, 0, 5.0), (2, 1, 6.0)]);
        let c = a.mul(&b);
        assert_eq!(c.get(0, 0), 0.0);
        assert_eq!(c.get(0, 1), 16.0);
        assert_eq!(c.get(1, 0), 15.0);
        assert_eq!(c.get(1, 1), 0.0);
        let t = a.transpose();
        assert_eq!(t.get(2, 0), 2.0);
        assert_eq!(t.nrows(), 3);
        assert_eq!(a.mul_vec(&[1.0, 1.0, 1.0]), alloc::vec![3.0, 3.0]);
    }

    #[test]
    fn cancellation_leaves_zero_norm() {
        let a = SparseMatrix::from_triplets(2, 2, &[(0, 0, 1.5), (1, 0, -2.0)]);
        assert_eq!(a.add_scaled(-1.0, &a).frobenius_norm(), 0.0);
        let mut big = SparseMatrix::zeros(4, 4);
        big.place(2, 2, &a);
        assert_eq!(big.get(3, 2), -2.0);
    }
}
