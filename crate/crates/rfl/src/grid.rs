//! Periodic sampling lattices and their dual frequency lattices.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Origin-centred periodic lattice. Axis `j` holds `sizes[j]` samples at
/// `x_k = (k - N/2) h`; storage is row-major with the last axis fastest.
///
/// The dual lattice is kept in FFT order: bin `j` carries the signed index
/// `m = j` for `j < N/2` and `m = j - N` otherwise, at `xi_m = 2 pi m / (N h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    sizes: Vec<usize>,
    spacing: Vec<f64>,
}

impl GridSpec {
    pub fn new(sizes: Vec<usize>, spacing: Vec<f64>) -> Result<Self> {
        if sizes.is_empty() || sizes.len() > rfl_core::MAX_GENERATORS as usize {
            return Err(Error::input(format!(
                "grid dimension must be in 1..={}",
                rfl_core::MAX_GENERATORS
            )));
        }
        if sizes.len() != spacing.len() {
            return Err(Error::input("sizes and spacing differ in length"));
        }
        for (&n, &h) in sizes.iter().zip(&spacing) {
            if n < 4 || n % 2 != 0 {
                return Err(Error::input(format!("axis size {n} must be even and at least 4")));
            }
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::input(format!("spacing {h} must be positive")));
            }
        }
        Ok(Self { sizes, spacing })
    }

    /// `n` axes of `size` points at step `h`.
    pub fn cubic(n: usize, size: usize, h: f64) -> Result<Self> {
        Self::new(vec![size; n], vec![h; n])
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `prod h_j`, the Riemann-sum weight of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Period `N_j h_j` of each axis.
    pub fn extent(&self) -> Vec<f64> {
        self.sizes.iter().zip(&self.spacing).map(|(&n, &h)| n as f64 * h).collect()
    }

    /// Frequency bin width `2 pi / (N_j h_j)` of each axis.
    pub fn dxi(&self) -> Vec<f64> {
        self.extent().iter().map(|l| 2.0 * PI / l).collect()
    }

    /// Largest frequency bin width over axes.
    pub fn max_dxi(&self) -> f64 {
        self.dxi().into_iter().fold(0.0, f64::max)
    }

    /// `min_j pi / h_j`: the largest ball radius fully inside the lattice.
    pub fn nyquist_radius(&self) -> f64 {
        self.spacing.iter().map(|h| PI / h).fold(f64::INFINITY, f64::min)
    }

    /// Multi-index of a flat position.
    pub fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        for j in (0..self.n()).rev() {
            idx[j] = flat % self.sizes[j];
            flat /= self.sizes[j];
        }
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.sizes).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn coord(&self, axis: usize, k: usize) -> f64 {
        (k as f64 - (self.sizes[axis] / 2) as f64) * self.spacing[axis]
    }

    /// Signed frequency index of FFT bin `j` on `axis`.
    pub fn signed_index(&self, axis: usize, j: usize) -> i64 {
        let n = self.sizes[axis];
        if j < n / 2 {
            j as i64
        } else {
            j as i64 - n as i64
        }
    }

    /// FFT bin holding signed index `m`, if it lies in `[-N/2, N/2)`.
    pub fn bin_of(&self, axis: usize, m: i64) -> Option<usize> {
        let n = self.sizes[axis] as i64;
        if m < -n / 2 || m >= n / 2 {
            None
        } else {
            Some(m.rem_euclid(n) as usize)
        }
    }

    pub fn frequency(&self, axis: usize, j: usize) -> f64 {
        let n = self.sizes[axis];
        2.0 * PI * self.signed_index(axis, j) as f64 / (n as f64 * self.spacing[axis])
    }

    /// Coordinates of the point at `flat`.
    pub fn point(&self, flat: usize, out: &mut [f64]) {
        let mut idx = vec![0; self.n()];
        self.unravel(flat, &mut idx);
        for j in 0..self.n() {
            out[j] = self.coord(j, idx[j]);
        }
    }

    /// Frequency vector at FFT-ordered position `flat`.
    pub fn frequency_at(&self, flat: usize, out: &mut [f64]) {
        let mut idx = vec![0; self.n()];
        self.unravel(flat, &mut idx);
        for j in 0..self.n() {
            out[j] = self.frequency(j, idx[j]);
        }
    }

    /// All frequency vectors in storage order, flattened `len * n`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; self.len() * n];
        for (flat, chunk) in out.chunks_mut(n).enumerate() {
            self.frequency_at(flat, chunk);
        }
        out
    }

    /// All coordinates in storage order, flattened `len * n`.
    pub fn points(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; self.len() * n];
        for (flat, chunk) in out.chunks_mut(n).enumerate() {
            self.point(flat, chunk);
        }
        out
    }

    /// Flat index of the spatial origin.
    pub fn origin(&self) -> usize {
        let idx: Vec<usize> = self.sizes.iter().map(|n| n / 2).collect();
        self.ravel(&idx)
    }

    /// Same domain, every axis refined by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(
            self.sizes.iter().map(|n| n * factor).collect(),
            self.spacing.iter().map(|h| h / factor as f64).collect(),
        )
    }

    pub fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{:?} vs {:?}", self, other)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(GridSpec::new(vec![6], vec![0.1]).is_ok());
        assert!(GridSpec::new(vec![5], vec![0.1]).is_err());
        assert!(GridSpec::new(vec![2], vec![0.1]).is_err());
        assert!(GridSpec::new(vec![8], vec![0.0]).is_err());
        assert!(GridSpec::new(vec![8, 8], vec![0.1]).is_err());
        assert!(GridSpec::new(vec![], vec![]).is_err());
    }

    #[test]
    fn lattice_layout() {
        let g = GridSpec::new(vec![4, 6], vec![0.5, 1.0]).unwrap();
        assert_eq!(g.len(), 24);
        assert_eq!(g.coord(0, 0), -1.0);
        assert_eq!(g.coord(1, 3), 0.0);
        let mut x = [0.0; 2];
        g.point(g.origin(), &mut x);
        assert_eq!(x, [0.0, 0.0]);
        let mut idx = [0; 2];
        g.unravel(17, &mut idx);
        assert_eq!(idx, [2, 5]);
        assert_eq!(g.ravel(&idx), 17);
    }

    #[test]
    fn frequency_lattice_is_symmetric_range() {
        let g = GridSpec::cubic(1, 8, 0.25).unwrap();
        let m: Vec<i64> = (0..8).map(|j| g.signed_index(0, j)).collect();
        assert_eq!(m, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        assert!((g.frequency(0, 4) + PI / 0.25).abs() < 1e-12);
        assert_eq!(g.bin_of(0, -4), Some(4));
        assert_eq!(g.bin_of(0, 4), None);
        assert!((g.nyquist_radius() - 4.0 * PI).abs() < 1e-12);
        assert!((g.dxi()[0] - PI).abs() < 1e-12);
    }

    #[test]
    fn refinement_keeps_domain() {
        let g = GridSpec::cubic(2, 16, 0.5).unwrap();
        let r = g.refined(2).unwrap();
        assert_eq!(g.extent(), r.extent());
        assert_eq!(g.dxi(), r.dxi());
    }
}
