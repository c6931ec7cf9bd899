//! Grid-indexed multivector arrays in the space and frequency domains.
//!
//! Coefficients are stored blade-major: blade `A` occupies
//! `data[A * len .. (A + 1) * len]`, each block in the grid's row-major
//! order. Spectral fields use the FFT ordering of [`GridSpec`].

use std::f64::consts::PI;
use std::marker::PhantomData;

use rfl_core::{AlgebraSignature, Complex64, Multivector};

use crate::error::{Error, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frequency;

#[derive(Debug, Clone, PartialEq)]
pub struct Field<D> {
    grid: GridSpec,
    sig: AlgebraSignature,
    data: Vec<Complex64>,
    _domain: PhantomData<D>,
}

/// Multivector field sampled on the spatial lattice.
pub type CliffordField = Field<Space>;
/// Multivector field sampled on the frequency lattice.
pub type SpectralField = Field<Frequency>;

impl<D> Field<D> {
    pub fn zeros(grid: GridSpec, sig: AlgebraSignature) -> Result<Self> {
        check_dims(&grid, sig)?;
        let data = vec![Complex64::new(0.0, 0.0); grid.len() * sig.blade_count()];
        Ok(Self::from_parts_unchecked(grid, sig, data))
    }

    /// Wraps blade-major coefficient data.
    pub fn from_blade_major(grid: GridSpec, sig: AlgebraSignature, data: Vec<Complex64>) -> Result<Self> {
        check_dims(&grid, sig)?;
        if data.len() != grid.len() * sig.blade_count() {
            return Err(Error::input(format!(
                "expected {} coefficients, found {}",
                grid.len() * sig.blade_count(),
                data.len()
            )));
        }
        Ok(Self::from_parts_unchecked(grid, sig, data))
    }

    pub(crate) fn from_parts_unchecked(grid: GridSpec, sig: AlgebraSignature, data: Vec<Complex64>) -> Self {
        Self {
            grid,
            sig,
            data,
            _domain: PhantomData,
        }
    }

    pub(crate) fn retag<E>(self) -> Field<E> {
        Field::from_parts_unchecked(self.grid, self.sig, self.data)
    }

    /// One multivector per lattice point; `f` receives the flat index and
    /// the lattice vector (coordinates or frequencies depending on `D`).
    fn build(
        grid: GridSpec,
        sig: AlgebraSignature,
        coords: &[f64],
        mut f: impl FnMut(usize, &[f64]) -> Result<Multivector>,
    ) -> Result<Self> {
        check_dims(&grid, sig)?;
        let n = grid.n();
        let len = grid.len();
        let mut data = vec![Complex64::new(0.0, 0.0); len * sig.blade_count()];
        for (flat, x) in coords.chunks(n).enumerate() {
            let mv = f(flat, x)?;
            if mv.sig() != sig {
                return Err(rfl_core::Error::SignatureMismatch {
                    left: sig.n(),
                    right: mv.sig().n(),
                }
                .into());
            }
            for (blade, c) in mv.coeffs().iter().enumerate() {
                data[blade * len + flat] = *c;
            }
        }
        Ok(Self::from_parts_unchecked(grid, sig, data))
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn component(&self, blade: usize) -> &[Complex64] {
        let len = self.len();
        &self.data[blade * len..(blade + 1) * len]
    }

    pub fn component_mut(&mut self, blade: usize) -> &mut [Complex64] {
        let len = self.len();
        &mut self.data[blade * len..(blade + 1) * len]
    }

    pub fn value(&self, flat: usize) -> Multivector {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.sig.blade_count()];
        self.gather(flat, &mut coeffs);
        Multivector::from_coeffs(self.sig, coeffs).expect("blade count matches signature")
    }

    pub fn set_value(&mut self, flat: usize, mv: &Multivector) -> Result<()> {
        if mv.sig() != self.sig {
            return Err(rfl_core::Error::SignatureMismatch {
                left: self.sig.n(),
                right: mv.sig().n(),
            }
            .into());
        }
        self.scatter(flat, mv.coeffs());
        Ok(())
    }

    pub(crate) fn gather(&self, flat: usize, out: &mut [Complex64]) {
        let len = self.len();
        for (blade, c) in out.iter_mut().enumerate() {
            *c = self.data[blade * len + flat];
        }
    }

    pub(crate) fn scatter(&mut self, flat: usize, coeffs: &[Complex64]) {
        let len = self.len();
        for (blade, c) in coeffs.iter().enumerate() {
            self.data[blade * len + flat] = *c;
        }
    }

    /// `|f(x)|_0` at every lattice point.
    pub fn pointwise_norm0(&self) -> Vec<f64> {
        let len = self.len();
        let mut acc = vec![0.0; len];
        for blade in self.data.chunks(len) {
            for (a, c) in acc.iter_mut().zip(blade) {
                *a += c.norm_sqr();
            }
        }
        let scale = 2f64.powf(0.5 * self.sig.n() as f64);
        acc.iter_mut().for_each(|a| *a = scale * a.sqrt());
        acc
    }

    /// Largest `|f(x)|_0` over the lattice.
    pub fn max_norm0(&self) -> f64 {
        self.pointwise_norm0().into_iter().fold(0.0, f64::max)
    }

    /// Largest coefficient modulus difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        self.grid.check_same(&other.grid)?;
        if self.sig != other.sig {
            return Err(rfl_core::Error::SignatureMismatch {
                left: self.sig.n(),
                right: other.sig.n(),
            }
            .into());
        }
        Ok(())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_compatible(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_parts_unchecked(self.grid.clone(), self.sig, data))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let data = self.data.iter().map(|&a| a * c).collect();
        Self::from_parts_unchecked(self.grid.clone(), self.sig, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }
}

impl CliffordField {
    /// Samples `f(x)` at every lattice point.
    pub fn from_fn(
        grid: GridSpec,
        sig: AlgebraSignature,
        mut f: impl FnMut(&[f64]) -> Result<Multivector>,
    ) -> Result<Self> {
        let coords = grid.points();
        Self::build(grid, sig, &coords, |_, x| f(x))
    }

    /// `(sum_x |f(x)|_0^p prod h)^{1/p}` for `p >= 1`; `p = inf` is the
    /// lattice maximum of `|f(x)|_0`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm_of(&self.pointwise_norm0(), p, self.grid.cell_volume())
    }

    /// `<f, g> = 2^n sum_x [f(x)^dagger g(x)]_0 prod h`.
    pub fn pairing(&self, other: &CliffordField) -> Result<Complex64> {
        self.check_compatible(other)?;
        // [e_A^dagger e_A]_0 = 1 for every blade, so the scalar part is a
        // plain coefficient sum.
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += a.conj() * b;
        }
        let scale = 2f64.powi(self.sig.n() as i32) * self.grid.cell_volume();
        Ok(acc * scale)
    }
}

impl SpectralField {
    /// Evaluates `f(xi)` at every frequency-lattice point.
    pub fn from_fn(
        grid: GridSpec,
        sig: AlgebraSignature,
        mut f: impl FnMut(&[f64]) -> Result<Multivector>,
    ) -> Result<Self> {
        let coords = grid.frequencies();
        Self::build(grid, sig, &coords, |_, xi| f(xi))
    }

    /// `((2 pi)^{-n} sum_xi |F(xi)|_0^2 prod dxi)^{1/2}`; equals the spatial
    /// L2 norm of the inverse transform.
    pub fn l2_norm_plancherel(&self) -> f64 {
        let dv: f64 = self.grid.dxi().iter().product();
        let w = dv / (2.0 * PI).powi(self.grid.n() as i32);
        let s: f64 = self.pointwise_norm0().iter().map(|v| v * v).sum();
        (s * w).sqrt()
    }

    /// `max { |xi| : |F(xi)|_0 > tol }`, or `None` when nothing exceeds `tol`.
    pub fn support_radius(&self, tol: f64) -> Option<f64> {
        let norms = self.pointwise_norm0();
        let n = self.grid.n();
        let mut xi = vec![0.0; n];
        let mut best: Option<f64> = None;
        for (flat, &v) in norms.iter().enumerate() {
            if v > tol {
                self.grid.frequency_at(flat, &mut xi);
                let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                best = Some(best.map_or(r, |b: f64| b.max(r)));
            }
        }
        best
    }
}

pub(crate) fn lp_norm_of(pointwise: &[f64], p: f64, weight: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(pointwise.iter().copied().fold(0.0, f64::max));
    }
    if !(p >= 1.0) {
        return Err(Error::input(format!("L^p norm needs p >= 1, got {p}")));
    }
    // scale by the maximum so that large p neither overflows nor underflows
    let m = pointwise.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = pointwise.iter().map(|v| (v / m).powf(p)).sum();
    Ok(m * (s * weight).powf(1.0 / p))
}

fn check_dims(grid: &GridSpec, sig: AlgebraSignature) -> Result<()> {
    if grid.n() != sig.n() as usize {
        return Err(Error::input(format!(
            "grid dimension {} differs from generator count {}",
            grid.n(),
            sig.n()
        )));
    }
    Ok(())
}
