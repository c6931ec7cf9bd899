//! Band-limited test fields and the spectral-support oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use rfl_core::radial::{bessel_bump, urysohn_transition};
use rfl_core::{AlgebraSignature, Complex64, Multivector};

use crate::dft::{dft_forward, dft_inverse};
use crate::error::{Error, Result};
use crate::field::{CliffordField, SpectralField};
use crate::grid::GridSpec;

/// Relative threshold defining the numerical support of a spectrum.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum BandlimitMode {
    /// Independent complex coefficients on every blade at each lattice
    /// frequency with `|xi| <= R`.
    RandomBall,
    /// `e^{i<x, xi_m>} e_0` for the signed frequency index `m`.
    PlaneWave { index: Vec<i64> },
    /// Scalar field whose spectrum is 1 on the ball and cut off smoothly by `R + eps`.
    UrysohnBump { eps: f64 },
    /// `(R|x|)^{-n/2} J_{n/2}(R|x|) e_0` sampled directly.
    BesselRadial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandlimitSpec {
    pub radius: f64,
    pub seed: u64,
    pub mode: BandlimitMode,
}

impl BandlimitSpec {
    pub fn random(radius: f64, seed: u64) -> Self {
        Self {
            radius,
            seed,
            mode: BandlimitMode::RandomBall,
        }
    }

    fn validate(&self, grid: &GridSpec) -> Result<()> {
        let ny = grid.nyquist_radius();
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::input(format!("band radius {} must be positive", self.radius)));
        }
        let reach = match &self.mode {
            BandlimitMode::UrysohnBump { eps } => {
                if !(*eps > 0.0 && eps.is_finite()) {
                    return Err(Error::input(format!("bump width eps = {eps} must be positive")));
                }
                self.radius + eps
            }
            _ => self.radius,
        };
        if reach > ny {
            return Err(Error::input(format!(
                "band radius {reach} exceeds the grid Nyquist radius {ny}"
            )));
        }
        Ok(())
    }
}

pub fn make_bandlimited(grid: &GridSpec, sig: AlgebraSignature, spec: &BandlimitSpec) -> Result<CliffordField> {
    spec.validate(grid)?;
    match &spec.mode {
        BandlimitMode::RandomBall => random_ball(grid, sig, spec.radius, spec.seed),
        BandlimitMode::PlaneWave { index } => plane_wave(grid, sig, index),
        BandlimitMode::UrysohnBump { eps } => make_urysohn_bump(grid, sig, spec.radius, *eps),
        BandlimitMode::BesselRadial => make_bessel_radial(grid, sig, spec.radius),
    }
}

/// Coefficients are drawn for every signed index in the box
/// `|m_j| <= R / dxi_j` in lexicographic order, so a refined grid over the
/// same domain reproduces the same trigonometric polynomial.
fn random_ball(grid: &GridSpec, sig: AlgebraSignature, radius: f64, seed: u64) -> Result<CliffordField> {
    let n = grid.n();
    let dxi = grid.dxi();
    let bounds: Vec<i64> = dxi.iter().map(|d| (radius / d).floor() as i64).collect();
    let bc = sig.blade_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spec = SpectralField::zeros(grid.clone(), sig)?;
    let mut m: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let mut bins = vec![0usize; n];
    let mut coeffs = vec![Complex64::new(0.0, 0.0); bc];
    loop {
        for c in coeffs.iter_mut() {
            *c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let r2: f64 = m.iter().zip(&dxi).map(|(&mj, d)| (mj as f64 * d).powi(2)).sum();
        let placed = m
            .iter()
            .enumerate()
            .all(|(a, &mj)| grid.bin_of(a, mj).map(|b| bins[a] = b).is_some());
        if placed && r2 <= radius * radius * (1.0 + 1e-12) {
            spec.scatter(grid.ravel(&bins), &coeffs);
        }
        // odometer over the box
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(dft_inverse(&spec));
            }
            axis -= 1;
            if m[axis] < bounds[axis] {
                m[axis] += 1;
                break;
            }
            m[axis] = -bounds[axis];
        }
    }
}

fn plane_wave(grid: &GridSpec, sig: AlgebraSignature, index: &[i64]) -> Result<CliffordField> {
    if index.len() != grid.n() {
        return Err(Error::input("plane-wave index must have one entry per axis"));
    }
    let mut xi = Vec::with_capacity(index.len());
    for (a, &m) in index.iter().enumerate() {
        let bin = grid
            .bin_of(a, m)
            .ok_or_else(|| Error::input(format!("plane-wave index {m} outside axis {a} lattice")))?;
        xi.push(grid.frequency(a, bin));
    }
    CliffordField::from_fn(grid.clone(), sig, |x| {
        let phase: f64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
        Ok(Multivector::scalar(sig, Complex64::from_polar(1.0, phase)))
    })
}

/// Plane wave along axis 1 at the lattice frequency nearest `radius`.
pub fn plane_wave_index(grid: &GridSpec, radius: f64) -> Vec<i64> {
    let mut index = vec![0; grid.n()];
    index[0] = (radius / grid.dxi()[0]).round() as i64;
    index
}

/// Real scalar field with spectrum `urysohn_transition(|xi|, R, eps) e_0`.
pub fn make_urysohn_bump(grid: &GridSpec, sig: AlgebraSignature, radius: f64, eps: f64) -> Result<CliffordField> {
    BandlimitSpec {
        radius,
        seed: 0,
        mode: BandlimitMode::UrysohnBump { eps },
    }
    .validate(grid)?;
    let spec = urysohn_spectrum(grid, sig, radius, eps)?;
    let mut f = dft_inverse(&spec);
    for c in f.data_mut() {
        c.im = 0.0;
    }
    Ok(f)
}

pub fn urysohn_spectrum(grid: &GridSpec, sig: AlgebraSignature, radius: f64, eps: f64) -> Result<SpectralField> {
    SpectralField::from_fn(grid.clone(), sig, |xi| {
        let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok(Multivector::scalar(sig, Complex64::new(urysohn_transition(r, radius, eps), 0.0)))
    })
}

pub fn make_bessel_radial(grid: &GridSpec, sig: AlgebraSignature, radius: f64) -> Result<CliffordField> {
    let n = sig.n();
    CliffordField::from_fn(grid.clone(), sig, |x| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        Ok(Multivector::scalar(sig, Complex64::new(bessel_bump(n, radius, r)?, 0.0)))
    })
}

/// `R(F f) = max { |xi| : |F f(xi)|_0 > 1e-12 max |F f|_0 }`.
pub fn oracle_radius(f: &CliffordField) -> Result<f64> {
    oracle_radius_spectrum(&dft_forward(f))
}

pub fn oracle_radius_spectrum(spec: &SpectralField) -> Result<f64> {
    let peak = spec.max_norm0();
    if peak == 0.0 {
        return Err(Error::input("spectral radius of the zero field is undefined"));
    }
    spec.support_radius(SUPPORT_TOL * peak)
        .ok_or_else(|| Error::input("empty spectral support"))
}

/// Zeroes every bin at or below the support threshold and returns the
/// oracle radius. Round-trip noise (about `1e-16` of the peak) outside the
/// true support would otherwise be amplified by `(|xi|/R)^{alpha k}` in high
/// operator powers.
pub fn restrict_to_support(spec: &mut SpectralField) -> Result<f64> {
    let radius = oracle_radius_spectrum(spec)?;
    let norms = spec.pointwise_norm0();
    let tol = SUPPORT_TOL * norms.iter().copied().fold(0.0, f64::max);
    let zero = vec![Complex64::new(0.0, 0.0); spec.sig().blade_count()];
    for (flat, &v) in norms.iter().enumerate() {
        if v <= tol {
            spec.scatter(flat, &zero);
        }
    }
    Ok(radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig2() -> AlgebraSignature {
        AlgebraSignature::new(2).unwrap()
    }

    #[test]
    fn random_ball_is_supported_in_ball_and_seeded() {
        let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
        let spec = BandlimitSpec::random(2.0, 11);
        let f = make_bandlimited(&grid, sig2(), &spec).unwrap();
        let g = make_bandlimited(&grid, sig2(), &spec).unwrap();
        assert_eq!(f, g);
        let r = oracle_radius(&f).unwrap();
        assert!(r <= 2.0 + 1e-12 && r > 2.0 - grid.max_dxi());
        let other = make_bandlimited(&grid, sig2(), &BandlimitSpec::random(2.0, 12)).unwrap();
        assert_ne!(f, other);
    }

    #[test]
    fn random_ball_is_resolution_independent() {
        let coarse = GridSpec::cubic(2, 32, 0.5).unwrap();
        let fine = coarse.refined(2).unwrap();
        let spec = BandlimitSpec::random(2.5, 4);
        let a = make_bandlimited(&coarse, sig2(), &spec).unwrap();
        let b = make_bandlimited(&fine, sig2(), &spec).unwrap();
        // the coarse lattice is every other fine point
        let mut idx = [0usize; 2];
        for flat in 0..coarse.len() {
            coarse.unravel(flat, &mut idx);
            let fine_flat = fine.ravel(&[2 * idx[0], 2 * idx[1]]);
            assert!((a.value(flat).max_abs_diff(&b.value(fine_flat)).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn nyquist_violation_is_rejected() {
        let grid = GridSpec::cubic(2, 16, 0.5).unwrap();
        assert!(make_bandlimited(&grid, sig2(), &BandlimitSpec::random(7.0, 0)).is_err());
        let bump = BandlimitSpec {
            radius: 6.0,
            seed: 0,
            mode: BandlimitMode::UrysohnBump { eps: 0.5 },
        };
        assert!(make_bandlimited(&grid, sig2(), &bump).is_err());
    }

    #[test]
    fn plane_wave_oracle_is_exact() {
        let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
        let index = vec![3, -4];
        let f = make_bandlimited(
            &grid,
            sig2(),
            &BandlimitSpec {
                radius: 2.0,
                seed: 0,
                mode: BandlimitMode::PlaneWave { index },
            },
        )
        .unwrap();
        let expected = 5.0 * grid.dxi()[0];
        assert!((oracle_radius(&f).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn restriction_removes_roundoff_tail() {
        let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
        let f = make_urysohn_bump(&grid, sig2(), 2.0, 0.25).unwrap();
        let mut spec = dft_forward(&f);
        let r = restrict_to_support(&mut spec).unwrap();
        let mut xi = [0.0; 2];
        for flat in 0..grid.len() {
            grid.frequency_at(flat, &mut xi);
            if xi[0].hypot(xi[1]) > r {
                assert!(spec.value(flat).is_zero());
            }
        }
    }

    #[test]
    fn zero_field_has_no_radius() {
        let grid = GridSpec::cubic(1, 8, 0.5).unwrap();
        let f = CliffordField::zeros(grid, AlgebraSignature::new(1).unwrap()).unwrap();
        assert!(oracle_radius(&f).is_err());
    }

    #[test]
    fn urysohn_bump_plateau() {
        let grid = GridSpec::cubic(2, 64, 0.5).unwrap();
        let f = make_urysohn_bump(&grid, sig2(), 2.0, 0.25).unwrap();
        let spec = dft_forward(&f);
        assert!((spec.component(0)[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(oracle_radius(&f).unwrap() < 2.25);
        assert!(make_urysohn_bump(&grid, sig2(), 2.0, 0.0).is_err());
    }

    #[test]
    fn bessel_radial_origin_value() {
        let grid = GridSpec::cubic(2, 16, 0.5).unwrap();
        let f = make_bessel_radial(&grid, sig2(), 2.0).unwrap();
        let v = f.value(grid.origin()).scalar_part().re;
        assert!((v - rfl_core::radial::bessel_bump_origin(2)).abs() < 1e-14);
    }
}
