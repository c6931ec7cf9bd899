//! Radial profiles: the Bessel operator, the radial Fourier integral and the
//! smooth cutoff used for band-limited bump functions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{bessel_j_scaled, gamma};

/// Samples `values[j] = phi(j * step)` on a uniform radial grid from `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub step: f64,
    pub values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::param("step", "radial step must be positive"));
        }
        Ok(Self { step, values })
    }

    pub fn from_fn(step: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(step, (0..len).map(|j| f(j as f64 * step)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn radius(&self, j: usize) -> f64 {
        j as f64 * self.step
    }
}

/// Bessel operator `phi'' + (2 lambda + 1)/rho phi'` by second-order finite
/// differences. The origin uses the even-extension limit
/// `2 (lambda + 1) phi''(0)`; the outer end uses one-sided stencils.
pub fn bessel_operator_apply(profile: &RadialProfile, lambda: f64) -> Result<RadialProfile> {
    if !(lambda > -0.5) {
        return Err(Error::param("lambda", "Bessel operator order must exceed -1/2"));
    }
    let v = &profile.values;
    let len = v.len();
    if len < 5 {
        return Err(Error::param("profile", "need at least 5 radial samples"));
    }
    let h = profile.step;
    let h2 = h * h;
    let c = 2.0 * lambda + 1.0;
    let mut out = Vec::with_capacity(len);
    out.push(2.0 * (lambda + 1.0) * 2.0 * (v[1] - v[0]) / h2);
    for j in 1..len - 1 {
        let d2 = (v[j + 1] - 2.0 * v[j] + v[j - 1]) / h2;
        let d1 = (v[j + 1] - v[j - 1]) / (2.0 * h);
        out.push(d2 + c / (j as f64 * h) * d1);
    }
    let e = len - 1;
    let d2 = (2.0 * v[e] - 5.0 * v[e - 1] + 4.0 * v[e - 2] - v[e - 3]) / h2;
    let d1 = (3.0 * v[e] - 4.0 * v[e - 1] + v[e - 2]) / (2.0 * h);
    out.push(d2 + c / (e as f64 * h) * d1);
    RadialProfile::new(h, out)
}

/// `int_{R^n} phi(|xi|) e^{i<x,xi>} dxi` at each requested `|x|`, via
/// `(2 pi)^{n/2} |x|^{-(n-2)/2} int_0^inf phi(rho) rho^{n/2} J_{n/2-1}(rho |x|) drho`
/// evaluated by the trapezoid rule on the profile grid.
///
/// The equivalent form `(2 pi)^{n/2} int phi(rho) rho^{n-1} [J_nu(rho r)/(rho r)^nu] drho`
/// with `nu = n/2 - 1` is used so that `r = 0` needs no special case.
pub fn radial_fourier(profile: &RadialProfile, n: u32, radii: &[f64]) -> Result<Vec<f64>> {
    if profile.is_empty() {
        return Err(Error::param("profile", "empty radial profile"));
    }
    if n == 0 {
        return Err(Error::param("n", "dimension must be positive"));
    }
    let nu = 0.5 * n as f64 - 1.0;
    let pref = libm::pow(2.0 * PI, 0.5 * n as f64);
    let h = profile.step;
    let last = profile.len() - 1;
    radii
        .iter()
        .map(|&r| {
            if !(r >= 0.0) {
                return Err(Error::param("radii", "radius must be nonnegative"));
            }
            let mut acc = 0.0;
            for (j, &phi) in profile.values.iter().enumerate() {
                if phi == 0.0 {
                    continue;
                }
                let rho = j as f64 * h;
                let w = if j == 0 || j == last { 0.5 } else { 1.0 };
                let jac = if n == 1 { 1.0 } else { libm::pow(rho, (n - 1) as f64) };
                acc += w * phi * jac * bessel_j_scaled(nu, rho * r)?;
            }
            Ok(pref * acc * h)
        })
        .collect()
}

/// Smooth radial cutoff: `1` on `[0, R]`, `exp(1 - 1/(1 - s^2))` with
/// `s = (rho - R)/eps` on `(R, R + eps)`, and `0` beyond.
pub fn urysohn_transition(rho: f64, radius: f64, eps: f64) -> f64 {
    if rho <= radius {
        return 1.0;
    }
    let s = (rho - radius) / eps;
    if s >= 1.0 {
        0.0
    } else {
        libm::exp(1.0 - 1.0 / (1.0 - s * s))
    }
}

/// `(R|x|)^{-n/2} J_{n/2}(R|x|)`; band-limited to the ball of radius `R`.
pub fn bessel_bump(n: u32, radius: f64, r: f64) -> Result<f64> {
    bessel_j_scaled(0.5 * n as f64, radius * r)
}

/// Value of [`bessel_bump`] at the origin, `2^{-n/2} / Gamma(n/2 + 1)`.
pub fn bessel_bump_origin(n: u32) -> f64 {
    let nu = 0.5 * n as f64;
    1.0 / (libm::pow(2.0, nu) * gamma(nu + 1.0))
}
