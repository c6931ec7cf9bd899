//! Closed-form kernels on `R^n` and the upper half-space `R^{n+1}_+`.

use num_complex::Complex64;

use crate::clifford::{AlgebraSignature, Multivector};
use crate::error::{Error, Result};
use crate::special::{gamma, omega};

fn sq_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn dimension(x: &[f64]) -> Result<AlgebraSignature> {
    AlgebraSignature::new(x.len() as u32)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("kernel time must be positive, got {t}")))
    }
}

/// Poisson kernel `t / (omega_n (t^2 + |x|^2)^{(n+1)/2})`, the inverse
/// transform of `exp(-t |xi|)`.
pub fn poisson_kernel_closed(x: &[f64], t: f64) -> Result<f64> {
    check_time(t)?;
    let n = dimension(x)?.n();
    let denom = libm::pow(t * t + sq_norm(x), 0.5 * (n as f64 + 1.0));
    Ok(t / (omega(n) * denom))
}

/// Cauchy kernel `E(x, t) = (t + x) / (2 omega_n (t^2 + |x|^2)^{(n+1)/2})`,
/// a paravector: scalar part `t`, vector part `x`.
pub fn cauchy_kernel_closed(x: &[f64], t: f64) -> Result<Multivector> {
    check_time(t)?;
    paravector_kernel(x, t, 1.0)
}

/// Lower half-space counterpart `-E(x, -t) = (t - x) / (2 omega_n (...))`,
/// i.e. the upper kernel mirrored in `x`.
pub fn cauchy_kernel_closed_lower(x: &[f64], t: f64) -> Result<Multivector> {
    check_time(t)?;
    paravector_kernel(x, t, -1.0)
}

fn paravector_kernel(x: &[f64], t: f64, vector_sign: f64) -> Result<Multivector> {
    let sig = dimension(x)?;
    let n = sig.n();
    let denom = 2.0 * omega(n) * libm::pow(t * t + sq_norm(x), 0.5 * (n as f64 + 1.0));
    let mut mv = Multivector::complex_vector(sig, x, Complex64::new(vector_sign / denom, 0.0))?;
    mv.coeffs_mut()[0] = Complex64::new(t / denom, 0.0);
    Ok(mv)
}

/// Riesz kernel `E_j(x) = Gamma((n+1)/2) / pi^{(n+1)/2} * x_j / |x|^{n+1}`.
pub fn riesz_kernel_eval(axis: u32, x: &[f64]) -> Result<f64> {
    let n = dimension(x)?.n();
    if axis == 0 || axis > n {
        return Err(Error::param("axis", "Riesz direction outside 1..=n"));
    }
    let r2 = sq_norm(x);
    if r2 == 0.0 {
        return Err(Error::Domain("Riesz kernel is singular at x = 0".into()));
    }
    let h = 0.5 * (n as f64 + 1.0);
    let c = gamma(h) / libm::pow(core::f64::consts::PI, h);
    Ok(c * x[axis as usize - 1] / libm::pow(r2, h))
}
