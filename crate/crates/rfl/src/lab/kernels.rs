//! FFT kernels against the closed-form Poisson and Cauchy kernels at
//! `alpha = 1`.

use serde::Serialize;

use rfl_core::kernel::{cauchy_kernel_closed, cauchy_kernel_closed_lower, poisson_kernel_closed};
use rfl_core::{AlgebraSignature, Complex64, ComplexEvolutionTime, Multivector};

use crate::error::{Error, Result};
use crate::field::CliffordField;
use crate::grid::GridSpec;
use crate::ops::HardySign;
use crate::semigroup::{cauchy_kernel_pm, kernel_k};

/// `(domain / t, points per t)` per dimension. The vector part of the
/// Cauchy kernel decays like `|x|^{-n}`, so its periodization error on the
/// central window is of order `t / L` at `n = 1` and needs the widest box.
fn resolution(n: usize) -> Result<(f64, f64)> {
    match n {
        1 => Ok((128.0, 16.0)),
        2 => Ok((64.0, 8.0)),
        3 => Ok((32.0, 4.0)),
        _ => Err(Error::input(format!("kernel comparison supports n <= 3, got {n}"))),
    }
}

/// Lattice on which [`kernel_compare`] evaluates the kernels at time `t`.
pub fn kernel_grid(n: usize, t: f64) -> Result<GridSpec> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::input(format!("kernel time must be positive, got {t}")));
    }
    let (span, per) = resolution(n)?;
    let size = (span * per) as usize;
    GridSpec::cubic(n, size, t / per)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelComparison {
    pub n: usize,
    pub t: f64,
    pub grid: GridSpec,
    /// Relative sup error of `K(., t)` against the Poisson kernel.
    pub poisson: f64,
    /// Relative sup error of `E+(., t)` against `E(x, t)`.
    pub upper: f64,
    /// Relative sup error of `E-(., -t)` against `-E(x, -t)`.
    pub lower: f64,
}

impl KernelComparison {
    pub fn worst(&self) -> f64 {
        self.poisson.max(self.upper).max(self.lower)
    }
}

/// `max |computed - closed|_0 / max |closed|_0` over the central half window.
pub fn window_error(field: &CliffordField, closed: impl Fn(&[f64]) -> rfl_core::Result<Multivector>) -> Result<f64> {
    let grid = field.grid();
    let n = grid.n();
    let half: Vec<f64> = grid.extent().iter().map(|l| l / 4.0).collect();
    let mut x = vec![0.0; n];
    let (mut err, mut peak) = (0.0f64, 0.0f64);
    for flat in 0..grid.len() {
        grid.point(flat, &mut x);
        if x.iter().zip(&half).any(|(v, h)| v.abs() > *h) {
            continue;
        }
        let c = closed(&x)?;
        err = err.max(field.value(flat).try_sub(&c)?.norm0());
        peak = peak.max(c.norm0());
    }
    Ok(err / peak)
}

/// Compares the FFT kernels with their closed forms at `alpha = 1` on
/// [`kernel_grid`]`(n, t)`.
pub fn kernel_compare(n: usize, t: f64) -> Result<KernelComparison> {
    let grid = kernel_grid(n, t)?;
    let sig = AlgebraSignature::new(n as u32)?;
    let time = ComplexEvolutionTime::real(t);
    let k = kernel_k(&grid, sig, time, 1.0)?;
    let poisson = window_error(&k, |x| {
        Ok(Multivector::scalar(sig, Complex64::new(poisson_kernel_closed(x, t)?, 0.0)))
    })?;
    let ep = cauchy_kernel_pm(&grid, sig, time, 1.0, HardySign::Plus)?;
    let upper = window_error(&ep, |x| cauchy_kernel_closed(x, t))?;
    let em = cauchy_kernel_pm(&grid, sig, time, 1.0, HardySign::Minus)?;
    let lower = window_error(&em, |x| cauchy_kernel_closed_lower(x, t))?;
    Ok(KernelComparison {
        n,
        t,
        grid,
        poisson,
        upper,
        lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_scales_with_time() {
        let g = kernel_grid(2, 0.5).unwrap();
        assert_eq!(g.sizes(), &[512, 512]);
        assert!((g.extent()[0] - 32.0).abs() < 1e-12);
        assert!(kernel_grid(4, 1.0).is_err());
        assert!(kernel_grid(1, 0.0).is_err());
    }

    #[test]
    fn one_dimensional_kernels_match() {
        let c = kernel_compare(1, 1.0).unwrap();
        assert!(c.poisson < 1e-3, "{c:?}");
        assert!(c.worst() < 1e-2, "{c:?}");
    }
}
