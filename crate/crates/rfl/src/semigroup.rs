//! Levy-Feller kernels, semigroup evolution and the Cauchy problem
//! `d/dx0 u + D_theta^alpha u = 0`, `u(., 0) = f`.

use rayon::prelude::*;
use serde::Serialize;

use rfl_core::{AlgebraSignature, Complex64, ComplexEvolutionTime, FellerParams, SymbolKind};

use crate::dft::{dft_forward, dft_inverse};
use crate::error::{Error, Result};
use crate::field::{CliffordField, SpectralField};
use crate::grid::GridSpec;
use crate::multiplier::{multiply_spectrum, KindSymbol};
use crate::ops::{hardy_project_spectrum, HardySign};

/// Spectrum `exp(-z |xi|^alpha) e_0` of the Levy-Feller kernel.
pub fn kernel_k_spectrum(
    grid: &GridSpec,
    sig: AlgebraSignature,
    time: ComplexEvolutionTime,
    alpha: f64,
) -> Result<SpectralField> {
    time.check_kernel_domain()?;
    let kind = SymbolKind::SemigroupFactor { alpha, time };
    kind.validate(sig)?;
    SpectralField::from_fn(grid.clone(), sig, |xi| Ok(rfl_core::eval_symbol(&kind, sig, xi, None)?))
}

/// `K_{alpha,n}(., z)` sampled on the lattice (periodised).
pub fn kernel_k(grid: &GridSpec, sig: AlgebraSignature, time: ComplexEvolutionTime, alpha: f64) -> Result<CliffordField> {
    Ok(dft_inverse(&kernel_k_spectrum(grid, sig, time, alpha)?))
}

/// `E^+-_{alpha,n}(., z) = (K +- H K) / 2`.
pub fn cauchy_kernel_pm(
    grid: &GridSpec,
    sig: AlgebraSignature,
    time: ComplexEvolutionTime,
    alpha: f64,
    sign: HardySign,
) -> Result<CliffordField> {
    let spec = kernel_k_spectrum(grid, sig, time, alpha)?;
    Ok(dft_inverse(&hardy_project_spectrum(sign, &spec)?))
}

/// `exp(-t e^{i pi gamma/2} (-Delta)^{alpha/2}) f`.
pub fn semigroup_apply(f: &CliffordField, time: ComplexEvolutionTime, alpha: f64) -> Result<CliffordField> {
    let sym = KindSymbol::new(SymbolKind::SemigroupFactor { alpha, time }, f.sig())?;
    if time.t == 0.0 {
        // S(0) = I exactly; skip the transform round trip
        return Ok(f.clone());
    }
    Ok(dft_inverse(&multiply_spectrum(&dft_forward(f), &sym)?))
}

/// `u(., x0)` together with the data that produced it.
#[derive(Debug, Clone)]
pub struct CauchySolution {
    pub grid: GridSpec,
    pub params: FellerParams,
    pub x0: f64,
    pub field: CliffordField,
}

/// Hardy splitting of a boundary datum, reused across many `x0`.
#[derive(Debug, Clone)]
pub struct CauchyEvolver {
    params: FellerParams,
    f: CliffordField,
    spec: SpectralField,
    upper: SpectralField,
    lower: SpectralField,
}

impl CauchyEvolver {
    pub fn new(f: &CliffordField, params: FellerParams) -> Result<Self> {
        let spec = dft_forward(f);
        let upper = hardy_project_spectrum(HardySign::Plus, &spec)?;
        let lower = hardy_project_spectrum(HardySign::Minus, &spec)?;
        Ok(Self {
            params,
            f: f.clone(),
            spec,
            upper,
            lower,
        })
    }

    pub fn params(&self) -> FellerParams {
        self.params
    }

    pub fn boundary(&self) -> &CliffordField {
        &self.f
    }

    /// Spectrum of the boundary datum.
    pub fn spectrum(&self) -> &SpectralField {
        &self.spec
    }

    /// Spectrum of `f_+` or `f_-`.
    pub fn hardy_spectrum(&self, sign: HardySign) -> &SpectralField {
        match sign {
            HardySign::Plus => &self.upper,
            HardySign::Minus => &self.lower,
        }
    }

    fn check_x0(&self, x0: f64) -> Result<()> {
        if !x0.is_finite() {
            return Err(Error::input("x0 must be finite"));
        }
        if x0 < 0.0 && !self.params.cauchy_admissible() {
            return Err(Error::input(format!(
                "x0 = {x0} < 0 needs |1 - theta| < alpha/2, got alpha = {}, theta = {}",
                self.params.alpha(),
                self.params.theta()
            )));
        }
        Ok(())
    }

    /// Spectrum of `u(., x0)`.
    pub fn spectrum_at(&self, x0: f64) -> Result<SpectralField> {
        self.check_x0(x0)?;
        let alpha = self.params.alpha();
        if x0 > 0.0 {
            let sym = KindSymbol::new(
                SymbolKind::SemigroupFactor {
                    alpha,
                    time: ComplexEvolutionTime::real(x0),
                },
                self.f.sig(),
            )?;
            multiply_spectrum(&self.upper, &sym)
        } else if x0 < 0.0 {
            // x0 e^{-i pi theta} = |x0| e^{i pi (1 - theta)}
            let time = ComplexEvolutionTime::new(-x0, 2.0 * (1.0 - self.params.theta()))?;
            let sym = KindSymbol::new(SymbolKind::SemigroupFactor { alpha, time }, self.f.sig())?;
            multiply_spectrum(&self.lower, &sym)
        } else {
            Ok(self.spec.clone())
        }
    }

    pub fn solve(&self, x0: f64) -> Result<CauchySolution> {
        let field = if x0 == 0.0 {
            self.check_x0(x0)?;
            self.f.clone()
        } else {
            dft_inverse(&self.spectrum_at(x0)?)
        };
        Ok(CauchySolution {
            grid: self.f.grid().clone(),
            params: self.params,
            x0,
            field,
        })
    }

    /// `|| (u(x0+d) - u(x0-d)) / (2d) + D_theta^alpha u(x0) ||_2`.
    pub fn pde_residual(&self, x0: f64, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::input("residual step must be positive"));
        }
        let same_branch = (x0 > 0.0 && x0 - delta > 0.0) || (x0 < 0.0 && x0 + delta < 0.0);
        if !same_branch {
            return Err(Error::input(format!(
                "x0 = {x0} with step {delta} crosses the boundary x0 = 0"
            )));
        }
        let ahead = self.spectrum_at(x0 + delta)?;
        let behind = self.spectrum_at(x0 - delta)?;
        let here = self.spectrum_at(x0)?;
        let op = multiply_spectrum(&here, &KindSymbol::new(SymbolKind::RieszFeller(self.params), here.sig())?)?;
        let inv = 1.0 / (2.0 * delta);
        let mut res = ahead.try_sub(&behind)?.scale(Complex64::new(inv, 0.0));
        for (r, o) in res.data_mut().iter_mut().zip(op.data()) {
            *r += o;
        }
        dft_inverse(&res).lp_norm(2.0)
    }
}

/// Default residual step `1e-3 max(1, |x0|)`.
pub fn default_delta(x0: f64) -> f64 {
    1e-3 * x0.abs().max(1.0)
}

pub fn solve_cauchy(f: &CliffordField, x0: f64, params: FellerParams) -> Result<CauchySolution> {
    CauchyEvolver::new(f, params)?.solve(x0)
}

pub fn pde_residual(f: &CliffordField, x0: f64, delta: f64, params: FellerParams) -> Result<f64> {
    CauchyEvolver::new(f, params)?.pde_residual(x0, delta)
}

/// One `x0` sample of an evolution schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolveRow {
    pub x0: f64,
    pub norm: f64,
    /// `None` at `x0 = 0`, where the central difference would straddle both branches.
    pub residual: Option<f64>,
}

/// Evaluates `||u(., x0)||_p` and the PDE residual at every `x0`; samples
/// run concurrently and come back in schedule order.
pub fn evolve(evolver: &CauchyEvolver, schedule: &[f64], p: f64) -> Result<Vec<EvolveRow>> {
    schedule
        .par_iter()
        .map(|&x0| {
            let sol = evolver.solve(x0)?;
            let norm = sol.field.lp_norm(p)?;
            let residual = if x0 == 0.0 {
                None
            } else {
                let d = default_delta(x0).min(0.5 * x0.abs());
                Some(evolver.pde_residual(x0, d)?)
            };
            Ok(EvolveRow { x0, norm, residual })
        })
        .collect()
}
