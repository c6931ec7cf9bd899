//! Bernstein ratios and the spectral bandwidth estimator.

use serde::Serialize;

use rfl_core::FellerParams;

use crate::dft::{dft_forward, dft_inverse};
use crate::error::{Error, Result};
use crate::field::{CliffordField, SpectralField};
use crate::lab::bandlimited::restrict_to_support;
use crate::ops::{hardy_project_spectrum, riesz_feller_power_scaled_spectrum, HardySign};

/// Hardy components whose norm falls below this fraction of `||f||_p` are
/// treated as absent.
const NEGLIGIBLE: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSequence {
    pub p: f64,
    pub alpha: f64,
    pub theta: f64,
    pub sign: Option<HardySign>,
    /// `(k, value)` with `k` strictly increasing.
    pub entries: Vec<(u32, f64)>,
    /// Largest entry: the fitted Bernstein constant, or the bandwidth estimate.
    pub fitted: f64,
    pub oracle_radius: f64,
}

impl RatioSequence {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.1)
    }

    pub fn last(&self) -> Option<f64> {
        self.entries.last().map(|e| e.1)
    }

    pub fn at(&self, k: u32) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == k).map(|e| e.1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernsteinReport {
    /// Radius the ratios are normalised by.
    pub radius: f64,
    pub oracle_radius: f64,
    pub plus: Option<RatioSequence>,
    pub minus: Option<RatioSequence>,
}

impl BernsteinReport {
    pub fn sequences(&self) -> impl Iterator<Item = &RatioSequence> {
        self.plus.iter().chain(self.minus.iter())
    }

    pub fn max_ratio(&self) -> f64 {
        self.sequences().map(|s| s.fitted).fold(0.0, f64::max)
    }
}

/// `||rho^{-alpha k} (D_theta^alpha)^k g||_p` for `k = 0..=k_max`.
fn scaled_power_norms(spec: &SpectralField, params: FellerParams, p: f64, k_max: u32, rho: f64) -> Result<Vec<f64>> {
    (0..=k_max)
        .map(|k| dft_inverse(&riesz_feller_power_scaled_spectrum(params, k, rho, spec)?).lp_norm(p))
        .collect()
}

/// `||(D_theta^alpha)^k f_+-||_p / (R^{alpha k} ||f_+-||_p)` for `k = 0..=k_max`,
/// with `R` the oracle radius of `f` unless `radius` overrides it. Powers act
/// on the numerical support of the spectrum.
pub fn bernstein_ratios(
    f: &CliffordField,
    params: FellerParams,
    p: f64,
    k_max: u32,
    radius: Option<f64>,
) -> Result<BernsteinReport> {
    if k_max < 1 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let mut spec = dft_forward(f);
    let oracle = restrict_to_support(&mut spec)?;
    let r = radius.unwrap_or(oracle);
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::input(format!("normalising radius {r} must be positive")));
    }
    let f_norm = f.lp_norm(p)?;
    let seq = |sign: HardySign| -> Result<Option<RatioSequence>> {
        let part = hardy_project_spectrum(sign, &spec)?;
        let norms = scaled_power_norms(&part, params, p, k_max, r)?;
        if norms[0] <= NEGLIGIBLE * f_norm {
            return Ok(None);
        }
        let entries: Vec<(u32, f64)> = norms.iter().enumerate().map(|(k, v)| (k as u32, v / norms[0])).collect();
        let fitted = entries.iter().map(|e| e.1).fold(0.0, f64::max);
        Ok(Some(RatioSequence {
            p,
            alpha: params.alpha(),
            theta: params.theta(),
            sign: Some(sign),
            entries,
            fitted,
            oracle_radius: oracle,
        }))
    };
    let plus = seq(HardySign::Plus)?;
    let minus = seq(HardySign::Minus)?;
    Ok(BernsteinReport {
        radius: r,
        oracle_radius: oracle,
        plus,
        minus,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandwidthReport {
    /// `a_k` for `k = 1..=k_max`.
    pub sequence: RatioSequence,
    /// `a_{k_max}`.
    pub estimate: f64,
    pub oracle_radius: f64,
    /// Largest frequency bin width of the grid.
    pub dxi: f64,
}

/// `a_k = (||(D_theta^alpha)^k f||_p / ||f||_p)^{1/(alpha k)}`, `k = 1..=k_max`,
/// evaluated on the numerical support of the spectrum.
///
/// Dividing by `||f||_p` removes the `||f||_p^{1/(alpha k)}` bias of the
/// unnormalised root; at `p = 2` the sequence is then a power mean of `|xi|`
/// under the spectral measure and so nondecreasing, bounded by the oracle.
pub fn bandwidth_estimate(f: &CliffordField, params: FellerParams, p: f64, k_max: u32) -> Result<BandwidthReport> {
    if k_max < 1 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let mut spec = dft_forward(f);
    let oracle = restrict_to_support(&mut spec)?;
    let norms = scaled_power_norms(&spec, params, p, k_max, oracle)?;
    let alpha = params.alpha();
    let entries: Vec<(u32, f64)> = (1..=k_max)
        .map(|k| {
            let ratio = norms[k as usize] / norms[0];
            (k, oracle * ratio.powf(1.0 / (alpha * k as f64)))
        })
        .collect();
    let estimate = entries.last().map(|e| e.1).unwrap_or(0.0);
    let fitted = entries.iter().map(|e| e.1).fold(0.0, f64::max);
    Ok(BandwidthReport {
        sequence: RatioSequence {
            p,
            alpha,
            theta: params.theta(),
            sign: None,
            entries,
            fitted,
            oracle_radius: oracle,
        },
        estimate,
        oracle_radius: oracle,
        dxi: f.grid().max_dxi(),
    })
}
