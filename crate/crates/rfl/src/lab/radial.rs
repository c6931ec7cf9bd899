//! Weighted sup bounds for iterated Riesz derivatives of radial fields.

use serde::Serialize;

use rfl_core::{Multivector, SymbolKind};

use crate::dft::{dft_forward, dft_inverse};
use crate::error::{Error, Result};
use crate::field::CliffordField;
use crate::lab::bandlimited::restrict_to_support;
use crate::multiplier::multiply_spectrum;

/// Relative tolerance of the radial-symmetry check.
pub const RADIAL_TOL: f64 = 1e-8;

/// Largest `|f(x) - f(sigma x)|_0 / max |f|_0` over the generators `sigma`
/// of the lattice symmetry group (axis reflections and adjacent axis swaps).
/// Needs equal sizes and spacing on every axis.
pub fn radial_symmetry_defect(f: &CliffordField) -> Result<f64> {
    let grid = f.grid();
    let (n0, h0) = (grid.sizes()[0], grid.spacing()[0]);
    if grid.sizes().iter().any(|&s| s != n0) || grid.spacing().iter().any(|&h| h != h0) {
        return Err(Error::input("radial symmetry check needs a cubic grid"));
    }
    let norms = f.pointwise_norm0();
    let peak = norms.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    let n = grid.n();
    let mut idx = vec![0; n];
    let mut img = vec![0; n];
    let mut worst: f64 = 0.0;
    for flat in 0..grid.len() {
        grid.unravel(flat, &mut idx);
        let here = f.value(flat);
        for g in 0..(2 * n - 1) {
            img.copy_from_slice(&idx);
            if g < n {
                // x_k -> -x_k is k -> N - k on the periodic lattice
                img[g] = (n0 - idx[g]) % n0;
            } else {
                img.swap(g - n, g - n + 1);
            }
            let there = f.value(grid.ravel(&img));
            let d = here.try_sub(&there)?.norm0();
            worst = worst.max(d);
        }
    }
    Ok(worst / peak)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialRow {
    pub k: u32,
    /// `sup_x (1 + |x|^2)^m |((-Delta)^{alpha/2})^k psi(x)|_0`.
    pub s_k: f64,
    /// `s_k^{1/k}` (absent at `k = 0`).
    pub root: Option<f64>,
    /// `s_k / s_{k-1}` (absent at `k = 0`).
    pub ratio: Option<f64>,
    /// Whether `alpha k > 2m + 1 - n`.
    pub side_condition: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialPwReport {
    pub alpha: f64,
    pub m: u32,
    pub oracle_radius: f64,
    pub symmetry_defect: f64,
    pub rows: Vec<RadialRow>,
    /// `max_k s_k / R^{alpha k}`.
    pub fitted_lambda: f64,
}

/// Scans `k = 0..=k_max`; `psi` must be radial within [`RADIAL_TOL`].
pub fn radial_pw_bound(psi: &CliffordField, alpha: f64, m: u32, k_max: u32) -> Result<RadialPwReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::input(format!("need 0 < alpha <= 1, got {alpha}")));
    }
    let defect = radial_symmetry_defect(psi)?;
    if defect > RADIAL_TOL {
        return Err(Error::input(format!(
            "field is not radially symmetric (relative defect {defect:.3e})"
        )));
    }
    let grid = psi.grid();
    let sig = psi.sig();
    let n = grid.n() as f64;
    let mut spec = dft_forward(psi);
    let rho = restrict_to_support(&mut spec)?;
    let weight: Vec<f64> = grid
        .points()
        .chunks(grid.n())
        .map(|x| (1.0 + x.iter().map(|v| v * v).sum::<f64>()).powi(m as i32))
        .collect();
    let mut rows: Vec<RadialRow> = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        // (|xi| / rho)^{alpha k}, rescaled afterwards so large k stays finite
        let order = alpha * k as f64;
        let kind = SymbolKind::RieszDerivative { alpha: order.max(f64::MIN_POSITIVE) };
        let symbol = move |xi: &[f64]| -> rfl_core::Result<Multivector> {
            if k == 0 {
                return Ok(Multivector::one(sig));
            }
            let scaled: Vec<f64> = xi.iter().map(|v| v / rho).collect();
            rfl_core::eval_symbol(&kind, sig, &scaled, None)
        };
        let iterate = dft_inverse(&multiply_spectrum(&spec, &symbol)?);
        let sup = iterate
            .pointwise_norm0()
            .iter()
            .zip(&weight)
            .map(|(v, w)| v * w)
            .fold(0.0, f64::max);
        let s_k = sup * rho.powf(order);
        let (root, ratio) = if k == 0 {
            (None, None)
        } else {
            let prev = rows[k as usize - 1].s_k;
            (Some(s_k.powf(1.0 / k as f64)), Some(s_k / prev))
        };
        rows.push(RadialRow {
            k,
            s_k,
            root,
            ratio,
            side_condition: order > 2.0 * m as f64 + 1.0 - n,
        });
    }
    let fitted_lambda = rows
        .iter()
        .map(|r| r.s_k / rho.powf(alpha * r.k as f64))
        .fold(0.0, f64::max);
    Ok(RadialPwReport {
        alpha,
        m,
        oracle_radius: rho,
        symmetry_defect: defect,
        rows,
        fitted_lambda,
    })
}
