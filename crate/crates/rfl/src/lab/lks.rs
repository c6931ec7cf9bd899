//! Landau-Kolmogorov-Stein inequality with Favard-constant weights.

use serde::Serialize;

use rfl_core::{lks_constant, FellerParams};

use crate::error::{Error, Result};
use crate::field::CliffordField;
use crate::ops::riesz_feller_power;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LksCheck {
    pub k: u32,
    pub l: u32,
    pub constant: f64,
    /// `||(D_theta^alpha)^k f||_p^l`.
    pub lhs: f64,
    /// `C_{k,l} ||f||_p^{l-k} ||(D_theta^alpha)^l f||_p^k`.
    pub rhs: f64,
    pub pass: bool,
}

pub fn lks_check(f: &CliffordField, params: FellerParams, p: f64, k: u32, l: u32) -> Result<LksCheck> {
    if k > l {
        return Err(Error::input(format!("need k <= l, got k = {k}, l = {l}")));
    }
    let constant =
        lks_constant(k, l).ok_or_else(|| Error::input(format!("no Favard constant pair for k = {k}, l = {l}")))?;
    let f_norm = f.lp_norm(p)?;
    if f_norm == 0.0 {
        return Err(Error::input("LKS check of the zero field"));
    }
    let nk = riesz_feller_power(params, k, f)?.lp_norm(p)?;
    let nl = riesz_feller_power(params, l, f)?.lp_norm(p)?;
    let lhs = nk.powi(l as i32);
    let rhs = constant * f_norm.powi((l - k) as i32) * nl.powi(k as i32);
    Ok(LksCheck {
        k,
        l,
        constant,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-8),
    })
}
