//! Riesz-Feller operator family on grid fields.

use std::fmt;

use serde::{Deserialize, Serialize};

use rfl_core::{eval_symbol, FellerParams, Multivector, SymbolKind};

use crate::dft::{dft_forward, dft_inverse};
use crate::error::Result;
use crate::field::{CliffordField, SpectralField};
use crate::multiplier::{apply_multiplier, multiply_spectrum, KindSymbol};

/// Upper (`+`) or lower (`-`) Hardy component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HardySign {
    Plus,
    Minus,
}

impl HardySign {
    /// `f_+` has spectrum `chi_- F f`, `f_-` has `chi_+ F f`.
    pub fn spectral_kind(self) -> SymbolKind {
        match self {
            HardySign::Plus => SymbolKind::ChiMinus,
            HardySign::Minus => SymbolKind::ChiPlus,
        }
    }
}

impl fmt::Display for HardySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HardySign::Plus => "+",
            HardySign::Minus => "-",
        })
    }
}

/// Applies the symbol of `kind` with its default DC value.
pub fn apply_operator(kind: SymbolKind, f: &CliffordField) -> Result<CliffordField> {
    apply_multiplier(f, &KindSymbol::new(kind, f.sig())?)
}

/// `f_+- = (f +- H f) / 2`; the mean is split equally.
pub fn hardy_project(sign: HardySign, f: &CliffordField) -> Result<CliffordField> {
    apply_operator(sign.spectral_kind(), f)
}

pub fn hardy_project_spectrum(sign: HardySign, spec: &SpectralField) -> Result<SpectralField> {
    multiply_spectrum(spec, &KindSymbol::new(sign.spectral_kind(), spec.sig())?)
}

/// `(D_theta^alpha)^k f` in one pass with symbol
/// `|xi|^{alpha k} (chi_- + e^{-i pi theta k} chi_+)`.
pub fn riesz_feller_power(params: FellerParams, k: u32, f: &CliffordField) -> Result<CliffordField> {
    apply_operator(SymbolKind::RieszFellerPower { params, k }, f)
}

/// `rho^{-alpha k} (D_theta^alpha)^k` applied to a spectrum. The symbol
/// depends on `xi` only through `|xi|^{alpha k}` and `xi/|xi|`, so the
/// rescaling is evaluation at `xi / rho`.
pub fn riesz_feller_power_scaled_spectrum(
    params: FellerParams,
    k: u32,
    rho: f64,
    spec: &SpectralField,
) -> Result<SpectralField> {
    let sig = spec.sig();
    let kind = SymbolKind::RieszFellerPower { params, k };
    kind.validate(sig)?;
    let inv = 1.0 / rho;
    let dc = kind.default_dc(sig);
    let symbol = move |xi: &[f64]| -> rfl_core::Result<Multivector> {
        let scaled: Vec<f64> = xi.iter().map(|x| x * inv).collect();
        eval_symbol(&kind, sig, &scaled, Some(&dc))
    };
    multiply_spectrum(spec, &symbol)
}

/// `rho^{-alpha k} (D_theta^alpha)^k f`.
pub fn riesz_feller_power_scaled(params: FellerParams, k: u32, rho: f64, f: &CliffordField) -> Result<CliffordField> {
    Ok(dft_inverse(&riesz_feller_power_scaled_spectrum(params, k, rho, &dft_forward(f))?))
}
