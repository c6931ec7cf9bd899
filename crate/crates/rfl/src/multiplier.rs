//! Fourier multipliers acting by left Clifford multiplication.

use rayon::prelude::*;

use rfl_core::clifford::mul_acc;
use rfl_core::{eval_symbol, AlgebraSignature, Complex64, Multivector, SymbolKind};

use crate::dft::{dft_forward, dft_inverse};
use crate::error::{Error, Result};
use crate::field::{CliffordField, SpectralField};

/// Multivector-valued function of the frequency vector.
pub trait Symbol: Sync {
    fn eval(&self, xi: &[f64]) -> rfl_core::Result<Multivector>;
}

impl<F> Symbol for F
where
    F: Fn(&[f64]) -> rfl_core::Result<Multivector> + Sync,
{
    fn eval(&self, xi: &[f64]) -> rfl_core::Result<Multivector> {
        self(xi)
    }
}

/// A [`SymbolKind`] bound to a signature and a DC value.
#[derive(Debug, Clone)]
pub struct KindSymbol {
    pub kind: SymbolKind,
    pub sig: AlgebraSignature,
    pub dc: Multivector,
}

impl KindSymbol {
    /// Uses the kind's default DC policy.
    pub fn new(kind: SymbolKind, sig: AlgebraSignature) -> rfl_core::Result<Self> {
        kind.validate(sig)?;
        Ok(Self {
            kind,
            sig,
            dc: kind.default_dc(sig),
        })
    }

    pub fn with_dc(mut self, dc: Multivector) -> Self {
        self.dc = dc;
        self
    }
}

impl Symbol for KindSymbol {
    fn eval(&self, xi: &[f64]) -> rfl_core::Result<Multivector> {
        eval_symbol(&self.kind, self.sig, xi, Some(&self.dc))
    }
}

/// Lattice points per parallel work item.
const BLOCK: usize = 256;

/// `F(xi) -> m(xi) F(xi)` at every lattice frequency.
pub fn multiply_spectrum(spec: &SpectralField, m: &dyn Symbol) -> Result<SpectralField> {
    let grid = spec.grid();
    let sig = spec.sig();
    let n = grid.n();
    let bc = sig.blade_count();
    let len = grid.len();
    let freqs = grid.frequencies();
    let mut point_major = vec![Complex64::new(0.0, 0.0); len * bc];
    point_major
        .par_chunks_mut(bc * BLOCK)
        .enumerate()
        .try_for_each(|(block, out)| -> Result<()> {
            let mut val = vec![Complex64::new(0.0, 0.0); bc];
            for (i, dst) in out.chunks_mut(bc).enumerate() {
                let flat = block * BLOCK + i;
                let xi = &freqs[flat * n..(flat + 1) * n];
                let sym = m.eval(xi).map_err(|source| Error::Symbol {
                    xi: xi.to_vec(),
                    source,
                })?;
                if sym.sig() != sig {
                    return Err(rfl_core::Error::SignatureMismatch {
                        left: sig.n(),
                        right: sym.sig().n(),
                    }
                    .into());
                }
                spec.gather(flat, &mut val);
                mul_acc(sym.coeffs(), &val, dst);
            }
            Ok(())
        })?;
    let mut out = SpectralField::zeros(grid.clone(), sig)?;
    for (flat, coeffs) in point_major.chunks(bc).enumerate() {
        out.scatter(flat, coeffs);
    }
    Ok(out)
}

/// `F^{-1}[m(xi) F f(xi)]`.
pub fn apply_multiplier(f: &CliffordField, m: &dyn Symbol) -> Result<CliffordField> {
    Ok(dft_inverse(&multiply_spectrum(&dft_forward(f), m)?))
}
