//! Allocation-only core for Riesz-Feller spectral calculus over the complexified
//! Clifford algebra `Cl(0,n)`.
//!
//! Everything in this crate is pure arithmetic: blade products and the `|.|_0`
//! norm, Fourier symbols of the Dirac/Riesz/Hardy operator family, closed-form
//! Cauchy and Poisson kernels, Favard constants and radial (Hankel-type) profile
//! tools. Grids, transforms and I/O live in the `rfl` companion crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clifford;
pub mod error;
pub mod favard;
pub mod kernel;
pub mod radial;
pub mod special;
pub mod symbol;

pub use clifford::{blade_product, AlgebraSignature, Multivector, MAX_GENERATORS};
pub use error::{Error, Result};
pub use favard::{favard_constant, lks_constant, FavardTable};
pub use num_complex::Complex64;
pub use symbol::{eval_symbol, ComplexEvolutionTime, FellerParams, SymbolKind};
