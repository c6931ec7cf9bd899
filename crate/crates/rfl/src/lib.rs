//! Riesz-Feller spectral lab on periodic grids.
//!
//! Builds on the `rfl-core` algebra and symbols: scaled FFTs of
//! multivector fields, Hardy projections, Levy-Feller evolution, the
//! Paley-Wiener/Bernstein experiment suite, field I/O and the `rfl` CLI.

pub mod app;
pub mod dft;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod lab;
pub mod multiplier;
pub mod ops;
pub mod semigroup;

pub use dft::{dft_forward, dft_inverse};
pub use error::{Error, Result};
pub use field::{CliffordField, SpectralField};
pub use grid::GridSpec;
pub use multiplier::{apply_multiplier, multiply_spectrum, KindSymbol, Symbol};
pub use ops::{apply_operator, hardy_project, riesz_feller_power, HardySign};
pub use rfl_core;
pub use semigroup::{
    cauchy_kernel_pm, kernel_k, pde_residual, semigroup_apply, solve_cauchy, CauchyEvolver, CauchySolution,
};
