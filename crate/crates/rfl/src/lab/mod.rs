//! Paley-Wiener and Bernstein experiments on band-limited fields.

pub mod bandlimited;
pub mod bernstein;
pub mod exptype;
pub mod kernels;
pub mod lks;
pub mod radial;

pub use bandlimited::{
    make_bandlimited, make_bessel_radial, make_urysohn_bump, oracle_radius, BandlimitMode, BandlimitSpec,
};
pub use bernstein::{bandwidth_estimate, bernstein_ratios, BandwidthReport, BernsteinReport, RatioSequence};
pub use exptype::{exp_type_profile, pairing_bound, pointwise_exp_type, Evolution, ExpTypeProfile, PointwiseReport};
pub use kernels::{kernel_compare, kernel_grid, KernelComparison};
pub use lks::{lks_check, LksCheck};
pub use radial::{radial_pw_bound, radial_symmetry_defect, RadialPwReport};
