//! Fourier symbols of the Dirac / Riesz / Riesz-Feller operator family.
//!
//! Every symbol is a multivector-valued function of the frequency vector
//! `xi`, applied by left Clifford multiplication. With `w = xi/|xi|`:
//!
//! | kind                  | symbol                                      | value at `xi = 0` |
//! |-----------------------|---------------------------------------------|-------------------|
//! | `Dirac`               | `-i xi`                                     | `0`               |
//! | `RieszDerivative(a)`  | `|xi|^a`                                    | `0`               |
//! | `RieszHilbert`        | `-i w`                                      | `0`               |
//! | `DirectionalRiesz(j)` | `-i xi_j / |xi|`                            | `0`               |
//! | `ChiPlus`/`ChiMinus`  | `(1 +- i w) / 2`                            | `1/2`             |
//! | `HTheta(t)`           | `e^{-i pi t/2} (cos(pi t/2) + w sin(pi t/2))` | `1`             |
//! | `RieszFeller(a,t)`    | `|xi|^a h_t(xi)`                            | `0`               |
//! | `RieszFellerPower`    | `|xi|^{ak} (chi_- + e^{-i pi t k} chi_+)`   | `0` (`1` if `k=0`)|
//! | `SemigroupFactor`     | `exp(-z |xi|^a)`                            | `1`               |
//!
//! The `xi = 0` column is the default DC policy; callers may override it.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::{AlgebraSignature, Multivector};
use crate::error::{Error, Result};

/// Order `alpha in (0, 1]` and skewness `theta` of a Riesz-Feller operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellerParams {
    alpha: f64,
    theta: f64,
}

impl FellerParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::param("alpha", alloc::format!("need 0 < alpha <= 1, got {alpha}")));
        }
        if !theta.is_finite() {
            return Err(Error::param("theta", "must be finite"));
        }
        Ok(Self { alpha, theta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `|1 - theta| < alpha / 2`: the lower half-space evolution decays.
    pub fn cauchy_admissible(&self) -> bool {
        (1.0 - self.theta).abs() < 0.5 * self.alpha
    }
}

/// `z = t e^{i pi gamma / 2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEvolutionTime {
    pub t: f64,
    pub gamma: f64,
}

impl ComplexEvolutionTime {
    pub fn real(t: f64) -> Self {
        Self { t, gamma: 0.0 }
    }

    pub fn new(t: f64, gamma: f64) -> Result<Self> {
        if !(t >= 0.0) || !gamma.is_finite() {
            return Err(Error::param("t", "need t >= 0 and finite gamma"));
        }
        Ok(Self { t, gamma })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.t, 0.5 * PI * self.gamma)
    }

    /// `gamma` reduced to `[0, 4)`; `Re z` has the sign of `cos(pi gamma / 2)`,
    /// decided here without rounding `cos` near its zeros.
    fn phase_quarter(&self) -> f64 {
        let r = libm::fmod(self.gamma, 4.0);
        if r < 0.0 {
            r + 4.0
        } else {
            r
        }
    }

    /// Kernel evaluation requires `Re z > 0`.
    pub fn check_kernel_domain(&self) -> Result<()> {
        let g = self.phase_quarter();
        if self.t > 0.0 && (g < 1.0 || g > 3.0) {
            Ok(())
        } else {
            Err(Error::Domain(alloc::format!(
                "kernel needs Re(z) > 0, got z = {}",
                self.z()
            )))
        }
    }

    /// Boundedness of `exp(-z |xi|^a)`: `Re z >= 0`.
    pub fn check_bounded(&self) -> Result<()> {
        let g = self.phase_quarter();
        if self.t == 0.0 || g <= 1.0 || g >= 3.0 {
            Ok(())
        } else {
            Err(Error::param(
                "gamma",
                alloc::format!("t cos(pi gamma / 2) < 0 for t = {}, gamma = {}", self.t, self.gamma),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    Dirac,
    /// `|xi|^alpha`; any `alpha > 0` (so `alpha = 2` is `-Delta`).
    RieszDerivative { alpha: f64 },
    RieszHilbert,
    /// Axis `1..=n`.
    DirectionalRiesz { axis: u32 },
    ChiPlus,
    ChiMinus,
    HTheta { theta: f64 },
    RieszFeller(FellerParams),
    RieszFellerPower { params: FellerParams, k: u32 },
    SemigroupFactor { alpha: f64, time: ComplexEvolutionTime },
}

impl SymbolKind {
    pub fn validate(&self, sig: AlgebraSignature) -> Result<()> {
        match *self {
            SymbolKind::RieszDerivative { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::param("alpha", "Riesz derivative order must be positive"))
            }
            SymbolKind::DirectionalRiesz { axis } if axis == 0 || axis > sig.n() => {
                Err(Error::param("axis", "Riesz direction outside 1..=n"))
            }
            SymbolKind::HTheta { theta } if !theta.is_finite() => {
                Err(Error::param("theta", "must be finite"))
            }
            SymbolKind::SemigroupFactor { alpha, time } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(Error::param("alpha", "semigroup order must be positive"));
                }
                time.check_bounded()
            }
            _ => Ok(()),
        }
    }

    /// Value used at `xi = 0` when the caller supplies none.
    pub fn default_dc(&self, sig: AlgebraSignature) -> Multivector {
        match *self {
            SymbolKind::ChiPlus | SymbolKind::ChiMinus => Multivector::scalar(sig, Complex64::new(0.5, 0.0)),
            SymbolKind::HTheta { .. } | SymbolKind::SemigroupFactor { .. } => Multivector::one(sig),
            SymbolKind::RieszFellerPower { k: 0, .. } => Multivector::one(sig),
            _ => Multivector::zero(sig),
        }
    }
}

fn euclidean_norm(xi: &[f64]) -> f64 {
    libm::sqrt(xi.iter().map(|x| x * x).sum())
}

fn i_unit(sig: AlgebraSignature, xi: &[f64], r: f64, sign: f64) -> Result<Multivector> {
    // sign * i * xi / |xi|
    Multivector::complex_vector(sig, xi, Complex64::new(0.0, sign / r))
}

/// `chi_-(xi) + phase * chi_+(xi) = (1+phase)/2 + (phase-1)/2 * i w`.
fn hardy_combination(sig: AlgebraSignature, xi: &[f64], r: f64, phase: Complex64) -> Result<Multivector> {
    let scalar = (Complex64::new(1.0, 0.0) + phase) * 0.5;
    let vec_factor = (phase - Complex64::new(1.0, 0.0)) * Complex64::new(0.0, 0.5 / r);
    let mut mv = Multivector::complex_vector(sig, xi, vec_factor)?;
    mv.coeffs_mut()[0] += scalar;
    Ok(mv)
}

/// Evaluates a symbol at frequency `xi` (length `n`). `dc` overrides the value
/// at `xi = 0`; `None` applies [`SymbolKind::default_dc`].
pub fn eval_symbol(
    kind: &SymbolKind,
    sig: AlgebraSignature,
    xi: &[f64],
    dc: Option<&Multivector>,
) -> Result<Multivector> {
    if xi.len() != sig.n() as usize {
        return Err(Error::param("xi", "frequency dimension must equal n"));
    }
    kind.validate(sig)?;
    let r = euclidean_norm(xi);
    if r == 0.0 {
        return Ok(match dc {
            Some(v) => {
                if v.sig() != sig {
                    return Err(Error::SignatureMismatch {
                        left: sig.n(),
                        right: v.sig().n(),
                    });
                }
                v.clone()
            }
            None => kind.default_dc(sig),
        });
    }
    match *kind {
        SymbolKind::Dirac => Multivector::complex_vector(sig, xi, Complex64::new(0.0, -1.0)),
        SymbolKind::RieszDerivative { alpha } => {
            Ok(Multivector::scalar(sig, Complex64::new(libm::pow(r, alpha), 0.0)))
        }
        SymbolKind::RieszHilbert => i_unit(sig, xi, r, -1.0),
        SymbolKind::DirectionalRiesz { axis } => Ok(Multivector::scalar(
            sig,
            Complex64::new(0.0, -xi[axis as usize - 1] / r),
        )),
        SymbolKind::ChiPlus | SymbolKind::ChiMinus => {
            let sign = if matches!(kind, SymbolKind::ChiPlus) { 1.0 } else { -1.0 };
            let mut mv = i_unit(sig, xi, r, 0.5 * sign)?;
            mv.coeffs_mut()[0] += Complex64::new(0.5, 0.0);
            Ok(mv)
        }
        SymbolKind::HTheta { theta } => h_theta(sig, xi, r, theta),
        SymbolKind::RieszFeller(params) => {
            Ok(h_theta(sig, xi, r, params.theta)?.scale(Complex64::new(libm::pow(r, params.alpha), 0.0)))
        }
        SymbolKind::RieszFellerPower { params, k } => {
            if k == 0 {
                return Ok(Multivector::one(sig));
            }
            let phase = Complex64::from_polar(1.0, -PI * params.theta * k as f64);
            let radial = libm::pow(r, params.alpha * k as f64);
            Ok(hardy_combination(sig, xi, r, phase)?.scale(Complex64::new(radial, 0.0)))
        }
        SymbolKind::SemigroupFactor { alpha, time } => {
            let v = (-time.z() * libm::pow(r, alpha)).exp();
            Ok(Multivector::scalar(sig, v))
        }
    }
}

/// `h_theta(xi) = e^{-i pi theta/2} (cos(pi theta/2) + w sin(pi theta/2))`.
fn h_theta(sig: AlgebraSignature, xi: &[f64], r: f64, theta: f64) -> Result<Multivector> {
    let half = 0.5 * PI * theta;
    let phase = Complex64::from_polar(1.0, -half);
    let mut mv = Multivector::complex_vector(sig, xi, phase * (libm::sin(half) / r))?;
    mv.coeffs_mut()[0] += phase * libm::cos(half);
    Ok(mv)
}
