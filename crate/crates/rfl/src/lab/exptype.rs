//! Exponential-type bounds for Cauchy solutions: norm profile, pointwise
//! sup and the pairing estimate.

use serde::Serialize;

use rfl_core::{AlgebraSignature, Complex64, FellerParams, Multivector};

use crate::dft::dft_inverse;
use crate::error::{Error, Result};
use crate::field::CliffordField;
use crate::lab::bandlimited::{oracle_radius_spectrum, restrict_to_support};
use crate::multiplier::multiply_spectrum;
use crate::ops::HardySign;
use crate::semigroup::CauchyEvolver;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpTypeProfile {
    pub p: f64,
    /// Radius in the weight `e^{-|x0| R^alpha}`.
    pub radius: f64,
    pub f_norm: f64,
    /// `(x0, e^{-|x0| R^alpha} ||u(., x0)||_p)` in schedule order.
    pub rows: Vec<(f64, f64)>,
    /// `max_x0 e^{-|x0| R^alpha} ||u(., x0)||_p / ||f||_p`.
    pub fitted_c: f64,
}

pub fn exp_type_profile(
    evolver: &CauchyEvolver,
    p: f64,
    schedule: &[f64],
    radius: Option<f64>,
) -> Result<ExpTypeProfile> {
    let r = match radius {
        Some(r) => r,
        None => oracle_radius_spectrum(evolver.spectrum())?,
    };
    let alpha = evolver.params().alpha();
    let f_norm = evolver.boundary().lp_norm(p)?;
    if f_norm == 0.0 {
        return Err(Error::input("exponential-type profile of the zero field"));
    }
    let rows = schedule
        .iter()
        .map(|&x0| {
            let u = evolver.solve(x0)?;
            Ok((x0, (-x0.abs() * r.powf(alpha)).exp() * u.field.lp_norm(p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let fitted_c = rows.iter().map(|r| r.1).fold(0.0, f64::max) / f_norm;
    Ok(ExpTypeProfile {
        p,
        radius: r,
        f_norm,
        rows,
        fitted_c,
    })
}

/// Which family of fields is scanned by [`pointwise_exp_type`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Evolution {
    /// The Cauchy solution `u(., x0)`.
    Cauchy,
    /// `exp(-x0 (-Delta)^{alpha/2}) f_+` for every `x0`, on the numerical
    /// support of the spectrum; below the boundary this grows like
    /// `e^{|x0| R(F f)^alpha}`.
    UpperContinuation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub radius: f64,
    /// `sup e^{-sqrt(x0^2 + |x|^2) R^alpha} |u(x, x0)|_0`.
    pub sup: f64,
    pub argmax_x0: f64,
    pub argmax_abs_x: f64,
    /// Running sup after each schedule entry.
    pub running: Vec<(f64, f64)>,
}

pub fn pointwise_exp_type(
    evolver: &CauchyEvolver,
    schedule: &[f64],
    radius: Option<f64>,
    evolution: Evolution,
) -> Result<PointwiseReport> {
    let r = match radius {
        Some(r) => r,
        None => oracle_radius_spectrum(evolver.spectrum())?,
    };
    let ra = r.powf(evolver.params().alpha());
    let grid = evolver.boundary().grid().clone();
    let abs_x: Vec<f64> = grid
        .points()
        .chunks(grid.n())
        .map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut upper = evolver.hardy_spectrum(HardySign::Plus).clone();
    if evolution == Evolution::UpperContinuation && !upper.is_zero() {
        restrict_to_support(&mut upper)?;
    }
    let alpha = evolver.params().alpha();
    let mut best = (0.0, 0.0, 0.0);
    let mut running = Vec::with_capacity(schedule.len());
    for &x0 in schedule {
        let u = match evolution {
            Evolution::Cauchy => evolver.solve(x0)?.field,
            Evolution::UpperContinuation => {
                let symbol = move |xi: &[f64]| -> rfl_core::Result<Multivector> {
                    let r = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                    let sig = AlgebraSignature::new(xi.len() as u32)?;
                    Ok(Multivector::scalar(sig, Complex64::new((-x0 * r.powf(alpha)).exp(), 0.0)))
                };
                dft_inverse(&multiply_spectrum(&upper, &symbol)?)
            }
        };
        for (v, &ax) in u.pointwise_norm0().iter().zip(&abs_x) {
            let w = (-(x0 * x0 + ax * ax).sqrt() * ra).exp() * v;
            if w > best.0 {
                best = (w, x0, ax);
            }
        }
        running.push((x0, best.0));
    }
    Ok(PointwiseReport {
        radius: r,
        sup: best.0,
        argmax_x0: best.1,
        argmax_abs_x: best.2,
        running,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingCheck {
    pub x0: f64,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `|<u(., x0), g>_0| <= C 2^n e^{|x0| R^alpha} ||f||_p ||g||_q` with `1/p + 1/q = 1`.
pub fn pairing_bound(
    evolver: &CauchyEvolver,
    g: &CliffordField,
    p: f64,
    x0: f64,
    fitted_c: f64,
    radius: f64,
) -> Result<PairingCheck> {
    if !(p > 1.0) {
        return Err(Error::input(format!("pairing needs p > 1, got {p}")));
    }
    let q = if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
    let u = evolver.solve(x0)?.field;
    let value = u.pairing(g)?.norm();
    let n = g.sig().n() as i32;
    let alpha = evolver.params().alpha();
    let bound = fitted_c
        * 2f64.powi(n)
        * (x0.abs() * radius.powf(alpha)).exp()
        * evolver.boundary().lp_norm(p)?
        * g.lp_norm(q)?;
    Ok(PairingCheck {
        x0,
        value,
        bound,
        pass: value <= bound * (1.0 + 1e-10),
    })
}

/// Convenience for a one-off profile from a boundary datum.
pub fn exp_type_profile_of(
    f: &CliffordField,
    params: FellerParams,
    p: f64,
    schedule: &[f64],
) -> Result<ExpTypeProfile> {
    exp_type_profile(&CauchyEvolver::new(f, params)?, p, schedule, None)
}

#[cfg(test)]
mod tests {
    use rfl_core::AlgebraSignature;

    use super::*;
    use crate::grid::GridSpec;
    use crate::lab::bandlimited::{make_bandlimited, BandlimitSpec};

    fn setup(theta: f64) -> CauchyEvolver {
        let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
        let sig = AlgebraSignature::new(2).unwrap();
        let f = make_bandlimited(&grid, sig, &BandlimitSpec::random(2.0, 3)).unwrap();
        CauchyEvolver::new(&f, FellerParams::new(1.0, theta).unwrap()).unwrap()
    }

    #[test]
    fn profile_starts_at_norm_and_decreases_for_theta_zero() {
        let ev = setup(0.0);
        let prof = exp_type_profile(&ev, 2.0, &[0.0, 0.25, 0.5, 1.0], None).unwrap();
        assert_eq!(prof.rows[0].1, prof.f_norm);
        assert!(prof.rows.windows(2).all(|w| w[1].1 <= w[0].1));
        assert!(exp_type_profile(&ev, 2.0, &[-0.5], None).is_err());
    }

    #[test]
    fn zero_field_pointwise_sup_is_zero() {
        let grid = GridSpec::cubic(1, 16, 0.5).unwrap();
        let f = CliffordField::zeros(grid, AlgebraSignature::new(1).unwrap()).unwrap();
        let ev = CauchyEvolver::new(&f, FellerParams::new(1.0, 1.0).unwrap()).unwrap();
        let rep = pointwise_exp_type(&ev, &[0.0, 0.5], Some(1.0), Evolution::Cauchy).unwrap();
        assert_eq!(rep.sup, 0.0);
    }

    #[test]
    fn pairing_with_self_at_boundary() {
        let ev = setup(1.0);
        let f = ev.boundary().clone();
        let chk = pairing_bound(&ev, &f, 2.0, 0.0, 1.0, 2.0).unwrap();
        let norm2 = f.lp_norm(2.0).unwrap().powi(2);
        assert!((chk.value - norm2).abs() < 1e-10 * norm2);
        assert!(chk.pass);
        let zero = f.scale(rfl_core::Complex64::new(0.0, 0.0));
        let chk0 = pairing_bound(&ev, &zero, 2.0, 0.3, 1.0, 2.0).unwrap();
        assert_eq!((chk0.value, chk0.bound, chk0.pass), (0.0, 0.0, true));
    }
}
