//! Gamma, unit-sphere measures and Bessel functions of integer and
//! half-integer order.

use core::f64::consts::PI;

use crate::error::{Error, Result};

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `omega_n = pi^{(n+1)/2} / Gamma((n+1)/2)`, half the surface measure of
/// `S^n`; the normalizer of the Poisson and Cauchy kernels on `R^{n+1}_+`.
pub fn omega(n: u32) -> f64 {
    let h = 0.5 * (n as f64 + 1.0);
    libm::pow(PI, h) / gamma(h)
}

/// Below this argument the power series is used.
const SERIES_CUTOFF: f64 = 10.0;

fn half_order(nu: f64) -> Result<i32> {
    let twice = 2.0 * nu;
    let rounded = libm::round(twice);
    if (twice - rounded).abs() > 1e-12 || rounded < -1.0 || rounded > 64.0 {
        return Err(Error::param(
            "nu",
            "order must be a multiple of 1/2 in [-1/2, 32]",
        ));
    }
    Ok(rounded as i32)
}

/// `J_nu(x) / x^nu` by its power series
/// `sum_k (-1)^k (x/2)^{2k} / (2^nu k! Gamma(k + nu + 1))`.
fn scaled_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0 / (libm::pow(2.0, nu) * gamma(nu + 1.0));
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) || k > 300.0 {
            break;
        }
    }
    sum
}

/// Upward recurrence `J_{v+1} = (2v/x) J_v - J_{v-1}` from a closed-form
/// seed pair; stable for `x` above the target order.
fn recurrence(twice_nu: i32, x: f64) -> f64 {
    if twice_nu % 2 == 0 {
        return libm::jn(twice_nu / 2, x);
    }
    let amp = libm::sqrt(2.0 / (PI * x));
    let mut prev = amp * libm::cos(x); // J_{-1/2}
    let mut cur = amp * libm::sin(x); // J_{1/2}
    if twice_nu == -1 {
        return prev;
    }
    let mut v = 0.5;
    while (2.0 * v) as i32 != twice_nu {
        let next = 2.0 * v / x * cur - prev;
        prev = cur;
        cur = next;
        v += 1.0;
    }
    cur
}

/// Bessel function `J_nu(x)` for `x >= 0` and `nu` a multiple of `1/2`,
/// `nu >= -1/2`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    let twice = half_order(nu)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(alloc::format!("bessel_j needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(match twice {
            0 => 1.0,
            -1 => f64::INFINITY,
            _ => 0.0,
        });
    }
    if x < SERIES_CUTOFF.max(nu + 1.0) {
        Ok(scaled_series(nu, x) * libm::pow(x, nu))
    } else {
        Ok(recurrence(twice, x))
    }
}

/// `J_nu(x) / x^nu`, continuous at `x = 0` with value `1 / (2^nu Gamma(nu + 1))`.
pub fn bessel_j_scaled(nu: f64, x: f64) -> Result<f64> {
    let twice = half_order(nu)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(alloc::format!("bessel_j needs x >= 0, got {x}")));
    }
    if x < SERIES_CUTOFF.max(nu + 1.0) {
        Ok(scaled_series(nu, x))
    } else {
        Ok(recurrence(twice, x) / libm::pow(x, nu))
    }
}
