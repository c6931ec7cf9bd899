//! Favard constants `K_j = (4/pi) sum_{r>=0} (-1)^{r(j+1)} / (2r+1)^{j+1}` and
//! the Landau-Kolmogorov-Stein constants built from them.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FavardTable {
    pub j: u32,
    pub value: f64,
    pub terms: u32,
    /// Width of an interval around `value` guaranteed to contain `K_j`.
    pub remainder_bound: f64,
}

/// Averaging passes applied to the alternating partial sums.
const EULER_LEVELS: usize = 12;

/// Evaluates `K_j` from `terms` series terms.
///
/// Even `j` gives an alternating series in completely monotone terms; its
/// partial sums are accelerated by repeated averaging, and each averaging
/// level still brackets the limit, so the last two averages bound the error.
/// Odd `j` gives a positive series; the tail is estimated by the midpoint
/// integral and bracketed by the integral test.
pub fn favard_constant(j: u32, terms: u32) -> FavardTable {
    let terms = terms.max(1);
    let s = (j + 1) as i32;
    let term = |r: u32| libm::pow(2.0 * r as f64 + 1.0, -(s as f64));
    let (sum, bound) = if j % 2 == 0 {
        let levels = EULER_LEVELS.min(terms as usize);
        let start = terms as usize - levels;
        let mut partial = 0.0;
        for r in 0..start as u32 {
            partial += if r % 2 == 0 { term(r) } else { -term(r) };
        }
        let mut sums = Vec::with_capacity(levels + 1);
        for r in start as u32..=terms {
            partial += if r % 2 == 0 { term(r) } else { -term(r) };
            sums.push(partial);
        }
        while sums.len() > 2 {
            sums = sums.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        let est = 0.5 * (sums[0] + sums[1]);
        (est, (sums[0] - sums[1]).abs())
    } else {
        let mut partial = 0.0;
        for r in (0..terms).rev() {
            partial += term(r);
        }
        let jf = j as f64;
        let tail = |a: f64| libm::pow(a, -jf) / (2.0 * jf);
        // sum_{r>=N} (2r+1)^{-s} lies between the integrals from N and N-1
        let n = terms as f64;
        let lower = tail(2.0 * n + 1.0);
        let upper = tail(2.0 * n - 1.0);
        let mid = tail(2.0 * n);
        (partial + mid, upper - lower)
    };
    let scale = 4.0 / PI;
    FavardTable {
        j,
        value: scale * sum,
        terms,
        remainder_bound: scale * bound,
    }
}

/// Terms used by [`lks_constant`].
pub const DEFAULT_FAVARD_TERMS: u32 = 20_000;

/// `C_{k,l} = K_{l-k}^l / K_l^{l-k}` for `0 <= k <= l`; `None` if `k > l`.
pub fn lks_constant(k: u32, l: u32) -> Option<f64> {
    if k > l {
        return None;
    }
    let num = favard_constant(l - k, DEFAULT_FAVARD_TERMS).value;
    let den = favard_constant(l, DEFAULT_FAVARD_TERMS).value;
    Some(libm::pow(num, l as f64) / libm::pow(den, (l - k) as f64))
}
