//! Dense multivectors of the complexified Clifford algebra `Cl(0,n)`.
//!
//! A blade `e_A` is addressed by the bitmask of its generator subset: bit
//! `j - 1` set means `e_j` is a factor, so `e_{13}` lives at index `0b101`.
//! Generators square to `-1` and anticommute pairwise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported generator count; `2^12` dense coefficients per value.
pub const MAX_GENERATORS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    n: u32,
}

impl AlgebraSignature {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidGeneratorCount(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn blade_count(&self) -> usize {
        1usize << self.n
    }

    fn check_same(&self, other: &AlgebraSignature) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SignatureMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// Product of two basis blades: `e_A e_B = sign * e_{A xor B}`.
///
/// The sign collects one factor `-1` per transposition needed to sort the
/// concatenated generator list and one per repeated generator (`e_j^2 = -1`).
#[inline]
pub fn blade_product(a: usize, b: usize) -> (i8, usize) {
    let mut swaps = 0u32;
    let mut s = a >> 1;
    while s != 0 {
        swaps += (s & b).count_ones();
        s >>= 1;
    }
    let squares = (a & b).count_ones();
    let sign = if (swaps + squares) % 2 == 0 { 1 } else { -1 };
    (sign, a ^ b)
}

/// Grade of a blade index.
#[inline]
pub fn grade(blade: usize) -> u32 {
    blade.count_ones()
}

/// Sign of the Clifford conjugate: `conj(e_A) = (-1)^{r(r+1)/2} e_A` for `r = |A|`.
#[inline]
pub fn conjugation_sign(blade: usize) -> f64 {
    let r = grade(blade);
    if (r * (r + 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `out += a * b` on raw coefficient slices of one signature.
pub fn mul_acc(a: &[Complex64], b: &[Complex64], out: &mut [Complex64]) {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(a.len(), out.len());
    for (ia, &ca) in a.iter().enumerate() {
        if ca.re == 0.0 && ca.im == 0.0 {
            continue;
        }
        for (ib, &cb) in b.iter().enumerate() {
            if cb.re == 0.0 && cb.im == 0.0 {
                continue;
            }
            let (sign, ic) = blade_product(ia, ib);
            let prod = ca * cb;
            if sign > 0 {
                out[ic] += prod;
            } else {
                out[ic] -= prod;
            }
        }
    }
}

/// Sum of `|c|^2` over a coefficient slice.
#[inline]
pub fn coeff_norm_sqr(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|c| c.norm_sqr()).sum()
}

#[derive(Clone, PartialEq)]
pub struct Multivector {
    sig: AlgebraSignature,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(sig: AlgebraSignature) -> Self {
        Self {
            sig,
            coeffs: vec![Complex64::new(0.0, 0.0); sig.blade_count()],
        }
    }

    pub fn from_coeffs(sig: AlgebraSignature, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::CoefficientCount {
                expected: sig.blade_count(),
                found: coeffs.len(),
            });
        }
        Ok(Self { sig, coeffs })
    }

    /// `c * e_0`.
    pub fn scalar(sig: AlgebraSignature, c: Complex64) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[0] = c;
        mv
    }

    /// The identity blade `e_0`.
    pub fn one(sig: AlgebraSignature) -> Self {
        Self::scalar(sig, Complex64::new(1.0, 0.0))
    }

    /// Basis blade `e_A` for a bitmask `A`.
    pub fn blade(sig: AlgebraSignature, blade: usize) -> Result<Self> {
        if blade >= sig.blade_count() {
            return Err(Error::param("blade", "index outside 0..2^n"));
        }
        let mut mv = Self::zero(sig);
        mv.coeffs[blade] = Complex64::new(1.0, 0.0);
        Ok(mv)
    }

    /// Generator `e_j`, `1 <= j <= n`.
    pub fn generator(sig: AlgebraSignature, j: u32) -> Result<Self> {
        if j == 0 || j > sig.n() {
            return Err(Error::param("j", "generator index outside 1..=n"));
        }
        Self::blade(sig, 1 << (j - 1))
    }

    /// `sum_j x_j e_j`; `x` may be shorter than `n`.
    pub fn vector(sig: AlgebraSignature, x: &[f64]) -> Result<Self> {
        Self::complex_vector(sig, x, Complex64::new(1.0, 0.0))
    }

    /// `factor * sum_j x_j e_j`.
    pub fn complex_vector(sig: AlgebraSignature, x: &[f64], factor: Complex64) -> Result<Self> {
        if x.len() > sig.n() as usize {
            return Err(Error::param("x", "more components than generators"));
        }
        let mut mv = Self::zero(sig);
        for (j, &xj) in x.iter().enumerate() {
            mv.coeffs[1 << j] = factor * xj;
        }
        Ok(mv)
    }

    #[inline]
    pub fn sig(&self) -> AlgebraSignature {
        self.sig
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, blade: usize) -> Complex64 {
        self.coeffs[blade]
    }

    #[inline]
    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Clifford product `self * rhs`.
    pub fn mul(&self, rhs: &Multivector) -> Result<Multivector> {
        self.sig.check_same(&rhs.sig)?;
        let mut out = Self::zero(self.sig);
        mul_acc(&self.coeffs, &rhs.coeffs, &mut out.coeffs);
        Ok(out)
    }

    /// `sum_A conj(mu_A) conj(e_A)`: Clifford conjugation of the blades together
    /// with complex conjugation of the coefficients.
    pub fn dagger(&self) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(a, c)| c.conj() * conjugation_sign(a))
            .collect();
        Self {
            sig: self.sig,
            coeffs,
        }
    }

    /// `|lambda|_0 = 2^{n/2} (sum_A |lambda_A|^2)^{1/2}`.
    pub fn norm0(&self) -> f64 {
        libm::sqrt(self.sig.blade_count() as f64 * coeff_norm_sqr(&self.coeffs))
    }

    /// `(lambda, mu)_0 = 2^n sum_A lambda_A conj(mu_A)`.
    pub fn inner(&self, rhs: &Multivector) -> Result<Complex64> {
        self.sig.check_same(&rhs.sig)?;
        let s: Complex64 = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s * self.sig.blade_count() as f64)
    }

    pub fn scale(&self, c: Complex64) -> Multivector {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn try_add(&self, rhs: &Multivector) -> Result<Multivector> {
        self.sig.check_same(&rhs.sig)?;
        Ok(Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Multivector) -> Result<Multivector> {
        self.sig.check_same(&rhs.sig)?;
        Ok(Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Largest coefficient-wise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Multivector) -> Result<f64> {
        self.sig.check_same(&rhs.sig)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Panics on signature mismatch; use [`Multivector::try_add`] otherwise.
impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("signature mismatch in multivector add")
    }
}

/// Panics on signature mismatch; use [`Multivector::try_sub`] otherwise.
impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("signature mismatch in multivector sub")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector<Cl(0,{})>({})", self.sig.n, self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            write_blade(f, a)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn write_blade(f: &mut fmt::Formatter<'_>, blade: usize) -> fmt::Result {
    if blade == 0 {
        return f.write_str("e0");
    }
    f.write_str("e")?;
    let mut rest = blade;
    let mut j = 1;
    while rest != 0 {
        if rest & 1 == 1 {
            if j > 9 {
                write!(f, "_{}", j)?;
            } else {
                write!(f, "{}", j)?;
            }
        }
        rest >>= 1;
        j += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent sign oracle: bubble-sort the explicit generator list,
    /// then cancel adjacent equal pairs with `e_j^2 = -1`.
    fn blade_product_oracle(a: usize, b: usize) -> (i8, usize) {
        let mut gens: Vec<u32> = Vec::new();
        for j in 0..usize::BITS {
            if a >> j & 1 == 1 {
                gens.push(j);
            }
        }
        for j in 0..usize::BITS {
            if b >> j & 1 == 1 {
                gens.push(j);
            }
        }
        let mut sign = 1i8;
        for i in 0..gens.len() {
            for k in 0..gens.len() - 1 - i {
                if gens[k] > gens[k + 1] {
                    gens.swap(k, k + 1);
                    sign = -sign;
                }
            }
        }
        let mut out = 0usize;
        let mut i = 0;
        while i < gens.len() {
            if i + 1 < gens.len() && gens[i] == gens[i + 1] {
                sign = -sign;
                i += 2;
            } else {
                out |= 1 << gens[i];
                i += 1;
            }
        }
        (sign, out)
    }

    #[test]
    fn blade_product_examples() {
        assert_eq!(blade_product(0b01, 0b10), (1, 0b11));
        assert_eq!(blade_product(0b01, 0b01), (-1, 0));
        assert_eq!(blade_product(0b10, 0b01), (-1, 0b11));
        assert_eq!(blade_product_oracle(0b10, 0b01), (-1, 0b11));
    }

    #[test]
    fn blade_product_matches_oracle_exhaustively() {
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(blade_product(a, b), blade_product_oracle(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let sig = AlgebraSignature::new(2).unwrap();
        let e1 = Multivector::generator(sig, 1).unwrap();
        let e2 = Multivector::generator(sig, 2).unwrap();
        let e12 = Multivector::blade(sig, 0b11).unwrap();
        assert_eq!(e1.mul(&e2).unwrap(), e12);
        let one = Multivector::one(sig);
        let lam = Multivector::from_coeffs(sig, vec![c(1., 2.), c(-3., 0.), c(0.5, 1.), c(0., -2.)]).unwrap();
        assert_eq!(one.mul(&lam).unwrap(), lam);
        let s = &e1 + &e2;
        assert_eq!(s.mul(&s).unwrap(), Multivector::scalar(sig, c(-2.0, 0.0)));
    }

    #[test]
    fn signature_mismatch_is_error() {
        let a = Multivector::one(AlgebraSignature::new(2).unwrap());
        let b = Multivector::one(AlgebraSignature::new(3).unwrap());
        assert!(matches!(a.mul(&b), Err(Error::SignatureMismatch { .. })));
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn generator_count_bounds() {
        assert!(AlgebraSignature::new(0).is_err());
        assert!(AlgebraSignature::new(13).is_err());
        assert_eq!(AlgebraSignature::new(12).unwrap().blade_count(), 4096);
    }

    #[test]
    fn dagger_examples() {
        let sig = AlgebraSignature::new(2).unwrap();
        let e1 = Multivector::generator(sig, 1).unwrap();
        assert_eq!(e1.dagger(), -&e1);
        assert_eq!(Multivector::one(sig).dagger(), Multivector::one(sig));
        let ie1 = e1.scale(c(0.0, 1.0));
        assert_eq!(ie1.dagger(), ie1);
        let lam = Multivector::from_coeffs(sig, vec![c(1., 2.), c(-3., 0.), c(0.5, 1.), c(0., -2.)]).unwrap();
        let scalar = lam.mul(&lam.dagger()).unwrap().scalar_part();
        let expected: f64 = lam.coeffs().iter().map(|x| x.norm_sqr()).sum();
        assert!((scalar.re - expected).abs() < 1e-12);
        assert!(scalar.im.abs() < 1e-12);
    }

    #[test]
    fn norm_examples() {
        let sig2 = AlgebraSignature::new(2).unwrap();
        assert_eq!(Multivector::one(sig2).norm0(), 2.0);
        assert_eq!(Multivector::zero(sig2).norm0(), 0.0);
        let sig1 = AlgebraSignature::new(1).unwrap();
        let v = &Multivector::one(sig1) + &Multivector::generator(sig1, 1).unwrap();
        assert!((v.norm0() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn inner_examples() {
        let sig = AlgebraSignature::new(2).unwrap();
        let e1 = Multivector::generator(sig, 1).unwrap();
        let e2 = Multivector::generator(sig, 2).unwrap();
        assert_eq!(e1.inner(&e1).unwrap(), c(4.0, 0.0));
        assert_eq!(e1.inner(&e2).unwrap(), c(0.0, 0.0));
        let lam = Multivector::from_coeffs(sig, vec![c(1., 2.), c(-3., 0.), c(0.5, 1.), c(0., -2.)]).unwrap();
        let ip = lam.inner(&lam).unwrap();
        assert!((ip.re - lam.norm0().powi(2)).abs() < 1e-12);
        assert_eq!(ip.im, 0.0);
    }

    #[test]
    fn inner_matches_scalar_part_for_real_inputs() {
        let sig = AlgebraSignature::new(3).unwrap();
        let lam = Multivector::from_coeffs(sig, (0..8).map(|i| c(i as f64 - 3.5, 0.0)).collect()).unwrap();
        let mu = Multivector::from_coeffs(sig, (0..8).map(|i| c(0.25 * i as f64 + 1.0, 0.0)).collect()).unwrap();
        let via_product = lam.mul(&mu.dagger()).unwrap().scalar_part() * 8.0;
        let direct = lam.inner(&mu).unwrap();
        assert!((via_product - direct).norm() < 1e-12);
    }

    #[test]
    fn display_labels() {
        let sig = AlgebraSignature::new(3).unwrap();
        let e13 = Multivector::blade(sig, 0b101).unwrap();
        assert_eq!(std::format!("{e13}"), "(1+0i)e13");
        assert_eq!(std::format!("{}", Multivector::zero(sig)), "0");
    }
}
