use proptest::prelude::*;
use rfl_core::symbol::{eval_symbol, SymbolKind};
use rfl_core::{AlgebraSignature, Complex64, Multivector};

fn multivector(n: u32, real: bool) -> impl Strategy<Value = Multivector> {
    let sig = AlgebraSignature::new(n).unwrap();
    let len = sig.blade_count();
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len).prop_map(move |pairs| {
        let coeffs = pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, if real { 0.0 } else { im }))
            .collect();
        Multivector::from_coeffs(sig, coeffs).unwrap()
    })
}

fn pair(real: bool) -> impl Strategy<Value = (Multivector, Multivector)> {
    (1u32..=4).prop_flat_map(move |n| (multivector(n, real), multivector(n, real)))
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1u32..=4).prop_flat_map(|n| (multivector(n, false), multivector(n, false), multivector(n, false)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn submultiplicative((a, b) in pair(false)) {
        let prod = a.mul(&b).unwrap().norm0();
        prop_assert!(prod <= a.norm0() * b.norm0() * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn triangle((a, b) in pair(false)) {
        prop_assert!((&a + &b).norm0() <= a.norm0() + b.norm0() + 1e-12);
    }

    #[test]
    fn associative((a, b, c) in triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-10);
    }

    #[test]
    fn identity_is_two_sided((a, _b) in pair(false)) {
        let one = Multivector::one(a.sig());
        prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn dagger_reverses_real_products((a, b) in pair(true)) {
        let lhs = a.mul(&b).unwrap().dagger();
        let rhs = b.dagger().mul(&a.dagger()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn inner_self_is_norm_squared((a, _b) in pair(false)) {
        let ip = a.inner(&a).unwrap();
        prop_assert!((ip.re - a.norm0().powi(2)).abs() < 1e-10);
        prop_assert!(ip.im.abs() < 1e-12);
    }

    #[test]
    fn vector_square(xs in prop::collection::vec(-3.0f64..3.0, 1..=5)) {
        let sig = AlgebraSignature::new(xs.len() as u32).unwrap();
        let v = Multivector::vector(sig, &xs).unwrap();
        let sq: f64 = xs.iter().map(|x| x * x).sum();
        let expected = Multivector::scalar(sig, Complex64::new(-sq, 0.0));
        prop_assert!(v.mul(&v).unwrap().max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn h_theta_is_pointwise_isometry(
        theta in -3.0f64..3.0,
        xi in prop::collection::vec(-4.0f64..4.0, 3),
        lam in multivector(3, false),
    ) {
        prop_assume!(xi.iter().map(|x| x * x).sum::<f64>() > 1e-6);
        let sig = lam.sig();
        let h = eval_symbol(&SymbolKind::HTheta { theta }, sig, &xi, None).unwrap();
        let out = h.mul(&lam).unwrap();
        prop_assert!((out.norm0() - lam.norm0()).abs() <= 1e-12 * (1.0 + lam.norm0()));
    }
}

#[test]
fn generators_anticommute_exactly() {
    for n in 1..=6 {
        let sig = AlgebraSignature::new(n).unwrap();
        for j in 1..=n {
            for k in 1..=n {
                let ej = Multivector::generator(sig, j).unwrap();
                let ek = Multivector::generator(sig, k).unwrap();
                let anti = &ej.mul(&ek).unwrap() + &ek.mul(&ej).unwrap();
                let expected = if j == k {
                    Multivector::scalar(sig, Complex64::new(-2.0, 0.0))
                } else {
                    Multivector::zero(sig)
                };
                assert_eq!(anti, expected, "j={j} k={k}");
            }
        }
    }
}
