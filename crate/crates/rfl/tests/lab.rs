use std::f64::consts::PI;

use proptest::prelude::*;

use rfl::field::Frequency;
use rfl::io::{from_binary, from_json, to_binary, to_json};
use rfl::lab::bandlimited::urysohn_spectrum;
use rfl::lab::{
    bandwidth_estimate, bernstein_ratios, exp_type_profile, lks_check, make_bandlimited, make_bessel_radial,
    make_urysohn_bump, oracle_radius, pairing_bound, pointwise_exp_type, radial_pw_bound, radial_symmetry_defect,
    BandlimitMode, BandlimitSpec, Evolution,
};
use rfl::rfl_core::radial::{radial_fourier, urysohn_transition, RadialProfile};
use rfl::rfl_core::{favard_constant, AlgebraSignature, FellerParams};
use rfl::{dft_forward, dft_inverse, CauchyEvolver, CliffordField, GridSpec, SpectralField};

fn sig(n: u32) -> AlgebraSignature {
    AlgebraSignature::new(n).unwrap()
}

fn field(grid: &GridSpec, radius: f64, seed: u64) -> CliffordField {
    make_bandlimited(grid, sig(grid.n() as u32), &BandlimitSpec::random(radius, seed)).unwrap()
}

/// Compares `(2 pi)^n` times the inverse DFT of a sampled radial spectrum
/// with the one-dimensional Hankel quadrature on the central quarter window.
/// The residual is the periodic images, so the box must be large.
fn radial_transform_error(n: usize, size: usize, h: f64) -> f64 {
    let (radius, eps) = (1.5, 1.0);
    let grid = GridSpec::cubic(n, size, h).unwrap();
    let spec = urysohn_spectrum(&grid, sig(n as u32), radius, eps).unwrap();
    let f = dft_inverse(&spec);
    let profile = RadialProfile::from_fn(1e-3, 2_501, |r| urysohn_transition(r, radius, eps)).unwrap();
    let mut cache = std::collections::HashMap::new();
    let scale = (2.0 * PI).powi(n as i32);
    let half = 0.25 * grid.extent()[0];
    let pts = grid.points();
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for (flat, x) in pts.chunks(n).enumerate() {
        if x.iter().any(|v| v.abs() > half) {
            continue;
        }
        // |x|^2 / h^2 is an integer (or quarter-integer) on the lattice
        let key = (4.0 * x.iter().map(|v| v * v).sum::<f64>() / (h * h)).round() as u64;
        let exact = *cache.entry(key).or_insert_with(|| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            radial_fourier(&profile, n as u32, &[r]).unwrap()[0]
        });
        let got = scale * f.value(flat).coeff(0).re;
        worst = worst.max((got - exact).abs());
        peak = peak.max(exact.abs());
    }
    worst / peak
}

#[test]
fn hankel_quadrature_matches_planar_dft() {
    let err = radial_transform_error(2, 128, 0.5);
    assert!(err < 1e-4, "relative error {err:e}");
}

#[test]
fn hankel_quadrature_matches_spatial_dft() {
    let err = radial_transform_error(3, 96, 0.5);
    assert!(err < 1e-4, "relative error {err:e}");
}

#[test]
fn bernstein_ratios_never_exceed_one_at_p_two() {
    let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
    for seed in 0..5 {
        let f = field(&grid, 2.5, seed);
        for (alpha, theta) in [(1.0, 1.0), (0.5, 0.9), (0.5, 1.1), (1.0, 0.3)] {
            let rep = bernstein_ratios(&f, FellerParams::new(alpha, theta).unwrap(), 2.0, 32, None).unwrap();
            assert!(rep.max_ratio() <= 1.0 + 1e-10, "seed={seed} alpha={alpha} theta={theta}");
            // a radius below the band makes the ratios blow up
            let control = bernstein_ratios(&f, FellerParams::new(alpha, theta).unwrap(), 2.0, 16, Some(0.5 * rep.oracle_radius))
                .unwrap();
            assert!(control.sequences().all(|s| s.at(16).unwrap() >= 10.0));
        }
    }
}

#[test]
fn bandwidth_estimates_increase_towards_the_oracle() {
    let grid = GridSpec::cubic(2, 64, 0.5).unwrap();
    let params = FellerParams::new(0.5, 0.3).unwrap();
    for seed in 0..3 {
        let f = field(&grid, 2.0, seed);
        let bw = bandwidth_estimate(&f, params, 2.0, 64).unwrap();
        let a: Vec<f64> = bw.sequence.values().collect();
        assert!(a.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12)), "seed={seed}");
        assert!(a.iter().all(|&v| v <= bw.oracle_radius * (1.0 + 1e-10)));
        assert!((bw.estimate - bw.oracle_radius).abs() <= bw.dxi, "seed={seed}");
    }
}

#[test]
fn bandwidth_at_higher_exponent_is_within_three_bins() {
    let grid = GridSpec::cubic(2, 64, 0.5).unwrap();
    let f = field(&grid, 2.0, 11);
    let bw = bandwidth_estimate(&f, FellerParams::new(0.5, 0.3).unwrap(), 4.0, 64).unwrap();
    assert!((bw.estimate - bw.oracle_radius).abs() <= 3.0 * bw.dxi);
}

#[test]
fn favard_constants_match_closed_forms() {
    let exact = [1.0, PI / 2.0, PI * PI / 8.0, PI.powi(3) / 24.0];
    for (j, e) in exact.iter().enumerate() {
        let t = favard_constant(j as u32, 20_000);
        assert!((t.value - e).abs() <= 1e-8, "K_{j} = {}", t.value);
        // the bracket is exact arithmetic; allow rounding of the summation
        assert!((t.value - e).abs() <= t.remainder_bound + 1e-14);
    }
}

#[test]
fn lks_inequality_holds_on_random_fields() {
    let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
    for seed in 0..10 {
        let f = field(&grid, 1.0 + 0.2 * seed as f64, seed);
        for (alpha, theta) in [(1.0, 1.0), (0.5, 0.9)] {
            for (k, l) in [(1, 2), (1, 3), (2, 3)] {
                let c = lks_check(&f, FellerParams::new(alpha, theta).unwrap(), 2.0, k, l).unwrap();
                assert!(c.pass, "{c:?}");
            }
        }
    }
}

#[test]
fn random_ball_depends_only_on_the_frequency_lattice() {
    // same extent, half the spacing: identical spectrum, so the coarse samples recur
    let coarse = GridSpec::cubic(2, 32, 0.5).unwrap();
    let fine = GridSpec::cubic(2, 64, 0.25).unwrap();
    let a = field(&coarse, 2.0, 42);
    let b = field(&fine, 2.0, 42);
    let mut worst: f64 = 0.0;
    for i in 0..32 {
        for j in 0..32 {
            let va = a.value(coarse.ravel(&[i, j]));
            let vb = b.value(fine.ravel(&[2 * i, 2 * j]));
            worst = worst.max(va.try_sub(&vb).unwrap().norm0());
        }
    }
    assert!(worst <= 1e-12 * a.max_abs());
}

#[test]
fn plane_wave_oracle_is_its_frequency() {
    let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
    let spec = BandlimitSpec {
        radius: 3.0,
        seed: 0,
        mode: BandlimitMode::PlaneWave { index: vec![3, -4] },
    };
    let f = make_bandlimited(&grid, sig(2), &spec).unwrap();
    let expected = 5.0 * grid.dxi()[0];
    assert!((oracle_radius(&f).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn bessel_bump_is_lattice_symmetric() {
    for n in [1, 2, 3] {
        let grid = GridSpec::cubic(n, 16, 0.5).unwrap();
        let f = make_bessel_radial(&grid, sig(n as u32), 2.0).unwrap();
        assert!(radial_symmetry_defect(&f).unwrap() < 1e-14, "n={n}");
    }
    let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
    let skew = field(&grid, 2.0, 1);
    assert!(radial_symmetry_defect(&skew).unwrap() > 1e-3);
    assert!(radial_pw_bound(&skew, 1.0, 0, 4).is_err());
}

#[test]
fn radial_roots_approach_the_support_radius() {
    // m = 0 climbs towards R + eps from below, the weighted m = 1 descends from above
    let grid = GridSpec::cubic(2, 64, 0.5).unwrap();
    let bump = make_urysohn_bump(&grid, sig(2), 2.0, 0.25).unwrap();
    let target = 2.25;
    let roots = |m| -> Vec<f64> {
        let rep = radial_pw_bound(&bump, 1.0, m, 48).unwrap();
        rep.rows.iter().filter_map(|r| r.root).collect()
    };
    let low = roots(0);
    assert!(low.windows(2).all(|w| w[1] >= w[0]), "{low:?}");
    assert!(low.iter().all(|&r| r <= target), "{low:?}");
    let high = roots(1);
    assert!(high.windows(2).all(|w| w[1] <= w[0]), "{high:?}");
    assert!((high[47] / target - 1.0).abs() <= 0.02, "{high:?}");
}

#[test]
fn exp_type_constant_is_attained_on_the_boundary() {
    let grid = GridSpec::cubic(2, 32, 0.5).unwrap();
    let f = field(&grid, 2.0, 6);
    let g = field(&grid, 2.0, 7);
    let schedule = [-1.0, -0.5, 0.0, 0.5, 1.0];
    for theta in [0.6, 1.0, 1.4] {
        let ev = CauchyEvolver::new(&f, FellerParams::new(1.0, theta).unwrap()).unwrap();
        let prof = exp_type_profile(&ev, 2.0, &schedule, None).unwrap();
        assert!((prof.fitted_c - 1.0).abs() < 1e-12, "theta={theta} C={}", prof.fitted_c);
        for &x0 in &schedule {
            assert!(pairing_bound(&ev, &g, 2.0, x0, prof.fitted_c, prof.radius).unwrap().pass);
        }
        let pw = pointwise_exp_type(&ev, &schedule, None, Evolution::Cauchy).unwrap();
        assert!(pw.sup.is_finite() && pw.sup > 0.0);
    }
}

fn grid_strategy() -> impl Strategy<Value = GridSpec> {
    (1usize..=3, 2usize..=4, 0.1f64..2.0).prop_map(|(n, half, h)| GridSpec::cubic(n, 2 * half, h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fields_survive_binary_and_json(grid in grid_strategy(), seed in 0u64..1000) {
        let n = grid.n() as u32;
        let radius = 0.9 * grid.nyquist_radius();
        let f = make_bandlimited(&grid, sig(n), &BandlimitSpec::random(radius, seed)).unwrap();
        prop_assert_eq!(&from_binary::<rfl::field::Space>(&to_binary(&f)).unwrap(), &f);
        prop_assert_eq!(&from_json::<rfl::field::Space>(&to_json(&f).unwrap()).unwrap(), &f);
        let spec: SpectralField = dft_forward(&f);
        prop_assert_eq!(&from_binary::<Frequency>(&to_binary(&spec)).unwrap(), &spec);
        prop_assert!(from_binary::<rfl::field::Space>(&to_binary(&spec)).is_err());
    }
}
