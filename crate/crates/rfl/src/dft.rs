//! Scaled discrete Fourier transforms matching the continuum pair
//! `F(xi) = int f(x) e^{-i<x,xi>} dx`, `f(x) = (2 pi)^{-n} int F(xi) e^{i<x,xi>} dxi`.
//!
//! With origin-centred samples `x_k = (k - N/2) h` the forward transform is
//! `F_j = h (-1)^j DFT[f]_j` per axis and the inverse is
//! `f_k = (N h)^{-1} IDFT[(-1)^j F_j]_k`, so the pair composes to the identity.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use rfl_core::Complex64;

use crate::field::{CliffordField, SpectralField};
use crate::grid::GridSpec;

pub fn dft_forward(f: &CliffordField) -> SpectralField {
    let mut out = f.clone();
    let scale = f.grid().cell_volume();
    transform_in_place(out.data_mut(), f.grid(), FftDirection::Forward, scale);
    out.retag()
}

pub fn dft_inverse(spec: &SpectralField) -> CliffordField {
    let mut out = spec.clone();
    let scale = 1.0 / spec.grid().extent().iter().product::<f64>();
    transform_in_place(out.data_mut(), spec.grid(), FftDirection::Inverse, scale);
    out.retag()
}

/// Transforms every blade block of `data`; blocks run in parallel.
fn transform_in_place(data: &mut [Complex64], grid: &GridSpec, dir: FftDirection, scale: f64) {
    let len = grid.len();
    let mut planner = FftPlanner::new();
    let plans: Vec<Arc<dyn Fft<f64>>> = grid.sizes().iter().map(|&n| planner.plan_fft(n, dir)).collect();
    let phase = checkerboard(grid);
    data.par_chunks_mut(len).for_each(|block| {
        if dir == FftDirection::Inverse {
            apply_phase(block, &phase, 1.0);
        }
        transform_block(block, grid, &plans);
        if dir == FftDirection::Forward {
            apply_phase(block, &phase, scale);
        } else {
            block.iter_mut().for_each(|c| *c *= scale);
        }
    });
}

/// `(-1)^{sum_a j_a}` in storage order.
fn checkerboard(grid: &GridSpec) -> Vec<bool> {
    let mut idx = vec![0; grid.n()];
    (0..grid.len())
        .map(|flat| {
            grid.unravel(flat, &mut idx);
            idx.iter().sum::<usize>() % 2 == 1
        })
        .collect()
}

fn apply_phase(block: &mut [Complex64], odd: &[bool], scale: f64) {
    for (c, &o) in block.iter_mut().zip(odd) {
        *c *= if o { -scale } else { scale };
    }
}

fn transform_block(block: &mut [Complex64], grid: &GridSpec, plans: &[Arc<dyn Fft<f64>>]) {
    let sizes = grid.sizes();
    let len = block.len();
    for (axis, plan) in plans.iter().enumerate() {
        let n = sizes[axis];
        let stride: usize = sizes[axis + 1..].iter().product();
        if stride == 1 {
            plan.process(block);
            continue;
        }
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        let outer = len / (n * stride);
        for o in 0..outer {
            let base = o * n * stride;
            for s in 0..stride {
                for (k, v) in line.iter_mut().enumerate() {
                    *v = block[base + k * stride + s];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    block[base + k * stride + s] = *v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rfl_core::{AlgebraSignature, Multivector};

    use super::*;

    fn random_field(grid: GridSpec, n: u32, seed: u64) -> CliffordField {
        let sig = AlgebraSignature::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..grid.len() * sig.blade_count())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        CliffordField::from_blade_major(grid, sig, data).unwrap()
    }

    /// Direct O(N^2) evaluation of the scaled continuum sum.
    fn naive_forward_1d(f: &[Complex64], grid: &GridSpec) -> Vec<Complex64> {
        (0..f.len())
            .map(|j| {
                let xi = grid.frequency(0, j);
                f.iter()
                    .enumerate()
                    .map(|(k, &v)| v * Complex64::from_polar(grid.spacing()[0], -grid.coord(0, k) * xi))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_sum() {
        let grid = GridSpec::cubic(1, 12, 0.3).unwrap();
        let f = random_field(grid.clone(), 1, 1);
        let spec = dft_forward(&f);
        for blade in 0..2 {
            let naive = naive_forward_1d(f.component(blade), &grid);
            for (a, b) in naive.iter().zip(spec.component(blade)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn roundtrip_is_identity() {
        for (n, size) in [(1u32, 16usize), (2, 8), (3, 6)] {
            let grid = GridSpec::new(vec![size; n as usize], (0..n).map(|j| 0.2 + 0.1 * j as f64).collect()).unwrap();
            let f = random_field(grid, n, 7);
            let back = dft_inverse(&dft_forward(&f));
            assert!(back.max_abs_diff(&f).unwrap() <= 1e-12 * f.max_abs());
        }
    }

    #[test]
    fn scaled_delta_has_unit_spectrum() {
        let grid = GridSpec::new(vec![8, 6], vec![0.5, 0.25]).unwrap();
        let sig = AlgebraSignature::new(2).unwrap();
        let mut f = CliffordField::zeros(grid.clone(), sig).unwrap();
        let origin = grid.origin();
        f.set_value(origin, &Multivector::one(sig).scale(Complex64::new(1.0 / grid.cell_volume(), 0.0)))
            .unwrap();
        let spec = dft_forward(&f);
        for c in spec.component(0) {
            assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert!(spec.component(3).iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn plane_wave_is_a_spike() {
        let grid = GridSpec::cubic(2, 8, 0.5).unwrap();
        let sig = AlgebraSignature::new(2).unwrap();
        let (bx, by) = (2usize, 7usize);
        let xi = [grid.frequency(0, bx), grid.frequency(1, by)];
        let f = CliffordField::from_fn(grid.clone(), sig, |x| {
            Ok(Multivector::scalar(sig, Complex64::from_polar(1.0, x[0] * xi[0] + x[1] * xi[1])))
        })
        .unwrap();
        let spec = dft_forward(&f);
        let mass = grid.extent().iter().product::<f64>();
        let hit = grid.ravel(&[bx, by]);
        for (flat, c) in spec.component(0).iter().enumerate() {
            let expected = if flat == hit { mass } else { 0.0 };
            assert!((c - Complex64::new(expected, 0.0)).norm() < 1e-12, "flat {flat}");
        }
        // (2 pi)^n / dxi^n equals the period volume
        let dv: f64 = grid.dxi().iter().product();
        assert!(((2.0 * PI).powi(2) / dv - mass).abs() < 1e-12);
    }

    #[test]
    fn plancherel() {
        let grid = GridSpec::new(vec![16, 8], vec![0.3, 0.7]).unwrap();
        let f = random_field(grid, 2, 3);
        let spec = dft_forward(&f);
        let a = f.lp_norm(2.0).unwrap();
        let b = spec.l2_norm_plancherel();
        assert!(((a - b) / a).abs() < 1e-12);
    }
}
