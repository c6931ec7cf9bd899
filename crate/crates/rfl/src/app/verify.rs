//! The one-shot invariant suite behind `rfl verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rfl_core::{favard_constant, AlgebraSignature, Complex64, ComplexEvolutionTime, FellerParams, Multivector, SymbolKind};

use crate::app::config::ExperimentConfig;
use crate::app::report::{Check, ExperimentReport, Table};
use crate::dft::{dft_forward, dft_inverse};
use crate::error::Result;
use crate::field::CliffordField;
use crate::lab::bandlimited::{make_bandlimited, BandlimitSpec};
use crate::lab::{bandwidth_estimate, bernstein_ratios, kernel_compare, lks_check};
use crate::multiplier::{apply_multiplier, KindSymbol, Symbol};
use crate::ops::{apply_operator, HardySign};
use crate::semigroup::{semigroup_apply, CauchyEvolver};

/// Random multivector with coefficients uniform in the unit square.
pub fn random_multivector(rng: &mut impl Rng, sig: AlgebraSignature) -> Multivector {
    let coeffs = (0..sig.blade_count())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Multivector::from_coeffs(sig, coeffs).expect("length matches signature")
}

/// `max |a - b| / max(max |a|, max |b|)` over all coefficients.
pub fn rel_sup(a: &CliffordField, b: &CliffordField) -> Result<f64> {
    let d = a.max_abs_diff(b)?;
    let s = a.max_abs().max(b.max_abs());
    Ok(if s == 0.0 { d } else { d / s })
}

/// `f` with its mean removed, so symbols undefined at `xi = 0` act unambiguously.
pub fn zero_mean(f: &CliffordField) -> CliffordField {
    let mut spec = dft_forward(f);
    let zero = vec![Complex64::new(0.0, 0.0); f.sig().blade_count()];
    spec.scatter(0, &zero);
    dft_inverse(&spec)
}

/// Algebra checks on `pairs` random pairs: exact anticommutation, then the
/// largest relative excess in `|ab|_0 <= |a|_0 |b|_0` and the triangle
/// inequality.
pub fn algebra_checks(sig: AlgebraSignature, pairs: usize, seed: u64) -> Result<Vec<Check>> {
    let n = sig.n();
    let mut anti: f64 = 0.0;
    for j in 1..=n {
        for k in 1..=n {
            let (ej, ek) = (Multivector::generator(sig, j)?, Multivector::generator(sig, k)?);
            let sum = ej.mul(&ek)?.try_add(&ek.mul(&ej)?)?;
            let expected = if j == k {
                Multivector::scalar(sig, Complex64::new(-2.0, 0.0))
            } else {
                Multivector::zero(sig)
            };
            anti = anti.max(sum.max_abs_diff(&expected)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sub, mut tri) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..pairs {
        let a = random_multivector(&mut rng, sig);
        let b = random_multivector(&mut rng, sig);
        let (na, nb) = (a.norm0(), b.norm0());
        sub = sub.max((a.mul(&b)?.norm0() - na * nb) / (na * nb));
        tri = tri.max((a.try_add(&b)?.norm0() - na - nb) / (na + nb));
    }
    Ok(vec![
        Check::at_most("algebra.anticommutation", anti, 0.0),
        Check::at_most("algebra.submultiplicative", sub, 1e-12),
        Check::at_most("algebra.triangle", tri, 1e-12),
    ])
}

/// Operator identities on a band-limited field, each as a relative sup error.
pub fn operator_checks(f: &CliffordField, theta: f64) -> Result<Vec<Check>> {
    let sig = f.sig();
    let n = sig.n();
    let f0 = zero_mean(f);
    let tol = 1e-12;
    let mut out = Vec::new();

    let dd = apply_operator(SymbolKind::Dirac, &apply_operator(SymbolKind::Dirac, f)?)?;
    let lap = apply_operator(SymbolKind::RieszDerivative { alpha: 2.0 }, f)?;
    out.push(Check::at_most("ops.dirac_squared", rel_sup(&dd, &lap)?, tol));

    let h = apply_operator(SymbolKind::RieszHilbert, &f0)?;
    let hh = apply_operator(SymbolKind::RieszHilbert, &h)?;
    out.push(Check::at_most("ops.hilbert_squared", rel_sup(&hh, &f0)?, tol));

    let parts = (1..=n as u32)
        .map(|axis| Ok((Multivector::generator(sig, axis)?, KindSymbol::new(SymbolKind::DirectionalRiesz { axis }, sig)?)))
        .collect::<Result<Vec<_>>>()?;
    let riesz_sum = move |xi: &[f64]| -> rfl_core::Result<Multivector> {
        let mut acc = Multivector::zero(sig);
        for (e, r) in &parts {
            acc = acc.try_add(&e.mul(&r.eval(xi)?)?)?;
        }
        Ok(acc)
    };
    let hs = apply_multiplier(&f0, &riesz_sum)?;
    out.push(Check::at_most("ops.hilbert_riesz_sum", rel_sup(&h, &hs)?, tol));

    let plus = apply_operator(SymbolKind::ChiPlus, &f0)?;
    let minus = apply_operator(SymbolKind::ChiMinus, &f0)?;
    let idem = rel_sup(&apply_operator(SymbolKind::ChiPlus, &plus)?, &plus)?
        .max(rel_sup(&apply_operator(SymbolKind::ChiMinus, &minus)?, &minus)?);
    out.push(Check::at_most("ops.chi_idempotent", idem, tol));
    let full_plus = apply_operator(SymbolKind::ChiPlus, f)?;
    let full_minus = apply_operator(SymbolKind::ChiMinus, f)?;
    out.push(Check::at_most(
        "ops.chi_complementary",
        rel_sup(&full_plus.try_add(&full_minus)?, f)?,
        tol,
    ));
    let cross = apply_operator(SymbolKind::ChiPlus, &minus)?;
    out.push(Check::at_most("ops.chi_annihilating", cross.max_abs() / f0.max_abs(), tol));

    let ht = apply_operator(SymbolKind::HTheta { theta }, &f0)?;
    let phase = Complex64::from_polar(1.0, -std::f64::consts::PI * theta);
    let expected = minus.try_add(&plus.scale(phase))?;
    out.push(Check::at_most("ops.h_theta_split", rel_sup(&ht, &expected)?, tol));

    let unit = apply_operator(SymbolKind::RieszFeller(FellerParams::new(1.0, 1.0)?), f)?;
    let dirac = apply_operator(SymbolKind::Dirac, f)?;
    out.push(Check::at_most("ops.feller_unit_is_dirac", rel_sup(&unit, &dirac)?, tol));

    let params = FellerParams::new(0.5, theta)?;
    let mut iterated = f0.clone();
    let mut worst: f64 = 0.0;
    for k in 1..=8 {
        iterated = apply_operator(SymbolKind::RieszFeller(params), &iterated)?;
        let direct = apply_operator(SymbolKind::RieszFellerPower { params, k }, &f0)?;
        worst = worst.max(rel_sup(&direct, &iterated)?);
    }
    out.push(Check::at_most("ops.power_is_iterate", worst, 1e-10));

    let back = dft_inverse(&dft_forward(f));
    out.push(Check::at_most("dft.roundtrip", rel_sup(&back, f)?, tol));
    let l2 = f.lp_norm(2.0)?;
    let planch = (dft_forward(f).l2_norm_plancherel() - l2).abs() / l2;
    out.push(Check::at_most("dft.plancherel", planch, 1e-10));
    Ok(out)
}

/// Semigroup law, exact identity at `t = 0`, second-order PDE residual and
/// boundary recovery.
pub fn semigroup_checks(f: &CliffordField, params: FellerParams) -> Result<Vec<Check>> {
    let alpha = params.alpha();
    let mut out = Vec::new();
    let s = ComplexEvolutionTime::real(0.3);
    let t = ComplexEvolutionTime::real(0.2);
    let st = semigroup_apply(&semigroup_apply(f, t, alpha)?, s, alpha)?;
    let direct = semigroup_apply(f, ComplexEvolutionTime::real(0.5), alpha)?;
    out.push(Check::at_most("semigroup.composition", rel_sup(&st, &direct)?, 1e-10));
    let id = semigroup_apply(f, ComplexEvolutionTime::real(0.0), alpha)?;
    out.push(Check::at_most("semigroup.identity", id.max_abs_diff(f)?, 0.0));

    let ev = CauchyEvolver::new(f, params)?;
    let mut points = vec![0.5];
    if params.cauchy_admissible() {
        points.push(-0.5);
    }
    let mut worst: f64 = 0.0;
    for x0 in points {
        let ratio = ev.pde_residual(x0, 0.02)? / ev.pde_residual(x0, 0.01)?;
        worst = worst.max((ratio - 4.0).abs());
    }
    out.push(Check::at_most("cauchy.residual_order", worst, 0.5));

    let fplus = dft_inverse(ev.hardy_spectrum(HardySign::Plus));
    let dist = [1e-1, 1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&x0| ev.solve(x0)?.field.try_sub(&fplus)?.lp_norm(2.0))
        .collect::<Result<Vec<_>>>()?;
    let steps = dist.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    out.push(Check {
        name: "cauchy.boundary_recovery".into(),
        value: steps,
        bound: 1.0,
        pass: steps < 1.0,
    });
    Ok(out)
}

pub fn run_verify(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let grid = cfg.grid_spec()?;
    let sig = AlgebraSignature::new(cfg.n as u32)?;
    let params = cfg.params()?;
    let f = make_bandlimited(&grid, sig, &BandlimitSpec::random(cfg.radius, cfg.seed))?;
    let mut checks = algebra_checks(sig, 2000, cfg.seed)?;
    checks.extend(operator_checks(&f, cfg.theta)?);
    checks.extend(semigroup_checks(&f, params)?);

    let bern = bernstein_ratios(&f, params, 2.0, cfg.kmax.min(16), None)?;
    checks.push(Check::at_most("pw.bernstein_ratio", bern.max_ratio(), 1.0 + 1e-10));
    let bw = bandwidth_estimate(&f, params, 2.0, cfg.kmax)?;
    checks.push(Check::at_most(
        "pw.bandwidth_bins",
        (bw.estimate - bw.oracle_radius).abs() / bw.dxi,
        1.0,
    ));

    let exact = [1.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI.powi(2) / 8.0];
    let favard = exact
        .iter()
        .enumerate()
        .map(|(j, e)| (favard_constant(j as u32, rfl_core::favard::DEFAULT_FAVARD_TERMS).value - e).abs())
        .fold(0.0, f64::max);
    checks.push(Check::at_most("lks.favard_constants", favard, 1e-8));
    let mut failures = 0usize;
    for trial in 0..10u64 {
        let g = make_bandlimited(&grid, sig, &BandlimitSpec::random(cfg.radius, cfg.seed.wrapping_add(trial + 1)))?;
        for (k, l) in [(1, 2), (1, 3), (2, 3)] {
            failures += usize::from(!lks_check(&g, params, 2.0, k, l)?.pass);
        }
    }
    checks.push(Check::at_most("lks.inequality_failures", failures as f64, 0.0));

    let kc = kernel_compare(1, 0.5)?;
    checks.push(Check::at_most("kernel.closed_form_n1", kc.worst(), 1e-2));

    let mut table = Table::new(&["check", "value", "bound", "pass"]);
    for c in &checks {
        table.push(vec![c.name.as_str().into(), c.value.into(), c.bound.into(), c.pass.into()]);
    }
    let mut report = ExperimentReport::new(cfg, grid, table);
    report.note("oracle_radius", bw.oracle_radius);
    report.note("bandwidth_estimate", bw.estimate);
    report.note("bernstein_fitted", bern.max_ratio());
    report.note("dxi", bw.dxi);
    for c in checks {
        report.check(c);
    }
    Ok(report)
}
