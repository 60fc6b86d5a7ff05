mod common;

use std::sync::{Arc, OnceLock};

use common::*;
use harmonic_na_core::approx::{
    best_approximation, k_functional_quadratic, k_objective, modulus, modulus_samples, modulus_sweep, verify_lemmas,
    ModulusSampler, Verifier, VerifyOptions, MIN_T_SAMPLES,
};
use harmonic_na_core::family::{build, default_specs, subjects};
use harmonic_na_core::operators::{bandlimit_project, difference, laplacian_power};
use harmonic_na_core::transform::{SpectralFunction, SpectralGrid};
use harmonic_na_core::{DamekRicciSpace, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NU_GRID: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];
const DELTA_GRID: [f64; 4] = [0.0625, 0.125, 0.25, 0.5];

struct Setup {
    space: DamekRicciSpace,
    grid: Arc<SpectralGrid>,
    spectra: Vec<(String, SpectralFunction)>,
}

fn setup(m: i64, l: i64) -> &'static Setup {
    fn make(m: i64, l: i64) -> Setup {
        let fx = fixture(m, l);
        let spectra = fx.members.iter().map(|mb| (mb.id.clone(), mb.spectrum.clone())).collect();
        Setup { space: fx.space, grid: fx.transform.spectral_grid().clone(), spectra }
    }
    static S21: OnceLock<Setup> = OnceLock::new();
    static S43: OnceLock<Setup> = OnceLock::new();
    match (m, l) {
        (2, 1) => S21.get_or_init(|| make(2, 1)),
        _ => S43.get_or_init(|| make(4, 3)),
    }
}

fn family(s: &Setup) -> Vec<(&str, &SpectralFunction)> {
    s.spectra.iter().map(|(id, f)| (id.as_str(), f)).collect()
}

fn verifier(s: &Setup) -> Verifier {
    Verifier::new(s.space, s.grid.clone(), VerifyOptions::default()).unwrap()
}

/// Spectrum equal to `value` at node `i` and zero elsewhere.
fn single_node(grid: &Arc<SpectralGrid>, i: usize, value: f64) -> SpectralFunction {
    let mut v = vec![0.0; grid.len()];
    v[i] = value;
    SpectralFunction::new(grid.clone(), v).unwrap()
}

/// Minimum of a convex function of one variable on `[lo, hi]` by golden
/// section search.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - r * (hi - lo);
        let b = lo + r * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    f(0.5 * (lo + hi))
}

#[test]
fn sample_sets() {
    let ts = modulus_samples(0.5, 64.0, MIN_T_SAMPLES);
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(*ts.last().unwrap(), 0.5);
    assert!(ts[0] > 0.0 && ts[0] * 64.0 <= 1.0);
    assert_eq!(ts.iter().filter(|t| **t > 0.25).count(), MIN_T_SAMPLES);
    // geometric parts nest under doubling
    let coarse = modulus_samples(1.0, 64.0, MIN_T_SAMPLES);
    for t in ts.iter().filter(|t| **t <= 0.25) {
        assert!(coarse.contains(t), "{t}");
    }
}

#[test]
fn modulus_basic_properties() {
    for (m, l) in SPACES {
        let s = setup(m, l);
        let zero = SpectralFunction::zeros(s.grid.clone());
        assert_eq!(modulus(&s.space, &zero, 0.5, 1, MIN_T_SAMPLES, &acc()).unwrap(), 0.0);
        for (id, f) in &s.spectra {
            for k in 1..=2 {
                let sweep = modulus_sweep(&s.space, f, &DELTA_GRID, k, MIN_T_SAMPLES, &acc()).unwrap();
                assert!(sweep.windows(2).all(|w| w[0] <= w[1]), "{id}");
                for (&delta, &omega) in DELTA_GRID.iter().zip(&sweep) {
                    assert!(omega <= 2f64.powi(k as i32) * f.norm() * (1.0 + 1e-12));
                    let smooth = (0.5 * delta * delta).powi(k as i32) * laplacian_power(&s.space, f, k).unwrap().norm();
                    assert!(omega <= smooth * (1.0 + 1e-9), "{id} δ={delta}");
                    // the supremum dominates every sampled difference
                    let at_delta = difference(&s.space, f, delta, k, &acc()).unwrap().norm();
                    assert!(at_delta <= omega * (1.0 + 1e-9));
                }
            }
        }
    }
}

#[test]
fn modulus_is_subadditive_in_the_function() {
    let s = setup(2, 1);
    let (f, g) = (&s.spectra[0].1, &s.spectra[3].1);
    let sum = f.combine(1.0, g, 1.0).unwrap();
    let sampler = ModulusSampler::new(&s.space, &s.grid, 0.25, MIN_T_SAMPLES, &acc()).unwrap();
    for k in 1..=3 {
        let lhs = sampler.modulus(&sum, k).unwrap();
        let rhs = sampler.modulus(f, k).unwrap() + sampler.modulus(g, k).unwrap();
        assert!(lhs <= rhs * (1.0 + 1e-12));
    }
    assert!(sampler.one_minus_phi(0.25).is_some());
    assert!(sampler.one_minus_phi(0.3).is_none());
    assert!(sampler.modulus(f, 0).is_err());
}

#[test]
fn modulus_rejects_bad_parameters() {
    let s = setup(2, 1);
    let f = &s.spectra[0].1;
    assert!(modulus(&s.space, f, 0.0, 1, MIN_T_SAMPLES, &acc()).is_err());
    assert!(modulus(&s.space, f, 0.5, 1, MIN_T_SAMPLES - 1, &acc()).is_err());
    assert!(modulus_sweep(&s.space, f, &[0.5, 0.25], 1, MIN_T_SAMPLES, &acc()).is_err());
}

#[test]
fn best_approximation_properties() {
    let s = setup(4, 3);
    for (id, f) in &s.spectra {
        let mut last = f64::INFINITY;
        for nu in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, LAMBDA_MAX] {
            let e = best_approximation(f, nu).unwrap();
            assert!(e <= last, "{id}");
            last = e;
            let p = bandlimit_project(f, nu).unwrap();
            assert_eq!(e, f.combine(1.0, &p, -1.0).unwrap().norm());
            assert_eq!(best_approximation(&p, nu).unwrap(), 0.0);
        }
        assert_eq!(last, 0.0);
    }
    // the bump is band-limited to ν₀ = 4
    let bump = &s.spectra.iter().find(|(id, _)| id.starts_with("bump")).unwrap().1;
    assert_eq!(best_approximation(bump, 4.0).unwrap(), 0.0);
    assert!(best_approximation(bump, 0.0).is_err());
}

#[test]
fn best_approximation_beats_random_band_limited_competitors() {
    let s = setup(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, f) in &s.spectra {
        let nu = 2.0;
        let e = best_approximation(f, nu).unwrap();
        let p = bandlimit_project(f, nu).unwrap();
        for _ in 0..1000 {
            let eps = 10f64.powf(rng.gen_range(-8.0..0.0));
            let g: Vec<f64> = s
                .grid
                .nodes()
                .iter()
                .zip(p.values())
                .map(|(&l, &v)| if l <= nu { v + eps * rng.gen_range(-1.0..1.0) } else { 0.0 })
                .collect();
            let g = SpectralFunction::new(s.grid.clone(), g).unwrap();
            assert!(f.combine(1.0, &g, -1.0).unwrap().norm() >= e * (1.0 - 1e-12));
        }
    }
}

#[test]
fn k_functional_single_node_closed_form() {
    // with δ μ_i^m = 1 the minimizer is F/2 and K₂² = ‖F‖²/2
    let s = setup(2, 1);
    for i in [0, 10, 200] {
        let w = s.grid.weights()[i];
        let f = single_node(&s.grid, i, 1.0 / w.sqrt());
        for m in 1..=2 {
            let delta = s.space.laplace_eigenvalue(s.grid.nodes()[i]).powi(-(m as i32));
            let b = k_functional_quadratic(&s.space, &f, delta, m).unwrap();
            assert!((b.quad_value.powi(2) - 0.5).abs() < 1e-12);
            assert!((b.minimizer.values()[i] - 0.5 / w.sqrt()).abs() < 1e-12 / w.sqrt());
            // scan over g at that node
            let quad = |g: f64| w * ((1.0 / w.sqrt() - g).powi(2) + g * g);
            let scanned = golden_min(quad, -10.0 / w.sqrt(), 10.0 / w.sqrt());
            assert!((scanned - 0.5).abs() < 1e-10);
            // the true K is (F − g) + δ|Δg| minimized, which here equals min(1, 1) = 1 at mass one
            let exact = golden_min(|g| ((1.0 / w.sqrt() - g).abs() + g.abs()) * w.sqrt(), 0.0, 1.0 / w.sqrt());
            assert!(b.lower <= exact + 1e-12 && exact <= b.upper + 1e-12);
        }
    }
}

#[test]
fn k_functional_matches_brute_force_on_few_nodes() {
    let s = setup(4, 3);
    let nodes = [3usize, 40, 90, 300, 700];
    let mut values = vec![0.0; s.grid.len()];
    for (n, &i) in nodes.iter().enumerate() {
        values[i] = (1.0 + n as f64) / s.grid.weights()[i].sqrt();
    }
    let f = SpectralFunction::new(s.grid.clone(), values.clone()).unwrap();
    for (delta, m) in [(0.01, 1), (0.3, 1), (1e-4, 2)] {
        let b = k_functional_quadratic(&s.space, &f, delta, m).unwrap();
        // the quadratic problem separates; minimise each node independently
        let mut brute = 0.0;
        for &i in &nodes {
            let (w, x) = (s.grid.weights()[i], values[i]);
            let a = delta * s.space.laplace_eigenvalue(s.grid.nodes()[i]).powi(m as i32);
            brute += golden_min(|g| w * ((x - g).powi(2) + (a * g).powi(2)), -2.0 * x.abs(), 2.0 * x.abs());
        }
        assert!((b.quad_value - brute.sqrt()).abs() <= 1e-8 * brute.sqrt(), "δ={delta} m={m}");
        assert!(b.lower <= b.upper && b.upper <= std::f64::consts::SQRT_2 * b.lower * (1.0 + 1e-15));
        let obj = k_objective(&s.space, &f, &b.minimizer, delta, m).unwrap();
        assert!(b.upper <= obj);
    }
}

#[test]
fn k_functional_edge_cases() {
    let s = setup(2, 1);
    let zero = SpectralFunction::zeros(s.grid.clone());
    let b = k_functional_quadratic(&s.space, &zero, 0.1, 1).unwrap();
    assert_eq!((b.lower, b.upper), (0.0, 0.0));
    let f = &s.spectra[0].1;
    assert!(k_functional_quadratic(&s.space, f, 0.0, 1).is_err());
    assert!(k_functional_quadratic(&s.space, f, 0.1, 0).is_err());
    // huge δ overflows the symbol; the minimizer is then zero and K₂ = ‖F‖
    let b = k_functional_quadratic(&s.space, f, 1e300, 3).unwrap();
    assert!((b.quad_value - f.norm()).abs() <= 1e-12 * f.norm());
    // small δ: K ≤ δ ‖Δ^m F‖
    let delta = 1e-6;
    let b = k_functional_quadratic(&s.space, f, delta, 1).unwrap();
    assert!(b.upper <= delta * laplacian_power(&s.space, f, 1).unwrap().norm() * (1.0 + 1e-12));
    assert!(b.upper <= f.norm());
}

#[test]
fn random_perturbations_never_undercut_the_bracket() {
    let s = setup(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, f) in &s.spectra {
        let b = k_functional_quadratic(&s.space, f, 0.05, 1).unwrap();
        for _ in 0..1000 {
            let eps = 10f64.powf(rng.gen_range(-6.0..0.0));
            let g: Vec<f64> = b.minimizer.values().iter().map(|g| g + eps * rng.gen_range(-1.0..1.0)).collect();
            let g = SpectralFunction::new(s.grid.clone(), g).unwrap();
            assert!(k_objective(&s.space, f, &g, 0.05, 1).unwrap() >= b.lower * (1.0 - 1e-12));
        }
    }
}

#[test]
fn verifiers_pass_on_the_default_family() {
    for (m, l) in SPACES {
        let s = setup(m, l);
        let fam = family(s);
        let mut v = verifier(s);
        for k in 1..=2 {
            let reports = [
                v.verify_jackson(&fam, &NU_GRID, k).unwrap(),
                v.verify_jackson_sobolev(&fam, &NU_GRID, k, 1).unwrap(),
                v.verify_nikolskii_stechkin(&fam, &NU_GRID, k).unwrap(),
                v.verify_equivalence(&fam, &DELTA_GRID, k).unwrap(),
            ];
            for r in &reports {
                let failed: Vec<_> = r.failed_checks().map(|c| c.name.clone()).collect();
                assert!(r.pass, "({m},{l}) {} k={k}: {failed:?}", r.theorem_id);
                assert!(r.records.iter().all(|x| x.lhs.is_finite() && x.rhs.is_finite()));
                assert!(r.measured_constant <= r.bound * (1.0 + 1e-6));
            }
        }
    }
}

#[test]
fn verifier_reports_are_deterministic_and_sorted() {
    let s = setup(2, 1);
    let fam = family(s);
    let a = verifier(s).verify_jackson(&fam, &NU_GRID, 1).unwrap();
    let b = verifier(s).verify_jackson(&fam, &[16.0, 4.0, 1.0, 8.0, 2.0, 2.0], 1).unwrap();
    assert_eq!(a, b);
    let keys: Vec<_> = a.records.iter().map(|r| (r.function_id.clone(), r.parameter)).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
    assert_eq!(keys, sorted);
    assert_eq!(a.records.len(), fam.len() * NU_GRID.len());
}

#[test]
fn sobolev_with_r_zero_is_jackson() {
    let s = setup(2, 1);
    let fam = family(s);
    let mut v = verifier(s);
    let plain = v.verify_jackson(&fam, &NU_GRID, 2).unwrap();
    let sob = v.verify_jackson_sobolev(&fam, &NU_GRID, 2, 0).unwrap();
    assert_eq!(plain.records, sob.records);
    assert_eq!(plain.bound, sob.bound);
}

#[test]
fn nikolskii_stechkin_single_node_attains_the_quotient() {
    let s = setup(2, 1);
    let mut v = verifier(s);
    let nu = 4.0;
    // node of maximal quotient: search all in-band nodes
    let (mut best, mut best_i) = (0.0, 0);
    let row = v.sampler(1.0 / nu).unwrap().one_minus_phi(1.0 / nu).unwrap().to_vec();
    for (i, &l) in s.grid.nodes().iter().enumerate().filter(|(_, l)| **l <= nu) {
        let q = s.space.laplace_eigenvalue(l) / (nu * nu * row[i].abs());
        if q > best {
            (best, best_i) = (q, i);
        }
    }
    let f = single_node(&s.grid, best_i, 1.0);
    let r = v.verify_nikolskii_stechkin(&[("spike", &f)], &[nu], 1).unwrap();
    let c = v.symbol_quotient_bound(nu, 1).unwrap();
    assert!((best - c).abs() <= 1e-12 * c);
    assert!((r.records[0].ratio - c).abs() <= 1e-10 * c, "{} vs {c}", r.records[0].ratio);
    assert!(r.pass);
}

#[test]
fn zero_function_rows_are_skipped() {
    let s = setup(2, 1);
    let zero = SpectralFunction::zeros(s.grid.clone());
    let mut v = verifier(s);
    let fam = vec![("zero", &zero), ("gauss", &s.spectra[0].1)];
    let r = v.verify_jackson(&fam, &NU_GRID, 1).unwrap();
    assert!(r.pass);
    assert_eq!(r.skipped, NU_GRID.len());
    assert_eq!(r.records.len(), NU_GRID.len());
    let r = v.verify_equivalence(&fam, &DELTA_GRID, 1).unwrap();
    assert!(r.pass);
}

#[test]
fn verifiers_reject_bad_input() {
    let s = setup(2, 1);
    let mut v = verifier(s);
    let fam = family(s);
    assert!(matches!(v.verify_jackson(&[], &NU_GRID, 1), Err(Error::EmptyInput(_))));
    assert!(matches!(v.verify_nikolskii_stechkin(&fam, &[], 1), Err(Error::EmptyInput(_))));
    assert!(matches!(v.verify_equivalence(&fam, &DELTA_GRID, 0), Err(Error::InvalidParameter(_))));
    assert!(matches!(v.verify_jackson(&fam, &[2.0 * LAMBDA_MAX], 1), Err(Error::InvalidParameter(_))));
    let (_, other) = grids(&s.space, 32, 64);
    let foreign = SpectralFunction::zeros(other);
    assert!(matches!(v.verify_jackson(&[("x", &foreign)], &NU_GRID, 1), Err(Error::GridMismatch(_))));
    let opts = VerifyOptions { t_samples: 4, ..VerifyOptions::default() };
    assert!(Verifier::new(s.space, s.grid.clone(), opts).is_err());
}

#[test]
fn lemma_suite_passes() {
    for (m, l) in SPACES {
        let r = verify_lemmas(&space(m, l), &acc()).unwrap();
        let failed: Vec<_> = r.failed_checks().map(|c| c.name.clone()).collect();
        assert!(r.pass, "({m},{l}): {failed:?}");
        assert!(r.constant("cutoff_c").unwrap() > 0.0);
    }
}

#[test]
fn family_builds_and_validates() {
    let fx = fixture(2, 1);
    let specs = default_specs(&fx.space);
    assert_eq!(specs.len(), 5);
    assert_eq!(subjects(&fx.members).len(), 5);
    let bad = harmonic_na_core::family::MemberSpec::PolynomialDecay { s: 1.0, kappa: 3.0 };
    assert!(build(&fx.transform, &[bad]).is_err());
}
