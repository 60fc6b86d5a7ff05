#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use harmonic_na_core::family::{build, default_specs, Member};
use harmonic_na_core::special::EvalAccuracy;
use harmonic_na_core::transform::{make_grids, RadialGrid, SpectralGrid, Transform};
use harmonic_na_core::DamekRicciSpace;

/// The two spaces every test runs on.
pub const SPACES: [(i64, i64); 2] = [(2, 1), (4, 3)];

/// Window shared by all fixtures.
pub const T_MAX: f64 = 10.0;
pub const LAMBDA_MAX: f64 = 64.0;

/// Reduced resolution that is still converged for the default family.
pub const N_T: usize = 512;
pub const N_LAMBDA: usize = 1024;

pub fn space(m: i64, l: i64) -> DamekRicciSpace {
    DamekRicciSpace::new(m, l).unwrap()
}

pub fn acc() -> EvalAccuracy {
    EvalAccuracy::default()
}

pub fn grids(space: &DamekRicciSpace, n_t: usize, n_lambda: usize) -> (Arc<RadialGrid>, Arc<SpectralGrid>) {
    make_grids(space, T_MAX, n_t, LAMBDA_MAX, n_lambda, &acc()).unwrap()
}

pub struct Fixture {
    pub space: DamekRicciSpace,
    pub transform: Transform,
    pub members: Vec<Member>,
}

fn build_fixture(m: i64, l: i64) -> Fixture {
    let space = space(m, l);
    let (rg, sg) = grids(&space, N_T, N_LAMBDA);
    let transform = Transform::new(space, rg, sg, &acc()).unwrap();
    let members = build(&transform, &default_specs(&space)).unwrap();
    Fixture { space, transform, members }
}

/// Transform and default family at the reduced resolution, built once per
/// test binary.
pub fn fixture(m: i64, l: i64) -> &'static Fixture {
    static F21: OnceLock<Fixture> = OnceLock::new();
    static F43: OnceLock<Fixture> = OnceLock::new();
    match (m, l) {
        (2, 1) => F21.get_or_init(|| build_fixture(2, 1)),
        (4, 3) => F43.get_or_init(|| build_fixture(4, 3)),
        _ => panic!("no fixture for ({m}, {l})"),
    }
}

/// Adaptive Simpson quadrature, used as an oracle independent of the
/// Gauss–Legendre machinery.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
