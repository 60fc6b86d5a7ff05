//! Numerical check of the spherical-function estimates the theorems rest
//! on: `|φ_λ| ≤ 1`, `1 − φ_λ(t) ≤ (t²/2) μ(λ)`, the eigenfunction equation,
//! the cutoff constant on `λt ≥ 1`, the Bessel comparisons and the
//! two-sided growth of the Plancherel density.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::report::{ReportBuilder, VerificationReport};
use crate::space::DamekRicciSpace;
use crate::special::{bessel_j_normalized, plancherel_density, radial_drift, spherical_phi_table, EvalAccuracy};
use crate::Result;

/// Sample grid: `λ_i = 64 i/63`, `i < 64`, and `t_j = 10 j/64`, `1 ≤ j ≤ 64`.
pub const LAMBDA_SAMPLES: usize = 64;
pub const LAMBDA_RANGE: f64 = 64.0;
pub const T_SAMPLES: usize = 64;
pub const T_RANGE: f64 = 10.0;

/// Slack on `|φ| ≤ 1` and on the quadratic bound.
pub const PHI_SLACK: f64 = 1e-9;
/// Relative tolerance of the finite-difference eigen-equation residual.
pub const RESIDUAL_TOL: f64 = 1e-4;
/// Measured lower constants must exceed this floor ...
pub const POSITIVE_FLOOR: f64 = 1e-6;
/// ... and measured upper constants must stay below this cap.
pub const FINITE_CAP: f64 = 1e6;

/// Bessel comparison samples `x_k = 200 k / 4000`.
const BESSEL_SAMPLES: usize = 4000;
const BESSEL_RANGE: f64 = 200.0;

pub fn lambda_samples() -> Vec<f64> {
    (0..LAMBDA_SAMPLES).map(|i| LAMBDA_RANGE * i as f64 / (LAMBDA_SAMPLES - 1) as f64).collect()
}

pub fn t_samples() -> Vec<f64> {
    (1..=T_SAMPLES).map(|j| T_RANGE * j as f64 / T_SAMPLES as f64).collect()
}

pub fn verify_lemmas(space: &DamekRicciSpace, acc: &EvalAccuracy) -> Result<VerificationReport> {
    let alpha = space.alpha().to_f64();
    let ts = t_samples();
    let mut b = ReportBuilder::new("lemmas");

    let mut max_abs = 0.0f64;
    let mut max_excess = f64::NEG_INFINITY;
    let mut max_residual = 0.0f64;
    let mut cutoff = f64::INFINITY;
    let mut phi_vs_bessel = f64::INFINITY;

    for lambda in lambda_samples() {
        let mu = space.laplace_eigenvalue(lambda);
        // a step that resolves the oscillation scale 1/√μ
        let h = 0.01 / mu.sqrt();
        let stencil: Vec<f64> = ts.iter().flat_map(|&t| [t - h, t, t + h]).collect();
        let values = spherical_phi_table(space, &[lambda], &stencil, acc)?;

        let (mut row_abs, mut row_residual) = (0.0f64, 0.0f64);
        let mut worst_quad = (f64::NEG_INFINITY, 0.0, 1.0);
        for (j, &t) in ts.iter().enumerate() {
            let (lo, phi, hi) = (values[3 * j], values[3 * j + 1], values[3 * j + 2]);
            row_abs = row_abs.max(phi.abs());

            let quad = 0.5 * t * t * mu;
            let gap = 1.0 - phi;
            if gap - quad > worst_quad.0 {
                worst_quad = (gap - quad, gap, quad);
            }

            let d1 = (hi - lo) / (2.0 * h);
            let d2 = (hi - 2.0 * phi + lo) / (h * h);
            let residual = d2 + radial_drift(space, t) * d1 + mu * phi;
            let amplitude = (phi * phi + d1 * d1 / mu).sqrt();
            row_residual = row_residual.max(residual.abs() / (mu * amplitude));

            if lambda * t >= 1.0 {
                cutoff = cutoff.min(gap.abs());
            }
            let bessel_gap = (1.0 - bessel_j_normalized(alpha, lambda * t)).abs();
            if bessel_gap > 1e-12 {
                phi_vs_bessel = phi_vs_bessel.min(gap.abs() / bessel_gap);
            }
        }
        max_abs = max_abs.max(row_abs);
        max_excess = max_excess.max(worst_quad.0);
        max_residual = max_residual.max(row_residual);
        b.record("abs_phi", lambda, row_abs, 1.0, 1.0);
        b.record("quadratic_bound", lambda, worst_quad.1, worst_quad.2, 1.0);
        b.record("eigen_residual", lambda, row_residual, RESIDUAL_TOL, 1.0);
    }

    let (mut bessel_lo, mut bessel_hi) = (f64::INFINITY, 0.0f64);
    for k in 1..=BESSEL_SAMPLES {
        let x = BESSEL_RANGE * k as f64 / BESSEL_SAMPLES as f64;
        let ratio = (1.0 - bessel_j_normalized(alpha, x)) / x.powi(2).min(1.0);
        bessel_lo = bessel_lo.min(ratio);
        bessel_hi = bessel_hi.max(ratio);
    }

    // density ~ λ^{d−1} for λ ≥ 1 and ~ λ² near the origin
    let d1 = space.d() as i32 - 1;
    let (mut high_lo, mut high_hi) = (f64::INFINITY, 0.0f64);
    let (mut low_lo, mut low_hi) = (f64::INFINITY, 0.0f64);
    for i in 0..LAMBDA_SAMPLES {
        let frac = i as f64 / (LAMBDA_SAMPLES - 1) as f64;
        let high = 1.0 + (LAMBDA_RANGE - 1.0) * frac;
        let r = plancherel_density(space, high) / high.powi(d1);
        high_lo = high_lo.min(r);
        high_hi = high_hi.max(r);
        let low = 1e-3 + (1.0 - 1e-3) * frac;
        let r = plancherel_density(space, low) / (low * low);
        low_lo = low_lo.min(r);
        low_hi = low_hi.max(r);
    }

    b.constant("max_abs_phi", max_abs);
    b.constant("max_quadratic_excess", max_excess);
    b.constant("max_eigen_residual", max_residual);
    b.constant("cutoff_c", cutoff);
    b.constant("bessel_c1", bessel_lo);
    b.constant("bessel_c2", bessel_hi);
    b.constant("phi_bessel_c1", phi_vs_bessel);
    b.constant(format!("density_over_lambda^{d1}_min"), high_lo);
    b.constant(format!("density_over_lambda^{d1}_max"), high_hi);
    b.constant("density_over_lambda^2_min", low_lo);
    b.constant("density_over_lambda^2_max", low_hi);

    b.at_most("abs_phi_le_1", max_abs, 1.0 + PHI_SLACK);
    b.at_most("quadratic_upper_bound", max_excess, PHI_SLACK);
    b.at_most("eigen_residual", max_residual, RESIDUAL_TOL);
    b.at_least("cutoff_c_positive", cutoff, POSITIVE_FLOOR);
    b.at_least("bessel_c1_positive", bessel_lo, POSITIVE_FLOOR);
    b.at_most("bessel_c2_finite", bessel_hi, FINITE_CAP);
    b.at_least("phi_bessel_c1_positive", phi_vs_bessel, POSITIVE_FLOOR);
    b.at_least("density_high_lower", high_lo, POSITIVE_FLOOR);
    b.at_most("density_high_upper", high_hi, FINITE_CAP);
    b.at_least("density_low_lower", low_lo, POSITIVE_FLOOR);
    b.at_most("density_low_upper", low_hi, FINITE_CAP);
    Ok(b.finish(1.0))
}
