//! Jacobi functions `φ^{α,β}_μ(r) = ₂F₁((ρ+iμ)/2, (ρ−iμ)/2; α+1; −sinh² r)`.
//!
//! Near the origin the hypergeometric series (after Pfaff's transformation)
//! is used. Its terms grow like `(μ r)^{2n}/(n!)²` before decaying, so beyond
//! [`switch_radius`] the function is continued by integrating the Jacobi
//! equation `φ'' + ((2α+1) coth r + (2β+1) tanh r) φ' + (μ² + ρ²) φ = 0`,
//! seeded with the series value and derivative. The integrated variable is
//! `w = e^{ρr} φ`, which satisfies `w'' + (D − 2ρ) w' + (μ² + 2ρ² − ρD) w = 0`
//! and tends to a pure oscillator `w'' + μ² w = 0` as `r → ∞`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::hypergeometric::gauss_2f1_neg;
use super::ode::{self, Settings};
use super::EvalAccuracy;
use crate::{Error, Result};

/// Number of frequencies integrated together with a shared step sequence.
const BAND: usize = 32;

/// Largest radius at which the series branch is used for frequency `μ`.
///
/// At `r ≤ 1.5/(|μ|+ρ)` the leading term ratio `(μ² + ρ²) tanh² r / (4(α+1))`
/// stays below one, so the partial sums never exceed the result by more than
/// a small factor.
pub fn switch_radius(rho: f64, mu: f64) -> f64 {
    (1.5 / (mu.abs() + rho)).min(3.0)
}

fn check_indices(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > beta && beta > -0.5) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!(
            "Jacobi indices need α > β > −1/2, got α={alpha}, β={beta}"
        )));
    }
    Ok(())
}

/// Series value at radius `r` (argument `−sinh² r`).
fn series_value(alpha: f64, beta: f64, mu: f64, r: f64, acc: &EvalAccuracy) -> Result<f64> {
    if r == 0.0 {
        return Ok(1.0);
    }
    let rho = alpha + beta + 1.0;
    let a = Complex64::new(0.5 * rho, 0.5 * mu);
    let x = -r.sinh().powi(2);
    Ok(gauss_2f1_neg(a, a.conj(), alpha + 1.0, x, acc)?.re)
}

/// Series derivative, from `d/dx ₂F₁(a,b;c;x) = (ab/c) ₂F₁(a+1,b+1;c+1;x)`.
fn series_derivative(alpha: f64, beta: f64, mu: f64, r: f64, acc: &EvalAccuracy) -> Result<f64> {
    if r == 0.0 {
        return Ok(0.0);
    }
    let rho = alpha + beta + 1.0;
    let a = Complex64::new(0.5 * rho, 0.5 * mu);
    let ab = 0.25 * (rho * rho + mu * mu);
    let c = alpha + 1.0;
    let x = -r.sinh().powi(2);
    let f = gauss_2f1_neg(a + 1.0, a.conj() + 1.0, c + 1.0, x, acc)?.re;
    Ok(-(2.0 * r).sinh() * ab / c * f)
}

/// Jacobi function `φ^{α,β}_μ(r)`; real, even in `μ`, `φ(0) = 1`.
pub fn jacobi_phi(alpha: f64, beta: f64, mu: f64, r: f64, acc: &EvalAccuracy) -> Result<f64> {
    Ok(jacobi_phi_table(alpha, beta, &[mu], &[r], acc)?[0])
}

/// `φ^{α,β}_{μ_i}(r_j)` for all pairs, row-major in `μ`.
///
/// The radii must be sorted ascending and non-negative. Frequencies are
/// grouped into bands of similar `|μ|` that share one adaptive step
/// sequence, so evaluating a full transform kernel costs one integration per
/// band rather than one per entry.
pub fn jacobi_phi_table(
    alpha: f64,
    beta: f64,
    mus: &[f64],
    rs: &[f64],
    acc: &EvalAccuracy,
) -> Result<Vec<f64>> {
    check_indices(alpha, beta)?;
    acc.validate()?;
    if let Some(bad) = rs.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("radius must be finite and ≥ 0, got {bad}")));
    }
    if rs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("radii must be sorted ascending".into()));
    }
    if let Some(bad) = mus.iter().find(|m| !m.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("frequency must be finite, got {bad}")));
    }

    let n_r = rs.len();
    let mut table = vec![0.0; mus.len() * n_r];
    let mut order: Vec<usize> = (0..mus.len()).collect();
    order.sort_by(|&i, &j| mus[i].abs().total_cmp(&mus[j].abs()));

    for band in order.chunks(BAND) {
        let band_mus: Vec<f64> = band.iter().map(|&i| mus[i].abs()).collect();
        let rows = band_table(alpha, beta, &band_mus, rs, acc)?;
        for (row, &i) in rows.chunks(n_r.max(1)).zip(band) {
            table[i * n_r..(i + 1) * n_r].copy_from_slice(row);
        }
    }
    Ok(table)
}

fn band_table(alpha: f64, beta: f64, mus: &[f64], rs: &[f64], acc: &EvalAccuracy) -> Result<Vec<f64>> {
    let rho = alpha + beta + 1.0;
    let n_r = rs.len();
    let mu_max = mus.iter().fold(0.0f64, |m, v| m.max(*v));
    let r_seed = switch_radius(rho, mu_max);
    let split = rs.partition_point(|&r| r <= r_seed);

    let mut out = vec![0.0; mus.len() * n_r];
    for (b, &mu) in mus.iter().enumerate() {
        for (j, &r) in rs[..split].iter().enumerate() {
            out[b * n_r + j] = series_value(alpha, beta, mu, r, acc)?;
        }
    }
    if split == n_r {
        return Ok(out);
    }

    // state layout: [w_0, w'_0, w_1, w'_1, ...]
    let growth = (rho * r_seed).exp();
    let mut y0 = Vec::with_capacity(2 * mus.len());
    for &mu in mus {
        let phi = series_value(alpha, beta, mu, r_seed, acc)?;
        let dphi = series_derivative(alpha, beta, mu, r_seed, acc)?;
        y0.push(growth * phi);
        y0.push(growth * (dphi + rho * phi));
    }
    let mu_sq: Vec<f64> = mus.iter().map(|m| m * m).collect();
    let omega: Vec<f64> = mus.iter().map(|m| (m * m + rho * rho).sqrt()).collect();
    let (two_a1, two_b1) = (2.0 * alpha + 1.0, 2.0 * beta + 1.0);

    let rhs = |r: f64, y: &[f64], dy: &mut [f64]| {
        let th = r.tanh();
        let drift = two_a1 / th + two_b1 * th;
        let p = drift - 2.0 * rho;
        let q = 2.0 * rho * rho - rho * drift;
        for (b, m2) in mu_sq.iter().enumerate() {
            let (w, dw) = (y[2 * b], y[2 * b + 1]);
            dy[2 * b] = dw;
            dy[2 * b + 1] = -p * dw - (m2 + q) * w;
        }
    };
    let tol = acc.ode_step_tol;
    let norm = |y_old: &[f64], y_new: &[f64], e: &[f64]| {
        let mut worst = 0.0f64;
        for (b, om) in omega.iter().enumerate() {
            let amp = |y: &[f64]| (y[2 * b].powi(2) + (y[2 * b + 1] / om).powi(2)).sqrt();
            let scale = tol * amp(y_old).max(amp(y_new)) + f64::MIN_POSITIVE;
            let err = (e[2 * b].powi(2) + (e[2 * b + 1] / om).powi(2)).sqrt();
            worst = worst.max(err / scale);
        }
        worst
    };
    let omega_max = omega.iter().fold(0.0f64, |m, v| m.max(*v));
    let settings = Settings {
        initial_step: (0.05 / omega_max).min(0.25 * r_seed),
        max_step: 0.25,
        max_steps: 50_000_000,
    };
    let states = ode::integrate(rhs, norm, r_seed, &y0, &rs[split..], &settings)?;
    for (j, state) in states.iter().enumerate() {
        let r = rs[split + j];
        let decay = (-rho * r).exp();
        for b in 0..mus.len() {
            out[b * n_r + split + j] = decay * state[2 * b];
        }
    }
    Ok(out)
}
