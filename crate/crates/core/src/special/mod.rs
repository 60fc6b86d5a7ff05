//! Special functions of radial analysis on Damek–Ricci spaces.

mod bessel;
mod gamma;
mod hypergeometric;
mod jacobi;
mod ode;

pub use bessel::bessel_j_normalized;
pub use gamma::log_gamma;
pub use hypergeometric::gauss_2f1_neg;
pub use jacobi::{jacobi_phi, jacobi_phi_table, switch_radius};

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::space::DamekRicciSpace;
use crate::{Error, Result};

/// Accuracy knobs shared by the series and ODE evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    /// Target relative error of series sums.
    pub rel_tol: f64,
    /// Cap on the number of series terms.
    pub max_terms: usize,
    /// Per-step tolerance of the adaptive ODE integrator, relative to the
    /// local amplitude of the solution.
    pub ode_step_tol: f64,
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy { rel_tol: 1e-10, max_terms: 10_000, ode_step_tol: 1e-10 }
    }
}

impl EvalAccuracy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || !(self.ode_step_tol > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!("invalid accuracy settings {self:?}")));
        }
        Ok(())
    }
}

/// Spherical function `φ_λ(t) = φ^{α,β}_{2λ}(t/2)`.
pub fn spherical_phi(space: &DamekRicciSpace, lambda: f64, t: f64, acc: &EvalAccuracy) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("spherical_phi needs t ≥ 0, got {t}")));
    }
    jacobi_phi(space.alpha().to_f64(), space.beta().to_f64(), 2.0 * lambda, 0.5 * t, acc)
}

/// `φ_{λ_i}(t_j)` for all pairs, row-major in `λ`. The `t` values must be
/// sorted ascending and non-negative.
pub fn spherical_phi_table(
    space: &DamekRicciSpace,
    lambdas: &[f64],
    ts: &[f64],
    acc: &EvalAccuracy,
) -> Result<Vec<f64>> {
    let mus: Vec<f64> = lambdas.iter().map(|l| 2.0 * l).collect();
    let rs: Vec<f64> = ts.iter().map(|t| 0.5 * t).collect();
    jacobi_phi_table(space.alpha().to_f64(), space.beta().to_f64(), &mus, &rs, acc)
}

/// Plancherel density `|c(λ)|^{-2}` of the spherical transform.
///
/// With `μ = 2λ`, Koornwinder's Jacobi `c`-function gives
/// `|c(μ)|^{-2} = |Γ((ρ+iμ)/2) Γ((α−β+1+iμ)/2)|² / (2^{2ρ} Γ(α+1)² |Γ(iμ)|²)`.
/// It vanishes quadratically at `λ = 0` and grows like `λ^{d−1}`.
pub fn plancherel_density(space: &DamekRicciSpace, lambda: f64) -> f64 {
    let mu = 2.0 * lambda.abs();
    if mu == 0.0 {
        return 0.0;
    }
    let alpha = space.alpha().to_f64();
    let beta = space.beta().to_f64();
    let rho = space.rho_jacobi().to_f64();
    let g1 = log_gamma(num_complex::Complex64::new(0.5 * rho, 0.5 * mu))
        .expect("Re > 0, no pole")
        .re;
    let g2 = log_gamma(num_complex::Complex64::new(0.5 * (alpha - beta + 1.0), 0.5 * mu))
        .expect("Re > 0, no pole")
        .re;
    let ln = 2.0 * g1 + 2.0 * g2 - 2.0 * rho * core::f64::consts::LN_2
        - 2.0 * gamma::ln_gamma_real(alpha + 1.0)
        + gamma::ln_inv_abs_gamma_imag_sq(mu);
    ln.exp()
}

/// Radial volume density `A(t) = (2 sinh(t/2))^{m+l} cosh(t/2)^l`.
pub fn volume_density(space: &DamekRicciSpace, t: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        return 0.0;
    }
    let h = 0.5 * t;
    let ml = (space.m() + space.l()) as f64;
    let l = space.l() as f64;
    (ml * (2.0 * h.sinh()).ln() + l * h.cosh().ln()).exp()
}

/// Drift of the radial Laplacian, `A′(t)/A(t) = (m+l)/2 coth(t/2) + l/2 tanh(t/2)`.
pub fn radial_drift(space: &DamekRicciSpace, t: f64) -> f64 {
    let h = 0.5 * t;
    let ml = (space.m() + space.l()) as f64;
    let l = space.l() as f64;
    0.5 * ml / h.tanh() + 0.5 * l * h.tanh()
}
