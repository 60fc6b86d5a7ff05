use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::operators::in_band;
use crate::space::DamekRicciSpace;
use crate::special::{spherical_phi_table, EvalAccuracy};
use crate::transform::{SpectralFunction, SpectralGrid};
use crate::{Error, Result};

/// Minimum number of uniform samples in `(δ/2, δ]`.
pub const MIN_T_SAMPLES: usize = 32;

/// The `t`-samples used for the supremum over `(0, δ]`: the geometric
/// sequence `δ 2^{−j}`, `j = 0..=⌈log₂(δΛ)⌉+4`, and `uniform` equispaced
/// points in `(δ/2, δ]`. Sorted ascending, without duplicates.
///
/// For `δ' = 2δ` the geometric part of `δ'` contains that of `δ`, so on a
/// dyadic `δ`-grid the sets nest up to the uniform block.
pub fn modulus_samples(delta: f64, lambda_max: f64, uniform: usize) -> Vec<f64> {
    let levels = (delta * lambda_max).log2().ceil().max(0.0) as usize + 4;
    let mut ts: Vec<f64> = (0..=levels).map(|j| delta * 0.5f64.powi(j as i32)).collect();
    let half = 0.5 * delta;
    ts.extend((1..=uniform).map(|i| half + half * i as f64 / uniform as f64));
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// `1 − φ_λ(t)` on a spectral grid for the sample set of one `δ`, so that
/// `Ω_k(F, δ)` can be evaluated for many `F` and `k` at the cost of one
/// kernel sweep.
#[derive(Debug, Clone)]
pub struct ModulusSampler {
    delta: f64,
    grid: Arc<SpectralGrid>,
    ts: Vec<f64>,
    /// Row `j` holds `1 − φ_{λ_i}(t_j)` for all nodes `i`.
    rows: Vec<Vec<f64>>,
}

impl ModulusSampler {
    pub fn new(
        space: &DamekRicciSpace,
        grid: &Arc<SpectralGrid>,
        delta: f64,
        t_samples: usize,
        acc: &EvalAccuracy,
    ) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!("modulus needs δ > 0, got {delta}")));
        }
        if t_samples < MIN_T_SAMPLES {
            return Err(Error::InvalidParameter(alloc::format!(
                "modulus needs at least {MIN_T_SAMPLES} uniform samples, got {t_samples}"
            )));
        }
        let ts = modulus_samples(delta, grid.lambda_max(), t_samples);
        let table = spherical_phi_table(space, grid.nodes(), &ts, acc)?;
        let n_t = ts.len();
        let rows = (0..n_t)
            .map(|j| (0..grid.len()).map(|i| 1.0 - table[i * n_t + j]).collect())
            .collect();
        Ok(ModulusSampler { delta, grid: grid.clone(), ts, rows })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn samples(&self) -> &[f64] {
        &self.ts
    }

    /// `1 − φ_λ(t)` at all nodes, if `t` is one of the samples.
    pub fn one_minus_phi(&self, t: f64) -> Option<&[f64]> {
        self.ts.iter().position(|&s| s == t).map(|j| self.rows[j].as_slice())
    }

    /// `max_t ‖(I − M_t)^k F‖` over the samples.
    pub fn modulus(&self, f: &SpectralFunction, k: u32) -> Result<f64> {
        if !(Arc::ptr_eq(f.grid(), &self.grid) || **f.grid() == *self.grid) {
            return Err(Error::GridMismatch("function is not on the sampler's grid"));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("modulus order must be ≥ 1".into()));
        }
        let v = self.grid.weights();
        let mut best = 0.0f64;
        for row in &self.rows {
            let sq: f64 = row
                .iter()
                .zip(f.values())
                .zip(v)
                .map(|((d, x), w)| w * x * x * d.abs().powi(2 * k as i32))
                .sum();
            best = best.max(sq);
        }
        Ok(best.sqrt())
    }
}

/// Modulus of smoothness `Ω_k(F, δ) = sup_{0<t≤δ} ‖Δ_t^k F‖`, with the
/// supremum taken over [`modulus_samples`].
pub fn modulus(
    space: &DamekRicciSpace,
    f: &SpectralFunction,
    delta: f64,
    k: u32,
    t_samples: usize,
    acc: &EvalAccuracy,
) -> Result<f64> {
    ModulusSampler::new(space, f.grid(), delta, t_samples, acc)?.modulus(f, k)
}

/// `Ω_k(F, δ)` along an ascending `δ`-grid. Each value is the maximum over
/// the union of the sample sets of all grid points up to it, which makes
/// the sweep monotone regardless of how the sets overlap.
pub fn modulus_sweep(
    space: &DamekRicciSpace,
    f: &SpectralFunction,
    deltas: &[f64],
    k: u32,
    t_samples: usize,
    acc: &EvalAccuracy,
) -> Result<Vec<f64>> {
    if deltas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("δ-grid must be strictly ascending".into()));
    }
    let mut out = Vec::with_capacity(deltas.len());
    let mut running = 0.0f64;
    for &d in deltas {
        running = running.max(modulus(space, f, d, k, t_samples, acc)?);
        out.push(running);
    }
    Ok(out)
}

/// Best approximation by functions band-limited to `[0, ν]`. In the
/// discrete `L²` model `P_ν` is the orthogonal projector onto that
/// subspace, so the infimum is `‖F − P_ν F‖`.
pub fn best_approximation(f: &SpectralFunction, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("band limit must be > 0, got {nu}")));
    }
    let sq: f64 = f
        .grid()
        .nodes()
        .iter()
        .zip(f.values())
        .zip(f.grid().weights())
        .filter(|((l, _), _)| !in_band(**l, nu))
        .map(|((_, x), w)| w * x * x)
        .sum();
    Ok(sq.sqrt())
}

/// Certified bracket for `K_m(F, δ) = inf_g ‖F − g‖ + δ ‖Δ_S^m g‖`.
#[derive(Debug, Clone)]
pub struct KFunctionalBracket {
    pub lower: f64,
    pub upper: f64,
    /// `K₂ = (inf_g ‖F − g‖² + δ² ‖Δ_S^m g‖²)^{1/2}`.
    pub quad_value: f64,
    /// The minimizer `g* = F / (1 + δ² μ^{2m})` of the quadratic problem.
    pub minimizer: SpectralFunction,
    pub delta: f64,
    pub order: u32,
}

fn laplace_symbol_pow(space: &DamekRicciSpace, lambda: f64, m: u32) -> f64 {
    space.laplace_eigenvalue(lambda).powi(m as i32)
}

/// `‖F − g‖ + δ ‖Δ_S^m g‖`.
pub fn k_objective(space: &DamekRicciSpace, f: &SpectralFunction, g: &SpectralFunction, delta: f64, m: u32) -> Result<f64> {
    let residual = f.combine(1.0, g, -1.0)?.norm();
    let sq: f64 = g
        .grid()
        .nodes()
        .iter()
        .zip(g.values())
        .zip(g.grid().weights())
        .map(|((&l, x), w)| w * (laplace_symbol_pow(space, l, m) * x).powi(2))
        .sum();
    Ok(residual + delta * sq.sqrt())
}

/// Solves the quadratic surrogate node by node and brackets the true
/// K-functional: `K₂ ≤ K ≤ min(√2 K₂, objective(g))` over the candidates
/// `g ∈ {g*, 0, F}`.
pub fn k_functional_quadratic(
    space: &DamekRicciSpace,
    f: &SpectralFunction,
    delta: f64,
    m: u32,
) -> Result<KFunctionalBracket> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("K-functional needs δ > 0, got {delta}")));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("K-functional order must be ≥ 1".into()));
    }
    let mut quad = 0.0;
    let mut g = Vec::with_capacity(f.values().len());
    for ((&l, &x), &w) in f.grid().nodes().iter().zip(f.values()).zip(f.grid().weights()) {
        let s = (delta * laplace_symbol_pow(space, l, m)).powi(2);
        let keep = 1.0 / (1.0 + s);
        let removed = if s.is_finite() { s * keep } else { 1.0 };
        g.push(x * keep);
        quad += w * x * x * removed;
    }
    let minimizer = SpectralFunction::new(f.grid().clone(), g)?;
    let quad_value = quad.sqrt();
    let objective = k_objective(space, f, &minimizer, delta, m)?
        .min(f.norm())
        .min(k_objective(space, f, f, delta, m)?);
    Ok(KFunctionalBracket {
        lower: quad_value,
        upper: (core::f64::consts::SQRT_2 * quad_value).min(objective),
        quad_value,
        minimizer,
        delta,
        order: m,
    })
}
