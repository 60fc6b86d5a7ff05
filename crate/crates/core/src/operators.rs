//! Spectral multipliers: spherical mean, iterated differences, Laplacian
//! powers and the band-limit projection.
//!
//! Every operator acts on a [`SpectralFunction`] by pointwise
//! multiplication at the grid nodes. Powers are applied as repeated
//! multiplications by the base symbol, so that e.g.
//! `difference(difference(F, t, k₁), t, k₂)` and `difference(F, t, k₁+k₂)`
//! perform the same floating-point operations and agree bit for bit.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::space::DamekRicciSpace;
use crate::special::{spherical_phi_table, EvalAccuracy};
use crate::transform::{SpectralFunction, SpectralGrid};
use crate::{Error, Result};

enum Symbol {
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    Sampled { grid: Arc<SpectralGrid>, values: Vec<f64> },
}

/// A symbol `λ ↦ m(λ)` together with a human-readable label.
pub struct Multiplier {
    label: String,
    symbol: Symbol,
}

impl core::fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Multiplier").field("label", &self.label).finish_non_exhaustive()
    }
}

impl Multiplier {
    /// A symbol given as a function of `λ`.
    pub fn from_fn(label: impl Into<String>, symbol: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Multiplier { label: label.into(), symbol: Symbol::Function(Arc::new(symbol)) }
    }

    /// A symbol known only at the nodes of `grid`.
    pub fn sampled(label: impl Into<String>, grid: Arc<SpectralGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch("sampled symbol does not match the grid length"));
        }
        Ok(Multiplier { label: label.into(), symbol: Symbol::Sampled { grid, values } })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Symbol values at the nodes of `grid`.
    pub fn values_on(&self, grid: &Arc<SpectralGrid>) -> Result<Vec<f64>> {
        let values = match &self.symbol {
            Symbol::Function(f) => grid.nodes().iter().map(|&l| f(l)).collect(),
            Symbol::Sampled { grid: own, values } => {
                if !(Arc::ptr_eq(own, grid) || **own == **grid) {
                    return Err(Error::GridMismatch("sampled symbol belongs to another grid"));
                }
                values.clone()
            }
        };
        if let Some(i) = values.iter().position(|v: &f64| !v.is_finite()) {
            return Err(Error::NonFiniteSymbol { label: self.label.clone(), node: grid.nodes()[i] });
        }
        Ok(values)
    }
}

/// Pointwise product `F(λ_i) · m(λ_i)`.
pub fn apply(f: &SpectralFunction, m: &Multiplier) -> Result<SpectralFunction> {
    let symbol = m.values_on(f.grid())?;
    Ok(multiply(f, &symbol, 1))
}

fn multiply(f: &SpectralFunction, symbol: &[f64], times: u32) -> SpectralFunction {
    let mut values = f.values().to_vec();
    for _ in 0..times {
        for (v, s) in values.iter_mut().zip(symbol) {
            *v *= s;
        }
    }
    f.with_values(values)
}

/// Symbol `φ_λ(t)` of the spherical mean `M_t`, sampled on `grid`.
pub fn spherical_mean_multiplier(
    space: &DamekRicciSpace,
    grid: &Arc<SpectralGrid>,
    t: f64,
    acc: &EvalAccuracy,
) -> Result<Multiplier> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!("spherical mean needs t > 0, got {t}")));
    }
    let values = spherical_phi_table(space, grid.nodes(), &[t], acc)?;
    Multiplier::sampled(alloc::format!("M_{t}"), grid.clone(), values)
}

/// `M_t F`: multiplication by `φ_λ(t)`.
pub fn spherical_mean(space: &DamekRicciSpace, f: &SpectralFunction, t: f64, acc: &EvalAccuracy) -> Result<SpectralFunction> {
    apply(f, &spherical_mean_multiplier(space, f.grid(), t, acc)?)
}

/// `Δ_t^k F = (I − M_t)^k F`: `k` multiplications by `1 − φ_λ(t)`.
pub fn difference(
    space: &DamekRicciSpace,
    f: &SpectralFunction,
    t: f64,
    k: u32,
    acc: &EvalAccuracy,
) -> Result<SpectralFunction> {
    if k == 0 {
        return Err(Error::InvalidParameter("difference order must be ≥ 1".into()));
    }
    let phi = spherical_mean_multiplier(space, f.grid(), t, acc)?.values_on(f.grid())?;
    let symbol: Vec<f64> = phi.iter().map(|p| 1.0 - p).collect();
    Ok(multiply(f, &symbol, k))
}

/// `Δ_S^k F`: `k` multiplications by `−(λ² + Q²/4)`.
pub fn laplacian_power(space: &DamekRicciSpace, f: &SpectralFunction, k: u32) -> Result<SpectralFunction> {
    if k == 0 {
        return Err(Error::InvalidParameter("Laplacian power must be ≥ 1".into()));
    }
    let symbol: Vec<f64> = f.grid().nodes().iter().map(|&l| -space.laplace_eigenvalue(l)).collect();
    Ok(multiply(f, &symbol, k))
}

/// Band-limit indicator `χ_ν(λ)`; the edge `λ = ν` belongs to the band.
pub fn in_band(lambda: f64, nu: f64) -> bool {
    lambda.abs() <= nu
}

/// `P_ν F = χ_ν F`.
pub fn bandlimit_project(f: &SpectralFunction, nu: f64) -> Result<SpectralFunction> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("band limit must be > 0, got {nu}")));
    }
    let values = f
        .grid()
        .nodes()
        .iter()
        .zip(f.values())
        .map(|(&l, &v)| if in_band(l, nu) { v } else { 0.0 })
        .collect();
    Ok(f.with_values(values))
}
