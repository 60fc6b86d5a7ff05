//! Discrete spherical transform of radial functions.
//!
//! A radial function lives on a [`RadialGrid`] (composite Gauss–Legendre
//! nodes on `(0, T]` with the volume density folded into the weights), its
//! transform on a [`SpectralGrid`] (nodes on `[0, Λ]`, Plancherel density and
//! inversion constant folded into the weights). With the kernel
//! `K[i][j] = φ_{λ_i}(t_j)` the pair is
//!
//! ```text
//! forward:  F_i = Σ_j K[i][j] w_j f_j
//! inverse:  f_j = Σ_i K[i][j] v_i F_i
//! ```
//!
//! and the two grid norms agree for transform pairs (Plancherel).

use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::quadrature::composite_gauss_legendre;
use crate::space::DamekRicciSpace;
use crate::special::{plancherel_density, spherical_phi_table, volume_density, EvalAccuracy};
use crate::{Error, Result};

/// Quadrature nodes in `t` with weights `GL_j · A(t_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    t_max: f64,
}

/// Quadrature nodes in `λ` with weights `C₀ · GL_i · |c(λ_i)|⁻²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lambda_max: f64,
    c0: f64,
}

impl RadialGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl SpectralGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Plancherel weights, inversion constant included.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// The inversion constant `C₀` folded into [`weights`](Self::weights).
    pub fn inversion_constant(&self) -> f64 {
        self.c0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn same_grid<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("{what} has a non-finite value {bad}")));
    }
    Ok(())
}

/// Samples of a radial function on a [`RadialGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch("radial values do not match the grid length"));
        }
        check_finite(&values, "radial function")?;
        Ok(RadialFunction { grid, values })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes.iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let values = alloc::vec![0.0; grid.len()];
        RadialFunction { grid, values }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &RadialFunction, b: f64) -> Result<RadialFunction> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch("radial functions live on different grids"));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        RadialFunction::new(self.grid.clone(), values)
    }

    /// `√(Σ_j w_j f_j²)`.
    pub fn norm(&self) -> f64 {
        norm_time(self)
    }
}

/// Samples of a spectrum on a [`SpectralGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    grid: Arc<SpectralGrid>,
    values: Vec<f64>,
}

impl SpectralFunction {
    pub fn new(grid: Arc<SpectralGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch("spectral values do not match the grid length"));
        }
        check_finite(&values, "spectral function")?;
        Ok(SpectralFunction { grid, values })
    }

    pub fn from_fn(grid: Arc<SpectralGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes.iter().map(|&l| f(l)).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Arc<SpectralGrid>) -> Self {
        let values = alloc::vec![0.0; grid.len()];
        SpectralFunction { grid, values }
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Same grid, new values; the caller guarantees the length.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> SpectralFunction {
        debug_assert_eq!(values.len(), self.values.len());
        SpectralFunction { grid: self.grid.clone(), values }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &SpectralFunction, b: f64) -> Result<SpectralFunction> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch("spectral functions live on different grids"));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        SpectralFunction::new(self.grid.clone(), values)
    }

    /// Plancherel inner product `Σ_i v_i F_i G_i`.
    pub fn inner(&self, other: &SpectralFunction) -> Result<f64> {
        if !same_grid(&self.grid, &other.grid) {
            return Err(Error::GridMismatch("spectral functions live on different grids"));
        }
        Ok(weighted_dot(&self.grid.weights, &self.values, &other.values))
    }

    /// `√(Σ_i v_i F_i²)`.
    pub fn norm(&self) -> f64 {
        norm_spectral(self)
    }
}

fn weighted_dot(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter().zip(a).zip(b).map(|((w, a), b)| w * a * b).sum()
}

/// `√(Σ_j w_j f(t_j)²)`.
pub fn norm_time(f: &RadialFunction) -> f64 {
    weighted_dot(&f.grid.weights, &f.values, &f.values).sqrt()
}

/// `√(C₀ Σ_i GL_i |c(λ_i)|⁻² F(λ_i)²)`.
pub fn norm_spectral(f: &SpectralFunction) -> f64 {
    weighted_dot(&f.grid.weights, &f.values, &f.values).sqrt()
}

/// Time-side inner product `Σ_j w_j f_j g_j`.
pub fn inner_time(f: &RadialFunction, g: &RadialFunction) -> Result<f64> {
    if !same_grid(&f.grid, &g.grid) {
        return Err(Error::GridMismatch("radial functions live on different grids"));
    }
    Ok(weighted_dot(&f.grid.weights, &f.values, &g.values))
}

/// Reference spectrum used to fix the inversion constant.
fn reference_spectrum(lambda: f64) -> f64 {
    (-lambda * lambda).exp()
}

/// Inversion constant `C₀` in `f(t) = C₀ ∫ F(λ) φ_λ(t) |c(λ)|⁻² dλ`.
///
/// It is fixed by requiring the discrete Plancherel identity for the
/// reference spectrum `e^{−λ²}` on a dedicated fine grid (`λ ≤ 8`,
/// `t ≤ 12`, where the reference pair is negligible beyond both ends), so it
/// does not depend on the grids later used for computation.
pub fn pin_inversion_constant(space: &DamekRicciSpace, acc: &EvalAccuracy) -> Result<f64> {
    let (lam, gl_l) = composite_gauss_legendre(0.0, 8.0, 512);
    let (ts, gl_t) = composite_gauss_legendre(0.0, 12.0, 768);
    let u: Vec<f64> = lam.iter().zip(&gl_l).map(|(&l, w)| w * plancherel_density(space, l)).collect();
    let w: Vec<f64> = ts.iter().zip(&gl_t).map(|(&t, g)| g * volume_density(space, t)).collect();
    let kernel = spherical_phi_table(space, &lam, &ts, acc)?;

    let coeff: Vec<f64> = lam.iter().zip(&u).map(|(&l, u)| u * reference_spectrum(l)).collect();
    let mut g = alloc::vec![0.0; ts.len()];
    for (row, c) in kernel.chunks(ts.len()).zip(&coeff) {
        for (gj, k) in g.iter_mut().zip(row) {
            *gj += c * k;
        }
    }
    let spectral: f64 = lam.iter().zip(&u).map(|(&l, u)| u * reference_spectrum(l).powi(2)).sum();
    let time: f64 = w.iter().zip(&g).map(|(w, g)| w * g * g).sum();
    Ok(spectral / time)
}

/// Builds the radial grid on `(0, t_max]` and the spectral grid on
/// `[0, lambda_max]`, both composite Gauss–Legendre with `n_t` and
/// `n_lambda` nodes.
pub fn make_grids(
    space: &DamekRicciSpace,
    t_max: f64,
    n_t: usize,
    lambda_max: f64,
    n_lambda: usize,
    acc: &EvalAccuracy,
) -> Result<(Arc<RadialGrid>, Arc<SpectralGrid>)> {
    if !(t_max > 0.0 && t_max.is_finite()) || !(lambda_max > 0.0 && lambda_max.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "grid extents must be positive and finite, got t_max={t_max}, lambda_max={lambda_max}"
        )));
    }
    if n_t < 16 || n_lambda < 16 {
        return Err(Error::InvalidParameter(alloc::format!(
            "grids need at least 16 nodes, got n_t={n_t}, n_lambda={n_lambda}"
        )));
    }
    let c0 = pin_inversion_constant(space, acc)?;

    let (nodes, gl) = composite_gauss_legendre(0.0, t_max, n_t);
    let weights = nodes.iter().zip(&gl).map(|(&t, g)| g * volume_density(space, t)).collect();
    let radial = RadialGrid { nodes, weights, t_max };

    let (nodes, gl) = composite_gauss_legendre(0.0, lambda_max, n_lambda);
    let weights = nodes.iter().zip(&gl).map(|(&l, g)| c0 * g * plancherel_density(space, l)).collect();
    let spectral = SpectralGrid { nodes, weights, lambda_max, c0 };

    Ok((Arc::new(radial), Arc::new(spectral)))
}

/// Dense transform kernel for one `(space, radial grid, spectral grid)`.
#[derive(Debug, Clone)]
pub struct Transform {
    space: DamekRicciSpace,
    radial: Arc<RadialGrid>,
    spectral: Arc<SpectralGrid>,
    /// `φ_{λ_i}(t_j)`, row-major in `λ`.
    kernel: Vec<f64>,
}

impl Transform {
    /// Evaluates the kernel. Cost is one banded ODE sweep per 32 spectral
    /// nodes.
    pub fn new(
        space: DamekRicciSpace,
        radial: Arc<RadialGrid>,
        spectral: Arc<SpectralGrid>,
        acc: &EvalAccuracy,
    ) -> Result<Self> {
        let kernel = spherical_phi_table(&space, &spectral.nodes, &radial.nodes, acc)?;
        Ok(Transform { space, radial, spectral, kernel })
    }

    /// Wraps a kernel computed elsewhere (e.g. row blocks evaluated in
    /// parallel with [`spherical_phi_table`]).
    pub fn from_kernel(
        space: DamekRicciSpace,
        radial: Arc<RadialGrid>,
        spectral: Arc<SpectralGrid>,
        kernel: Vec<f64>,
    ) -> Result<Self> {
        if kernel.len() != radial.len() * spectral.len() {
            return Err(Error::GridMismatch("kernel size does not match the grids"));
        }
        check_finite(&kernel, "kernel")?;
        Ok(Transform { space, radial, spectral, kernel })
    }

    pub fn space(&self) -> &DamekRicciSpace {
        &self.space
    }

    pub fn radial_grid(&self) -> &Arc<RadialGrid> {
        &self.radial
    }

    pub fn spectral_grid(&self) -> &Arc<SpectralGrid> {
        &self.spectral
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    /// `F(λ_i) = Σ_j φ_{λ_i}(t_j) w_j f(t_j)`.
    pub fn forward(&self, f: &RadialFunction) -> Result<SpectralFunction> {
        if !same_grid(&f.grid, &self.radial) {
            return Err(Error::GridMismatch("function is not on the transform's radial grid"));
        }
        let wf: Vec<f64> = f.values.iter().zip(&self.radial.weights).map(|(f, w)| f * w).collect();
        let values = self
            .kernel
            .chunks(self.radial.len())
            .map(|row| row.iter().zip(&wf).map(|(k, x)| k * x).sum())
            .collect();
        SpectralFunction::new(self.spectral.clone(), values)
    }

    /// `f(t_j) = Σ_i φ_{λ_i}(t_j) v_i F(λ_i)`.
    pub fn inverse(&self, spectrum: &SpectralFunction) -> Result<RadialFunction> {
        if !same_grid(&spectrum.grid, &self.spectral) {
            return Err(Error::GridMismatch("spectrum is not on the transform's spectral grid"));
        }
        let mut values = alloc::vec![0.0; self.radial.len()];
        for ((row, v), x) in self.kernel.chunks(self.radial.len()).zip(&self.spectral.weights).zip(&spectrum.values) {
            let c = v * x;
            if c == 0.0 {
                continue;
            }
            for (out, k) in values.iter_mut().zip(row) {
                *out += c * k;
            }
        }
        RadialFunction::new(self.radial.clone(), values)
    }
}
