//! Verifiers for the direct theorems, the Nikolskii–Stechkin inequality and
//! the K-functional equivalence.
//!
//! Each verifier evaluates both sides of an inequality for every
//! `(function, parameter)` cell and checks the worst ratio against the
//! constant produced by the corresponding proof chain, with every
//! ingredient measured on the same discrete model.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functionals::{best_approximation, k_functional_quadratic, k_objective, ModulusSampler, MIN_T_SAMPLES};
use super::report::{ReportBuilder, VerificationReport, BOUND_SLACK};
use crate::operators::{bandlimit_project, in_band, laplacian_power};
use crate::space::DamekRicciSpace;
use crate::special::EvalAccuracy;
use crate::transform::{SpectralFunction, SpectralGrid};
use crate::{Error, Result};

/// A named spectrum under test.
pub type Subject<'a> = (&'a str, &'a SpectralFunction);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub acc: EvalAccuracy,
    /// Uniform samples per `δ` in the modulus supremum.
    pub t_samples: usize,
    /// Seed of the randomized competitor searches.
    pub seed: u64,
    /// Random competitors per `(function, parameter)` cell.
    pub trials: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { acc: EvalAccuracy::default(), t_samples: MIN_T_SAMPLES, seed: 0, trials: 1000 }
    }
}

/// Shared state of the verifiers: the space, the spectral grid and the
/// `1 − φ_λ(t)` tables for every `δ` requested so far.
pub struct Verifier {
    space: DamekRicciSpace,
    grid: Arc<SpectralGrid>,
    opts: VerifyOptions,
    samplers: BTreeMap<u64, ModulusSampler>,
}

impl Verifier {
    pub fn new(space: DamekRicciSpace, grid: Arc<SpectralGrid>, opts: VerifyOptions) -> Result<Self> {
        opts.acc.validate()?;
        if opts.t_samples < MIN_T_SAMPLES {
            return Err(Error::InvalidParameter(format!("t_samples must be ≥ {MIN_T_SAMPLES}")));
        }
        Ok(Verifier { space, grid, opts, samplers: BTreeMap::new() })
    }

    pub fn space(&self) -> &DamekRicciSpace {
        &self.space
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn sampler(&mut self, delta: f64) -> Result<&ModulusSampler> {
        let key = delta.to_bits();
        if !self.samplers.contains_key(&key) {
            let s = ModulusSampler::new(&self.space, &self.grid, delta, self.opts.t_samples, &self.opts.acc)?;
            self.samplers.insert(key, s);
        }
        Ok(&self.samplers[&key])
    }

    fn row(&mut self, delta: f64) -> Result<Vec<f64>> {
        let s = self.sampler(delta)?;
        Ok(s.one_minus_phi(delta).expect("δ itself is always sampled").to_vec())
    }

    /// `Ω_k(F, δ)` along an ascending grid, as a running maximum.
    pub fn modulus_sweep(&mut self, f: &SpectralFunction, deltas: &[f64], k: u32) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(deltas.len());
        let mut running = 0.0f64;
        for &d in deltas {
            running = running.max(self.sampler(d)?.modulus(f, k)?);
            out.push(running);
        }
        Ok(out)
    }

    /// Cutoff constant `min_{λ_i ≥ ν} |1 − φ_{λ_i}(1/ν)|`.
    pub fn cutoff_constant(&mut self, nu: f64) -> Result<f64> {
        let row = self.row(1.0 / nu)?;
        let c = self
            .grid
            .nodes()
            .iter()
            .zip(&row)
            .filter(|(l, _)| **l >= nu)
            .fold(f64::INFINITY, |c, (_, d)| c.min(d.abs()));
        Ok(c)
    }

    /// Exact multiplier-quotient bound
    /// `max_{λ_i ≤ ν} μ(λ_i)^k / (ν^{2k} |1 − φ_{λ_i}(1/ν)|^k)`.
    pub fn symbol_quotient_bound(&mut self, nu: f64, k: u32) -> Result<f64> {
        let row = self.row(1.0 / nu)?;
        let space = self.space;
        let c = self
            .grid
            .nodes()
            .iter()
            .zip(&row)
            .filter(|(l, _)| in_band(**l, nu))
            .map(|(&l, d)| (space.laplace_eigenvalue(l) / (nu * nu * d.abs())).powi(k as i32))
            .fold(0.0f64, f64::max);
        Ok(c)
    }

    fn check_inputs(&self, family: &[Subject<'_>], params: &[f64]) -> Result<()> {
        if family.is_empty() {
            return Err(Error::EmptyInput("family"));
        }
        if params.is_empty() {
            return Err(Error::EmptyInput("parameter grid"));
        }
        for (_, f) in family {
            if !(Arc::ptr_eq(f.grid(), &self.grid) || **f.grid() == *self.grid) {
                return Err(Error::GridMismatch("family member is not on the verifier's grid"));
            }
        }
        Ok(())
    }

    /// Band limits `ν` paired with `δ = 1/ν`, sorted by ascending `δ`.
    fn nu_cells(&self, nu_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
        let lmax = self.grid.lambda_max();
        if let Some(bad) = nu_grid.iter().find(|&&nu| !(nu > 0.0 && nu <= lmax)) {
            return Err(Error::InvalidParameter(format!("band limit {bad} outside (0, {lmax}]")));
        }
        let mut cells: Vec<(f64, f64)> = nu_grid.iter().map(|&nu| (nu, 1.0 / nu)).collect();
        cells.sort_by(|a, b| a.1.total_cmp(&b.1));
        cells.dedup_by(|a, b| a.0 == b.0);
        Ok(cells)
    }

    /// `E_ν(f) ≤ c_k Ω_k(f, 1/ν)`, checked against `c_meas^{−k}`.
    ///
    /// Also certifies the projection facts the bound rests on: `P_ν` is
    /// idempotent and self-adjoint, satisfies Pythagoras, and `‖f − P_ν f‖`
    /// is not beaten by random band-limited competitors.
    pub fn verify_jackson(&mut self, family: &[Subject<'_>], nu_grid: &[f64], k: u32) -> Result<VerificationReport> {
        let mut report = self.jackson_core("jackson", family, nu_grid, k, 0)?;
        self.projection_checks(&mut report, family, nu_grid)?;
        Ok(report.finish_with_bound())
    }

    /// `E_ν(f) ≤ c'_k ν^{−2r} Ω_k(Δ_S^r f, 1/ν)`, checked against
    /// `c_meas^{−(k+r)} 2^{−r}`.
    pub fn verify_jackson_sobolev(
        &mut self,
        family: &[Subject<'_>],
        nu_grid: &[f64],
        k: u32,
        r: u32,
    ) -> Result<VerificationReport> {
        Ok(self.jackson_core("jackson_sobolev", family, nu_grid, k, r)?.finish_with_bound())
    }

    fn jackson_core(
        &mut self,
        id: &str,
        family: &[Subject<'_>],
        nu_grid: &[f64],
        k: u32,
        r: u32,
    ) -> Result<PendingReport> {
        self.check_inputs(family, nu_grid)?;
        if k == 0 {
            return Err(Error::InvalidParameter("modulus order must be ≥ 1".into()));
        }
        let cells = self.nu_cells(nu_grid)?;
        let deltas: Vec<f64> = cells.iter().map(|c| c.1).collect();

        let mut b = ReportBuilder::new(id);
        let mut c_meas = f64::INFINITY;
        for &(nu, _) in &cells {
            let c = self.cutoff_constant(nu)?;
            b.constant(format!("c_meas(nu={nu})"), c);
            c_meas = c_meas.min(c);
        }
        let bound = c_meas.powi(-((k + r) as i32)) * 0.5f64.powi(r as i32);
        b.constant("c_meas", c_meas);
        b.constant("bound", bound);

        for &(id, f) in family {
            let scale = f.norm();
            let smoothed = if r > 0 { laplacian_power(&self.space, f, r)? } else { f.clone() };
            let omegas = self.modulus_sweep(&smoothed, &deltas, k)?;
            for (&(nu, _), omega) in cells.iter().zip(&omegas) {
                let lhs = best_approximation(f, nu)?;
                let rhs = nu.powi(-2 * r as i32) * omega;
                b.record(id, nu, lhs, rhs, scale);
            }
        }
        Ok(PendingReport { builder: b, bound })
    }

    fn projection_checks(&mut self, report: &mut PendingReport, family: &[Subject<'_>], nu_grid: &[f64]) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let (mut idem, mut adjoint, mut pyth) = (0.0f64, 0.0f64, 0.0f64);
        let mut gap = f64::INFINITY;
        for (n, &(_, f)) in family.iter().enumerate() {
            let other = family[(n + 1) % family.len()].1;
            let scale = f.norm();
            if scale == 0.0 {
                continue;
            }
            let amp = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for &nu in nu_grid {
                let p = bandlimit_project(f, nu)?;
                let pp = bandlimit_project(&p, nu)?;
                idem = idem.max(pp.combine(1.0, &p, -1.0)?.norm() / scale);
                let lhs = p.inner(other)?;
                let rhs = f.inner(&bandlimit_project(other, nu)?)?;
                adjoint = adjoint.max((lhs - rhs).abs() / (scale * other.norm()).max(f64::MIN_POSITIVE));
                let e = best_approximation(f, nu)?;
                let tail = f.combine(1.0, &p, -1.0)?.norm();
                pyth = pyth.max((scale * scale - p.norm().powi(2) - tail * tail).abs() / (scale * scale));

                for trial in 0..self.opts.trials {
                    let eps = 10f64.powf(rng.gen_range(-8.0..0.0));
                    let base = if trial % 2 == 0 { 1.0 } else { 0.0 };
                    let values = f
                        .grid()
                        .nodes()
                        .iter()
                        .zip(p.values())
                        .map(|(&l, &pv)| {
                            if in_band(l, nu) {
                                base * pv + eps * amp * rng.gen_range(-1.0..1.0)
                            } else {
                                0.0
                            }
                        })
                        .collect();
                    let g = SpectralFunction::new(f.grid().clone(), values)?;
                    gap = gap.min((f.combine(1.0, &g, -1.0)?.norm() - e) / scale);
                }
            }
        }
        let b = &mut report.builder;
        b.constant("projection_idempotence_defect", idem);
        b.constant("projection_adjointness_defect", adjoint);
        b.constant("pythagoras_defect", pyth);
        b.at_most("projection_idempotent", idem, 1e-12);
        b.at_most("projection_self_adjoint", adjoint, 1e-12);
        b.at_most("pythagoras", pyth, 1e-12);
        if gap.is_finite() {
            b.constant("min_competitor_gap", gap);
            b.at_least("best_approximation_beats_random_competitors", gap, -1e-12);
        }
        Ok(())
    }

    /// `‖Δ_S^k P_ν f‖ ≤ c_3 ν^{2k} ‖Δ_{1/ν}^k f‖`, checked against the exact
    /// multiplier-quotient bound. For members that are band-limited to
    /// `[0, ν]` the variant with `Ω_k(f, 1/ν)` on the right is checked too.
    pub fn verify_nikolskii_stechkin(
        &mut self,
        family: &[Subject<'_>],
        nu_grid: &[f64],
        k: u32,
    ) -> Result<VerificationReport> {
        self.check_inputs(family, nu_grid)?;
        if k == 0 {
            return Err(Error::InvalidParameter("order must be ≥ 1".into()));
        }
        let cells = self.nu_cells(nu_grid)?;
        let deltas: Vec<f64> = cells.iter().map(|c| c.1).collect();
        let mut b = ReportBuilder::new("nikolskii_stechkin");

        let mut c_sym = 0.0f64;
        let mut rows = Vec::with_capacity(cells.len());
        for &(nu, delta) in &cells {
            let c = self.symbol_quotient_bound(nu, k)?;
            b.constant(format!("C_sym(nu={nu})"), c);
            c_sym = c_sym.max(c);
            rows.push(self.row(delta)?);
        }
        b.constant("C_sym", c_sym);

        let nodes = self.grid.nodes().to_vec();
        let weights = self.grid.weights().to_vec();
        let mut corollary = 0.0f64;
        for &(id, f) in family {
            let scale = f.norm();
            let omegas = self.modulus_sweep(f, &deltas, k)?;
            for ((&(nu, _), row), omega) in cells.iter().zip(&rows).zip(&omegas) {
                let (mut lhs, mut rhs, mut outside) = (0.0, 0.0, 0.0f64);
                for (((&l, &x), &w), d) in nodes.iter().zip(f.values()).zip(&weights).zip(row) {
                    rhs += w * x * x * d.abs().powi(2 * k as i32);
                    if in_band(l, nu) {
                        lhs += w * (self.space.laplace_eigenvalue(l).powi(k as i32) * x).powi(2);
                    } else {
                        outside = outside.max(x.abs());
                    }
                }
                let (lhs, rhs) = (lhs.sqrt(), nu.powi(2 * k as i32) * rhs.sqrt());
                b.record(id, nu, lhs, rhs, scale);
                if outside == 0.0 && scale > 0.0 {
                    corollary = corollary.max(lhs / (nu.powi(2 * k as i32) * omega));
                }
            }
        }
        b.constant("bandlimited_modulus_ratio", corollary);
        b.at_most("bandlimited_modulus_bound", corollary, c_sym * (1.0 + BOUND_SLACK));
        Ok(PendingReport { builder: b, bound: c_sym }.finish_with_bound())
    }

    /// `c₁ Ω_m(f, δ) ≤ K_m(f, δ^{2m}) ≤ c₂ Ω_m(f, δ)` via the certified
    /// bracket of the quadratic K-functional.
    ///
    /// The upper side is checked against
    /// `C_up = 4 c_meas^{−m} + C_sym` at `ν = 1/δ`; the lower side against
    /// `2^{−m}/√2`, which follows from `Ω_m(f, δ) ≤ 2^m (‖f − g‖ + δ^{2m} ‖Δ_S^m g‖)`
    /// for every `g` together with `K ≤ √2 K₂`. That direct inequality is
    /// checked at `g = g*`, and random perturbations of `g*` must never
    /// undercut the lower end of the bracket.
    pub fn verify_equivalence(
        &mut self,
        family: &[Subject<'_>],
        delta_grid: &[f64],
        m: u32,
    ) -> Result<VerificationReport> {
        self.check_inputs(family, delta_grid)?;
        if m == 0 {
            return Err(Error::InvalidParameter("order must be ≥ 1".into()));
        }
        let nus: Vec<f64> = delta_grid.iter().map(|d| 1.0 / d).collect();
        let cells = self.nu_cells(&nus)?;
        let deltas: Vec<f64> = cells.iter().map(|c| c.1).collect();
        let mut b = ReportBuilder::new("equivalence");

        let mut c_up = 0.0f64;
        for &(nu, delta) in &cells {
            let c = self.cutoff_constant(nu)?;
            let s = self.symbol_quotient_bound(nu, m)?;
            let up = 4.0 * c.powi(-(m as i32)) + s;
            b.constant(format!("C_up(delta={delta})"), up);
            c_up = c_up.max(up);
        }
        b.constant("C_up", c_up);

        let floor = 0.5f64.powi(m as i32) / core::f64::consts::SQRT_2;
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed ^ 0x9e37_79b9_7f4a_7c15);
        let (mut min_lower, mut max_direct, mut min_gap) = (f64::INFINITY, 0.0f64, f64::INFINITY);
        for &(id, f) in family {
            let scale = f.norm();
            let omegas = self.modulus_sweep(f, &deltas, m)?;
            for (&delta, &omega) in deltas.iter().zip(&omegas) {
                let param = delta.powi(2 * m as i32);
                let bracket = k_functional_quadratic(&self.space, f, param, m)?;
                b.record(id, delta, bracket.upper, omega, scale);
                if omega <= super::report::ZERO_RHS * scale {
                    continue;
                }
                min_lower = min_lower.min(bracket.lower / omega);
                let objective = k_objective(&self.space, f, &bracket.minimizer, param, m)?;
                max_direct = max_direct.max(omega / (2f64.powi(m as i32) * objective));

                let amp = f.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
                for _ in 0..self.opts.trials {
                    let eps = 10f64.powf(rng.gen_range(-8.0..0.0));
                    let values = bracket
                        .minimizer
                        .values()
                        .iter()
                        .map(|g| g + eps * amp * rng.gen_range(-1.0..1.0))
                        .collect();
                    let g = SpectralFunction::new(f.grid().clone(), values)?;
                    let obj = k_objective(&self.space, f, &g, param, m)?;
                    min_gap = min_gap.min((obj - bracket.lower) / scale);
                }
            }
        }
        b.constant("min_lower_ratio", min_lower);
        b.constant("max_direct_ratio", max_direct);
        b.at_least("lower_ratio_floor", min_lower, floor * (1.0 - BOUND_SLACK));
        b.at_most("direct_modulus_bound", max_direct, 1.0 + 1e-9);
        if min_gap.is_finite() {
            b.constant("min_perturbation_gap", min_gap);
            b.at_least("bracket_not_undercut", min_gap, -1e-9);
        }
        Ok(PendingReport { builder: b, bound: c_up }.finish_with_bound())
    }
}

struct PendingReport {
    builder: ReportBuilder,
    bound: f64,
}

impl PendingReport {
    fn finish_with_bound(self) -> VerificationReport {
        self.builder.finish(self.bound)
    }
}
