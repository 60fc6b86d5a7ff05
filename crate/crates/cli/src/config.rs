//! Run configuration: a single JSON document with embedded defaults.

use std::path::{Path, PathBuf};

use harmonic_na_core::family::{default_specs, MemberSpec};
use harmonic_na_core::special::EvalAccuracy;
use harmonic_na_core::DamekRicciSpace;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable that overrides `output_dir` (but not `--out`).
pub const OUT_DIR_ENV: &str = "HARMONIC_NA_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub space: SpaceConfig,
    pub grids: GridConfig,
    /// Family members; `null` or an absent key selects the default family
    /// of `space`.
    #[serde(default)]
    pub family: Option<Vec<FamilyMember>>,
    pub sweeps: SweepConfig,
    pub eval: EvalConfig,
    pub output_dir: PathBuf,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub m: i64,
    pub l: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t_max: f64,
    pub n_t: usize,
    pub lambda_max: f64,
    pub n_lambda: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyMember {
    GaussianSpectrum { a: f64 },
    Bump { nu0: f64, taper: f64 },
    PolynomialDecay { s: f64, kappa: f64 },
    TimeGaussian { b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Band limits for the Jackson-type and Nikolskii–Stechkin checks.
    pub nu_grid: Vec<f64>,
    /// Radii for the K-functional equivalence.
    pub delta_grid: Vec<f64>,
    /// Modulus orders.
    pub k: Vec<u32>,
    /// Laplacian orders of the K-functional.
    pub m_order: Vec<u32>,
    /// Sobolev smoothness orders.
    pub r: Vec<u32>,
}

/// Equispaced sample counts for `eval`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvalConfig {
    pub n_lambda: usize,
    pub n_t: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let space = SpaceConfig { m: 2, l: 1 };
        let family = DamekRicciSpace::new(space.m, space.l)
            .map(|s| default_specs(&s).into_iter().map(FamilyMember::from).collect())
            .ok();
        RunConfig {
            space,
            grids: GridConfig::default(),
            family,
            sweeps: SweepConfig::default(),
            eval: EvalConfig::default(),
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig { m: 2, l: 1 }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { t_max: 10.0, n_t: 2048, lambda_max: 64.0, n_lambda: 4096 }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            nu_grid: vec![4.0, 8.0, 16.0, 32.0],
            delta_grid: vec![1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0],
            k: vec![1, 2],
            m_order: vec![1, 2],
            r: vec![1],
        }
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { n_lambda: 65, n_t: 65 }
    }
}

impl From<MemberSpec> for FamilyMember {
    fn from(spec: MemberSpec) -> Self {
        match spec {
            MemberSpec::GaussianSpectrum { a } => FamilyMember::GaussianSpectrum { a },
            MemberSpec::Bump { nu0, taper } => FamilyMember::Bump { nu0, taper },
            MemberSpec::PolynomialDecay { s, kappa } => FamilyMember::PolynomialDecay { s, kappa },
            MemberSpec::TimeGaussian { b } => FamilyMember::TimeGaussian { b },
        }
    }
}

impl From<FamilyMember> for MemberSpec {
    fn from(m: FamilyMember) -> Self {
        match m {
            FamilyMember::GaussianSpectrum { a } => MemberSpec::GaussianSpectrum { a },
            FamilyMember::Bump { nu0, taper } => MemberSpec::Bump { nu0, taper },
            FamilyMember::PolynomialDecay { s, kappa } => MemberSpec::PolynomialDecay { s, kappa },
            FamilyMember::TimeGaussian { b } => MemberSpec::TimeGaussian { b },
        }
    }
}

impl RunConfig {
    /// Parses a config document. `source` is used only in messages.
    pub fn from_json(text: &str, source: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| {
            CliError::Config(format!("{source}:{}:{}: {e}", e.line(), e.column()))
        })?;
        config.validate().map_err(|(field, msg)| {
            let location = locate_key(text, field).map(|l| format!("{source}:{l}: ")).unwrap_or_default();
            CliError::Config(format!("{location}{field}: {msg}"))
        })?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config is always serializable");
        s.push('\n');
        s
    }

    pub fn space(&self) -> DamekRicciSpace {
        DamekRicciSpace::new(self.space.m, self.space.l).expect("validated config")
    }

    /// Family specs, falling back to the default family of the space.
    pub fn family_specs(&self) -> Vec<MemberSpec> {
        match &self.family {
            Some(list) => list.iter().map(|&m| m.into()).collect(),
            None => default_specs(&self.space()),
        }
    }

    pub fn accuracy(&self) -> EvalAccuracy {
        EvalAccuracy::default()
    }

    /// Checks every parameter against the preconditions of the module it
    /// feeds. Returns the offending field path and a message.
    pub fn validate(&self) -> Result<(), (&'static str, String)> {
        let space = DamekRicciSpace::new(self.space.m, self.space.l).map_err(|e| ("space", e.to_string()))?;

        let g = &self.grids;
        if !(g.t_max > 0.0 && g.t_max.is_finite()) {
            return Err(("t_max", format!("must be positive and finite, got {}", g.t_max)));
        }
        if !(g.lambda_max > 0.0 && g.lambda_max.is_finite()) {
            return Err(("lambda_max", format!("must be positive and finite, got {}", g.lambda_max)));
        }
        if g.n_t < 16 {
            return Err(("n_t", format!("needs at least 16 nodes, got {}", g.n_t)));
        }
        if g.n_lambda < 16 {
            return Err(("n_lambda", format!("needs at least 16 nodes, got {}", g.n_lambda)));
        }

        if let Some(list) = &self.family {
            for m in list {
                MemberSpec::from(*m).validate(&space).map_err(|e| ("family", e.to_string()))?;
            }
        }

        let s = &self.sweeps;
        let lmax = g.lambda_max;
        if s.nu_grid.is_empty() {
            return Err(("nu_grid", "must not be empty".into()));
        }
        if let Some(nu) = s.nu_grid.iter().find(|&&nu| !(nu > 0.0 && nu <= lmax)) {
            return Err(("nu_grid", format!("band limit {nu} outside (0, {lmax}]")));
        }
        if s.delta_grid.is_empty() {
            return Err(("delta_grid", "must not be empty".into()));
        }
        if let Some(d) = s.delta_grid.iter().find(|&&d| !(d > 0.0 && d.is_finite() && 1.0 / d <= lmax)) {
            return Err(("delta_grid", format!("radius {d} outside [1/{lmax}, ∞)")));
        }
        for (field, orders) in [("k", &s.k), ("m_order", &s.m_order)] {
            if orders.is_empty() || orders.contains(&0) {
                return Err((field, format!("orders must be a non-empty list of integers ≥ 1, got {orders:?}")));
            }
        }
        if s.r.is_empty() {
            return Err(("r", "must not be empty".into()));
        }
        if self.eval.n_lambda < 2 || self.eval.n_t < 2 {
            return Err(("eval", format!("needs at least 2 samples per axis, got {:?}", self.eval)));
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(("output_dir", "must not be empty".into()));
        }
        Ok(())
    }
}

/// 1-based line of the first occurrence of `"key"` in the document.
fn locate_key(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_roundtrips_through_json() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_json(&c.to_json(), "default").unwrap(), c);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn partial_documents_take_defaults() {
        let c = RunConfig::from_json(r#"{"space": {"m": 4, "l": 3}, "seed": 9}"#, "x").unwrap();
        assert_eq!(c.grids, GridConfig::default());
        assert_eq!(c.seed, 9);
        // family falls back to the default of the configured space
        assert_eq!(c.family_specs(), default_specs(&DamekRicciSpace::new(4, 3).unwrap()));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "{\n  \"grids\": {\n    \"t_max\": 10.0,\n    \"n_t\": 0,\n    \"lambda_max\": 64.0,\n    \"n_lambda\": 64\n  }\n}";
        let err = RunConfig::from_json(text, "cfg.json").unwrap_err().to_string();
        assert!(err.contains("cfg.json:4:") && err.contains("n_t"), "{err}");

        let err = RunConfig::from_json("{\n  \"seed\": \"x\"\n}", "cfg.json").unwrap_err().to_string();
        assert!(err.contains("cfg.json:2:"), "{err}");

        let err = RunConfig::from_json(r#"{"bogus": 1}"#, "cfg.json").unwrap_err().to_string();
        assert!(err.contains("bogus"), "{err}");
    }

    #[test]
    fn rejects_out_of_range_sweeps() {
        let mut c = RunConfig::default();
        c.sweeps.nu_grid = vec![128.0];
        assert_eq!(c.validate().unwrap_err().0, "nu_grid");
        let mut c = RunConfig::default();
        c.sweeps.k = vec![0];
        assert_eq!(c.validate().unwrap_err().0, "k");
        let c = RunConfig {
            family: Some(vec![FamilyMember::PolynomialDecay { s: 1.0, kappa: 1.0 }]),
            ..RunConfig::default()
        };
        assert_eq!(c.validate().unwrap_err().0, "family");
        let mut c = RunConfig::default();
        c.space.m = 3;
        assert_eq!(c.validate().unwrap_err().0, "space");
    }
}
