use std::path::{Path, PathBuf};

use harmonic_na_core::approx::{verify_lemmas, VerificationReport, Verifier, VerifyOptions};
use harmonic_na_core::family::{build, subjects, Member};
use harmonic_na_core::special::{plancherel_density, spherical_phi_table, volume_density};
use harmonic_na_core::transform::{make_grids, Transform};
use harmonic_na_core::DamekRicciSpace;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{csv_table, json_bytes, num, report_csv, write_atomic, FunctionContainer, ReportJson, TheoremJson};

/// Roundtrip error and Plancherel defect above this fail `roundtrip`.
pub const ROUNDTRIP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalTarget {
    Phi,
    Density,
    Volume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Theorem {
    Lemmas,
    Jackson,
    JacksonSobolev,
    NikolskiiStechkin,
    Equivalence,
    All,
}

impl Theorem {
    pub const EACH: [Theorem; 5] =
        [Theorem::Lemmas, Theorem::Jackson, Theorem::JacksonSobolev, Theorem::NikolskiiStechkin, Theorem::Equivalence];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Lemmas => "lemmas",
            Theorem::Jackson => "jackson",
            Theorem::JacksonSobolev => "jackson_sobolev",
            Theorem::NikolskiiStechkin => "nikolskii_stechkin",
            Theorem::Equivalence => "equivalence",
            Theorem::All => "all",
        }
    }
}

/// Transform and family for one configuration.
pub struct Context {
    pub space: DamekRicciSpace,
    pub transform: Transform,
    pub members: Vec<Member>,
}

impl Context {
    pub fn new(config: &RunConfig) -> Result<Self, CliError> {
        let space = config.space();
        let g = &config.grids;
        let acc = config.accuracy();
        let (rg, sg) = make_grids(&space, g.t_max, g.n_t, g.lambda_max, g.n_lambda, &acc)?;
        let transform = Transform::new(space, rg, sg, &acc)?;
        let members = build(&transform, &config.family_specs())?;
        Ok(Context { space, transform, members })
    }
}

fn equispaced(max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| max * i as f64 / (n - 1) as f64).collect()
}

/// Samples `φ_λ(t)`, the Plancherel density or the volume density on
/// equispaced points of the configured windows, endpoints included.
pub fn cmd_eval(config: &RunConfig, target: EvalTarget, out_dir: &Path) -> Result<PathBuf, CliError> {
    let space = config.space();
    let lambdas = equispaced(config.grids.lambda_max, config.eval.n_lambda);
    let ts = equispaced(config.grids.t_max, config.eval.n_t);
    let bytes = match target {
        EvalTarget::Phi => {
            let table = spherical_phi_table(&space, &lambdas, &ts, &config.accuracy())?;
            let (table, ts) = (&table, &ts);
            let rows = lambdas.iter().enumerate().flat_map(|(i, &l)| {
                ts.iter().enumerate().map(move |(j, &t)| vec![num(l), num(t), num(table[i * ts.len() + j])])
            });
            csv_table(&["lambda", "t", "value"], rows)?
        }
        EvalTarget::Density => csv_table(
            &["lambda", "value"],
            lambdas.iter().map(|&l| vec![num(l), num(plancherel_density(&space, l))]),
        )?,
        EvalTarget::Volume => {
            csv_table(&["t", "value"], ts.iter().map(|&t| vec![num(t), num(volume_density(&space, t))]))?
        }
    };
    let name = match target {
        EvalTarget::Phi => "eval_phi.csv",
        EvalTarget::Density => "eval_density.csv",
        EvalTarget::Volume => "eval_volume.csv",
    };
    let path = out_dir.join(name);
    write_atomic(&path, &bytes)?;
    Ok(path)
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub pass: bool,
    pub files: Vec<PathBuf>,
    /// `(theorem, pass)` per theorem run.
    pub verdicts: Vec<(&'static str, bool)>,
}

fn relabel(mut r: VerificationReport, id: String) -> VerificationReport {
    r.theorem_id = id;
    r
}

/// Runs one theorem over every configured order.
fn theorem_reports(
    theorem: Theorem,
    config: &RunConfig,
    state: &mut Option<(Context, Verifier)>,
) -> Result<Vec<VerificationReport>, CliError> {
    if theorem == Theorem::Lemmas {
        return Ok(vec![verify_lemmas(&config.space(), &config.accuracy())?]);
    }
    // the transform is only needed once a family is involved
    if state.is_none() {
        let ctx = Context::new(config)?;
        let opts = VerifyOptions { seed: config.seed, ..VerifyOptions::default() };
        let verifier = Verifier::new(ctx.space, ctx.transform.spectral_grid().clone(), opts)?;
        *state = Some((ctx, verifier));
    }
    let (ctx, verifier) = state.as_mut().expect("initialized above");
    let family = subjects(&ctx.members);
    let s = &config.sweeps;
    let mut out = Vec::new();
    match theorem {
        Theorem::Lemmas => unreachable!("handled above"),
        Theorem::Jackson => {
            for &k in &s.k {
                out.push(relabel(verifier.verify_jackson(&family, &s.nu_grid, k)?, format!("jackson_k{k}")));
            }
        }
        Theorem::JacksonSobolev => {
            for &k in &s.k {
                for &r in &s.r {
                    let rep = verifier.verify_jackson_sobolev(&family, &s.nu_grid, k, r)?;
                    out.push(relabel(rep, format!("jackson_sobolev_k{k}_r{r}")));
                }
            }
        }
        Theorem::NikolskiiStechkin => {
            for &k in &s.k {
                let rep = verifier.verify_nikolskii_stechkin(&family, &s.nu_grid, k)?;
                out.push(relabel(rep, format!("nikolskii_stechkin_k{k}")));
            }
        }
        Theorem::Equivalence => {
            for &m in &s.m_order {
                let rep = verifier.verify_equivalence(&family, &s.delta_grid, m)?;
                out.push(relabel(rep, format!("equivalence_m{m}")));
            }
        }
        Theorem::All => unreachable!("expanded by the caller"),
    }
    Ok(out)
}

/// Writes `<theorem>.csv` and `<theorem>.json` for each requested theorem.
pub fn cmd_verify(config: &RunConfig, theorem: Theorem, out_dir: &Path) -> Result<VerifyOutcome, CliError> {
    let theorems: Vec<Theorem> = if theorem == Theorem::All { Theorem::EACH.to_vec() } else { vec![theorem] };
    let mut state = None;
    let mut outcome = VerifyOutcome { pass: true, files: Vec::new(), verdicts: Vec::new() };
    for th in theorems {
        let reports = theorem_reports(th, config, &mut state)?;
        let pass = reports.iter().all(|r| r.pass);
        let json = TheoremJson {
            theorem: th.name(),
            pass,
            seed: config.seed,
            reports: reports.iter().map(ReportJson::from).collect(),
        };
        let csv_path = out_dir.join(format!("{}.csv", th.name()));
        let json_path = out_dir.join(format!("{}.json", th.name()));
        write_atomic(&csv_path, &report_csv(&reports)?)?;
        write_atomic(&json_path, &json_bytes(&json))?;
        outcome.files.extend([csv_path, json_path]);
        outcome.verdicts.push((th.name(), pass));
        outcome.pass &= pass;
    }
    Ok(outcome)
}

#[derive(Debug)]
pub struct RoundtripOutcome {
    pub pass: bool,
    pub files: Vec<PathBuf>,
}

/// Writes `roundtrip.csv` with one row per family member and, with
/// `dump_family`, JSON and CSV containers of both sides of every member.
pub fn cmd_roundtrip(config: &RunConfig, out_dir: &Path, dump_family: bool) -> Result<RoundtripOutcome, CliError> {
    let ctx = Context::new(config)?;
    let mut rows = Vec::with_capacity(ctx.members.len());
    let mut pass = true;
    for m in &ctx.members {
        let d = m.diagnostics(&ctx.transform)?;
        pass &= d.roundtrip <= ROUNDTRIP_TOL && d.plancherel_defect <= ROUNDTRIP_TOL;
        rows.push(vec![m.id.clone(), num(d.roundtrip), num(d.plancherel_defect), num(d.norm_time), num(d.norm_spectral)]);
    }
    let header = ["member_id", "roundtrip_error", "plancherel_defect", "norm_time", "norm_spectral"];
    let path = out_dir.join("roundtrip.csv");
    write_atomic(&path, &csv_table(&header, rows)?)?;
    let mut files = vec![path];

    if dump_family {
        let dir = out_dir.join("family");
        for m in &ctx.members {
            let time = FunctionContainer::radial(config.space, &m.time);
            let spectrum = FunctionContainer::spectral(config.space, &m.spectrum);
            for (side, c) in [("time", time), ("spectrum", spectrum)] {
                let json = dir.join(format!("{}.{side}.json", m.id));
                let csv = dir.join(format!("{}.{side}.csv", m.id));
                write_atomic(&json, &json_bytes(&c))?;
                write_atomic(&csv, &c.to_csv()?)?;
                files.extend([json, csv]);
            }
        }
    }
    Ok(RoundtripOutcome { pass, files })
}
