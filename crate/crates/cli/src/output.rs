//! File formats: CSV tables, JSON containers for sampled functions and
//! verification reports, all written atomically.

use std::io::Write;
use std::path::Path;

use harmonic_na_core::approx::{Direction, VerificationReport};
use harmonic_na_core::transform::{RadialFunction, SpectralFunction};
use serde::Serialize;

use crate::config::SpaceConfig;
use crate::error::CliError;

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Numbers are written in shortest round-trip scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

/// Comma-separated table with a header row and LF line endings.
pub fn csv_table<I>(header: &[&str], rows: I) -> Result<Vec<u8>, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::io("<csv buffer>", std::io::Error::other(e));
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    w.into_inner().map_err(|e| CliError::io("<csv buffer>", std::io::Error::other(e.to_string())))
}

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("report types are serializable");
    v.push(b'\n');
    v
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridDescriptor<'a> {
    Radial { t_max: f64, n: usize, nodes: &'a [f64], weights: &'a [f64] },
    Spectral { lambda_max: f64, n: usize, inversion_constant: f64, nodes: &'a [f64], weights: &'a [f64] },
}

/// `{space, grid, values}` container for one sampled function.
#[derive(Debug, Serialize)]
pub struct FunctionContainer<'a> {
    pub space: SpaceConfig,
    pub grid: GridDescriptor<'a>,
    pub values: &'a [f64],
}

impl<'a> FunctionContainer<'a> {
    pub fn radial(space: SpaceConfig, f: &'a RadialFunction) -> Self {
        let g = f.grid();
        FunctionContainer {
            space,
            grid: GridDescriptor::Radial { t_max: g.t_max(), n: g.len(), nodes: g.nodes(), weights: g.weights() },
            values: f.values(),
        }
    }

    pub fn spectral(space: SpaceConfig, f: &'a SpectralFunction) -> Self {
        let g = f.grid();
        FunctionContainer {
            space,
            grid: GridDescriptor::Spectral {
                lambda_max: g.lambda_max(),
                n: g.len(),
                inversion_constant: g.inversion_constant(),
                nodes: g.nodes(),
                weights: g.weights(),
            },
            values: f.values(),
        }
    }

    /// `node,value` table.
    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let nodes = match &self.grid {
            GridDescriptor::Radial { nodes, .. } | GridDescriptor::Spectral { nodes, .. } => *nodes,
        };
        csv_table(&["node", "value"], nodes.iter().zip(self.values).map(|(n, v)| vec![num(*n), num(*v)]))
    }
}

#[derive(Debug, Serialize)]
pub struct RecordJson<'a> {
    pub function_id: &'a str,
    pub parameter: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct CheckJson<'a> {
    pub name: &'a str,
    pub value: f64,
    pub bound: f64,
    pub direction: &'static str,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ReportJson<'a> {
    pub theorem_id: &'a str,
    pub pass: bool,
    pub measured_constant: f64,
    pub bound: f64,
    pub skipped: usize,
    pub constants: Vec<(&'a str, f64)>,
    pub checks: Vec<CheckJson<'a>>,
    pub records: Vec<RecordJson<'a>>,
}

impl<'a> From<&'a VerificationReport> for ReportJson<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportJson {
            theorem_id: &r.theorem_id,
            pass: r.pass,
            measured_constant: r.measured_constant,
            bound: r.bound,
            skipped: r.skipped,
            constants: r.constants.iter().map(|(k, v)| (k.as_str(), *v)).collect(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: &c.name,
                    value: c.value,
                    bound: c.bound,
                    direction: match c.direction {
                        Direction::AtMost => "at_most",
                        Direction::AtLeast => "at_least",
                    },
                    pass: c.pass,
                })
                .collect(),
            records: r
                .records
                .iter()
                .map(|x| RecordJson {
                    function_id: &x.function_id,
                    parameter: x.parameter,
                    lhs: x.lhs,
                    rhs: x.rhs,
                    ratio: x.ratio,
                })
                .collect(),
        }
    }
}

/// One theorem's file: every order swept, plus the overall verdict.
#[derive(Debug, Serialize)]
pub struct TheoremJson<'a> {
    pub theorem: &'a str,
    pub pass: bool,
    pub seed: u64,
    pub reports: Vec<ReportJson<'a>>,
}

pub const REPORT_HEADER: [&str; 6] = ["theorem_id", "function_id", "parameter", "lhs", "rhs", "ratio"];

/// Rows of all reports, in report order.
pub fn report_csv(reports: &[VerificationReport]) -> Result<Vec<u8>, CliError> {
    let rows = reports.iter().flat_map(|r| {
        r.records.iter().map(move |x| {
            vec![r.theorem_id.clone(), x.function_id.clone(), num(x.parameter), num(x.lhs), num(x.rhs), num(x.ratio)]
        })
    });
    csv_table(&REPORT_HEADER, rows)
}
