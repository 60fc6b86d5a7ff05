use alloc::string::String;
use alloc::vec::Vec;

/// Tolerance factor applied to every declared bound.
pub const BOUND_SLACK: f64 = 1e-6;

/// Rows whose right side is below this multiple of the function norm are
/// treated as `0/0` and skipped.
pub const ZERO_RHS: f64 = 1e-14;

/// A skipped row fails the report if its left side exceeds this multiple of
/// the function norm.
pub const ZERO_LHS: f64 = 1e-12;

/// One `(function, parameter)` cell of an inequality `lhs ≤ C · rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub function_id: String,
    pub parameter: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `value ≤ bound`
    AtMost,
    /// `value ≥ bound`
    AtLeast,
}

/// A named scalar assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub direction: Direction,
    pub pass: bool,
}

/// Outcome of one verifier run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theorem_id: String,
    /// Sorted by function id, then parameter.
    pub records: Vec<Record>,
    /// Rows skipped under the zero-denominator policy.
    pub skipped: usize,
    /// Largest ratio over all records (0 if there are none).
    pub measured_constant: f64,
    /// Declared bound on `measured_constant`, before slack.
    pub bound: f64,
    /// Measured constants in insertion order.
    pub constants: Vec<(String, f64)>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub(crate) struct ReportBuilder {
    theorem_id: String,
    records: Vec<Record>,
    skipped: usize,
    zero_rows_bad: usize,
    constants: Vec<(String, f64)>,
    checks: Vec<Check>,
}

impl ReportBuilder {
    pub fn new(theorem_id: &str) -> Self {
        ReportBuilder {
            theorem_id: theorem_id.into(),
            records: Vec::new(),
            skipped: 0,
            zero_rows_bad: 0,
            constants: Vec::new(),
            checks: Vec::new(),
        }
    }

    /// Adds a row unless `rhs` is negligible relative to `scale`.
    pub fn record(&mut self, function_id: &str, parameter: f64, lhs: f64, rhs: f64, scale: f64) {
        if rhs <= ZERO_RHS * scale {
            self.skipped += 1;
            if lhs > ZERO_LHS * scale {
                self.zero_rows_bad += 1;
            }
            return;
        }
        self.records.push(Record { function_id: function_id.into(), parameter, lhs, rhs, ratio: lhs / rhs });
    }

    pub fn constant(&mut self, name: impl Into<String>, value: f64) {
        self.constants.push((name.into(), value));
    }

    pub fn at_most(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let pass = value <= bound;
        self.checks.push(Check { name: name.into(), value, bound, direction: Direction::AtMost, pass });
    }

    pub fn at_least(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        let pass = value >= bound;
        self.checks.push(Check { name: name.into(), value, bound, direction: Direction::AtLeast, pass });
    }

    /// Finalizes with the main check `max ratio ≤ bound · (1 + slack)`.
    pub fn finish(mut self, bound: f64) -> VerificationReport {
        self.records.sort_by(|a, b| {
            a.function_id.cmp(&b.function_id).then(a.parameter.total_cmp(&b.parameter))
        });
        let measured = self.records.iter().fold(0.0f64, |m, r| m.max(r.ratio));
        let mut checks = Vec::with_capacity(self.checks.len() + 2);
        checks.push(Check {
            name: "max_ratio".into(),
            value: measured,
            bound: bound * (1.0 + BOUND_SLACK),
            direction: Direction::AtMost,
            pass: measured <= bound * (1.0 + BOUND_SLACK),
        });
        checks.push(Check {
            name: "zero_rhs_rows_with_nonzero_lhs".into(),
            value: self.zero_rows_bad as f64,
            bound: 0.0,
            direction: Direction::AtMost,
            pass: self.zero_rows_bad == 0,
        });
        checks.append(&mut self.checks);
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            theorem_id: self.theorem_id,
            records: self.records,
            skipped: self.skipped,
            measured_constant: measured,
            bound,
            constants: self.constants,
            checks,
            pass,
        }
    }
}
