use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::stats::{MomentRow, Summary};
use crate::error::{Error, Result};

/// Statistics of one `(n, t)` ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub n: u64,
    pub t: f64,
    pub law: Option<crate::limit::LimitLaw>,
    pub summary: Summary,
    pub moments: Vec<MomentRow>,
    pub ks: Option<f64>,
    pub cf_distance: Option<f64>,
}

/// A computed constant or oracle value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleEntry {
    pub name: String,
    pub value: f64,
    /// Quadrature error estimate or Monte-Carlo standard error.
    pub error: f64,
    pub target: Option<f64>,
    pub detail: serde_json::Value,
}

impl OracleEntry {
    pub fn new(name: impl Into<String>, value: f64, error: f64, target: Option<f64>) -> Self {
        OracleEntry { name: name.into(), value, error, target, detail: serde_json::Value::Null }
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = serde_json::to_value(detail).unwrap_or(serde_json::Value::Null);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
    Within,
    IsTrue,
}

/// Pass/fail of one named check tied to an acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub check: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub note: String,
}

impl Verdict {
    pub fn at_most(criterion: &str, check: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::make(criterion, check, value <= threshold, value, threshold, Comparison::AtMost)
    }

    pub fn at_least(criterion: &str, check: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::make(criterion, check, value >= threshold, value, threshold, Comparison::AtLeast)
    }

    /// Relative error `|value − target| / |target| ≤ tol`.
    pub fn relative(criterion: &str, check: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        let rel = (value - target).abs() / target.abs();
        let mut v = Self::make(criterion, check, rel <= tol, rel, tol, Comparison::Within);
        v.note = format!("value {value:.6} vs target {target:.6}");
        v
    }

    pub fn holds(criterion: &str, check: impl Into<String>, ok: bool) -> Self {
        Self::make(criterion, check, ok, f64::from(u8::from(ok)), 1.0, Comparison::IsTrue)
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn make(
        criterion: &str,
        check: impl Into<String>,
        passed: bool,
        value: f64,
        threshold: f64,
        comparison: Comparison,
    ) -> Self {
        let passed = passed && !value.is_nan();
        Verdict {
            criterion: criterion.into(),
            check: check.into(),
            passed,
            value,
            threshold,
            comparison,
            note: String::new(),
        }
    }
}

/// Report of one experiment. Contains no timestamps, so equal configs give
/// byte-identical files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatReport {
    pub schema_version: u32,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub rows: Vec<Row>,
    pub oracles: Vec<OracleEntry>,
    pub verdicts: Vec<Verdict>,
    pub all_passed: bool,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of the CSV file.
pub const CSV_COLUMNS: [&str; 14] = [
    "experiment",
    "n",
    "t",
    "count",
    "mean",
    "mean_se",
    "std_dev",
    "second_moment",
    "second_moment_se",
    "kurtosis_ratio",
    "target_mean",
    "target_second_moment",
    "ks",
    "cf_distance",
];

impl StatReport {
    pub fn new(config: ExperimentConfig, rows: Vec<Row>, oracles: Vec<OracleEntry>, verdicts: Vec<Verdict>) -> Self {
        let all_passed = verdicts.iter().all(|v| v.passed);
        StatReport {
            schema_version: SCHEMA_VERSION,
            experiment: config.experiment.name().to_string(),
            config,
            rows,
            oracles,
            verdicts,
            all_passed,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = CSV_COLUMNS.join(",");
        out.push('\n');
        let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for r in &self.rows {
            let s = &r.summary;
            let _ = writeln!(
                out,
                "{},{},{:e},{},{:e},{:e},{:e},{:e},{:e},{:e},{},{},{},{}",
                self.experiment,
                r.n,
                r.t,
                s.count,
                s.mean,
                s.mean_se,
                s.std_dev,
                s.second_moment,
                s.second_moment_se,
                s.kurtosis_ratio,
                opt(r.law.map(|l| l.mean())),
                opt(r.law.map(|l| l.moment(2))),
                opt(r.ks),
                opt(r.cf_distance),
            );
        }
        out
    }

    /// Writes `<experiment>.json` and `<experiment>.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| Error::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let json = dir.join(format!("{}.json", self.experiment));
        let csv = dir.join(format!("{}.csv", self.experiment));
        std::fs::write(&json, self.to_json()? + "\n").map_err(io(&json))?;
        std::fs::write(&csv, self.to_csv()).map_err(io(&csv))?;
        Ok((json, csv))
    }

    pub fn failed(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}
