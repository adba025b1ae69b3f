//! Machine-readable experiment reports and raw-data tables.
//!
//! The JSON report echoes the config, lists one entry per check with the
//! measured value, the bound or expectation, the applied tolerance, the
//! stderr when the quantity is statistical, and a verdict. Raw per-trial
//! data goes to CSV with a fixed column order and every float printed with
//! 17 significant digits, so identical configs reproduce byte-identical
//! tables regardless of worker count.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Unit tag of a check's numeric fields; entropy-like quantities convert
/// to bits on request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Nats,
    Power,
    Dimensionless,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub unit: Unit,
    pub verdict: Verdict,
}

impl Check {
    /// Pass iff `measured ≤ expected + tolerance`.
    pub fn upper_bound(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64, stderr: Option<f64>, unit: Unit) -> Self {
        Self {
            name: name.into(),
            measured,
            expected: bound,
            tolerance,
            stderr,
            unit,
            verdict: if measured <= bound + tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    /// Pass iff `measured ≥ expected − tolerance`.
    pub fn lower_bound(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64, stderr: Option<f64>, unit: Unit) -> Self {
        Self {
            name: name.into(),
            measured,
            expected: bound,
            tolerance,
            stderr,
            unit,
            verdict: if measured >= bound - tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    /// Pass iff `|measured − expected| ≤ tolerance`.
    pub fn close_to(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64, stderr: Option<f64>, unit: Unit) -> Self {
        Self {
            name: name.into(),
            measured,
            expected,
            tolerance,
            stderr,
            unit,
            verdict: if (measured - expected).abs() <= tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    pub fn boolean(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            measured: if holds { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
            stderr: None,
            unit: Unit::Dimensionless,
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        }
    }

    fn to_bits(&self) -> Self {
        let mut out = self.clone();
        if self.unit == Unit::Nats {
            let c = std::f64::consts::LN_2;
            out.measured /= c;
            out.expected /= c;
            out.tolerance /= c;
            out.stderr = out.stderr.map(|s| s / c);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    /// "nats" or "bits"; applies to every check tagged `Unit::Nats`.
    pub units: String,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub duration_secs: f64,
    pub seed_provenance: String,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig, checks: Vec<Check>, duration_secs: f64) -> Self {
        let passed = checks.iter().all(|c| c.verdict != Verdict::Fail);
        Self {
            experiment: config.experiment.token().to_string(),
            config: config.clone(),
            units: "nats".into(),
            checks,
            passed,
            duration_secs,
            seed_provenance: format!(
                "master_seed={}; per-trial stream = chacha8(splitmix64(master_seed, trial_index))",
                config.master_seed
            ),
        }
    }

    /// Convert every entropy-like check to bits.
    pub fn in_bits(&self) -> Self {
        let mut out = self.clone();
        out.units = "bits".into();
        out.checks = self.checks.iter().map(Check::to_bits).collect();
        out
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let verdict = match c.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "skipped",
                };
                let stderr = c
                    .stderr
                    .map(|s| format!(" ± {s:.3e}"))
                    .unwrap_or_default();
                format!(
                    "  {:<42} measured {:>13.6e}{} vs {:>13.6e} (tol {:.2e}) … {}",
                    c.name, c.measured, stderr, c.expected, c.tolerance, verdict
                )
            })
            .collect();
        lines.push(format!(
            "  {} checks, {} — {:.2}s",
            self.checks.len(),
            if self.passed { "all pass" } else { "FAILURES" },
            self.duration_secs
        ));
        lines
    }
}

/// Raw per-trial values with a fixed column order.
#[derive(Debug, Clone, Default)]
pub struct RawTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// 17-significant-digit float formatting used for every CSV value.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

impl RawTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Write `<base>.report.json` and `<base>.raw.csv`, creating parents.
pub fn write_outputs(
    report: &ExperimentReport,
    raw: &RawTable,
    base: &Path,
) -> std::io::Result<(PathBuf, PathBuf)> {
    if let Some(parent) = base.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let json_path = base.with_extension("report.json");
    let csv_path = base.with_extension("raw.csv");
    let mut f = std::fs::File::create(&json_path)?;
    serde_json::to_writer_pretty(&mut f, report)?;
    f.write_all(b"\n")?;
    std::fs::write(&csv_path, raw.to_csv())?;
    Ok((json_path, csv_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_round_trips_doubles() {
        for v in [1.25, std::f64::consts::PI, 1e-300, -0.1, 123456789.123456789] {
            let s = fmt_g17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(v, back, "{s}");
        }
    }

    #[test]
    fn bits_conversion_rescales_nats_checks_only() {
        let nats = Check::close_to("h", 2.0, 2.1, 0.2, Some(0.05), Unit::Nats);
        let power = Check::close_to("p", 2.0, 2.1, 0.2, None, Unit::Power);
        let b = nats.to_bits();
        assert!((b.measured - 2.0 / std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(power.to_bits().measured, 2.0);
    }
}
