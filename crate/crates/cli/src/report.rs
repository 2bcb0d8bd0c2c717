//! Machine-readable run reports: named check records with provenance tags,
//! data tables, and deterministic CSV/JSON emission.

use serde::{Deserialize, Serialize};
use std::fmt;
use xxcorr_core::BigRational;

/// Where a check's expected value comes from: a number printed in the
/// source material, a tautology that can only fail on implementation rot,
/// or a derived numeric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Published,
    Identity,
    Computed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Identity => "identity",
            Provenance::Computed => "computed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub pass: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub tables: Vec<Table>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            tables: Vec::new(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push_check(&mut self, record: CheckRecord) {
        self.summary.total += 1;
        if record.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.checks.push(record);
    }

    pub fn push_table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str("command,version\n");
        s.push_str(&format!("{},{}\n", self.command, self.version));
        for t in &self.tables {
            s.push('\n');
            s.push_str(&format!("table,{}\n", t.name));
            s.push_str(&t.columns.join(","));
            s.push('\n');
            for row in &t.rows {
                s.push_str(&row.join(","));
                s.push('\n');
            }
        }
        if !self.checks.is_empty() {
            s.push_str("\nname,expected,actual,tolerance,pass,provenance\n");
            for c in &self.checks {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.name, c.expected, c.actual, c.tolerance, c.pass, c.provenance
                ));
            }
        }
        s.push_str("\ntotal,passed,failed\n");
        s.push_str(&format!(
            "{},{},{}\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        s
    }
}

/// 17 significant digits; enough to round-trip any f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Always "numer/denom", even for integers, so the column parses uniformly.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Scientific form of sign * exp(ln_mag), valid far outside the f64 range.
pub fn fmt_log_float(sign: f64, ln_mag: f64) -> String {
    if sign == 0.0 {
        return fmt_float(0.0);
    }
    let ln10 = std::f64::consts::LN_10;
    let mut e10 = (ln_mag / ln10).floor();
    let mut mant = (ln_mag - e10 * ln10).exp();
    if mant >= 10.0 {
        mant /= 10.0;
        e10 += 1.0;
    }
    format!("{}{:.16}e{}", if sign < 0.0 { "-" } else { "" }, mant, e10 as i64)
}

/// Named tolerance overrides from repeated `--tol NAME=VALUE` flags.
#[derive(Debug, Default)]
pub struct Tolerances(Vec<(String, f64)>);

impl Tolerances {
    pub fn parse(args: &[String]) -> Result<Self, String> {
        let mut out = Vec::with_capacity(args.len());
        for a in args {
            let (name, value) = a
                .split_once('=')
                .ok_or_else(|| format!("--tol expects NAME=VALUE, got '{a}'"))?;
            let v: f64 = value.parse().map_err(|_| format!("--tol {name}: bad value '{value}'"))?;
            if !(v > 0.0) {
                return Err(format!("--tol {name}: tolerance must be positive"));
            }
            out.push((name.to_string(), v));
        }
        Ok(Tolerances(out))
    }

    fn resolve(&self, name: &str, literal: &str, value: f64) -> (String, f64) {
        match self.0.iter().find(|(n, _)| n == name) {
            Some((_, v)) => (fmt_float(*v), *v),
            None => (literal.to_string(), value),
        }
    }

    /// Override names that match none of the emitted checks are typos.
    pub fn unknown_names(&self, checks: &[CheckRecord]) -> Vec<String> {
        self.0
            .iter()
            .map(|(n, _)| n.clone())
            .filter(|n| !checks.iter().any(|c| &c.name == n))
            .collect()
    }

    pub fn check_abs(
        &self,
        name: &str,
        expected_literal: &str,
        expected: f64,
        actual: f64,
        tol_literal: &str,
        tol: f64,
        provenance: Provenance,
    ) -> CheckRecord {
        let (tolerance, tol) = self.resolve(name, tol_literal, tol);
        CheckRecord {
            name: name.to_string(),
            expected: expected_literal.to_string(),
            actual: fmt_float(actual),
            tolerance,
            pass: (actual - expected).abs() <= tol,
            provenance,
        }
    }

    pub fn check_rel(
        &self,
        name: &str,
        expected: f64,
        actual: f64,
        tol_literal: &str,
        tol: f64,
        provenance: Provenance,
    ) -> CheckRecord {
        let (tolerance, tol) = self.resolve(name, tol_literal, tol);
        CheckRecord {
            name: name.to_string(),
            expected: fmt_float(expected),
            actual: fmt_float(actual),
            tolerance,
            pass: (actual - expected).abs() <= tol * expected.abs(),
            provenance,
        }
    }
}

/// Exact string comparison; used for rational and boolean checks.
pub fn check_exact(name: &str, expected: &str, actual: &str, provenance: Provenance) -> CheckRecord {
    CheckRecord {
        name: name.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        tolerance: "0".to_string(),
        pass: expected == actual,
        provenance,
    }
}
