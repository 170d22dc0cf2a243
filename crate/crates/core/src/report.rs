//! Check results and their lossless JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::linalg::{ComplexMatrix, C64};

/// Whether a check's value must stay below or above its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    /// Row-major `[re, im]` pairs.
    pub entries: Vec<[f64; 2]>,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, m: &ComplexMatrix) -> Self {
        let mut entries = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                entries.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        NamedMatrix {
            name: name.into(),
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Option<ComplexMatrix> {
        (self.entries.len() == self.rows * self.cols).then(|| {
            ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
                let [re, im] = self.entries[i * self.cols + j];
                C64::new(re, im)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub check: String,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(deserialize_with = "nullable")]
    pub value: f64,
    #[serde(deserialize_with = "nullable")]
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    #[serde(default)]
    pub detail: Option<String>,
    #[serde(default)]
    pub matrices: Vec<NamedMatrix>,
}

impl CheckResult {
    /// `value ≤ tolerance`.
    pub fn upper(check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckResult {
            check: check.into(),
            point: None,
            value,
            tolerance,
            bound: Bound::Upper,
            pass: value <= tolerance,
            detail: None,
            matrices: Vec::new(),
        }
    }

    /// `value ≥ tolerance`.
    pub fn lower(check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckResult {
            bound: Bound::Lower,
            pass: value >= tolerance,
            ..CheckResult::upper(check, value, tolerance)
        }
    }

    /// A boolean outcome, recorded as `0` (pass) or `1` against tolerance `0`.
    pub fn flag(check: impl Into<String>, ok: bool) -> Self {
        CheckResult::upper(check, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn at(mut self, point: impl ToString) -> Self {
        self.point = Some(point.to_string());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_matrices(mut self, matrices: Vec<NamedMatrix>) -> Self {
        self.matrices = matrices;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub results: Vec<CheckResult>,
    #[serde(deserialize_with = "nullable")]
    pub max_violation: f64,
    pub pass: bool,
}

/// Reads `null` back as NaN, the inverse of [`float`].
fn nullable<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl Report {
    /// Collects results; `max_violation` is the largest value among
    /// upper-bounded checks.
    pub fn new(
        command: impl Into<String>,
        config: BTreeMap<String, String>,
        results: Vec<CheckResult>,
    ) -> Self {
        let max_violation = results
            .iter()
            .filter(|r| r.bound == Bound::Upper)
            .map(|r| r.value)
            .fold(0.0, f64::max);
        let pass = results.iter().all(|r| r.pass);
        Report {
            command: command.into(),
            config,
            results,
            max_violation,
            pass,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Canonical JSON: fixed key order, two-space indentation, every float
    /// with 17 significant digits.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"command\": {},", string(&self.command));
        if self.config.is_empty() {
            s.push_str("  \"config\": {},\n");
        } else {
            s.push_str("  \"config\": {\n");
            let n = self.config.len();
            for (k, (key, value)) in self.config.iter().enumerate() {
                let _ = writeln!(s, "    {}: {}{}", string(key), string(value), comma(k, n));
            }
            s.push_str("  },\n");
        }
        if self.results.is_empty() {
            s.push_str("  \"results\": [],\n");
        } else {
            s.push_str("  \"results\": [\n");
            let n = self.results.len();
            for (k, r) in self.results.iter().enumerate() {
                write_result(&mut s, r);
                let _ = writeln!(s, "{}", comma(k, n));
            }
            s.push_str("  ],\n");
        }
        let _ = writeln!(s, "  \"max_violation\": {},", float(self.max_violation));
        let _ = writeln!(s, "  \"pass\": {}", self.pass);
        s.push_str("}\n");
        s
    }

    /// One line per result.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let op = match r.bound {
                Bound::Upper => "<=",
                Bound::Lower => ">=",
            };
            let _ = write!(
                s,
                "{} {} = {:.3e} ({op} {:.1e})",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.value,
                r.tolerance
            );
            if let Some(p) = &r.point {
                let _ = write!(s, " at {p}");
            }
            if let Some(d) = &r.detail {
                let _ = write!(s, " [{d}]");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{}: {} checks, max violation {:.3e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.results.len(),
            self.max_violation
        );
        s
    }
}

fn comma(k: usize, n: usize) -> &'static str {
    if k + 1 < n {
        ","
    } else {
        ""
    }
}

fn string(v: &str) -> String {
    serde_json::to_string(v).expect("strings always serialize")
}

/// 17 significant digits; `null` for values JSON cannot hold.
fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

fn write_result(s: &mut String, r: &CheckResult) {
    s.push_str("    {\n");
    let _ = writeln!(s, "      \"check\": {},", string(&r.check));
    if let Some(p) = &r.point {
        let _ = writeln!(s, "      \"point\": {},", string(p));
    }
    let _ = writeln!(s, "      \"value\": {},", float(r.value));
    let _ = writeln!(s, "      \"tolerance\": {},", float(r.tolerance));
    let bound = match r.bound {
        Bound::Upper => "upper",
        Bound::Lower => "lower",
    };
    let _ = writeln!(s, "      \"bound\": \"{bound}\",");
    if let Some(d) = &r.detail {
        let _ = writeln!(s, "      \"detail\": {},", string(d));
    }
    if !r.matrices.is_empty() {
        s.push_str("      \"matrices\": [\n");
        let n = r.matrices.len();
        for (k, m) in r.matrices.iter().enumerate() {
            let entries: Vec<String> = m
                .entries
                .iter()
                .map(|[re, im]| format!("[{}, {}]", float(*re), float(*im)))
                .collect();
            let _ = writeln!(
                s,
                "        {{\"name\": {}, \"rows\": {}, \"cols\": {}, \"entries\": [{}]}}{}",
                string(&m.name),
                m.rows,
                m.cols,
                entries.join(", "),
                comma(k, n)
            );
        }
        s.push_str("      ],\n");
    }
    let _ = write!(s, "      \"pass\": {}\n    }}", r.pass);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, from_rows};

    fn sample() -> Report {
        let m = from_rows(
            2,
            2,
            &[
                c64(0.1, -0.0),
                c64(1.0 / 3.0, 2.0),
                c64(-1e-300, 0.0),
                c64(0.0, 1e300),
            ],
        );
        let mut config = BTreeMap::new();
        config.insert("suite".into(), "torus \"quoted\"".into());
        config.insert("grid".into(), "5".into());
        Report::new(
            "verify",
            config,
            vec![
                CheckResult::upper("a", 1e-17, 1e-8).at("DISK2(x=0.1, phi=0)"),
                CheckResult::lower("b", 0.25, 1e-3)
                    .with_detail("min")
                    .with_matrices(vec![NamedMatrix::new("a1", &m)]),
                CheckResult::flag("c", false),
            ],
        )
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let r = sample();
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn summary_fields() {
        let r = sample();
        assert!(!r.pass);
        assert_eq!(r.max_violation, 1.0);
        assert!(r.to_text().contains("FAIL c"));
        let empty = Report::new("report", BTreeMap::new(), vec![]);
        assert!(empty.pass);
        assert_eq!(
            Report::from_json(&empty.to_json()).unwrap().to_json(),
            empty.to_json()
        );
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = sample()
            .to_json()
            .replace("\"pass\": false\n}", "\"pass\": false, \"extra\": 1\n}");
        assert!(Report::from_json(&text).is_err());
    }

    #[test]
    fn matrices_survive() {
        let r = sample();
        let m = r.results[1].matrices[0].to_matrix().unwrap();
        assert_eq!(m[(0, 1)], c64(1.0 / 3.0, 2.0));
    }
}
