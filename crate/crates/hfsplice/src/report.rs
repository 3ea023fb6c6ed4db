//! The machine-readable result of every command, and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::format::MatrixFile;
use crate::input::InputDigest;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub subject: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub values: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixFile>,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

/// Passing checks are listed one per line only up to this many checks.
const LIST_PASSING: usize = 40;

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report {
            command: command.to_vec(),
            inputs: Vec::new(),
            values: BTreeMap::new(),
            tables: Vec::new(),
            matrices: Vec::new(),
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.into(), value.into());
    }

    pub fn check(&mut self, subject: &str, name: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(CheckLine {
            subject: subject.into(),
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command.join(" "));
        for i in &self.inputs {
            let _ = writeln!(out, "input {} sha256:{}", i.source, i.sha256);
        }
        for (key, value) in &self.values {
            if let Some(v) = inline(value) {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
        for t in &self.tables {
            out.push('\n');
            render_table(&mut out, t);
        }
        for m in &self.matrices {
            let _ = writeln!(out, "\nmatrix {} ({} x {})", m.name, m.rows.len(), m.cols.len());
            for (r, c) in &m.entries {
                let _ = writeln!(out, "  {r} <- {c}");
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            let list_all = self.checks.len() <= LIST_PASSING;
            for c in self.checks.iter().filter(|c| list_all || !c.passed) {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = write!(out, "[{tag}] {}: {}", c.subject, c.name);
                if !c.detail.is_empty() {
                    let _ = write!(out, ": {}", c.detail);
                }
                out.push('\n');
            }
            let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(_) | Value::Bool(_) | Value::Null => Some(v.to_string()),
        _ => None,
    }
}

/// One-line text form of scalars, lists of scalars and lists of pairs.
/// Objects appear in the JSON output only.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    let parts: Option<Vec<String>> = items
        .iter()
        .map(|item| match item.as_array().map(Vec::as_slice) {
            Some([a, b]) => Some(format!("{}->{}", scalar(a)?, scalar(b)?)),
            _ => scalar(item),
        })
        .collect();
    let sep = if items.iter().all(Value::is_array) { " " } else { ", " };
    parts.map(|p| p.join(sep))
}

fn render_table(out: &mut String, t: &Table) {
    let cells: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| r.iter().map(|v| inline(v).unwrap_or_else(|| v.to_string())).collect())
        .collect();
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|j| {
            cells
                .iter()
                .filter_map(|r| r.get(j))
                .chain(Some(&t.columns[j]))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let _ = writeln!(out, "{}", t.title);
    let mut line = |row: &[String]| {
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "  {}", parts.join("  "));
    };
    line(&t.columns);
    for r in &cells {
        line(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn inline_forms() {
        assert_eq!(inline(&json!(3)).unwrap(), "3");
        assert_eq!(inline(&json!("a")).unwrap(), "a");
        assert_eq!(inline(&json!([1, 3, 1])).unwrap(), "1, 3, 1");
        assert_eq!(inline(&json!([["u", "w"], ["v", "v"]])).unwrap(), "u->w v->v");
        assert!(inline(&json!({"a": 1})).is_none());
    }

    #[test]
    fn table_alignment() {
        let mut out = String::new();
        let t = Table {
            title: "t".into(),
            columns: vec!["s".into(), "rank".into()],
            rows: vec![vec![json!(-10), json!(1)], vec![json!(0), json!(123)]],
        };
        render_table(&mut out, &t);
        assert_eq!(out, "t\n    s  rank\n  -10     1\n    0   123\n");
    }

    #[test]
    fn failed_checks_fail_the_report() {
        let mut r = Report::new(&["x".into()]);
        r.check("k", "a", true, "");
        assert_eq!(r.exit_code(), 0);
        r.check("k", "b", false, "broken");
        assert_eq!(r.exit_code(), 1);
        let text = r.to_text();
        assert!(text.contains("[FAIL] k: b: broken"));
        assert!(text.ends_with("result: FAIL\n"));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
