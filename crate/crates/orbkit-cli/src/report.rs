//! The report every command produces: named checks and named exact values.
//!
//! Field order is fixed and values are strings, so parsing a report and
//! serializing it again reproduces the same bytes.

use std::fmt::Write as _;

use orbkit::scalars::Scalar;
use serde::{Deserialize, Serialize};

use orbkit::schema::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// `exact` is the machine form `a/b+c/e*sqrt(d)` for scalars; `display` is for people.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub exact: String,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<String>,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub values: Vec<Entry>,
}

impl Report {
    pub fn new(command: &str, inputs: &[&str]) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            passed: true,
            checks: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) -> &mut Self {
        self.check_with(name, passed, None)
    }

    pub fn check_with(&mut self, name: &str, passed: bool, detail: Option<String>) -> &mut Self {
        self.passed &= passed;
        self.checks.push(Check { name: name.to_string(), passed, detail });
        self
    }

    pub fn scalar(&mut self, name: &str, value: &Scalar) -> &mut Self {
        self.values.push(Entry { name: name.to_string(), exact: exact(value), display: value.pretty() });
        self
    }

    pub fn scalars(&mut self, name: &str, values: &[Scalar]) -> &mut Self {
        let join = |f: &dyn Fn(&Scalar) -> String| format!("[{}]", values.iter().map(f).collect::<Vec<_>>().join(", "));
        self.values.push(Entry { name: name.to_string(), exact: join(&exact), display: join(&Scalar::pretty) });
        self
    }

    pub fn text(&mut self, name: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string();
        self.values.push(Entry { name: name.to_string(), exact: value.clone(), display: value });
        self
    }

    pub fn value(&self, name: &str) -> Option<&Entry> {
        self.values.iter().find(|e| e.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.inputs.join(" "));
        for c in &self.checks {
            let mark = if c.passed { "✓" } else { "✗" };
            match &c.detail {
                Some(d) => writeln!(out, "  {} {mark}  ({d})", c.name),
                None => writeln!(out, "  {} {mark}", c.name),
            }
            .expect("writing to a string");
        }
        for e in &self.values {
            let _ = writeln!(out, "  {} = {}", e.name, e.display);
        }
        match self.first_failure() {
            None => out.push_str("PASS\n"),
            Some(c) => {
                let _ = writeln!(out, "FAIL: {}", c.name);
            }
        }
        out
    }
}

fn exact(value: &Scalar) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => value.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbkit::scalars::Field;

    #[test]
    fn verdict_is_the_conjunction_of_checks() {
        let mut report = Report::new("x", &[]);
        assert_eq!(report.exit_code(), 0);
        report.check("a", true).check("b", false).check("c", false);
        assert_eq!(report.exit_code(), 1);
        assert_eq!(report.first_failure().unwrap().name, "b");
    }

    #[test]
    fn scalars_keep_the_exact_and_the_display_form() {
        let r5 = Field::new(5).unwrap();
        let value = (r5.int(5) - r5.root()) / r5.int(10);
        let mut report = Report::new("tv", &[]);
        report.scalar("value", &value);
        let entry = report.value("value").unwrap();
        assert_eq!(entry.display, "(5-√5)/10");
        assert_eq!(Scalar::parse_in(&entry.exact, r5).unwrap(), value);
    }
}
