//! Check reports and their JSON schema.

use serde::{Deserialize, Serialize};

use crate::check::Check;

pub const SCHEMA: &str = include_str!("../schema/check-report.schema.json");
pub const TOOL: &str = "hopfcheck";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub tool: String,
    pub version: String,
    pub suite: String,
    pub algebra: String,
    pub passed: bool,
    pub wall_time_ms: u64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: &str, algebra: &str, checks: Vec<Check>, notes: Vec<String>, wall_time_ms: u64) -> Self {
        CheckReport {
            tool: TOOL.into(),
            version: VERSION.into(),
            suite: suite.into(),
            algebra: algebra.into(),
            passed: checks.iter().all(|c| c.passed),
            wall_time_ms,
            checks,
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} on {}: {}\n", self.tool, self.suite, self.algebra, if self.passed { "PASS" } else { "FAIL" });
        for c in &self.checks {
            match &c.witness {
                None => out.push_str(&format!("  pass  {} [{}]\n", c.name, c.anchor)),
                Some(w) => out.push_str(&format!("  FAIL  {} [{}]: {w}\n", c.name, c.anchor)),
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note  {n}\n"));
        }
        out.push_str(&format!("  {} checks, {} ms\n", self.checks.len(), self.wall_time_ms));
        out
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = CheckReport::new("hopf", "trivial", vec![Check::pass("unit", "hopf-axioms"), Check::fail("x", "y", "z")], vec![], 3);
        assert!(!r.passed);
        let back: CheckReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("FAIL  x [y]: z"));
        let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(schema["properties"]["tool"]["const"], TOOL);
    }
}
