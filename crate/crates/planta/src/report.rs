//! Machine-readable reports.
//!
//! A report is a JSON object with sorted keys. Floats are rounded to six
//! significant digits and printed in shortest round-trip form, so identical
//! inputs give byte-identical files. Every numeric value sits under a key
//! ending in a unit suffix from [`UNIT_SUFFIXES`]; numbers inside arrays take
//! the suffix of the array's key.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::numfmt::round_json;

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const UNIT_SUFFIXES: [&str; 25] = [
    "_kpa",
    "_kpa_per_day",
    "_c",
    "_pct",
    "_mm",
    "_mm_per_day",
    "_m",
    "_m2",
    "_deg",
    "_w",
    "_uw_per_cm2",
    "_j",
    "_j_per_mol",
    "_g",
    "_g_per_mol",
    "_s",
    "_min",
    "_h",
    "_ohm",
    "_v",
    "_a",
    "_f",
    "_ratio",
    "_count",
    "_bits",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub config: Value,
    pub result: Value,
}

fn has_unit_suffix(key: &str) -> bool {
    UNIT_SUFFIXES.iter().any(|s| key.ends_with(s))
}

/// Paths of numeric values whose key lacks a unit suffix.
pub fn unsuffixed_numbers(v: &Value) -> Vec<String> {
    fn walk(v: &Value, key: Option<&str>, path: &str, out: &mut Vec<String>) {
        match v {
            Value::Number(_) => {
                if !key.is_some_and(has_unit_suffix) {
                    out.push(path.to_string());
                }
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(item, key, &format!("{path}[{i}]"), out);
                }
            }
            Value::Object(map) => {
                for (k, item) in map {
                    walk(item, Some(k), &format!("{path}.{k}"), out);
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(v, None, "", &mut out);
    out
}

impl Report {
    /// Builds a report, rounding floats and checking key suffixes.
    pub fn new(command: &str, mut config: Value, mut result: Value) -> Result<Self> {
        round_json(&mut config);
        round_json(&mut result);
        let report = Report {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config,
            result,
        };
        report.validate()?;
        Ok(report)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::InvariantViolation(format!(
                "unsupported report schema {}",
                self.schema_version
            )));
        }
        let bad: Vec<String> = [("config", &self.config), ("result", &self.result)]
            .iter()
            .flat_map(|(name, v)| {
                unsuffixed_numbers(v)
                    .into_iter()
                    .map(move |p| format!("{name}{p}"))
            })
            .collect();
        if !bad.is_empty() {
            return Err(CliError::InvariantViolation(format!(
                "numeric report fields without a unit suffix: {}",
                bad.join(", ")
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite JSON");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text).map_err(|e| CliError::Data(format!("report: {e}")))?;
        r.validate()?;
        Ok(r)
    }
}
