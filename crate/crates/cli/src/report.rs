use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_FORMAT: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass, witness: None }
    }

    pub fn with_witness(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Self { name: name.into(), pass, witness: (!pass).then(|| witness.into()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

/// Everything except `timing` is a function of the command line and the
/// input files.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub inputs: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub results: Value,
    pub notes: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        let versions = BTreeMap::from([
            ("mixquiver".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("report_format".to_string(), REPORT_FORMAT.to_string()),
        ]);
        Self {
            command: command.into(),
            config,
            inputs: BTreeMap::new(),
            versions,
            checks: Vec::new(),
            results: Value::Null,
            notes: Vec::new(),
            timing: Timing { total_ms: 0.0 },
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
