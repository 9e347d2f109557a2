use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, witness: witness.into() }
    }

    /// Exact count check; the witness records the value found.
    pub fn count(name: &str, got: usize, expected: usize) -> Self {
        Check::new(name, got == expected, format!("{got} (expected {expected})"))
    }

    /// Passes when `residual ≤ bound`.
    pub fn bounded(name: &str, residual: f64, bound: f64) -> Self {
        Check::new(name, residual <= bound, format!("{residual:.3e} (bound {bound:.0e})"))
    }

    /// Passes when the list of failures is empty; up to three are shown.
    pub fn no_failures<T: std::fmt::Debug>(name: &str, checked: usize, failures: &[T]) -> Self {
        let witness = if failures.is_empty() {
            format!("{checked} checked, 0 failures")
        } else {
            let shown: Vec<String> = failures.iter().take(3).map(|f| format!("{f:?}")).collect();
            format!("{checked} checked, {} failures: {}", failures.len(), shown.join("; "))
        };
        Check::new(name, failures.is_empty(), witness)
    }
}

/// One row of the regenerated image table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub rho_label: String,
    pub bullet: String,
    pub first_component: String,
    pub second_component: String,
    #[serde(rename = "F1_index")]
    pub f1_index: usize,
    #[serde(rename = "F2_index")]
    pub f2_index: usize,
    pub zeta_class: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRecord>>,
    pub wall_time: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), parameters: BTreeMap::new(), checks: Vec::new(), table: None, wall_time: None }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// The table when there is one, the checks otherwise.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        match &self.table {
            Some(rows) => {
                for r in rows {
                    w.serialize(r)?;
                }
            }
            None => {
                for c in &self.checks {
                    w.serialize(c)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}
