//! Named relation checks with optional residual matrices.

use serde_json::{json, Value};

use crate::coeff::Domain;
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Residual that must vanish, when the check is a matrix identity.
    pub residual: Option<Matrix>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push_residual(&mut self, name: &str, residual: Matrix) {
        let passed = residual.is_zero();
        self.checks.push(Check { name: name.to_string(), passed, residual: Some(residual) });
    }

    pub fn push_flag(&mut self, name: &str, passed: bool) {
        self.checks.push(Check { name: name.to_string(), passed, residual: None });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One object per check. Residual matrices are included only when
    /// `with_residuals` is set and the check failed.
    pub fn to_json(&self, domain: &Domain, with_residuals: bool) -> Value {
        let entries: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let residual = match (&c.residual, with_residuals && !c.passed) {
                    (Some(m), true) => json!(m.to_strings(domain)),
                    _ => Value::Null,
                };
                json!({ "relation": c.name, "residual_is_zero": c.passed, "residual": residual })
            })
            .collect();
        Value::Array(entries)
    }
}
