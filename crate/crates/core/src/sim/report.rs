use std::fmt::Write as _;

use crate::field::Field;

/// Named numeric table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Everything an experiment run produced: the parameters needed to rerun
/// it, scalar metrics, data tables, and images.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub metrics: Vec<(String, f64)>,
    pub tables: Vec<Table>,
    pub fields: Vec<(String, Field)>,
    /// Filled in by whoever writes the report to disk.
    pub artifacts: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            parameters: Vec::new(),
            metrics: Vec::new(),
            tables: Vec::new(),
            fields: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        debug_assert!(value.is_finite(), "metric {key} = {value}");
        self.metrics.push((key.to_string(), value));
    }

    pub fn get_metric(&self, key: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn field(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// `key=value` lines: `experiment`, then `param.*`, `metric.*` and
    /// `artifact` entries in insertion order.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment={}", self.name);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "param.{k}={v}");
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "metric.{k}={v}");
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "artifact={a}");
        }
        out
    }
}
