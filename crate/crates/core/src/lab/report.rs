//! Tabular experiment reports with CSV and JSON renderings.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value as Json};

use crate::error::{Error, Result};
use crate::numeric::{format_decimal, Rational};

pub const SCHEMA_VERSION: u32 = 1;

/// One report cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Exact(Rational),
    Real(f64),
}

impl Value {
    /// The text used in both renderings. Exact values with a terminating
    /// decimal expansion are printed exactly, others to 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Exact(q) => {
                let s = format_decimal(q);
                if s.contains('/') {
                    format!("{:?}", q.to_f64().unwrap_or(f64::NAN))
                } else {
                    s
                }
            }
            Value::Real(x) => format!("{x:?}"),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Int(i) => *i as f64,
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            Value::Int(i) => Some(Rational::from_integer(*i)),
            Value::Exact(q) => Some(*q),
            Value::Real(_) => None,
        }
    }

    fn is_finite(&self) -> bool {
        !matches!(self, Value::Real(x) if !x.is_finite())
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Exact(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

/// A reference constant for the limit column, with where it comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedLimit {
    pub value: Rational,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub expected_limit: Option<ExpectedLimit>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: &str, seed: u64, columns: &[&str]) -> Self {
        ExperimentReport {
            name: name.to_string(),
            seed,
            params: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            expected_limit: None,
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, row: Vec<Value>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::contract(format!(
                "row has {} cells, report {} declares {} columns",
                row.len(),
                self.name,
                self.columns.len()
            )));
        }
        if !row.iter().all(Value::is_finite) {
            return Err(Error::contract(format!("non-finite value in report {}", self.name)));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    obj.insert(c.clone(), number(&v.render()));
                }
                Json::Object(obj)
            })
            .collect();
        let limit = self
            .expected_limit
            .as_ref()
            .map(|l| json!({ "value": number(&Value::Exact(l.value).render()), "provenance": l.provenance }));
        json!({
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "seed": self.seed,
            "params": self.params,
            "columns": self.columns,
            "rows": rows,
            "expected_limit": limit,
            "notes": self.notes,
        })
    }

    /// Writes the CSV to `path` and the JSON mirror next to it with a `.json` extension.
    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        let text = serde_json::to_string_pretty(&self.to_json()).expect("report serialises");
        std::fs::write(path.with_extension("json"), text + "\n")?;
        Ok(())
    }
}

fn number(text: &str) -> Json {
    Json::Number(text.parse::<Number>().expect("rendered cells are numbers"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut r = ExperimentReport::new("demo", 3, &["n", "ratio", "x"]);
        r.push(vec![10usize.into(), Rational::new(11, 10).into(), 0.5f64.into()]).unwrap();
        r.push(vec![3usize.into(), Rational::new(1, 3).into(), 2.0f64.into()]).unwrap();
        let csv = r.to_csv();
        assert_eq!(csv.lines().nth(1), Some("10,1.1,0.5"));
        let json = r.to_json().to_string();
        assert!(json.contains("\"ratio\":1.1"));
        assert!(json.contains("\"ratio\":0.3333333333333333"));
        assert!(json.contains("\"schema_version\":1"));
        assert!(r.push(vec![1usize.into()]).is_err());
        assert!(r.push(vec![1usize.into(), 1usize.into(), f64::NAN.into()]).is_err());
    }
}
