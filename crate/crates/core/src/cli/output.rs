use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::{Error, Result};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// 12 significant digits, printed as the shortest decimal that round-trips.
pub fn format_num(x: f64) -> String {
    format!("{}", round12(x))
}

/// Applies [`round12`] to every float in a JSON tree; integers are kept.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round12).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    Ok(serde_json::to_string(&v)?)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub const COUNT_COLUMNS: &[&str] = &["x", "q"];
pub const COUNT_BG_COLUMNS: &[&str] = &["x", "q", "bg2", "err"];
pub const ENUMERATE_COLUMNS: &[&str] = &["a", "b", "n"];
pub const VARIANCE_COLUMNS: &[&str] = &["X", "H", "total", "J1", "J2", "I2", "predicted", "ratio", "events"];
pub const VARIANCE_SPLIT_COLUMNS: &[&str] = &[
    "X",
    "H",
    "total",
    "J1",
    "J2",
    "I2",
    "predicted",
    "ratio",
    "events",
    "I1",
    "cross_bound",
    "total_theta1_mean",
];
pub const DIAGONAL_COLUMNS: &[&str] = &["H", "eps", "value", "predicted", "ratio", "envelope", "integer_h"];
pub const CONSTANT_COLUMNS: &[&str] = &["name", "value"];
pub const PLOT_COLUMNS: &[&str] = &["log_H", "log_variance", "log_predicted"];

/// Rows checked against a fixed column set before they are written.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        self.columns
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::invalid(format!(
                "row has {} fields, schema {:?} has {}",
                row.len(),
                self.columns,
                self.columns.len()
            )));
        }
        if let Some(bad) = row.iter().find(|c| c.contains(',') || c.contains('\n')) {
            return Err(Error::invalid(format!("field {bad:?} would break the CSV layout")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Rows as JSON objects; numeric-looking fields become numbers.
    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| {
                        let val = v
                            .parse::<i64>()
                            .map(Value::from)
                            .or_else(|_| v.parse::<f64>().map(Value::from))
                            .unwrap_or_else(|_| Value::from(v.clone()));
                        (c.to_string(), val)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        Ok(serde_json::to_string_pretty(&rows)? + "\n")
    }

    /// Parses CSV written by [`Table::to_csv`] against an expected schema.
    pub fn parse_csv(columns: &'static [&'static str], text: &str) -> Result<Table> {
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::invalid("empty CSV"))?;
        if header != columns.join(",") {
            return Err(Error::invalid(format!("unexpected CSV header {header:?}")));
        }
        let mut t = Table::new(columns);
        for l in lines {
            t.push(l.split(',').map(str::to_string).collect())?;
        }
        Ok(t)
    }
}

/// Writes to `path`, or to stdout when there is none.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, content)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn json_lines<T: Serialize>(items: &[T]) -> Result<String> {
    let mut s = String::new();
    for it in items {
        writeln!(s, "{}", to_json_line(it)?).expect("writing to a String");
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(format_num(1.5), "1.5");
        assert_eq!(format_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_num(0.0), "0");
        assert_eq!(format_num(-2.5e-20), "-0.000000000000000000025");
        assert_eq!(format_num(123456789012345.0), "123456789012000");
    }

    #[test]
    fn schema_is_enforced() {
        let mut t = Table::new(PLOT_COLUMNS);
        assert!(t.push(vec!["1".into(), "2".into()]).is_err());
        assert!(t.push(vec!["1".into(), "2".into(), "3,4".into()]).is_err());
        t.push(vec!["1".into(), "2".into(), "3".into()]).unwrap();
        assert_eq!(t.to_csv(), "log_H,log_variance,log_predicted\n1,2,3\n");
        assert_eq!(Table::parse_csv(PLOT_COLUMNS, &t.to_csv()).unwrap(), t);
        assert!(Table::parse_csv(COUNT_COLUMNS, &t.to_csv()).is_err());
    }

    #[test]
    fn json_rounding_keeps_integers() {
        let mut v = serde_json::json!({"a": 1u64 << 60, "b": [std::f64::consts::E]});
        round_json(&mut v);
        assert_eq!(v["a"], serde_json::json!(1u64 << 60));
        assert_eq!(v["b"][0].as_f64().unwrap(), 2.71828182846);
    }
}
