//! Number formatting shared by the JSON and CSV writers.
//!
//! Every float is printed with 17 significant digits so that parsing it
//! back gives the same double. Non-finite values become `null` in JSON and
//! `inf`/`nan` in CSV.

use std::fmt::Write;

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Null,
    Object(Object),
}

/// A JSON object that keeps its keys in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Object(Vec<(&'static str, Value)>);

impl Object {
    pub fn new() -> Self {
        Object(Vec::new())
    }

    pub fn with(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.0.push((key, v.into()));
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        out.push('{');
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\"{k}\":");
            match v {
                Value::Num(x) if x.is_finite() => out.push_str(&float(*x)),
                Value::Num(_) | Value::Null => out.push_str("null"),
                Value::Int(n) => {
                    let _ = write!(out, "{n}");
                }
                Value::Bool(b) => {
                    let _ = write!(out, "{b}");
                }
                Value::Object(o) => o.write(out),
            }
        }
        out.push('}');
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<Object> for Value {
    fn from(o: Object) -> Self {
        Value::Object(o)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

/// One CSV row of floats.
pub fn csv_row(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|&x| float(x)).collect();
    cells.join(",")
}
