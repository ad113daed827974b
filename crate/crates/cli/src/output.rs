//! Rendering: human tables, JSON documents and the CSV rank table.

use std::fmt::Write as _;
use std::path::Path;

use graphprod_core::{BigInt, BigRational, ExponentSequence, RankTable, Scalar, Series};
use num_traits::One;
use serde_json::{Map, Number, Value};

use crate::CliError;

/// Text and JSON renderings of one command's results, built side by side.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
    json: Map<String, Value>,
    notes: Vec<String>,
}

impl Report {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut doc = self.json.clone();
            if !self.notes.is_empty() {
                doc.insert("notes".into(), Value::from(self.notes.clone()));
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
            out.push('\n');
            out
        } else {
            let mut out = self.text.clone();
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
            out
        }
    }
}

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are JSON numbers"))
}

/// `num/den`, with `den = 1` kept so every entry has the same shape.
pub fn ratio_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Coefficients as JSON: integers as numbers, anything else as `num/den`.
pub fn series_value(s: &Series) -> Value {
    Value::Array(
        s.coefficients()
            .iter()
            .map(|c| match Scalar::to_integer(c) {
                Some(i) => int_value(&i),
                None => Value::String(ratio_string(c)),
            })
            .collect(),
    )
}

pub fn series_text(s: &Series) -> String {
    join(s.coefficients().iter().map(|c| match Scalar::to_integer(c) {
        Some(i) => i.to_string(),
        None => c.to_string(),
    }))
}

pub fn sequence_value(a: &ExponentSequence) -> Value {
    Value::Array(a.values().iter().map(int_value).collect())
}

pub fn sequence_text(a: &ExponentSequence) -> String {
    join(a.values().iter())
}

pub fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// The coefficients of `1 / s` when that reciprocal is a polynomial of degree
/// below the truncation order; only then is it known exactly.
pub fn polynomial_reciprocal(s: &Series) -> Option<Vec<BigInt>> {
    let inv = s.inverse().ok()?;
    let coeffs: Vec<BigInt> = inv.coefficients().iter().map(Scalar::to_integer).collect::<Option<_>>()?;
    let degree = inv.degree()?;
    (degree < inv.order()).then(|| coeffs[..=degree].to_vec())
}

pub fn polynomial_text(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (n, c) in coeffs.iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let negative = c < &BigInt::from(0);
        let abs = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = abs.is_one();
        match n {
            0 => out.push_str(&abs.to_string()),
            1 if unit => out.push('t'),
            1 => out.push_str(&format!("{abs}t")),
            _ if unit => out.push_str(&format!("t^{n}")),
            _ => out.push_str(&format!("{abs}t^{n}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn write_csv(path: &Path, table: &RankTable) -> Result<(), CliError> {
    let err = |e: csv::Error| CliError::Output {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(["degree", "c", "b", "aZ", "aF"]).map_err(err)?;
    for n in 1..=table.truncation {
        w.write_record([
            n.to_string(),
            table.c[n - 1].to_string(),
            ratio_string(&table.b[n - 1]),
            table.a_zp.get(n).to_string(),
            table.a_fp.get(n).to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| err(e.into()))
}
