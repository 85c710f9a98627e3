use std::io::Write;

use clap::ValueEnum;
use multiset_codes::combinatorics::{format_rational, to_f64};
use multiset_codes::Rational;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

/// Ordered key/value row.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    /// Exact `num/den`, plus a decimal `<key>_approx` column when asked for.
    pub fn rational(mut self, key: &str, x: &Rational, approx: bool) -> Self {
        self.push(key, format_rational(x));
        if approx {
            self.push(&format!("{key}_approx"), to_f64(x));
        }
        self
    }

    fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }
}

pub enum Output {
    Record(Record),
    Table(Vec<Record>),
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

impl Output {
    pub fn render(&self, format: Format, w: &mut dyn Write) -> std::io::Result<()> {
        match (self, format) {
            (Output::Record(r), Format::Json) => {
                writeln!(w, "{}", serde_json::to_string_pretty(&r.to_json())?)
            }
            (Output::Table(rows), Format::Json) => {
                let all: Vec<Value> = rows.iter().map(Record::to_json).collect();
                writeln!(w, "{}", serde_json::to_string_pretty(&Value::Array(all))?)
            }
            (Output::Record(r), Format::Human) => {
                let width = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &r.fields {
                    writeln!(w, "{k:<width$}  {}", plain(v))?;
                }
                Ok(())
            }
            (Output::Table(rows), Format::Human) => write_aligned(rows, w),
            (Output::Record(r), Format::Csv) => write_csv(std::slice::from_ref(r), w),
            (Output::Table(rows), Format::Csv) => write_csv(rows, w),
        }
    }
}

fn headers(rows: &[Record]) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for r in rows {
        for (k, _) in &r.fields {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    keys
}

fn cells(rows: &[Record], keys: &[String]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            keys.iter()
                .map(|k| {
                    r.fields
                        .iter()
                        .find(|(key, _)| key == k)
                        .map_or_else(String::new, |(_, v)| plain(v))
                })
                .collect()
        })
        .collect()
}

fn write_aligned(rows: &[Record], w: &mut dyn Write) -> std::io::Result<()> {
    let keys = headers(rows);
    let body = cells(rows, &keys);
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| body.iter().map(|r| r[i].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let line = |cols: &[String]| {
        cols.iter()
            .zip(&widths)
            .map(|(c, &wd)| format!("{c:>wd$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(w, "{}", line(&keys))?;
    for r in &body {
        writeln!(w, "{}", line(r))?;
    }
    Ok(())
}

fn write_csv(rows: &[Record], w: &mut dyn Write) -> std::io::Result<()> {
    let keys = headers(rows);
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&keys)?;
    for r in cells(rows, &keys) {
        out.write_record(&r)?;
    }
    out.flush()
}
