//! Result records and their json-lines / CSV encodings.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// A single metric value. Floats are written with 17 significant digits.
#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<usize> for Metric {
    fn from(v: usize) -> Self {
        Metric::Int(v as i64)
    }
}

impl From<i64> for Metric {
    fn from(v: i64) -> Self {
        Metric::Int(v)
    }
}

impl From<f64> for Metric {
    fn from(v: f64) -> Self {
        Metric::Float(v)
    }
}

impl From<bool> for Metric {
    fn from(v: bool) -> Self {
        Metric::Bool(v)
    }
}

impl From<String> for Metric {
    fn from(v: String) -> Self {
        Metric::Text(v)
    }
}

impl From<&str> for Metric {
    fn from(v: &str) -> Self {
        Metric::Text(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub subcommand: String,
    pub input: Value,
    pub metrics: BTreeMap<String, Metric>,
}

impl ResultRecord {
    pub fn new(subcommand: &str, input: Value) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            input,
            metrics: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Metric>) -> Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Metric>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    pub fn to_json_line(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"schema_version\":");
        out.push_str(&self.schema_version.to_string());
        out.push_str(",\"subcommand\":");
        push_string(&mut out, &self.subcommand);
        out.push_str(",\"input\":");
        push_value(&mut out, &self.input);
        out.push_str(",\"metrics\":{");
        for (i, (k, v)) in self.metrics.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            push_string(&mut out, k);
            out.push(':');
            push_metric(&mut out, v);
        }
        out.push_str("}}");
        out
    }

    /// Inverse of [`to_json_line`](Self::to_json_line).
    pub fn from_json_line(line: &str) -> Option<Self> {
        let v: Value = serde_json::from_str(line).ok()?;
        let obj = v.as_object()?;
        let mut metrics = BTreeMap::new();
        for (k, m) in obj.get("metrics")?.as_object()? {
            let metric = match m {
                Value::Bool(b) => Metric::Bool(*b),
                Value::String(s) => Metric::Text(s.clone()),
                Value::Number(n) if n.is_f64() => Metric::Float(n.as_f64()?),
                Value::Number(n) => Metric::Int(n.as_i64()?),
                _ => return None,
            };
            metrics.insert(k.clone(), metric);
        }
        Some(ResultRecord {
            schema_version: obj.get("schema_version")?.as_u64()? as u32,
            subcommand: obj.get("subcommand")?.as_str()?.to_string(),
            input: obj.get("input")?.clone(),
            metrics,
        })
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "Infinity".into()
    } else {
        "-Infinity".into()
    }
}

fn push_string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings serialize"));
}

fn push_metric(out: &mut String, m: &Metric) {
    match m {
        Metric::Int(i) => out.push_str(&i.to_string()),
        // JSON has no non-finite numbers; those go out as strings
        Metric::Float(x) if x.is_finite() => out.push_str(&format_float(*x)),
        Metric::Float(x) => push_string(out, &format_float(*x)),
        Metric::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Metric::Text(s) => push_string(out, s),
    }
}

fn push_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => out.push_str(&i.to_string()),
            (None, Some(u)) => out.push_str(&u.to_string()),
            _ => out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN))),
        },
        Value::String(s) => push_string(out, s),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                push_value(out, x);
            }
            out.push(']');
        }
        Value::Object(o) => {
            out.push('{');
            for (i, (k, x)) in o.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                push_string(out, k);
                out.push(':');
                push_value(out, x);
            }
            out.push('}');
        }
    }
}

fn metric_cell(m: &Metric) -> String {
    match m {
        Metric::Int(i) => i.to_string(),
        Metric::Float(x) => format_float(*x),
        Metric::Bool(b) => b.to_string(),
        Metric::Text(s) => s.clone(),
    }
}

pub fn encode_jsonl(records: &[ResultRecord]) -> Vec<u8> {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out.into_bytes()
}

/// One row per record; metric columns are the sorted union of all keys.
pub fn encode_csv(records: &[ResultRecord]) -> std::io::Result<Vec<u8>> {
    let mut keys: Vec<&String> = records.iter().flat_map(|r| r.metrics.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["schema_version".to_string(), "subcommand".into(), "input".into()];
    header.extend(keys.iter().map(|k| k.to_string()));
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![r.schema_version.to_string(), r.subcommand.clone()];
        let mut input = String::new();
        push_value(&mut input, &r.input);
        row.push(input);
        for k in &keys {
            row.push(r.metrics.get(*k).map(metric_cell).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_line_round_trips() {
        let r = ResultRecord::new("spectrum", serde_json::json!({"size": 257, "measure": 0.5}))
            .with("trace", 128.50000000000003)
            .with("count", 7usize)
            .with("ok", true)
            .with("note", "a \"quoted\" word")
            .with("third", 1.0 / 3.0);
        let line = r.to_json_line();
        assert!(line.contains("3.3333333333333331e-1"));
        let back = ResultRecord::from_json_line(&line).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn pinned_field_names() {
        let line = ResultRecord::new("tile", Value::Null).with("x", 1usize).to_json_line();
        let v: Value = serde_json::from_str(&line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, vec!["input", "metrics", "schema_version", "subcommand"]);
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn csv_has_union_of_columns() {
        let a = ResultRecord::new("c", Value::Null).with("size", 65usize).with("ratio", 0.25);
        let b = ResultRecord::new("c", Value::Null).with("size", 257usize).with("count", 3usize);
        let text = String::from_utf8(encode_csv(&[a, b]).unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "schema_version,subcommand,input,count,ratio,size");
        assert_eq!(lines.next().unwrap(), "1,c,null,,2.5000000000000000e-1,65");
        assert_eq!(lines.next().unwrap(), "1,c,null,3,,257");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.jsonl");
        write_atomic(&p, b"first\n").unwrap();
        write_atomic(&p, b"second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "second\n");
    }
}
