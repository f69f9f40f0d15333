//! Tabular reports rendered as CSV or JSON.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn float_text(v: f64) -> String {
    if v != 0.0 && v.is_finite() && (v.abs() < 1e-4 || v.abs() >= 1e15) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Run metadata recorded in every report.
#[derive(Clone, Debug, Default)]
pub struct Meta {
    pub command: String,
    pub sigma: String,
    pub truncations: Vec<usize>,
    pub tol: Option<f64>,
    /// Further `key=value` facts for the comment line.
    pub extra: Vec<(String, Cell)>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub meta: Meta,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Replaces the generic JSON rendering when set.
    pub json_override: Option<Value>,
}

impl Report {
    pub fn new(meta: Meta, header: Vec<&'static str>) -> Self {
        Self {
            meta,
            header,
            rows: Vec::new(),
            json_override: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn comment(&self) -> String {
        let m = &self.meta;
        let truncations = if m.truncations.is_empty() {
            "none".to_string()
        } else {
            m.truncations
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(";")
        };
        let tol = m.tol.map_or("none".to_string(), float_text);
        let mut line = format!(
            "# {} {} command={} sigma={} truncations={} tol={}",
            env!("CARGO_PKG_NAME"),
            env!("CARGO_PKG_VERSION"),
            m.command,
            m.sigma,
            truncations,
            tol
        );
        for (k, v) in &m.extra {
            line.push_str(&format!(" {k}={}", v.csv()));
        }
        line
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.comment();
        out.push('\n');
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        if let Some(v) = &self.json_override {
            return v.clone();
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let extra: Map<String, Value> = self
            .meta
            .extra
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.meta.command,
            "sigma": self.meta.sigma,
            "truncations": self.meta.truncations,
            "tol": self.meta.tol,
            "summary": extra,
            "rows": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_comment_and_header() {
        let meta = Meta {
            command: "spectrum".into(),
            sigma: "2".into(),
            truncations: vec![64, 128],
            tol: Some(1e-8),
            extra: vec![("hermitian".into(), Cell::Bool(true))],
        };
        let mut r = Report::new(meta, vec!["n", "re"]);
        r.push(vec![0usize.into(), 0.5.into()]);
        let text = r.to_csv();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# weighted-hardy"));
        assert!(lines[0].contains("sigma=2 truncations=64;128 tol=1e-8 hermitian=true"));
        assert_eq!(lines[1], "n,re");
        assert_eq!(lines[2], "0,0.5");
        assert_eq!(r.to_json()["rows"][0]["re"], json!(0.5));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(float_text(0.5), "0.5");
        assert_eq!(float_text(4.5e-16), "4.5e-16");
        assert_eq!(float_text(0.0), "0");
        assert_eq!(float_text(-1e20), "-1e20");
    }

    #[test]
    fn quoting() {
        assert_eq!(Cell::from("a,b").csv(), "\"a,b\"");
    }
}
