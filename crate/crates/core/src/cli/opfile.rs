//! JSON operator files.
//!
//! ```json
//! {"sigma": "2", "coefficients": [[[0, 0], [1, 0]], [[0.5, 0], [-1.25, 0], [0.5, 0]]]}
//! ```
//!
//! The outer list is indexed by the derivative order `k`, each inner list by
//! the power of `z`. Entries are `[re, im]` pairs or bare reals; numbers may be
//! JSON numbers or strings such as `"-3/4"`, and are read exactly.

use std::path::Path;

use num::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{DiffExpr, Poly};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Real, CQ};

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorFile {
    pub sigma: Option<BigRational>,
    pub expr: DiffExpr<CQ>,
    pub labels: Option<Value>,
}

#[derive(Deserialize)]
struct RawFile {
    #[serde(default)]
    sigma: Option<Value>,
    coefficients: Vec<Vec<Value>>,
    #[serde(default)]
    labels: Option<Value>,
}

fn number(v: &Value, at: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!(
            "{at}: expected a number, found {other}"
        ))),
    }
    .map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn entry(v: &Value, at: &str) -> Result<CQ> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            Ok(CQ::new(number(&parts[0], at)?, number(&parts[1], at)?))
        }
        Value::Array(parts) => Err(Error::Parse(format!(
            "{at}: expected [re, im], found {} entries",
            parts.len()
        ))),
        other => Ok(CQ::new(number(other, at)?, BigRational::from_int(0))),
    }
}

impl OperatorFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("operator file: {e}")))?;
        let sigma = raw.sigma.as_ref().map(|v| number(v, "sigma")).transpose()?;
        if let Some(s) = &sigma {
            if *s <= BigRational::from_int(0) {
                return Err(Error::Invalid(format!(
                    "sigma must be positive, got {}",
                    s.to_text()
                )));
            }
        }
        let mut rows = Vec::with_capacity(raw.coefficients.len());
        for (k, row) in raw.coefficients.iter().enumerate() {
            let coeffs = row
                .iter()
                .enumerate()
                .map(|(j, v)| entry(v, &format!("coefficients[{k}][{j}]")))
                .collect::<Result<Vec<_>>>()?;
            rows.push(Poly::new(coeffs));
        }
        let expr = DiffExpr::new_in_algebra(rows)?;
        Ok(Self {
            sigma,
            expr,
            labels: raw.labels,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// JSON with every number written as an exact string.
    pub fn to_json(&self) -> Value {
        let text = |x: &BigRational| Value::String(x.to_text());
        let coefficients: Vec<Value> = self
            .expr
            .coeffs()
            .iter()
            .map(|p| {
                Value::Array(
                    p.coeffs()
                        .iter()
                        .map(|c| json!([text(&c.re), text(&c.im)]))
                        .collect(),
                )
            })
            .collect();
        let mut out = json!({ "coefficients": coefficients });
        if let Some(s) = &self.sigma {
            out["sigma"] = text(s);
        }
        if let Some(l) = &self.labels {
            out["labels"] = l.clone();
        }
        out
    }
}
