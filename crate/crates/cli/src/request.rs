//! Task requests: the JSON document on the input merged with command-line flags.

use jordan_core::json::MatrixJson;
use jordan_core::lie::{LieSpec, LieStructure};
use jordan_core::matrix::Matrix;
use jordan_core::scalar::Rational;
use jordan_core::spectral::ModeRequest;
use jordan_core::{JordanError, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operation {
    #[serde(rename = "additive")]
    Additive,
    #[serde(rename = "multiplicative")]
    Multiplicative,
    #[serde(rename = "both")]
    Both,
    #[serde(rename = "classify")]
    Classify,
    #[serde(rename = "ad-spectrum")]
    AdSpectrum,
    #[serde(rename = "Ad-spectrum")]
    AdGroupSpectrum,
    #[serde(rename = "lie-closure")]
    LieClosure,
}

impl Operation {
    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Additive => "additive",
            Operation::Multiplicative => "multiplicative",
            Operation::Both => "both",
            Operation::Classify => "classify",
            Operation::AdSpectrum => "ad-spectrum",
            Operation::AdGroupSpectrum => "Ad-spectrum",
            Operation::LieClosure => "lie-closure",
        }
    }
}

/// Values given on the command line; they take precedence over the document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<ModeRequest>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRequest {
    matrix: Option<Value>,
    operation: Option<Operation>,
    mode: Option<ModeRequest>,
    tolerance: Option<f64>,
    lie: Option<LieSpec>,
    seed: Option<u64>,
    samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskRequest {
    pub operation: Operation,
    pub matrix: Option<Matrix<Rational>>,
    pub mode: ModeRequest,
    pub tolerance: f64,
    pub lie: Option<LieStructure>,
    pub seed: u64,
    pub samples: usize,
}

/// Normalized request as echoed in the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RequestEcho {
    pub operation: Operation,
    pub mode: ModeRequest,
    pub tolerance: f64,
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieStructure>,
}

impl TaskRequest {
    pub fn echo(&self) -> RequestEcho {
        RequestEcho {
            operation: self.operation,
            mode: self.mode,
            tolerance: self.tolerance,
            seed: self.seed,
            samples: self.samples,
            matrix: self.matrix.as_ref().map(|m| {
                let mut j = MatrixJson::from_matrix(m);
                j.ring = None;
                j
            }),
            lie: self.lie.clone(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> JordanError {
    JordanError::InvalidInput(msg.into())
}

fn entry_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(invalid(format!("matrix entry {other} is neither a string nor a number"))),
    }
}

/// A matrix given as `{"n": k, "entries": [[…]]}` or as a bare array of rows.
/// Entries are strings or JSON numbers; `n` may be omitted.
fn parse_matrix(v: &Value) -> Result<Matrix<Rational>> {
    let (n, rows) = match v {
        Value::Array(rows) => (None, rows),
        Value::Object(obj) => {
            if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "n" | "entries" | "ring")) {
                return Err(invalid(format!("unknown matrix field '{k}'")));
            }
            let n = match obj.get("n") {
                None => None,
                Some(n) => Some(n.as_u64().ok_or_else(|| invalid("matrix field 'n' must be a non-negative integer"))? as usize),
            };
            match obj.get("entries") {
                Some(Value::Array(rows)) => (n, rows),
                _ => return Err(invalid("matrix needs an 'entries' array of rows")),
            }
        }
        _ => return Err(invalid("matrix must be an object or an array of rows")),
    };
    let entries = rows
        .iter()
        .map(|row| match row {
            Value::Array(r) => r.iter().map(entry_text).collect::<Result<Vec<_>>>(),
            _ => Err(invalid("each matrix row must be an array")),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = n.unwrap_or(entries.len());
    MatrixJson { n, ring: None, entries }.to_rational()
}

/// Build a request for `operation` from the input document and flags.
///
/// The document is a task object, or just a matrix (object with `entries`,
/// or array of rows). An `operation` field that disagrees with the
/// subcommand is rejected.
pub fn build(operation: Operation, input: &str, flags: &Overrides) -> Result<TaskRequest> {
    let doc: Value = if input.trim().is_empty() {
        Value::Object(Default::default())
    } else {
        serde_json::from_str(input).map_err(|e| invalid(format!("input is not valid JSON: {e}")))?
    };
    let bare_matrix = match &doc {
        Value::Array(_) => true,
        Value::Object(o) => o.contains_key("entries") && !o.contains_key("matrix"),
        _ => return Err(invalid("input must be a JSON object or an array of matrix rows")),
    };
    let raw = if bare_matrix {
        RawRequest { matrix: Some(doc), ..Default::default() }
    } else {
        serde_json::from_value::<RawRequest>(doc).map_err(|e| invalid(format!("malformed request: {e}")))?
    };
    if let Some(op) = raw.operation {
        if op != operation {
            return Err(invalid(format!(
                "request operation '{}' does not match subcommand '{}'",
                op.as_str(),
                operation.as_str()
            )));
        }
    }
    let tolerance = flags.tolerance.or(raw.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(invalid(format!("tolerance must be a positive number, got {tolerance}")));
    }
    let samples = flags.samples.or(raw.samples).unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let matrix = raw.matrix.as_ref().map(parse_matrix).transpose()?;
    let lie = raw.lie.map(LieStructure::try_from).transpose()?;
    match operation {
        Operation::LieClosure if lie.is_none() => return Err(invalid("lie-closure needs a 'lie' structure")),
        Operation::LieClosure => {}
        _ if matrix.is_none() => return Err(invalid(format!("{} needs a 'matrix'", operation.as_str()))),
        _ => {}
    }
    Ok(TaskRequest {
        operation,
        matrix,
        mode: flags.mode.or(raw.mode).unwrap_or_default(),
        tolerance,
        lie,
        seed: flags.seed.or(raw.seed).unwrap_or(DEFAULT_SEED),
        samples,
    })
}
