//! Task report written to the output.

use jordan_core::json::{AdditiveJson, MatrixJson, MultiplicativeJson, PolyJson};
use jordan_core::report::{Check, VerificationReport};
use jordan_core::spectral::{ClassificationReport, Mode};
use jordan_core::JordanError;
use serde::Serialize;

use crate::request::RequestEcho;

/// Identifier of the report schema in `schema/`.
pub const SCHEMA_ID: &str = "jordan-task-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl From<&JordanError> for ErrorJson {
    fn from(e: &JordanError) -> Self {
        let (factor, degree) = match e {
            JordanError::ExactModeUnavailable { factor, degree } => (Some(factor.clone()), Some(*degree)),
            _ => (None, None),
        };
        ErrorJson { kind: e.kind(), message: e.to_string(), exit_code: e.exit_code(), factor, degree }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdditiveSection {
    #[serde(flatten)]
    pub result: AdditiveJson,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicativeSection {
    #[serde(flatten)]
    pub result: MultiplicativeJson,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSection {
    #[serde(flatten)]
    pub predicates: ClassificationReport,
    pub min_poly: PolyJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointSection {
    /// `ad` or `Ad`.
    pub operator: &'static str,
    /// Dimension of the space the operator acts on.
    pub dimension: usize,
    pub mode: Mode,
    pub verification: VerificationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Algebra,
    Group,
}

impl SampleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleKind::Algebra => "algebra",
            SampleKind::Group => "group",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleResult {
    pub kind: SampleKind,
    pub index: usize,
    /// Seed that regenerates the sample; absent for a supplied matrix.
    pub seed: Option<u64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Check>,
    /// The sample itself, kept only when it failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureSection {
    pub structure: String,
    pub samples: Vec<SampleResult>,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationSummary {
    pub passed: bool,
    pub checks: usize,
    /// Names of failed checks, prefixed by their section.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    pub schema: &'static str,
    pub request: Option<RequestEcho>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_used: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub additive: Option<AdditiveSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicative: Option<MultiplicativeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<AdjointSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl TaskReport {
    pub fn new(request: Option<RequestEcho>) -> Self {
        TaskReport {
            schema: SCHEMA_ID,
            request,
            status: Status::Ok,
            exit_code: 0,
            mode_used: None,
            precision_bits: None,
            additive: None,
            multiplicative: None,
            classification: None,
            adjoint: None,
            closure: None,
            verification: None,
            error: None,
            timing: None,
        }
    }

    /// Report for a request that could not be parsed or run at all.
    pub fn failed(request: Option<RequestEcho>, e: &JordanError) -> Self {
        let mut r = TaskReport::new(request);
        r.set_error(e);
        r
    }

    pub fn set_error(&mut self, e: &JordanError) {
        self.status = Status::Error;
        self.exit_code = e.exit_code();
        self.error = Some(e.into());
    }

    /// Record the arithmetic of one section; numeric wins over exact.
    pub fn note_mode(&mut self, mode: Mode, bits: Option<u32>) {
        self.mode_used = match (self.mode_used, mode) {
            (Some(Mode::Numeric), _) | (_, Mode::Numeric) => Some(Mode::Numeric),
            _ => Some(Mode::Exact),
        };
        if mode == Mode::Numeric {
            self.precision_bits = bits;
        }
    }

    /// Fill the verification summary from every section and set the status.
    pub fn finish(&mut self) {
        let mut checks = 0;
        let mut failures = Vec::new();
        let mut collect = |prefix: &str, v: &VerificationReport| {
            checks += v.checks.len();
            failures.extend(v.failures().map(|c| format!("{prefix}.{}", c.name)));
        };
        if let Some(s) = &self.additive {
            collect("additive", &s.verification);
        }
        if let Some(s) = &self.multiplicative {
            collect("multiplicative", &s.verification);
        }
        if let Some(s) = &self.adjoint {
            collect("adjoint", &s.verification);
        }
        if let Some(s) = &self.closure {
            for r in &s.samples {
                checks += 1;
                if !r.passed {
                    failures.push(format!("closure.{}.{}", r.kind.as_str(), r.index));
                }
            }
        }
        let passed = failures.is_empty();
        if checks > 0 || self.error.is_none() {
            self.verification = Some(VerificationSummary { passed, checks, failures });
        }
        if self.error.is_none() && !passed {
            self.status = Status::VerificationFailed;
            self.exit_code = 1;
        }
    }
}
