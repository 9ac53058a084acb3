//! Named pass/fail checks with residuals.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Frobenius norm (or other magnitude) of the defect; zero when exact and passing.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, residual: f64) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            residual,
            detail: None,
        });
    }

    pub fn push_detail(&mut self, name: impl Into<String>, passed: bool, residual: f64, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            residual,
            detail: Some(detail.into()),
        });
    }

    /// Record that `m` vanishes: exactly for exact fields, within `tol` otherwise.
    pub fn push_zero<F: Field>(&mut self, name: impl Into<String>, m: &Matrix<F>, tol: f64) {
        let (passed, residual) = zero_check(m, tol);
        self.push(name, passed, residual);
    }

    /// Append every check of `other` with `prefix.` prepended to its name.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// `(vanishes, ‖m‖_F)`.
pub fn zero_check<F: Field>(m: &Matrix<F>, tol: f64) -> (bool, f64) {
    let residual = m.frobenius_norm();
    let passed = if F::EXACT { m.is_zero() } else { residual <= tol };
    (passed, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn merge_prefixes_names() {
        let mut inner = VerificationReport::new();
        inner.push_zero("zero", &Matrix::<Rational>::zeros(2), 0.0);
        inner.push_zero("one", &Matrix::<Rational>::identity(2), 0.0);
        let mut outer = VerificationReport::new();
        outer.merge("p", inner);
        assert!(outer.get("p.zero").unwrap().passed);
        let bad = outer.get("p.one").unwrap();
        assert!(!bad.passed);
        assert!((bad.residual - 2f64.sqrt()).abs() < 1e-15);
        assert!(!outer.passed());
    }

    #[test]
    fn float_zero_uses_tolerance() {
        let m = Matrix::diag(vec![1e-12, 0.0]);
        assert!(zero_check(&m, 1e-9).0);
        assert!(!zero_check(&m, 1e-13).0);
    }
}
