//! Execution of a task request.

use jordan_core::decompose::{
    additive_jordan_in, multiplicative_jordan_in, verify_additive, verify_multiplicative, Additive,
    AdditiveDecomposition, DecomposeOptions, Multiplicative, MultiplicativeDecomposition,
};
use jordan_core::json::{AdditiveJson, MatrixJson, MultiplicativeJson, PolyJson, Renderable};
use jordan_core::lie::{
    ad_group_spectrum_check, ad_spectrum_check, algebra_membership, closure_check_algebra, closure_check_group,
    group_membership, ClosureCheck, LieStructure,
};
use jordan_core::matrix::{minimal_polynomial, Matrix};
use jordan_core::projectors::build_projectors;
use jordan_core::sampling::{algebra_element, group_element, rng_for, run_indexed};
use jordan_core::scalar::{Radical, Rational, ToScalar};
use jordan_core::spectral::{classify_operator_in, effective_tolerance, factor_exact, Mode, ModeRequest};
use jordan_core::{JordanError, Result};
use num_complex::Complex;
use num_traits::Float;

use crate::report::{
    AdditiveSection, AdjointSection, ClassificationSection, ClosureSection, MultiplicativeSection, SampleKind,
    SampleResult, TaskReport,
};
use crate::request::{Operation, TaskRequest};

/// Rational generator factors per sampled group element.
pub const GROUP_FACTORS: usize = 3;

/// Floating-point format for numeric mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Single,
    Double,
}

impl Precision {
    /// From the value of `JORDAN_PRECISION_BITS`: unset or 53 is double, 24 is single.
    pub fn from_bits_var(v: Option<&str>) -> Result<Self> {
        match v.map(str::trim) {
            None | Some("53") => Ok(Precision::Double),
            Some("24") => Ok(Precision::Single),
            Some(other) => Err(JordanError::InvalidInput(format!(
                "JORDAN_PRECISION_BITS must be 24 or 53, got '{other}'"
            ))),
        }
    }

    pub fn bits(self) -> u32 {
        match self {
            Precision::Single => 24,
            Precision::Double => 53,
        }
    }
}

pub fn run(req: &TaskRequest, precision: Precision) -> TaskReport {
    let mut report = TaskReport::new(Some(req.echo()));
    if let Err(e) = execute(req, precision, &mut report) {
        report.set_error(&e);
    }
    report.finish();
    report
}

fn execute(req: &TaskRequest, precision: Precision, report: &mut TaskReport) -> Result<()> {
    match req.operation {
        Operation::Additive => additive(req, precision, report),
        Operation::Multiplicative => multiplicative(req, precision, report),
        Operation::Both => {
            additive(req, precision, report)?;
            multiplicative(req, precision, report)
        }
        Operation::Classify => classify(req, report),
        Operation::AdSpectrum => adjoint(req, false, report),
        Operation::AdGroupSpectrum => adjoint(req, true, report),
        Operation::LieClosure => closure(req, report),
    }
}

fn matrix(req: &TaskRequest) -> Result<&Matrix<Rational>> {
    req.matrix
        .as_ref()
        .ok_or_else(|| JordanError::InvalidInput(format!("{} needs a 'matrix'", req.operation.as_str())))
}

fn options(req: &TaskRequest) -> DecomposeOptions {
    DecomposeOptions { mode: req.mode, ..Default::default() }
}

fn additive(req: &TaskRequest, precision: Precision, report: &mut TaskReport) -> Result<()> {
    match precision {
        Precision::Single => additive_in::<f32>(req, report),
        Precision::Double => additive_in::<f64>(req, report),
    }
}

fn additive_in<N: Renderable + Float>(req: &TaskRequest, report: &mut TaskReport) -> Result<()>
where
    Complex<N>: ToScalar,
{
    let x = matrix(req)?;
    let section = match additive_jordan_in::<N>(x, &options(req))? {
        Additive::Exact(d) => additive_section::<Radical>(x, &d, req.tolerance)?,
        Additive::Numeric(d) => additive_section::<N>(x, &d, effective_tolerance::<N>(req.tolerance))?,
    };
    report.note_mode(section.result.mode, section.result.spectral.precision_bits);
    report.additive = Some(section);
    Ok(())
}

fn additive_section<R: Renderable>(x: &Matrix<Rational>, d: &AdditiveDecomposition<R>, tol: f64) -> Result<AdditiveSection>
where
    Complex<R>: ToScalar,
{
    let ps = build_projectors(&d.spectral)?;
    Ok(AdditiveSection { result: AdditiveJson::new(d, &ps), verification: verify_additive(x, d, tol)? })
}

fn multiplicative(req: &TaskRequest, precision: Precision, report: &mut TaskReport) -> Result<()> {
    match precision {
        Precision::Single => multiplicative_in::<f32>(req, report),
        Precision::Double => multiplicative_in::<f64>(req, report),
    }
}

fn multiplicative_in<N: Renderable + Float>(req: &TaskRequest, report: &mut TaskReport) -> Result<()>
where
    Complex<N>: ToScalar,
{
    let g = matrix(req)?;
    let section = match multiplicative_jordan_in::<N>(g, &options(req))? {
        Multiplicative::Exact(d) => multiplicative_section::<Radical>(g, &d, req.tolerance)?,
        Multiplicative::Numeric(d) => multiplicative_section::<N>(g, &d, effective_tolerance::<N>(req.tolerance))?,
    };
    report.note_mode(section.result.mode, section.result.spectral.precision_bits);
    report.multiplicative = Some(section);
    Ok(())
}

fn multiplicative_section<R: Renderable>(
    g: &Matrix<Rational>,
    d: &MultiplicativeDecomposition<R>,
    tol: f64,
) -> Result<MultiplicativeSection>
where
    Complex<R>: ToScalar,
{
    let ps = build_projectors(&d.spectral)?;
    Ok(MultiplicativeSection { result: MultiplicativeJson::new(d, &ps), verification: verify_multiplicative(g, d, tol)? })
}

fn numeric_bits(mode: Mode) -> Option<u32> {
    (mode == Mode::Numeric).then_some(Precision::Double.bits())
}

fn classify(req: &TaskRequest, report: &mut TaskReport) -> Result<()> {
    let t = matrix(req)?;
    let predicates = classify_operator_in(t, req.mode, req.tolerance)?;
    report.note_mode(predicates.mode, numeric_bits(predicates.mode));
    report.classification = Some(ClassificationSection { predicates, min_poly: PolyJson::from_poly(&minimal_polynomial(t)) });
    Ok(())
}

fn adjoint(req: &TaskRequest, group: bool, report: &mut TaskReport) -> Result<()> {
    let t = matrix(req)?;
    if req.mode == ModeRequest::Exact {
        factor_exact(&minimal_polynomial(t))?;
    }
    let check = if group { ad_group_spectrum_check(t, req.tolerance)? } else { ad_spectrum_check(t, req.tolerance)? };
    report.note_mode(check.mode, numeric_bits(check.mode));
    report.adjoint = Some(AdjointSection {
        operator: if group { "Ad" } else { "ad" },
        dimension: t.n() * t.n(),
        mode: check.mode,
        verification: check.report,
    });
    Ok(())
}

fn sample_result(kind: SampleKind, index: usize, seed: Option<u64>, m: &Matrix<Rational>, check: Result<ClosureCheck>) -> SampleResult {
    match check {
        Ok(c) => {
            let passed = c.report.passed();
            SampleResult {
                kind,
                index,
                seed,
                passed,
                mode: Some(c.mode),
                failures: c.report.failures().cloned().collect(),
                matrix: (!passed).then(|| MatrixJson::from_matrix(m)),
                error: None,
            }
        }
        Err(e) => SampleResult {
            kind,
            index,
            seed,
            passed: false,
            mode: None,
            failures: Vec::new(),
            matrix: Some(MatrixJson::from_matrix(m)),
            error: Some((&e).into()),
        },
    }
}

fn supplied_sample(m: &Matrix<Rational>, l: &LieStructure, opts: &DecomposeOptions, tol: f64) -> Result<SampleResult> {
    if algebra_membership(m, l, 0.0)?.member {
        let check = closure_check_algebra(m, l, opts, tol)?;
        Ok(sample_result(SampleKind::Algebra, 0, None, m, Ok(check)))
    } else if group_membership(m, l, 0.0)?.member {
        let check = closure_check_group(m, l, opts, tol)?;
        Ok(sample_result(SampleKind::Group, 0, None, m, Ok(check)))
    } else {
        Err(JordanError::NotMember(format!("{l} or its group")))
    }
}

/// A supplied matrix is checked against the algebra or the group it belongs
/// to. Without one, `samples` random algebra elements and `samples` random
/// group elements are checked; sample `i` uses seed `seed + i`.
fn closure(req: &TaskRequest, report: &mut TaskReport) -> Result<()> {
    let l = req
        .lie
        .as_ref()
        .ok_or_else(|| JordanError::InvalidInput("lie-closure needs a 'lie' structure".into()))?;
    let opts = options(req);
    let tol = req.tolerance;
    let samples = match &req.matrix {
        Some(m) => vec![supplied_sample(m, l, &opts, tol)?],
        None => {
            let mut v = run_indexed(req.seed, req.samples, |i, seed| {
                let x = algebra_element(l, &mut rng_for(seed));
                sample_result(SampleKind::Algebra, i, Some(seed), &x, closure_check_algebra(&x, l, &opts, tol))
            });
            v.extend(run_indexed(req.seed, req.samples, |i, seed| {
                let g = group_element(l, &mut rng_for(seed), GROUP_FACTORS);
                sample_result(SampleKind::Group, i, Some(seed), &g, closure_check_group(&g, l, &opts, tol))
            }));
            v
        }
    };
    for s in &samples {
        if let Some(m) = s.mode {
            report.note_mode(m, numeric_bits(m));
        }
    }
    let unavailable = samples.iter().find_map(|s| s.error.as_ref().filter(|e| e.exit_code == 4).cloned());
    let violations = samples.iter().filter(|s| !s.passed).count();
    report.closure = Some(ClosureSection { structure: l.to_string(), samples, violations });
    match unavailable {
        Some(e) => Err(JordanError::ExactModeUnavailable { factor: e.factor.unwrap_or_default(), degree: e.degree.unwrap_or(0) }),
        None => Ok(()),
    }
}
