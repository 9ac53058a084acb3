//! Adjoint operators, eigenvalue relations under `ad`/`Ad`, and Jordan
//! closure checks for the classical algebras `sl(n)`, `so(p,q)`, `sp(2m)` and
//! their groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decompose::{
    additive_jordan, multiplicative_jordan, Additive, AdditiveDecomposition, DecomposeOptions, Multiplicative,
    MultiplicativeDecomposition,
};
use crate::error::{JordanError, Result};
use crate::matrix::{characteristic_polynomial, matrix_exp_nilpotent, matrix_log_unipotent, Matrix};
use crate::poly::Poly;
use crate::report::{zero_check, VerificationReport};
use crate::scalar::{rat, Complex64, Field, GaussianRadical, Radical, Rational, RealField};
use crate::spectral::{classify_operator, factor_exact, ClassificationReport, Mode};

/// Largest `n` for which the `n² × n²` adjoint matrices are built.
pub const MAX_ADJOINT_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    So,
    Sp,
}

/// A classical linear Lie algebra together with its group, given by
/// defining equations on `n × n` matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LieSpec", into = "LieSpec")]
pub struct LieStructure {
    family: Family,
    n: usize,
    signature: Option<(usize, usize)>,
    /// `diag(1,…,1,−1,…,−1)` for `so(p,q)`, `[[0, I], [−I, 0]]` for `sp`.
    form: Option<Matrix<Rational>>,
}

/// Wire form: `{"family":"sl|sp","n":k}`, `{"family":"so","p":p,"q":q}`,
/// or `{"family":"so","n":k}` for the compact form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

impl TryFrom<LieSpec> for LieStructure {
    type Error = JordanError;

    fn try_from(s: LieSpec) -> Result<Self> {
        match (s.family, s.n, s.p, s.q) {
            (Family::Sl, Some(n), None, None) => LieStructure::sl(n),
            (Family::Sp, Some(n), None, None) => LieStructure::sp(n),
            (Family::So, Some(n), None, None) => LieStructure::so(n, 0),
            (Family::So, None, Some(p), Some(q)) => LieStructure::so(p, q),
            (Family::So, Some(n), Some(p), Some(q)) if n == p + q => LieStructure::so(p, q),
            _ => Err(JordanError::InvalidInput(
                "Lie structure needs {family, n} for sl/sp and {family, p, q} or {family, n} for so".into(),
            )),
        }
    }
}

impl From<LieStructure> for LieSpec {
    fn from(l: LieStructure) -> Self {
        match l.signature {
            Some((p, q)) => LieSpec { family: l.family, n: None, p: Some(p), q: Some(q) },
            None => LieSpec { family: l.family, n: Some(l.n), p: None, q: None },
        }
    }
}

impl fmt::Display for LieStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.signature) {
            (Family::Sl, _) => write!(f, "sl({})", self.n),
            (Family::Sp, _) => write!(f, "sp({})", self.n),
            (Family::So, Some((p, q))) => write!(f, "so({p},{q})"),
            (Family::So, None) => write!(f, "so({})", self.n),
        }
    }
}

fn unit(n: usize, r: usize, c: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n);
    m.set(r, c, rat(1, 1));
    m
}

impl LieStructure {
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(JordanError::InvalidInput(format!("sl(n) needs n >= 2, got {n}")));
        }
        Ok(LieStructure { family: Family::Sl, n, signature: None, form: None })
    }

    /// `so(p,q)` with form `diag(1ᵖ, (−1)^q)`.
    pub fn so(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n < 2 {
            return Err(JordanError::InvalidInput(format!("so(p,q) needs p + q >= 2, got {n}")));
        }
        let form = Matrix::diag((0..n).map(|i| rat(if i < p { 1 } else { -1 }, 1)).collect());
        let signature = (q > 0).then_some((p, q));
        Ok(LieStructure { family: Family::So, n, signature, form: Some(form) })
    }

    /// `sp(n)` on `n = 2m` dimensional space with `Ω = [[0, I], [−I, 0]]`.
    pub fn sp(n: usize) -> Result<Self> {
        if n < 2 || n % 2 == 1 {
            return Err(JordanError::InvalidInput(format!("sp(n) needs an even n >= 2, got {n}")));
        }
        let m = n / 2;
        let mut form = Matrix::zeros(n);
        for i in 0..m {
            form.set(i, m + i, rat(1, 1));
            form.set(m + i, i, rat(-1, 1));
        }
        Ok(LieStructure { family: Family::Sp, n, signature: None, form: Some(form) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Dimension of the defining representation.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> Option<(usize, usize)> {
        match self.family {
            Family::So => Some(self.signature.unwrap_or((self.n, 0))),
            _ => None,
        }
    }

    pub fn form(&self) -> Option<&Matrix<Rational>> {
        self.form.as_ref()
    }

    /// A basis of the Lie algebra over ℚ.
    pub fn basis(&self) -> Vec<Matrix<Rational>> {
        let n = self.n;
        match self.family {
            Family::Sl => {
                let mut out = Vec::new();
                for r in 0..n {
                    for c in 0..n {
                        if r != c {
                            out.push(unit(n, r, c));
                        }
                    }
                }
                for i in 0..n - 1 {
                    out.push(&unit(n, i, i) - &unit(n, i + 1, i + 1));
                }
                out
            }
            // J·A with A antisymmetric
            Family::So => {
                let j = self.form.as_ref().expect("so carries a form");
                let mut out = Vec::new();
                for r in 0..n {
                    for c in r + 1..n {
                        out.push(j * &(&unit(n, r, c) - &unit(n, c, r)));
                    }
                }
                out
            }
            // −Ω·S with S symmetric
            Family::Sp => {
                let w = self.form.as_ref().expect("sp carries a form");
                let mut out = Vec::new();
                for r in 0..n {
                    for c in r..n {
                        let s = if r == c { unit(n, r, r) } else { &unit(n, r, c) + &unit(n, c, r) };
                        out.push(-&(w * &s));
                    }
                }
                out
            }
        }
    }

    fn check_dim<F: Field>(&self, m: &Matrix<F>) -> Result<()> {
        if m.n() != self.n {
            return Err(JordanError::ShapeError(format!(
                "{self} acts on dimension {}, got a {}x{} matrix",
                self.n,
                m.n(),
                m.n()
            )));
        }
        Ok(())
    }
}

/// Result of a membership predicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Frobenius norm of the defect of the defining equations.
    pub residual: f64,
}

fn scalar_zero<F: Field>(x: &F, tol: f64) -> (bool, f64) {
    let r = x.magnitude();
    (if F::EXACT { x.is_zero() } else { r <= tol }, r)
}

fn both(a: (bool, f64), b: (bool, f64)) -> (bool, f64) {
    (a.0 && b.0, a.1.max(b.1))
}

/// Hadamard bound `∏ ‖row_i‖` on `|det m|`.
fn hadamard<F: Field>(m: &Matrix<F>) -> f64 {
    m.rows()
        .map(|r| r.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt())
        .product()
}

/// `tr X = 0` for `sl`, `XᵀJ + JX = 0` otherwise. `tol` is relative to
/// `max(1, ‖X‖_F)` and ignored for exact fields.
pub fn algebra_membership<F: Field>(x: &Matrix<F>, l: &LieStructure, tol: f64) -> Result<Membership> {
    l.check_dim(x)?;
    let scale = x.frobenius_norm().max(1.0);
    let (member, residual) = match &l.form {
        None => scalar_zero(&x.trace(), tol * scale),
        Some(j) => {
            let j: Matrix<F> = j.lift();
            zero_check(&(&(&x.transpose() * &j) + &(&j * x)), tol * scale)
        }
    };
    Ok(Membership { member, residual })
}

/// `det g = 1`, and `gᵀJg = J` when a form is present. Numeric tolerances are
/// relative to the Hadamard bound and `‖g‖_F²` respectively.
pub fn group_membership<F: Field>(g: &Matrix<F>, l: &LieStructure, tol: f64) -> Result<Membership> {
    l.check_dim(g)?;
    let det = scalar_zero(&(g.det() - F::one()), tol * hadamard(g).max(1.0));
    let (member, residual) = match &l.form {
        None => det,
        Some(j) => {
            let j: Matrix<F> = j.lift();
            let scale = g.frobenius_norm().powi(2).max(1.0);
            both(det, zero_check(&(&(&g.transpose() * &(&j * g)) - &j), tol * scale))
        }
    };
    Ok(Membership { member, residual })
}

fn check_adjoint_size(n: usize) -> Result<()> {
    if n > MAX_ADJOINT_DIM {
        return Err(JordanError::SizeLimit { n, max: MAX_ADJOINT_DIM });
    }
    Ok(())
}

/// Matrix of `Y ↦ XY − YX` on the basis `E_rs`, ordered row-major.
pub fn ad_operator<F: Field>(x: &Matrix<F>) -> Result<Matrix<F>> {
    let n = x.n();
    check_adjoint_size(n)?;
    let mut out = Matrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let mut v = F::zero();
                    if j == s {
                        v = v + x.get(i, r).clone();
                    }
                    if i == r {
                        v = v - x.get(s, j).clone();
                    }
                    if !v.is_zero() {
                        out.set(i * n + j, r * n + s, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of `Y ↦ gYg⁻¹` on the basis `E_rs`, ordered row-major.
pub fn ad_group_operator<F: Field>(g: &Matrix<F>) -> Result<Matrix<F>> {
    let n = g.n();
    check_adjoint_size(n)?;
    let inv = g.inverse()?;
    let mut out = Matrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = g.get(i, r).clone() * inv.get(s, j).clone();
                    if !v.is_zero() {
                        out.set(i * n + j, r * n + s, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues with algebraic multiplicity, exactly.
fn exact_eigenvalues(t: &Matrix<Rational>) -> Result<Vec<(GaussianRadical, usize)>> {
    Ok(factor_exact(&characteristic_polynomial(t))?.roots())
}

fn numeric_eigenvalues(t: &Matrix<Rational>) -> Vec<Complex64> {
    t.to_nalgebra_real().complex_eigenvalues().iter().copied().collect()
}

/// Largest distance of a greedy nearest-neighbour matching between two
/// multisets of equal size; an upper bound on the optimal bottleneck distance.
fn multiset_distance(want: &[Complex64], got: &[Complex64]) -> f64 {
    if want.len() != got.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(want.len() * got.len());
    for (i, a) in want.iter().enumerate() {
        for (j, b) in got.iter().enumerate() {
            pairs.push(((a - b).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_w = vec![false; want.len()];
    let mut used_g = vec![false; got.len()];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_w[i] && !used_g[j] {
            used_w[i] = true;
            used_g[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// Compare the eigenvalue multiset of `op` with `{f(λ_r, λ_s)}` over the
/// eigenvalues `λ` of `t`: exactly through characteristic polynomials when
/// the spectrum of `t` splits over quadratic extensions, numerically otherwise.
fn relation_check(
    report: &mut VerificationReport,
    t: &Matrix<Rational>,
    op: &Matrix<Rational>,
    exact_rel: impl Fn(&GaussianRadical, &GaussianRadical) -> GaussianRadical,
    numeric_rel: impl Fn(Complex64, Complex64) -> Complex64,
    tol: f64,
) -> Result<Mode> {
    match exact_eigenvalues(t) {
        Ok(eig) => {
            let mut want = Poly::<GaussianRadical>::one();
            for (a, ma) in &eig {
                for (b, mb) in &eig {
                    want = &want * &Poly::linear(&exact_rel(a, b)).pow(ma * mb);
                }
            }
            let got = characteristic_polynomial(op).map(GaussianRadical::from_rational);
            let residual = (&want - &got).max_norm();
            report.push("eigenvalue_multiset", want == got, residual);
            Ok(Mode::Exact)
        }
        Err(JordanError::ExactModeUnavailable { .. } | JordanError::RadicalBudget(_)) => {
            let eig = numeric_eigenvalues(t);
            let want: Vec<Complex64> =
                eig.iter().flat_map(|&a| eig.iter().map(move |&b| (a, b))).map(|(a, b)| numeric_rel(a, b)).collect();
            let got = numeric_eigenvalues(op);
            let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
            let d = multiset_distance(&want, &got);
            report.push("eigenvalue_multiset", d <= tol * scale, d);
            Ok(Mode::Numeric)
        }
        Err(e) => Err(e),
    }
}

fn implication(report: &mut VerificationReport, name: &str, premise: bool, conclusion: bool) {
    report.push(name, !premise || conclusion, 0.0);
}

/// Outcome of an `ad`/`Ad` spectrum check.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCheck {
    /// Arithmetic used for the eigenvalue comparison.
    pub mode: Mode,
    pub report: VerificationReport,
}

/// For semisimple `S`: eigenvalues of `ad(S)` are `{λ_r − λ_s}`, and
/// `ad(S)` inherits ellipticity and hyperbolicity from `S`.
///
/// `tol` is the numeric multiset tolerance, relative to the spectral radius.
pub fn ad_spectrum_check(s: &Matrix<Rational>, tol: f64) -> Result<SpectrumCheck> {
    let ad = ad_operator(s)?;
    let cs = classify_operator(s, tol)?;
    if !cs.semisimple {
        return Err(JordanError::NotSemisimple);
    }
    let mut report = VerificationReport::new();
    let mode = relation_check(&mut report, s, &ad, |a, b| a.clone() - b.clone(), |a, b| a - b, tol)?;
    let ca = classify_operator(&ad, tol)?;
    implication(&mut report, "elliptic_implies_ad_elliptic", cs.elliptic_add, ca.elliptic_add);
    implication(&mut report, "hyperbolic_implies_ad_hyperbolic", cs.hyperbolic_add, ca.hyperbolic_add);
    Ok(SpectrumCheck { mode, report })
}

/// For invertible semisimple `s`: eigenvalues of `Ad(s)` are `{λ_r λ_s⁻¹}` and
/// `Ad(s)` inherits multiplicative ellipticity and hyperbolicity. For unipotent
/// `u ≠ I`: `Ad(u)` is unipotent and equals `exp(ad(log u))`.
pub fn ad_group_spectrum_check(g: &Matrix<Rational>, tol: f64) -> Result<SpectrumCheck> {
    let big = ad_group_operator(g)?;
    let cg = classify_operator(g, tol)?;
    let mut report = VerificationReport::new();
    if cg.unipotent && !cg.semisimple {
        let m = g.n() * g.n();
        let shifted = &big - &Matrix::identity(m);
        report.push_zero("ad_unipotent", &shifted.pow(m), 0.0);
        let log = matrix_log_unipotent(g)?;
        let via_exp = matrix_exp_nilpotent(&ad_operator(&log)?)?;
        report.push_zero("ad_equals_exp_ad_log", &(&big - &via_exp), 0.0);
        return Ok(SpectrumCheck { mode: Mode::Exact, report });
    }
    if !cg.semisimple {
        return Err(JordanError::NotSemisimple);
    }
    let mode = relation_check(&mut report, g, &big, |a, b| a.clone() * b.inv(), |a, b| a / b, tol)?;
    let ca = classify_operator(&big, tol)?;
    implication(&mut report, "elliptic_implies_ad_elliptic", cg.elliptic_mult, ca.elliptic_mult);
    implication(&mut report, "hyperbolic_implies_ad_hyperbolic", cg.hyperbolic_mult, ca.hyperbolic_mult);
    Ok(SpectrumCheck { mode, report })
}

/// Outcome of a closure check.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureCheck {
    /// Arithmetic the decomposition was computed in.
    pub mode: Mode,
    pub report: VerificationReport,
}

fn push_membership(report: &mut VerificationReport, name: &str, m: Membership) {
    report.push(name, m.member, m.residual);
}

fn algebra_component_checks<R: RealField>(
    report: &mut VerificationReport,
    l: &LieStructure,
    d: &AdditiveDecomposition<R>,
    tol: f64,
) -> Result<()> {
    let comps = [("e", &d.e), ("h", &d.h), ("n", &d.n)];
    for (name, c) in comps {
        push_membership(report, &format!("member.{name}"), algebra_membership(c, l, tol)?);
    }
    let n = d.e.n() as f64;
    for (name, c) in comps {
        let (ok, r) = scalar_zero(&c.trace(), tol * n * c.frobenius_norm().max(1.0));
        report.push(format!("trace.{name}"), ok, r);
    }
    Ok(())
}

/// `ad(E)` elliptic, `ad(H)` hyperbolic and `ad(N)` nilpotent, for components
/// with rational entries.
pub fn adjoint_classification_check(d: &AdditiveDecomposition<Radical>, tol: f64) -> Result<VerificationReport> {
    let rational = |m: &Matrix<Radical>| {
        m.to_rational()
            .ok_or_else(|| JordanError::Internal("additive component of a rational matrix is not rational".into()))
    };
    let classify = |m: &Matrix<Radical>| -> Result<ClassificationReport> { classify_operator(&ad_operator(&rational(m)?)?, tol) };
    let mut report = VerificationReport::new();
    report.push("ad.e_elliptic", classify(&d.e)?.elliptic_add, 0.0);
    report.push("ad.h_hyperbolic", classify(&d.h)?.hyperbolic_add, 0.0);
    report.push("ad.n_nilpotent", classify(&d.n)?.nilpotent, 0.0);
    Ok(report)
}

/// Additive components of `X ∈ 𝔤` lie in `𝔤`, with the trace bookkeeping
/// `tr E = tr H = tr N = 0`. Exact components also get the `ad`
/// classification checks.
pub fn closure_check_algebra(x: &Matrix<Rational>, l: &LieStructure, opts: &DecomposeOptions, tol: f64) -> Result<ClosureCheck> {
    if !algebra_membership(x, l, 0.0)?.member {
        return Err(JordanError::NotMember(l.to_string()));
    }
    let mut report = VerificationReport::new();
    let mode = match additive_jordan(x, opts)? {
        Additive::Exact(d) => {
            algebra_component_checks(&mut report, l, &d, tol)?;
            if x.n() <= MAX_ADJOINT_DIM {
                report.merge("abstract", adjoint_classification_check(&d, tol)?);
            }
            Mode::Exact
        }
        Additive::Numeric(d) => {
            algebra_component_checks(&mut report, l, &d, tol)?;
            Mode::Numeric
        }
    };
    Ok(ClosureCheck { mode, report })
}

fn group_component_checks<R: RealField>(
    report: &mut VerificationReport,
    l: &LieStructure,
    d: &MultiplicativeDecomposition<R>,
    tol: f64,
) -> Result<()> {
    let comps = [("e", &d.e), ("h", &d.h), ("u", &d.u)];
    for (name, c) in comps {
        push_membership(report, &format!("member.{name}"), group_membership(c, l, tol)?);
    }
    for (name, c) in comps {
        let (ok, r) = scalar_zero(&(c.det() - R::one()), tol * hadamard(c).max(1.0));
        report.push(format!("det.{name}"), ok, r);
    }
    Ok(())
}

/// Multiplicative components of `g ∈ G` lie in `G`, with `det e = det h = det u = 1`.
pub fn closure_check_group(g: &Matrix<Rational>, l: &LieStructure, opts: &DecomposeOptions, tol: f64) -> Result<ClosureCheck> {
    if !group_membership(g, l, 0.0)?.member {
        return Err(JordanError::NotMember(l.to_string()));
    }
    let mut report = VerificationReport::new();
    let mode = match multiplicative_jordan(g, opts)? {
        Multiplicative::Exact(d) => {
            group_component_checks(&mut report, l, &d, tol)?;
            Mode::Exact
        }
        Multiplicative::Numeric(d) => {
            group_component_checks(&mut report, l, &d, tol)?;
            Mode::Numeric
        }
    };
    Ok(ClosureCheck { mode, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DEFAULT_ROOT_TOLERANCE;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| rat(k, 1)).collect()).collect()).unwrap()
    }

    fn qd(v: &[(i64, i64)]) -> Matrix<Rational> {
        Matrix::diag(v.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn ad_of_trivial_inputs() {
        assert!(ad_operator(&Matrix::<Rational>::zeros(3)).unwrap().is_zero());
        assert!(ad_operator(&Matrix::<Rational>::identity(3)).unwrap().is_zero());
        let ad = ad_operator(&qd(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(ad, qd(&[(0, 1), (2, 1), (-2, 1), (0, 1)]));
    }

    #[test]
    fn ad_group_examples() {
        assert!(ad_group_operator(&Matrix::<Rational>::identity(3)).unwrap().is_identity());
        let a = ad_group_operator(&qd(&[(2, 1), (1, 1)])).unwrap();
        assert_eq!(a, qd(&[(1, 1), (2, 1), (1, 2), (1, 1)]));
        let u = ad_group_operator(&qm(&[&[1, 1], &[0, 1]])).unwrap();
        let m = &u - &Matrix::identity(4);
        assert!(!m.pow(2).is_zero());
        assert!(m.pow(3).is_zero());
    }

    #[test]
    fn size_limit_and_singular() {
        let big = Matrix::<Rational>::identity(9);
        assert_eq!(ad_operator(&big), Err(JordanError::SizeLimit { n: 9, max: 8 }));
        assert_eq!(ad_group_operator(&Matrix::<Rational>::zeros(2)), Err(JordanError::NotInvertible));
    }

    #[test]
    fn ad_matches_commutator() {
        let x = qm(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]);
        let y = qm(&[&[0, 1, -1], &[2, 0, 0], &[1, 1, 1]]);
        let ad = ad_operator(&x).unwrap();
        let flat = Matrix::<Rational>::new(9, {
            let mut v = vec![rat(0, 1); 81];
            for k in 0..9 {
                v[k * 9] = y.data()[k].clone();
            }
            v
        })
        .unwrap();
        let col = &ad * &flat;
        let want = x.commutator(&y);
        for k in 0..9 {
            assert_eq!(col.get(k, 0), &want.data()[k]);
        }
    }

    #[test]
    fn ad_spectrum_examples() {
        let r = ad_spectrum_check(&qd(&[(1, 1), (-1, 1)]), 1e-8).unwrap();
        assert!(r.report.passed() && r.mode == Mode::Exact, "{r:?}");
        let rot = ad_spectrum_check(&qm(&[&[0, 1], &[-1, 0]]), 1e-8).unwrap();
        assert!(rot.report.passed(), "{rot:?}");
        assert!(ad_spectrum_check(&Matrix::zeros(3), 1e-8).unwrap().report.passed());
        assert_eq!(ad_spectrum_check(&qm(&[&[0, 1], &[0, 0]]), 1e-8), Err(JordanError::NotSemisimple));
    }

    #[test]
    fn ad_spectrum_numeric_path() {
        // companion of x^3 - 2
        let c = qm(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        let r = ad_spectrum_check(&c, 1e-8).unwrap();
        assert_eq!(r.mode, Mode::Numeric);
        assert!(r.report.passed(), "{r:?}");
        let r = ad_group_spectrum_check(&c, 1e-8).unwrap();
        assert!(r.report.passed(), "{r:?}");
    }

    #[test]
    fn ad_group_spectrum_examples() {
        let r = ad_group_spectrum_check(&qd(&[(2, 1), (1, 1)]), 1e-8).unwrap();
        assert!(r.report.passed() && r.mode == Mode::Exact, "{r:?}");
        assert!(ad_group_spectrum_check(&Matrix::identity(2), 1e-8).unwrap().report.passed());
        let u = ad_group_spectrum_check(&qm(&[&[1, 1], &[0, 1]]), 1e-8).unwrap();
        assert!(u.report.get("ad_unipotent").unwrap().passed);
        assert!(u.report.passed(), "{u:?}");
        let rot = ad_group_spectrum_check(&qm(&[&[0, 1], &[-1, 0]]), 1e-8).unwrap();
        assert!(rot.report.passed(), "{rot:?}");
        assert_eq!(ad_group_spectrum_check(&Matrix::zeros(2), 1e-8), Err(JordanError::NotInvertible));
        assert_eq!(ad_group_spectrum_check(&qm(&[&[2, 1], &[0, 2]]), 1e-8), Err(JordanError::NotSemisimple));
    }

    #[test]
    fn wrong_eigenvalue_relation_is_caught() {
        let s = qd(&[(1, 1), (3, 1)]);
        let mut report = VerificationReport::new();
        let ad = ad_operator(&s).unwrap();
        relation_check(&mut report, &s, &ad, |a, b| a.clone() + b.clone(), |a, b| a + b, 1e-8).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn membership_examples() {
        let sl2 = LieStructure::sl(2).unwrap();
        assert!(algebra_membership(&qd(&[(1, 1), (-1, 1)]), &sl2, 0.0).unwrap().member);
        let id = algebra_membership(&Matrix::<Rational>::identity(2), &sl2, 0.0).unwrap();
        assert!(!id.member && id.residual == 2.0);
        let so11 = LieStructure::so(1, 1).unwrap();
        assert!(algebra_membership(&qm(&[&[0, 1], &[1, 0]]), &so11, 0.0).unwrap().member);
        assert!(!algebra_membership(&qm(&[&[0, 1], &[-1, 0]]), &so11, 0.0).unwrap().member);

        assert!(group_membership(&qm(&[&[1, 1], &[0, 1]]), &sl2, 0.0).unwrap().member);
        assert!(!group_membership(&qd(&[(2, 1), (1, 1)]), &sl2, 0.0).unwrap().member);
        let h = Matrix::from_rows(vec![vec![rat(5, 4), rat(3, 4)], vec![rat(3, 4), rat(5, 4)]]).unwrap();
        assert!(group_membership(&h, &so11, 0.0).unwrap().member);
        assert!(matches!(algebra_membership(&Matrix::<Rational>::zeros(3), &sl2, 0.0), Err(JordanError::ShapeError(_))));
    }

    #[test]
    fn float_membership_uses_tolerance() {
        let sl2 = LieStructure::sl(2).unwrap();
        let x = Matrix::diag(vec![1.0, -1.0 + 1e-12]);
        assert!(algebra_membership(&x, &sl2, TOL).unwrap().member);
        assert!(!algebra_membership(&x, &sl2, 1e-14).unwrap().member);
    }

    #[test]
    fn bases_satisfy_their_equations() {
        for (l, dim) in [
            (LieStructure::sl(3).unwrap(), 8),
            (LieStructure::so(2, 1).unwrap(), 3),
            (LieStructure::so(4, 0).unwrap(), 6),
            (LieStructure::sp(4).unwrap(), 10),
        ] {
            let b = l.basis();
            assert_eq!(b.len(), dim, "{l}");
            for m in &b {
                assert!(algebra_membership(m, &l, 0.0).unwrap().member, "{l}");
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        for s in [r#"{"family":"sl","n":3}"#, r#"{"family":"so","p":2,"q":1}"#, r#"{"family":"sp","n":4}"#] {
            let l: LieStructure = serde_json::from_str(s).unwrap();
            assert_eq!(serde_json::to_string(&l).unwrap(), s);
        }
        let compact: LieStructure = serde_json::from_str(r#"{"family":"so","n":3}"#).unwrap();
        assert_eq!(compact.signature(), Some((3, 0)));
        assert!(serde_json::from_str::<LieStructure>(r#"{"family":"sp","n":3}"#).is_err());
        assert!(serde_json::from_str::<LieStructure>(r#"{"family":"sl","p":3,"q":1}"#).is_err());
        assert_eq!(LieStructure::so(2, 1).unwrap().to_string(), "so(2,1)");
    }

    fn opts() -> DecomposeOptions {
        DecomposeOptions { root_tolerance: DEFAULT_ROOT_TOLERANCE, ..Default::default() }
    }

    #[test]
    fn algebra_closure_examples() {
        let sl2 = LieStructure::sl(2).unwrap();
        let r = closure_check_algebra(&qm(&[&[0, 1], &[0, 0]]), &sl2, &opts(), TOL).unwrap();
        assert!(r.report.passed() && r.mode == Mode::Exact, "{r:?}");

        let sl3 = LieStructure::sl(3).unwrap();
        let x = Matrix::block_diag(&[qm(&[&[1, 1], &[-1, 1]]), qm(&[&[-2]])]);
        let r = closure_check_algebra(&x, &sl3, &opts(), TOL).unwrap();
        assert!(r.report.passed(), "{r:?}");
        let Additive::Exact(d) = additive_jordan(&x, &opts()).unwrap() else { panic!() };
        assert_eq!(d.e, Matrix::block_diag(&[qm(&[&[0, 1], &[-1, 0]]), qm(&[&[0]])]).lift());
        assert_eq!(d.h, qd(&[(1, 1), (1, 1), (-2, 1)]).lift());
        assert!(d.n.is_zero());

        assert!(matches!(
            closure_check_algebra(&Matrix::identity(2), &sl2, &opts(), TOL),
            Err(JordanError::NotMember(_))
        ));
    }

    #[test]
    fn group_closure_examples() {
        let sl2 = LieStructure::sl(2).unwrap();
        let r = closure_check_group(&qm(&[&[1, 1], &[0, 1]]), &sl2, &opts(), TOL).unwrap();
        assert!(r.report.passed(), "{r:?}");
        let h = qd(&[(2, 1), (1, 2)]);
        let r = closure_check_group(&h, &sl2, &opts(), TOL).unwrap();
        assert!(r.report.passed(), "{r:?}");
        let Multiplicative::Exact(d) = multiplicative_jordan(&h, &opts()).unwrap() else { panic!() };
        assert_eq!(d.h, h.lift());
        assert!(d.e.is_identity() && d.u.is_identity());

        // [[1,2],[0,1]]·[[1,0],[3,1]] has trace 8
        let g = &qm(&[&[1, 2], &[0, 1]]) * &qm(&[&[1, 0], &[3, 1]]);
        let r = closure_check_group(&g, &sl2, &opts(), TOL).unwrap();
        assert!(r.report.passed(), "{r:?}");
        assert_eq!(r.mode, Mode::Exact);

        assert!(matches!(
            closure_check_group(&qd(&[(2, 1), (1, 1)]), &sl2, &opts(), TOL),
            Err(JordanError::NotMember(_))
        ));
    }

    #[test]
    fn so21_hyperbolic_rotation_closure() {
        let l = LieStructure::so(2, 1).unwrap();
        let mut g = Matrix::<Rational>::identity(3);
        g.set(0, 0, rat(5, 4));
        g.set(2, 2, rat(5, 4));
        g.set(0, 2, rat(3, 4));
        g.set(2, 0, rat(3, 4));
        let r = closure_check_group(&g, &l, &opts(), TOL).unwrap();
        assert!(r.report.passed(), "{r:?}");
    }

    #[test]
    fn chain_rule_and_exp_compatibility() {
        let x = qm(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 2]]);
        let y = qm(&[&[0, 1, -1], &[2, 0, 0], &[1, 1, 1]]);
        let (ax, ay) = (ad_operator(&x).unwrap(), ad_operator(&y).unwrap());
        assert_eq!(ad_operator(&x.commutator(&y)).unwrap(), ax.commutator(&ay));
        let n = qm(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let lhs = ad_group_operator(&matrix_exp_nilpotent(&n).unwrap()).unwrap();
        let rhs = matrix_exp_nilpotent(&ad_operator(&n).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiset_distance_matches_permutations() {
        let a = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
        let b = [a[2], a[0], a[1] + Complex64::new(1e-10, 0.0)];
        assert!(multiset_distance(&a, &b) < 2e-10);
        assert_eq!(multiset_distance(&a, &b[..2]), f64::INFINITY);
    }
}
