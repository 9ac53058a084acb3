//! Additive `X = E + H + N` and multiplicative `g = e·h·u` Jordan
//! decompositions with witness polynomials, and their verification.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{JordanError, Result};
use crate::matrix::{commutes, eval_poly_at_rational_matrix, minimal_polynomial, Matrix};
use crate::poly::{mod_reduce, Poly};
use crate::projectors::{build_projectors, lift_real, real_part_checked, verify_projector_identities, ProjectorSet};
use crate::report::{zero_check, VerificationReport};
use crate::scalar::{norm_sq, Field, Radical, Rational, RealField};
use crate::spectral::{
    classify_operator, factor_exact, factor_minimal_polynomial_in, factor_numeric, Mode, ModeRequest,
    SpectralData, Spectrum, DEFAULT_ROOT_TOLERANCE,
};

/// Largest number of radical terms allowed in a witness coefficient before
/// the multiplicative decomposition falls back to numeric mode.
pub const DEFAULT_RADICAL_BUDGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposeOptions {
    pub mode: ModeRequest,
    pub root_tolerance: f64,
    pub radical_budget: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            mode: ModeRequest::Auto,
            root_tolerance: DEFAULT_ROOT_TOLERANCE,
            radical_budget: DEFAULT_RADICAL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveDecomposition<R: RealField> {
    pub e: Matrix<R>,
    pub h: Matrix<R>,
    pub n: Matrix<R>,
    pub witness_e: Poly<R>,
    pub witness_h: Poly<R>,
    pub witness_n: Poly<R>,
    pub spectral: SpectralData<R>,
}

impl<R: RealField> AdditiveDecomposition<R> {
    /// Semisimple part `S = E + H`.
    pub fn s(&self) -> Matrix<R> {
        &self.e + &self.h
    }

    pub fn mode(&self) -> Mode {
        self.spectral.mode
    }
}

/// One term `½·ln(m)·P` of a spectrally stored logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLogTerm<R: RealField> {
    /// `|λ_k|²`.
    pub modulus_sq: R,
    pub projector: Matrix<R>,
}

/// `Σ ½·ln(m_k)·P_k`; the logarithms are transcendental so only the
/// spectral data is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLog<R: RealField> {
    pub terms: Vec<SpectralLogTerm<R>>,
}

impl<R: RealField> SpectralLog<R> {
    /// Dense double-precision rendering.
    pub fn dense(&self, n: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(n, n);
        for t in &self.terms {
            out += t.projector.to_nalgebra_real() * (0.5 * t.modulus_sq.to_f64().ln());
        }
        out
    }

    /// Numeric matrix exponential of [`Self::dense`].
    pub fn exp_numeric(&self, n: usize) -> DMatrix<f64> {
        self.dense(n).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicativeDecomposition<R: RealField> {
    pub e: Matrix<R>,
    pub h: Matrix<R>,
    pub u: Matrix<R>,
    pub witness_e: Poly<R>,
    pub witness_h: Poly<R>,
    pub witness_u: Poly<R>,
    pub log_h: SpectralLog<R>,
    /// Nilpotent additive component `N` of `g`.
    pub nilpotent: Matrix<R>,
    pub witness_n: Poly<R>,
    pub spectral: SpectralData<R>,
    /// Why exact mode was abandoned, when it was.
    pub fallback: Option<String>,
}

impl<R: RealField> MultiplicativeDecomposition<R> {
    pub fn mode(&self) -> Mode {
        self.spectral.mode
    }
}

/// Additive decomposition in the mode that was used.
#[derive(Debug, Clone, PartialEq)]
pub enum Additive<N: RealField = f64> {
    Exact(AdditiveDecomposition<Radical>),
    Numeric(AdditiveDecomposition<N>),
}

/// Multiplicative decomposition in the mode that was used.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplicative<N: RealField = f64> {
    Exact(MultiplicativeDecomposition<Radical>),
    Numeric(MultiplicativeDecomposition<N>),
}

fn real_witness<R: RealField>(p: &Poly<Complex<R>>, pt: &Poly<Complex<R>>, what: &str) -> Result<Poly<R>> {
    real_part_checked(&mod_reduce(p, pt)?, what)
}

fn add_with_conjugate<R: RealField>(acc: &Poly<Complex<R>>, t: &Poly<Complex<R>>) -> Poly<Complex<R>> {
    &(acc + t) + &t.conjugate()
}

fn re<R: RealField>(x: &R) -> Complex<R> {
    Complex::new(x.clone(), R::zero())
}

/// `(E, H, N)` witnesses, reduced mod `p_T`.
fn additive_witnesses<R: RealField>(ps: &ProjectorSet<R>) -> Result<(Poly<R>, Poly<R>, Poly<R>)> {
    let spec = &ps.spectral;
    let pt = spec.min_poly_lifted();
    let mut e = Poly::zero();
    let mut h = Poly::zero();
    let mut n = Poly::zero();
    for (pair, pi) in spec.complex_pairs.iter().zip(&ps.pair_projectors) {
        let iv = Complex::new(R::zero(), pair.v().clone());
        e = add_with_conjugate(&e, &pi.scale(&iv));
        h = &h + &(pi + &pi.conjugate()).scale(&re(pair.u()));
        n = add_with_conjugate(&n, &(&Poly::linear(&pair.lambda) * pi));
    }
    for (root, pi) in spec.real_roots.iter().zip(&ps.real_projectors) {
        let pi = lift_real(pi);
        h = &h + &pi.scale(&re(&root.value));
        n = &n + &(&Poly::linear(&re(&root.value)) * &pi);
    }
    Ok((
        real_witness(&e, &pt, "elliptic witness")?,
        real_witness(&h, &pt, "hyperbolic witness")?,
        real_witness(&n, &pt, "nilpotent witness")?,
    ))
}

fn check_square_input(x: &Matrix<Rational>, spec_poly: &Poly<Rational>) -> Result<()> {
    if spec_poly.degree().unwrap_or(0) > x.n() {
        return Err(JordanError::InconsistentInput(
            "spectral data has higher degree than the matrix dimension".into(),
        ));
    }
    Ok(())
}

/// Assemble the additive components from already built projectors.
pub fn additive_from_projectors<R: RealField>(x: &Matrix<Rational>, ps: &ProjectorSet<R>) -> Result<AdditiveDecomposition<R>> {
    check_square_input(x, &ps.spectral.min_poly)?;
    let (we, wh, wn) = additive_witnesses(ps)?;
    Ok(AdditiveDecomposition {
        e: eval_poly_at_rational_matrix(&we, x),
        h: eval_poly_at_rational_matrix(&wh, x),
        n: eval_poly_at_rational_matrix(&wn, x),
        witness_e: we,
        witness_h: wh,
        witness_n: wn,
        spectral: ps.spectral.clone(),
    })
}

pub fn additive_jordan_with<R: RealField>(x: &Matrix<Rational>, spec: &SpectralData<R>) -> Result<AdditiveDecomposition<R>> {
    additive_from_projectors(x, &build_projectors(spec)?)
}

/// Exact additive decomposition; fails with `ExactModeUnavailable` when the
/// minimal polynomial has an irreducible factor of degree ≥ 3.
pub fn additive_jordan_exact(x: &Matrix<Rational>) -> Result<AdditiveDecomposition<Radical>> {
    additive_jordan_with(x, &factor_exact(&minimal_polynomial(x))?)
}

pub fn additive_jordan_numeric<R: RealField + Float>(x: &Matrix<Rational>, root_tol: f64) -> Result<AdditiveDecomposition<R>> {
    additive_jordan_with(x, &factor_numeric::<R>(&minimal_polynomial(x), root_tol)?)
}

/// `X = E + H + N` in the requested mode, double precision when numeric.
pub fn additive_jordan(x: &Matrix<Rational>, opts: &DecomposeOptions) -> Result<Additive> {
    additive_jordan_in::<f64>(x, opts)
}

/// `X = E + H + N` in the requested mode, numeric arithmetic in `N`.
pub fn additive_jordan_in<N: RealField + Float>(x: &Matrix<Rational>, opts: &DecomposeOptions) -> Result<Additive<N>> {
    let p = minimal_polynomial(x);
    Ok(match factor_minimal_polynomial_in::<N>(&p, opts.mode, opts.root_tolerance)? {
        Spectrum::Exact(s) => Additive::Exact(additive_jordan_with(x, &s)?),
        Spectrum::Numeric(s) => Additive::Numeric(additive_jordan_with(x, &s)?),
    })
}

fn budget_check<R: RealField>(p: &Poly<R>, budget: usize, what: &str) -> Result<()> {
    let worst = p.coeffs().iter().map(Field::term_count).max().unwrap_or(0);
    if worst > budget {
        return Err(JordanError::RadicalBudget(format!(
            "{what} needs {worst} radical terms, budget is {budget}"
        )));
    }
    Ok(())
}

/// Assemble the multiplicative components from already built projectors.
pub fn multiplicative_from_projectors<R: RealField>(
    g: &Matrix<Rational>,
    ps: &ProjectorSet<R>,
    radical_budget: usize,
) -> Result<MultiplicativeDecomposition<R>> {
    let spec = &ps.spectral;
    check_square_input(g, &spec.min_poly)?;
    if Zero::is_zero(&spec.min_poly.coeff(0)) {
        return Err(JordanError::NotInvertible);
    }
    let (_, _, wn) = additive_witnesses(ps)?;
    let pt = spec.min_poly_lifted();
    let mut e = Poly::zero();
    let mut h = Poly::zero();
    let mut sinv = Poly::zero();
    for (pair, pi) in spec.complex_pairs.iter().zip(&ps.pair_projectors) {
        let modulus = pair.modulus_sq.sqrt_checked().ok_or_else(|| {
            JordanError::RadicalBudget(format!("modulus of {:?} is not a radical", pair.lambda))
        })?;
        let minv = modulus.inv();
        let w = Complex::new(pair.u().clone() * minv.clone(), pair.v().clone() * minv);
        e = add_with_conjugate(&e, &pi.scale(&w));
        h = &h + &(pi + &pi.conjugate()).scale(&re(&modulus));
        sinv = add_with_conjugate(&sinv, &pi.scale(&pair.lambda.inv()));
    }
    for (root, pi) in spec.real_roots.iter().zip(&ps.real_projectors) {
        let pi = lift_real(pi);
        let sign = if root.value.cmp_zero() == std::cmp::Ordering::Less { -R::one() } else { R::one() };
        e = &e + &pi.scale(&re(&sign));
        h = &h + &pi.scale(&re(&root.value.abs_val()));
        sinv = &sinv + &pi.scale(&re(&root.value.inv()));
    }
    let we = real_witness(&e, &pt, "elliptic witness")?;
    let wh = real_witness(&h, &pt, "hyperbolic witness")?;
    let sinv = real_witness(&sinv, &pt, "inverse semisimple witness")?;
    budget_check(&we, radical_budget, "elliptic witness")?;
    budget_check(&wh, radical_budget, "hyperbolic witness")?;
    let pt_real = spec.min_poly.map(R::from_rational);
    let wu = &Poly::one() + &mod_reduce(&(&wn * &sinv), &pt_real)?;

    let log_terms = spec
        .complex_pairs
        .iter()
        .map(|p| p.modulus_sq.clone())
        .chain(spec.real_roots.iter().map(|r| r.modulus_sq.clone()))
        .zip(ps.real_frame_polys())
        .map(|(modulus_sq, frame)| SpectralLogTerm {
            modulus_sq,
            projector: eval_poly_at_rational_matrix(&frame, g),
        })
        .collect();

    Ok(MultiplicativeDecomposition {
        e: eval_poly_at_rational_matrix(&we, g),
        h: eval_poly_at_rational_matrix(&wh, g),
        u: eval_poly_at_rational_matrix(&wu, g),
        nilpotent: eval_poly_at_rational_matrix(&wn, g),
        witness_e: we,
        witness_h: wh,
        witness_u: wu,
        witness_n: wn,
        log_h: SpectralLog { terms: log_terms },
        spectral: spec.clone(),
        fallback: None,
    })
}

pub fn multiplicative_jordan_with<R: RealField>(
    g: &Matrix<Rational>,
    spec: &SpectralData<R>,
    radical_budget: usize,
) -> Result<MultiplicativeDecomposition<R>> {
    multiplicative_from_projectors(g, &build_projectors(spec)?, radical_budget)
}

fn invertible_min_poly(g: &Matrix<Rational>) -> Result<Poly<Rational>> {
    let p = minimal_polynomial(g);
    if Zero::is_zero(&p.coeff(0)) {
        return Err(JordanError::NotInvertible);
    }
    Ok(p)
}

/// Exact multiplicative decomposition over the radical ring.
pub fn multiplicative_jordan_exact(g: &Matrix<Rational>) -> Result<MultiplicativeDecomposition<Radical>> {
    let p = invertible_min_poly(g)?;
    multiplicative_jordan_with(g, &factor_exact(&p)?, usize::MAX)
}

pub fn multiplicative_jordan_numeric<R: RealField + Float>(
    g: &Matrix<Rational>,
    root_tol: f64,
) -> Result<MultiplicativeDecomposition<R>> {
    let p = invertible_min_poly(g)?;
    multiplicative_jordan_with(g, &factor_numeric::<R>(&p, root_tol)?, usize::MAX)
}

/// `g = e·h·u` in the requested mode, double precision when numeric.
/// Exceeding the radical budget falls back to numeric mode and records the
/// reason in `fallback`.
pub fn multiplicative_jordan(g: &Matrix<Rational>, opts: &DecomposeOptions) -> Result<Multiplicative> {
    multiplicative_jordan_in::<f64>(g, opts)
}

/// `g = e·h·u` in the requested mode, numeric arithmetic in `N`.
pub fn multiplicative_jordan_in<N: RealField + Float>(
    g: &Matrix<Rational>,
    opts: &DecomposeOptions,
) -> Result<Multiplicative<N>> {
    let p = invertible_min_poly(g)?;
    let numeric = |reason: Option<String>| -> Result<Multiplicative<N>> {
        let s = factor_numeric::<N>(&p, opts.root_tolerance)?;
        let mut d = multiplicative_jordan_with(g, &s, usize::MAX)?;
        d.fallback = reason;
        Ok(Multiplicative::Numeric(d))
    };
    match factor_minimal_polynomial_in::<N>(&p, opts.mode, opts.root_tolerance)? {
        Spectrum::Exact(s) => match multiplicative_jordan_with(g, &s, opts.radical_budget) {
            Ok(d) => Ok(Multiplicative::Exact(d)),
            Err(JordanError::RadicalBudget(why)) => numeric(Some(why)),
            Err(e) => Err(e),
        },
        Spectrum::Numeric(_) => numeric(None),
    }
}

// ---------------------------------------------------------------------------
// verification

/// Residual tolerance scaled by dimension and input size; zero in exact mode.
fn scaled_tolerance<R: RealField>(tol: f64, x: &Matrix<Rational>) -> f64 {
    if R::EXACT {
        0.0
    } else {
        let norm = x.frobenius_norm().max(1.0);
        tol * x.n() as f64 * norm
    }
}

fn check_shapes(n: usize, mats: &[usize]) -> Result<()> {
    if mats.iter().any(|&m| m != n) {
        return Err(JordanError::ShapeError("component dimensions differ from the input".into()));
    }
    Ok(())
}

fn push_commutators<R: RealField>(report: &mut VerificationReport, pairs: [(&str, &Matrix<R>, &Matrix<R>); 3], tol: f64) -> Result<()> {
    for (name, a, b) in pairs {
        let c = commutes(a, b, tol)?;
        report.push(name, c.commutes, c.residual);
    }
    Ok(())
}

fn is_small<R: RealField>(x: &R, tol: f64) -> bool {
    if R::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= tol
    }
}

/// Eigenvalue of `c` on the image of each projector, `tr(C·P)/tr(P)`, and
/// the defect `C − Σ w_k P_k` (zero iff `C` acts as a scalar on every image).
fn frame_values<R: RealField>(c: &Matrix<Complex<R>>, frames: &[Matrix<Complex<R>>]) -> (Vec<Complex<R>>, Matrix<Complex<R>>) {
    let n = c.n();
    let mut values = Vec::with_capacity(frames.len());
    let mut defect = c.clone();
    for p in frames {
        let tp = p.trace();
        let w = if tp.is_zero() { Complex::new(R::zero(), R::zero()) } else { (c * p).trace() / tp };
        defect = &defect - &p.scale(&w);
        values.push(w);
    }
    debug_assert_eq!(defect.n(), n);
    (values, defect)
}

#[derive(Clone, Copy)]
enum Kind {
    EllipticAdd,
    HyperbolicAdd,
    EllipticMult,
    HyperbolicMult,
}

/// Classification of `c` relative to the spectral frame of the input.
fn frame_classify<R: RealField>(c: &Matrix<R>, frames: &[Matrix<Complex<R>>], kind: Kind, tol: f64) -> (bool, f64) {
    let (values, defect) = frame_values(&c.complexify(), frames);
    let (mut ok, mut residual) = zero_check(&defect, tol);
    for w in &values {
        let (good, r) = match kind {
            Kind::EllipticAdd => (is_small(&w.re, tol), w.re.magnitude()),
            Kind::HyperbolicAdd => (is_small(&w.im, tol), w.im.magnitude()),
            Kind::EllipticMult => {
                let d = norm_sq(w) - R::one();
                (is_small(&d, tol), d.magnitude())
            }
            Kind::HyperbolicMult => {
                let positive = w.re.cmp_zero() == std::cmp::Ordering::Greater && !is_small(&w.re, tol);
                (is_small(&w.im, tol) && positive, w.im.magnitude())
            }
        };
        ok &= good;
        residual = residual.max(r);
    }
    (ok, residual)
}

fn nilpotent_check<R: RealField>(c: &Matrix<R>, tol: f64) -> (bool, f64) {
    zero_check(&c.pow(c.n()), tol)
}

fn unipotent_check<R: RealField>(c: &Matrix<R>, tol: f64) -> (bool, f64) {
    nilpotent_check(&(c - &Matrix::identity(c.n())), tol)
}

fn matrix_gap<F: Field>(a: &Matrix<F>, b: &Matrix<F>, tol: f64) -> (bool, f64) {
    zero_check(&(a - b), tol)
}

fn combine(parts: &[(bool, f64)]) -> (bool, f64) {
    parts.iter().fold((true, 0.0), |(ok, r), (p, x)| (ok && *p, r.max(*x)))
}

/// Checks reconstruction, commutation, component classes and uniqueness
/// probes of an additive decomposition of `x`.
pub fn verify_additive<R: RealField>(x: &Matrix<Rational>, d: &AdditiveDecomposition<R>, tol: f64) -> Result<VerificationReport> {
    let n = x.n();
    check_shapes(n, &[d.e.n(), d.h.n(), d.n.n()])?;
    let tol = scaled_tolerance::<R>(tol, x);
    let mut report = VerificationReport::new();
    let xr: Matrix<R> = x.lift();

    report.push_zero("reconstruction", &(&(&(&d.e + &d.h) + &d.n) - &xr), tol);
    push_commutators(
        &mut report,
        [("commute.e_h", &d.e, &d.h), ("commute.e_n", &d.e, &d.n), ("commute.h_n", &d.h, &d.n)],
        tol,
    )?;

    let ps = build_projectors(&d.spectral)?;
    let frames = ps.evaluate_all(x);
    report.merge("projectors", verify_projector_identities(&ps, x, tol)?);

    let rational = if R::EXACT {
        match (d.e.to_rational(), d.h.to_rational(), d.n.to_rational()) {
            (Some(e), Some(h), Some(nn)) => Some((e, h, nn)),
            _ => None,
        }
    } else {
        None
    };

    match &rational {
        Some((e, h, nn)) => {
            let ce = classify_operator(e, DEFAULT_ROOT_TOLERANCE)?;
            let ch = classify_operator(h, DEFAULT_ROOT_TOLERANCE)?;
            let cn = classify_operator(nn, DEFAULT_ROOT_TOLERANCE)?;
            report.push("class.e_elliptic", ce.elliptic_add, 0.0);
            report.push("class.h_hyperbolic", ch.hyperbolic_add, 0.0);
            report.push("class.n_nilpotent", cn.nilpotent, 0.0);
        }
        None => {
            let (ok, r) = frame_classify(&d.e, &frames, Kind::EllipticAdd, tol);
            report.push("class.e_elliptic", ok, r);
            let (ok, r) = frame_classify(&d.h, &frames, Kind::HyperbolicAdd, tol);
            report.push("class.h_hyperbolic", ok, r);
            let (ok, r) = nilpotent_check(&d.n, tol);
            report.push("class.n_nilpotent", ok, r);
        }
    }

    match &rational {
        Some((e, h, _)) => {
            let zq = Matrix::<Rational>::zeros(n);
            let probe = |m: &Matrix<Rational>, want: [&Matrix<Rational>; 3]| -> Result<(bool, f64)> {
                let dd = additive_jordan_exact(m)?;
                Ok(combine(&[
                    matrix_gap(&dd.e, &want[0].lift(), 0.0),
                    matrix_gap(&dd.h, &want[1].lift(), 0.0),
                    matrix_gap(&dd.n, &want[2].lift(), 0.0),
                ]))
            };
            let (ok, r) = probe(e, [e, &zq, &zq])?;
            report.push("unique.e", ok, r);
            let (ok, r) = probe(h, [&zq, h, &zq])?;
            report.push("unique.h", ok, r);
            let s = e + h;
            let ds = additive_jordan_exact(&s)?;
            let (ok, r) = zero_check(&ds.n, tol);
            report.push("unique.s_has_no_nilpotent", ok, r);
        }
        None => {
            let probe = |c: &Matrix<R>| {
                let (values, defect) = frame_values(&c.complexify(), &frames);
                let mut ep = Matrix::<Complex<R>>::zeros(n);
                let mut hp = Matrix::<Complex<R>>::zeros(n);
                for (w, p) in values.iter().zip(&frames) {
                    ep = &ep + &p.scale(&Complex::new(R::zero(), w.im.clone()));
                    hp = &hp + &p.scale(&re(&w.re));
                }
                (ep, hp, defect)
            };
            let (ep, hp, np) = probe(&d.e);
            let (ok, r) = combine(&[
                matrix_gap(&ep, &d.e.complexify(), tol),
                zero_check(&hp, tol),
                zero_check(&np, tol),
            ]);
            report.push("unique.e", ok, r);
            let (ep, hp, np) = probe(&d.h);
            let (ok, r) = combine(&[
                zero_check(&ep, tol),
                matrix_gap(&hp, &d.h.complexify(), tol),
                zero_check(&np, tol),
            ]);
            report.push("unique.h", ok, r);
            let (_, _, np) = probe(&d.s());
            let (ok, r) = zero_check(&np, tol);
            report.push("unique.s_has_no_nilpotent", ok, r);
        }
    }
    Ok(report)
}

type FrameParts<R> = (Matrix<Complex<R>>, Matrix<Complex<R>>, Matrix<Complex<R>>);

/// Frame decomposition `(e-part, h-part, defect)` of a component `c`.
fn multiplicative_frame<R: RealField>(c: &Matrix<R>, frames: &[Matrix<Complex<R>>]) -> Option<FrameParts<R>> {
    let n = c.n();
    let (values, defect) = frame_values(&c.complexify(), frames);
    let mut ep = Matrix::zeros(n);
    let mut hp = Matrix::zeros(n);
    for (w, p) in values.iter().zip(frames) {
        if w.im.is_zero() {
            let m = w.re.abs_val();
            if m.is_zero() {
                return None;
            }
            let sign = if w.re.cmp_zero() == std::cmp::Ordering::Less { -R::one() } else { R::one() };
            ep = &ep + &p.scale(&re(&sign));
            hp = &hp + &p.scale(&re(&m));
        } else {
            let m = norm_sq(w).sqrt_checked()?;
            let minv = m.inv();
            ep = &ep + &p.scale(&Complex::new(w.re.clone() * minv.clone(), w.im.clone() * minv));
            hp = &hp + &p.scale(&re(&m));
        }
    }
    Some((ep, hp, defect))
}

/// Checks reconstruction, commutation, component classes, `h = exp(log h)`,
/// `u = I + N·S⁻¹` and uniqueness probes of a multiplicative decomposition.
pub fn verify_multiplicative<R: RealField>(
    g: &Matrix<Rational>,
    d: &MultiplicativeDecomposition<R>,
    tol: f64,
) -> Result<VerificationReport> {
    let n = g.n();
    check_shapes(n, &[d.e.n(), d.h.n(), d.u.n()])?;
    if Zero::is_zero(&g.det()) {
        return Err(JordanError::NotInvertible);
    }
    let base_tol = tol;
    let tol = scaled_tolerance::<R>(tol, g);
    let mut report = VerificationReport::new();
    let gr: Matrix<R> = g.lift();
    let id = Matrix::<R>::identity(n);

    report.push_zero("reconstruction", &(&(&(&d.e * &d.h) * &d.u) - &gr), tol);
    push_commutators(
        &mut report,
        [("commute.e_h", &d.e, &d.h), ("commute.e_u", &d.e, &d.u), ("commute.h_u", &d.h, &d.u)],
        tol,
    )?;

    let ps = build_projectors(&d.spectral)?;
    let frames = ps.evaluate_all(g);
    report.merge("projectors", verify_projector_identities(&ps, g, tol)?);

    let s = &gr - &d.nilpotent;
    report.push_zero("semisimple_equals_e_h", &(&s - &(&d.e * &d.h)), tol);
    match s.inverse() {
        Ok(sinv) => {
            let cross = &id + &(&d.nilpotent * &sinv);
            report.push_zero("u_equals_i_plus_n_s_inverse", &(&d.u - &cross), tol);
        }
        Err(_) => report.push_detail("u_equals_i_plus_n_s_inverse", false, f64::INFINITY, "semisimple part is singular"),
    }

    let eps = R::precision_bits().map_or(f64::EPSILON, |b| 2f64.powi(-(b as i32)));
    let exp_tol = n as f64 * base_tol.max(100.0 * eps);
    let diff = (d.h.to_nalgebra_real() - d.log_h.exp_numeric(n)).norm();
    report.push("h_equals_exp_log_h", diff <= exp_tol, diff);

    let rational_e = if R::EXACT { d.e.to_rational() } else { None };
    let rational_h = if R::EXACT { d.h.to_rational() } else { None };
    let rational_u = if R::EXACT { d.u.to_rational() } else { None };

    let (ok, r) = match &rational_e {
        Some(e) => (classify_operator(e, DEFAULT_ROOT_TOLERANCE)?.elliptic_mult, 0.0),
        None => frame_classify(&d.e, &frames, Kind::EllipticMult, tol),
    };
    report.push("class.e_elliptic", ok, r);
    let (ok, r) = match &rational_h {
        Some(h) => (classify_operator(h, DEFAULT_ROOT_TOLERANCE)?.hyperbolic_mult, 0.0),
        None => frame_classify(&d.h, &frames, Kind::HyperbolicMult, tol),
    };
    report.push("class.h_hyperbolic", ok, r);
    let (ok, r) = unipotent_check(&d.u, tol);
    report.push("class.u_unipotent", ok, r);

    let idc = Matrix::<Complex<R>>::identity(n);
    let iq = Matrix::<Rational>::identity(n);
    let redecompose = |m: &Matrix<Rational>, want: [&Matrix<Rational>; 3]| -> Result<(bool, f64)> {
        let dd = multiplicative_jordan_exact(m)?;
        Ok(combine(&[
            matrix_gap(&dd.e, &want[0].lift(), 0.0),
            matrix_gap(&dd.h, &want[1].lift(), 0.0),
            matrix_gap(&dd.u, &want[2].lift(), 0.0),
        ]))
    };
    let frame_probe = |c: &Matrix<R>, e_want: &Matrix<Complex<R>>, h_want: &Matrix<Complex<R>>| -> (bool, f64) {
        match multiplicative_frame(c, &frames) {
            Some((ep, hp, defect)) => combine(&[
                matrix_gap(&ep, e_want, tol),
                matrix_gap(&hp, h_want, tol),
                zero_check(&defect, tol),
            ]),
            None => (false, f64::INFINITY),
        }
    };

    let (ok, r) = match &rational_e {
        Some(e) => redecompose(e, [e, &iq, &iq])?,
        None => frame_probe(&d.e, &d.e.complexify(), &idc),
    };
    report.push("unique.e", ok, r);
    let (ok, r) = match &rational_h {
        Some(h) => redecompose(h, [&iq, h, &iq])?,
        None => frame_probe(&d.h, &idc, &d.h.complexify()),
    };
    report.push("unique.h", ok, r);
    let (ok, r) = match &rational_u {
        Some(u) => redecompose(u, [&iq, &iq, u])?,
        None => match multiplicative_frame(&d.u, &frames) {
            Some((ep, hp, _)) => combine(&[
                matrix_gap(&ep, &idc, tol),
                matrix_gap(&hp, &idc, tol),
                unipotent_check(&d.u, tol),
            ]),
            None => (false, f64::INFINITY),
        },
    };
    report.push("unique.u", ok, r);
    Ok(report)
}
