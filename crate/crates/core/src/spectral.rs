//! Splitting the minimal polynomial into `(x − λ_k)^{m_k}` data and
//! classifying operators by their spectrum.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};
use crate::matrix::{minimal_polynomial, Matrix};
use crate::poly::{poly_gcd, squarefree_decomposition, Poly};
use crate::roots::{aberth, inclusion_radius, residual};
use crate::scalar::{Complex64, Field, Radical, Rational, RealField};

/// Arithmetic used for the roots of the minimal polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

/// Requested factoring mode; `Auto` tries exact first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeRequest {
    Exact,
    Numeric,
    #[default]
    Auto,
}

impl FromStr for ModeRequest {
    type Err = JordanError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ModeRequest::Exact),
            "numeric" => Ok(ModeRequest::Numeric),
            "auto" => Ok(ModeRequest::Auto),
            other => Err(JordanError::InvalidInput(format!("unknown mode '{other}'"))),
        }
    }
}

/// Default relative tolerance for numeric root handling.
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-10;

/// Non-real root stored by its representative with positive imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPair<R> {
    pub lambda: Complex<R>,
    pub multiplicity: usize,
    /// `u² + v²`.
    pub modulus_sq: R,
}

impl<R: RealField> ComplexPair<R> {
    pub fn u(&self) -> &R {
        &self.lambda.re
    }
    pub fn v(&self) -> &R {
        &self.lambda.im
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot<R> {
    pub value: R,
    pub multiplicity: usize,
    /// `λ²`.
    pub modulus_sq: R,
}

/// Roots of a rational minimal polynomial with multiplicities.
///
/// `R` is the real field of the roots: [`Radical`] in exact mode, a float in
/// numeric mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<R> {
    pub mode: Mode,
    pub min_poly: Poly<Rational>,
    pub complex_pairs: Vec<ComplexPair<R>>,
    pub real_roots: Vec<RealRoot<R>>,
    pub precision_bits: Option<u32>,
    /// Relative tolerance used in numeric mode, zero in exact mode.
    pub tolerance: f64,
}

impl<R: RealField> SpectralData<R> {
    /// Every distinct root with multiplicity: each pair as `λ, λ̄`, then the real roots.
    pub fn roots(&self) -> Vec<(Complex<R>, usize)> {
        let mut out = Vec::new();
        for p in &self.complex_pairs {
            out.push((p.lambda.clone(), p.multiplicity));
            out.push((p.lambda.conj(), p.multiplicity));
        }
        for r in &self.real_roots {
            out.push((Complex::new(r.value.clone(), R::zero()), r.multiplicity));
        }
        out
    }

    pub fn min_poly_lifted(&self) -> Poly<Complex<R>> {
        self.min_poly.map(Complex::<R>::from_rational)
    }

    /// `Π (x − λ_k)^{m_k}` over all roots.
    pub fn reconstruct(&self) -> Poly<Complex<R>> {
        self.roots()
            .iter()
            .fold(Poly::one(), |acc, (l, m)| &acc * &Poly::linear(l).pow(*m))
    }

    pub fn is_semisimple(&self) -> bool {
        self.complex_pairs.iter().all(|p| p.multiplicity == 1)
            && self.real_roots.iter().all(|r| r.multiplicity == 1)
    }

    pub fn degree(&self) -> usize {
        self.complex_pairs.iter().map(|p| 2 * p.multiplicity).sum::<usize>()
            + self.real_roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    pub fn is_exact(&self) -> bool {
        self.mode == Mode::Exact
    }
}

/// Spectral data in whichever mode was used.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum<N = f64> {
    Exact(SpectralData<Radical>),
    Numeric(SpectralData<N>),
}

impl<N> Spectrum<N> {
    pub fn mode(&self) -> Mode {
        match self {
            Spectrum::Exact(_) => Mode::Exact,
            Spectrum::Numeric(_) => Mode::Numeric,
        }
    }
}

fn check_input(p: &Poly<Rational>) -> Result<()> {
    match p.degree() {
        None | Some(0) => Err(JordanError::DegenerateInput(
            "minimal polynomial must have degree at least 1".into(),
        )),
        _ if !p.is_monic() => Err(JordanError::DegenerateInput("polynomial is not monic".into())),
        _ => Ok(()),
    }
}

/// Factor `p_T` in the requested mode, with double-precision numeric roots.
pub fn factor_minimal_polynomial(p: &Poly<Rational>, mode: ModeRequest, tol: f64) -> Result<Spectrum> {
    factor_minimal_polynomial_in::<f64>(p, mode, tol)
}

/// Factor `p_T` in the requested mode, with numeric roots in `N`.
pub fn factor_minimal_polynomial_in<N: RealField + Float>(
    p: &Poly<Rational>,
    mode: ModeRequest,
    tol: f64,
) -> Result<Spectrum<N>> {
    match mode {
        ModeRequest::Exact => factor_exact(p).map(Spectrum::Exact),
        ModeRequest::Numeric => factor_numeric::<N>(p, tol).map(Spectrum::Numeric),
        ModeRequest::Auto => match factor_exact(p) {
            Ok(s) => Ok(Spectrum::Exact(s)),
            Err(JordanError::ExactModeUnavailable { .. } | JordanError::RadicalBudget(_)) => {
                factor_numeric::<N>(p, tol).map(Spectrum::Numeric)
            }
            Err(e) => Err(e),
        },
    }
}

fn c64_coeffs(p: &Poly<Rational>) -> Vec<Complex64> {
    p.coeffs().iter().map(Field::to_c64).collect()
}

/// Leading coefficient of the primitive integer multiple of a monic rational polynomial.
fn primitive_leading(f: &Poly<Rational>) -> BigInt {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let content = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .fold(BigInt::zero(), |acc, k| acc.gcd(&k));
    lcm / content
}

fn round_over(x: f64, a: &BigInt) -> Option<Rational> {
    let scaled = x * a.to_string().parse::<f64>().ok()?;
    let k = BigInt::from_f64(scaled.round())?;
    Some(Rational::new(k, a.clone()))
}

fn near_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-6 * z.norm().max(1.0)
}

/// Split a squarefree monic rational factor into monic irreducible pieces of
/// degree 1 or 2, using numeric roots only as hints.
fn split_rational_factor(f: &Poly<Rational>) -> Result<Vec<Poly<Rational>>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![f.clone()]);
    }
    let a = primitive_leading(f);
    let mut hints = aberth(&c64_coeffs(f))?;
    let mut rest = f.clone();
    let mut out = Vec::new();

    let mut k = 0;
    while k < hints.len() {
        let z = hints[k];
        if near_real(z) {
            if let Some(r) = round_over(z.re, &a) {
                if rest.eval(&r).is_zero() {
                    let lin = Poly::linear(&r);
                    rest = rest.exact_div(&lin).expect("root divides");
                    out.push(lin);
                    hints.swap_remove(k);
                    continue;
                }
            }
        }
        k += 1;
    }

    while rest.degree().unwrap_or(0) > 2 {
        let mut found = None;
        'search: for i in 0..hints.len() {
            for j in i + 1..hints.len() {
                let s = -(hints[i] + hints[j]);
                let t = hints[i] * hints[j];
                if !near_real(s) || !near_real(t) {
                    continue;
                }
                let (Some(s), Some(t)) = (round_over(s.re, &a), round_over(t.re, &a)) else {
                    continue;
                };
                let q = Poly::new(vec![t, s, Rational::one()]);
                if let Some(quot) = rest.exact_div(&q) {
                    found = Some((i, j, q, quot));
                    break 'search;
                }
            }
        }
        match found {
            Some((i, j, q, quot)) => {
                hints.swap_remove(j);
                hints.swap_remove(i);
                out.push(q);
                rest = quot;
            }
            None => {
                return Err(JordanError::ExactModeUnavailable {
                    factor: rest.to_string(),
                    degree: rest.degree().unwrap_or(0),
                })
            }
        }
    }
    if rest.degree().unwrap_or(0) >= 1 {
        out.push(rest);
    }
    Ok(out)
}

/// Exact roots over ℚ(i, √d…): rational roots and quadratic formula.
pub fn factor_exact(p: &Poly<Rational>) -> Result<SpectralData<Radical>> {
    check_input(p)?;
    let mut pairs = Vec::new();
    let mut reals = Vec::new();
    for (f, m) in squarefree_decomposition(p)? {
        for piece in split_rational_factor(&f)? {
            match piece.degree() {
                Some(1) => {
                    let r = Radical::from_rational(-piece.coeff(0));
                    reals.push(RealRoot {
                        modulus_sq: r.clone() * r.clone(),
                        value: r,
                        multiplicity: m,
                    });
                }
                Some(2) => {
                    let (s, t) = (piece.coeff(1), piece.coeff(0));
                    let u = -s / Rational::from_integer(2.into());
                    let d4 = u.clone() * u.clone() - t.clone();
                    let budget = || JordanError::RadicalBudget(format!("square root of {d4}"));
                    if d4.is_negative() {
                        let v = Radical::sqrt_rational(&-d4.clone()).ok_or_else(budget)?;
                        pairs.push(ComplexPair {
                            lambda: Complex::new(Radical::from_rational(u), v),
                            multiplicity: m,
                            modulus_sq: Radical::from_rational(t),
                        });
                    } else {
                        let r = Radical::sqrt_rational(&d4).ok_or_else(budget)?;
                        let u = Radical::from_rational(u);
                        for value in [u.clone() - r.clone(), u + r] {
                            reals.push(RealRoot {
                                modulus_sq: value.clone() * value.clone(),
                                value,
                                multiplicity: m,
                            });
                        }
                    }
                }
                _ => return Err(JordanError::Internal("unexpected factor degree".into())),
            }
        }
    }
    pairs.sort_by(|a, b| a.u().cmp_val(b.u()).then_with(|| a.v().cmp_val(b.v())));
    reals.sort_by(|a, b| a.value.cmp_val(&b.value));
    Ok(SpectralData {
        mode: Mode::Exact,
        min_poly: p.clone(),
        complex_pairs: pairs,
        real_roots: reals,
        precision_bits: None,
        tolerance: 0.0,
    })
}

fn float_cmp<R: Float>(a: R, b: R) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Effective relative tolerance: never below what the float type can resolve.
pub fn effective_tolerance<R: Float>(tol: f64) -> f64 {
    tol.max(1000.0 * R::epsilon().to_f64().unwrap_or(f64::EPSILON))
}

/// Numeric roots of every squarefree factor, paired by reflection.
pub fn factor_numeric<R>(p: &Poly<Rational>, tol: f64) -> Result<SpectralData<R>>
where
    R: RealField + Float,
{
    check_input(p)?;
    let tol = effective_tolerance::<R>(tol);
    let eps = RealField::to_f64(&R::epsilon());
    let residual_rel = 1e-12f64.max(64.0 * eps);
    let mut pairs: Vec<ComplexPair<R>> = Vec::new();
    let mut reals: Vec<RealRoot<R>> = Vec::new();
    let mut disks: Vec<(Complex64, f64)> = Vec::new();

    for (f, m) in squarefree_decomposition(p)? {
        let coeffs: Vec<Complex<R>> = f.coeffs().iter().map(Complex::<R>::from_rational).collect();
        let roots = aberth(&coeffs)?;
        let norm = f.max_norm();
        let deg = f.degree().unwrap_or(0) as i32;
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for z in roots {
            let zc = z.to_c64();
            let bound = residual_rel * norm * zc.norm().max(1.0).powi(deg);
            let res = RealField::to_f64(&residual(&coeffs, z));
            if res > bound {
                return Err(JordanError::NoConvergence(format!(
                    "root {zc} of {f} has residual {res:e}"
                )));
            }
            disks.push((zc, RealField::to_f64(&inclusion_radius(&coeffs, z))));
            if zc.im.abs() <= tol * zc.norm().max(1.0) {
                reals.push(RealRoot {
                    value: z.re,
                    multiplicity: m,
                    modulus_sq: z.re * z.re,
                });
            } else if zc.im > 0.0 {
                upper.push(z);
            } else {
                lower.push(z);
            }
        }
        if upper.len() != lower.len() {
            return Err(JordanError::ClusterAmbiguity(format!(
                "non-real roots of {f} do not pair by conjugation"
            )));
        }
        for z in upper {
            let (k, _) = lower
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (z - w.conj()).norm()))
                .min_by(|a, b| float_cmp(a.1, b.1))
                .expect("nonempty");
            let w = lower.swap_remove(k);
            let two = R::one() + R::one();
            let lambda = Complex::new((z.re + w.re) / two, (z.im - w.im) / two);
            pairs.push(ComplexPair {
                modulus_sq: lambda.re * lambda.re + lambda.im * lambda.im,
                lambda,
                multiplicity: m,
            });
        }
    }

    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let ((a, ra), (b, rb)) = (disks[i], disks[j]);
            let gap = (a - b).norm();
            let scale = a.norm().max(b.norm()).max(1.0);
            if gap <= 10.0 * tol * scale || gap <= ra + rb {
                return Err(JordanError::ClusterAmbiguity(format!(
                    "roots {a} and {b} are not separated (gap {gap:e})"
                )));
            }
        }
    }

    pairs.sort_by(|a, b| float_cmp(a.lambda.re, b.lambda.re).then(float_cmp(a.lambda.im, b.lambda.im)));
    reals.sort_by(|a, b| float_cmp(a.value, b.value));
    Ok(SpectralData {
        mode: Mode::Numeric,
        min_poly: p.clone(),
        complex_pairs: pairs,
        real_roots: reals,
        precision_bits: R::precision_bits(),
        tolerance: tol,
    })
}

/// Seven predicates of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub semisimple: bool,
    pub nilpotent: bool,
    pub elliptic_add: bool,
    pub hyperbolic_add: bool,
    pub elliptic_mult: bool,
    pub hyperbolic_mult: bool,
    pub unipotent: bool,
    /// Arithmetic used for the root-location predicates.
    pub mode: Mode,
}

struct Locations {
    all_imaginary: bool,
    all_real: bool,
    all_unit: bool,
    all_positive: bool,
}

fn locations_of<R: RealField>(s: &SpectralData<R>) -> Locations {
    let tol = s.tolerance;
    let zero = |x: &R, scale: f64| {
        if R::EXACT {
            x.is_zero()
        } else {
            x.magnitude() <= tol * scale.max(1.0)
        }
    };
    let one = R::one();
    Locations {
        all_imaginary: s.complex_pairs.iter().all(|p| zero(p.u(), p.lambda.magnitude()))
            && s.real_roots.iter().all(|r| zero(&r.value, 1.0)),
        all_real: s.complex_pairs.is_empty(),
        all_unit: s
            .complex_pairs
            .iter()
            .map(|p| &p.modulus_sq)
            .chain(s.real_roots.iter().map(|r| &r.modulus_sq))
            .all(|m| zero(&(m.clone() - one.clone()), 1.0)),
        all_positive: s.real_roots.iter().all(|r| {
            r.value.cmp_zero() == Ordering::Greater && !zero(&r.value, 1.0)
        }),
    }
}

fn locations_from_roots(roots: &[Complex64], tol: f64) -> Locations {
    let small = |x: f64, scale: f64| x.abs() <= tol * scale.max(1.0);
    Locations {
        all_imaginary: roots.iter().all(|z| small(z.re, z.norm())),
        all_real: roots.iter().all(|z| small(z.im, z.norm())),
        all_unit: roots.iter().all(|z| small(z.norm_sqr() - 1.0, 1.0)),
        all_positive: roots
            .iter()
            .all(|z| small(z.im, z.norm()) && z.re > tol * z.norm().max(1.0)),
    }
}

fn assemble(semisimple: bool, nilpotent: bool, unipotent: bool, loc: Locations, mode: Mode) -> ClassificationReport {
    ClassificationReport {
        semisimple,
        nilpotent,
        elliptic_add: semisimple && loc.all_imaginary,
        hyperbolic_add: semisimple && loc.all_real,
        elliptic_mult: semisimple && loc.all_unit,
        hyperbolic_mult: semisimple && loc.all_real && loc.all_positive,
        unipotent,
        mode,
    }
}

fn structural<F: Field>(p: &Poly<F>) -> Result<(bool, bool, bool)> {
    let deg = p.degree().unwrap_or(0);
    let semisimple = poly_gcd(p, &p.derivative())?.degree() == Some(0);
    let nilpotent = *p == Poly::monomial(F::one(), deg);
    let unipotent = *p == Poly::linear(&F::one()).pow(deg);
    Ok((semisimple, nilpotent, unipotent))
}

/// Classify a rational operator. Structural predicates are always exact; root
/// locations are exact when the minimal polynomial splits over quadratic
/// extensions and numeric (within `tol`) otherwise.
pub fn classify_operator(t: &Matrix<Rational>, tol: f64) -> Result<ClassificationReport> {
    classify_operator_in(t, ModeRequest::Auto, tol)
}

/// [`classify_operator`] with root locations computed in the requested mode.
pub fn classify_operator_in(t: &Matrix<Rational>, mode: ModeRequest, tol: f64) -> Result<ClassificationReport> {
    let p = minimal_polynomial(t);
    let (semisimple, nilpotent, unipotent) = structural(&p)?;
    let (loc, mode) = match factor_minimal_polynomial(&p, mode, tol)? {
        Spectrum::Exact(s) => (locations_of(&s), Mode::Exact),
        Spectrum::Numeric(s) => (locations_of(&s), Mode::Numeric),
    };
    Ok(assemble(semisimple, nilpotent, unipotent, loc, mode))
}

/// Classify an operator over any exact field. Structural predicates are exact;
/// root locations come from numeric roots of the squarefree part of the
/// minimal polynomial.
pub fn classify_in_field<F: Field>(t: &Matrix<F>, tol: f64) -> Result<ClassificationReport> {
    let p = minimal_polynomial(t);
    let (semisimple, nilpotent, unipotent) = structural(&p)?;
    let g = poly_gcd(&p, &p.derivative())?;
    let radical_part = p.exact_div(&g).ok_or_else(|| JordanError::Internal("gcd does not divide".into()))?;
    let coeffs: Vec<Complex64> = radical_part.coeffs().iter().map(Field::to_c64).collect();
    let roots = aberth(&coeffs)?;
    let loc = locations_from_roots(&roots, effective_tolerance::<f64>(tol));
    Ok(assemble(semisimple, nilpotent, unipotent, loc, Mode::Numeric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&k| rat(k, 1)).collect())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| rat(k, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn linear_factor() {
        let s = factor_exact(&qp(&[-1, 1])).unwrap();
        assert!(s.complex_pairs.is_empty());
        assert_eq!(s.real_roots.len(), 1);
        assert_eq!(s.real_roots[0].value, Radical::from_rational(rat(1, 1)));
        assert_eq!(s.real_roots[0].multiplicity, 1);
    }

    #[test]
    fn worked_example_minimal_polynomial() {
        let p = qp(&[8, -16, 14, -6, 1]);
        let s = factor_exact(&p).unwrap();
        assert_eq!(s.complex_pairs.len(), 1);
        let pair = &s.complex_pairs[0];
        assert_eq!(pair.lambda, Complex::new(Radical::one(), Radical::one()));
        assert_eq!(pair.multiplicity, 1);
        assert_eq!(pair.modulus_sq, Radical::from_rational(rat(2, 1)));
        assert_eq!(s.real_roots.len(), 1);
        assert_eq!(s.real_roots[0].value, Radical::from_rational(rat(2, 1)));
        assert_eq!(s.real_roots[0].multiplicity, 2);
        assert_eq!(s.reconstruct(), s.min_poly_lifted());
    }

    #[test]
    fn cube_root_of_two() {
        let p = qp(&[-2, 0, 0, 1]);
        match factor_exact(&p) {
            Err(JordanError::ExactModeUnavailable { factor, degree }) => {
                assert_eq!(degree, 3);
                assert!(factor.contains("x^3"));
            }
            other => panic!("{other:?}"),
        }
        let s = factor_numeric::<f64>(&p, DEFAULT_ROOT_TOLERANCE).unwrap();
        assert_eq!(s.real_roots.len(), 1);
        assert!((s.real_roots[0].value - 1.259921049894873).abs() < 1e-12);
        let pair = &s.complex_pairs[0];
        assert!((pair.lambda.re + 0.6299605249474366).abs() < 1e-12);
        assert!((pair.lambda.im - 1.0911236359717214).abs() < 1e-12);
        assert!(matches!(
            factor_minimal_polynomial(&p, ModeRequest::Auto, DEFAULT_ROOT_TOLERANCE),
            Ok(Spectrum::Numeric(_))
        ));
    }

    #[test]
    fn irrational_quadratics_and_split_quartics() {
        // (x^2 - 2)(x^2 + 3)
        let s = factor_exact(&qp(&[-6, 0, 1, 0, 1])).unwrap();
        assert_eq!(s.real_roots.len(), 2);
        assert_eq!(s.real_roots[1].value, Radical::sqrt_rational(&rat(2, 1)).unwrap());
        assert_eq!(s.complex_pairs[0].lambda.im, Radical::sqrt_rational(&rat(3, 1)).unwrap());
        assert_eq!(s.reconstruct(), s.min_poly_lifted());
        // (2x - 1)(3x^2 - x + 1) made monic
        let p = (&qp(&[-1, 2]) * &qp(&[1, -1, 3])).monic();
        let s = factor_exact(&p).unwrap();
        assert_eq!(s.real_roots[0].value, Radical::from_rational(rat(1, 2)));
        assert_eq!(s.reconstruct(), s.min_poly_lifted());
    }

    #[test]
    fn canonical_order() {
        // (x+1)(x-3)(x^2+1)(x^2-2x+5)
        let p = &(&qp(&[1, 1]) * &qp(&[-3, 1])) * &(&qp(&[1, 0, 1]) * &qp(&[5, -2, 1]));
        let s = factor_exact(&p).unwrap();
        let us: Vec<f64> = s.complex_pairs.iter().map(|p| p.u().to_f64()).collect();
        assert_eq!(us, vec![0.0, 1.0]);
        let rs: Vec<f64> = s.real_roots.iter().map(|r| r.value.to_f64()).collect();
        assert_eq!(rs, vec![-1.0, 3.0]);
    }

    #[test]
    fn numeric_cluster_is_rejected() {
        // roots 1 and 1 + 1e-12
        let p = Poly::new(vec![rat(1, 1) + rat(1, 1_000_000_000_000), -(rat(2, 1) + rat(1, 1_000_000_000_000)), rat(1, 1)]);
        let r = factor_numeric::<f64>(&p, DEFAULT_ROOT_TOLERANCE);
        assert!(matches!(r, Err(JordanError::ClusterAmbiguity(_))), "{r:?}");
    }

    #[test]
    fn classification_examples() {
        let rot = classify_operator(&qm(&[&[0, 1], &[-1, 0]]), 1e-9).unwrap();
        assert!(rot.semisimple && rot.elliptic_add && rot.elliptic_mult);
        assert!(!rot.nilpotent && !rot.hyperbolic_add && !rot.hyperbolic_mult && !rot.unipotent);

        let nil = classify_operator(&qm(&[&[0, 1], &[0, 0]]), 1e-9).unwrap();
        assert!(nil.nilpotent && !nil.semisimple);

        let mut d = Matrix::diag(vec![rat(2, 1), rat(1, 2)]);
        let c = classify_operator(&d, 1e-9).unwrap();
        assert!(c.semisimple && c.hyperbolic_add && c.hyperbolic_mult);
        assert!(!c.elliptic_add && !c.elliptic_mult);

        d.set(0, 1, rat(1, 1));
        d.set(0, 0, rat(1, 1));
        d.set(1, 1, rat(1, 1));
        assert!(classify_operator(&d, 1e-9).unwrap().unipotent);

        let z = classify_operator(&Matrix::zeros(3), 1e-9).unwrap();
        assert!(z.elliptic_add && z.hyperbolic_add && z.nilpotent);
    }

    #[test]
    fn classification_over_radicals() {
        let s2 = Radical::sqrt_rational(&rat(1, 2)).unwrap();
        let e = Matrix::from_rows(vec![vec![s2.clone(), s2.clone()], vec![-s2.clone(), s2]]).unwrap();
        let c = classify_in_field(&e, 1e-9).unwrap();
        assert!(c.semisimple && c.elliptic_mult && !c.hyperbolic_mult);
    }
}
