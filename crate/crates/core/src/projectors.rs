//! Spectral projector polynomials `π_k` and the identities they satisfy.

use num_complex::Complex;

use crate::error::{JordanError, Result};
use crate::matrix::{eval_poly_at_rational_matrix, minimal_polynomial, Matrix};
use crate::poly::{mod_reduce, series_inverse_at, Poly};
use crate::report::{zero_check, VerificationReport};
use crate::scalar::{Field, Rational, RealField};
use crate::spectral::SpectralData;

/// Default residual tolerance per unit of dimension for numeric identities.
pub const DEFAULT_IDENTITY_TOLERANCE: f64 = 1e-9;

/// Projector polynomials, reduced mod `p_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorSet<R: RealField> {
    pub spectral: SpectralData<R>,
    /// `π_k` for each complex pair, in the order of `spectral.complex_pairs`.
    pub pair_projectors: Vec<Poly<Complex<R>>>,
    /// `π_k` for each real root, in the order of `spectral.real_roots`.
    pub real_projectors: Vec<Poly<R>>,
    evaluated: Option<Vec<Matrix<Complex<R>>>>,
}

/// Real part of a polynomial whose imaginary part must vanish.
pub(crate) fn real_part_checked<R: RealField>(p: &Poly<Complex<R>>, what: &str) -> Result<Poly<R>> {
    let scale = p.max_norm().max(1.0);
    for c in p.coeffs() {
        let ok = if R::EXACT {
            c.im.is_zero()
        } else {
            c.im.magnitude() <= 1e-12 * scale
        };
        if !ok {
            return Err(JordanError::Internal(format!(
                "{what} has a non-real coefficient; conjugate pairing is broken"
            )));
        }
    }
    Ok(Poly::new(p.coeffs().iter().map(|c| c.re.clone()).collect()))
}

pub(crate) fn lift_real<R: RealField>(p: &Poly<R>) -> Poly<Complex<R>> {
    p.map(|c| Complex::new(c.clone(), R::zero()))
}

/// `π_k = (a_k·q_k) mod p_T` with `a_k` the order-`m_k` Taylor inverse of `q_k` at `λ_k`.
pub fn build_projectors<R: RealField>(spec: &SpectralData<R>) -> Result<ProjectorSet<R>> {
    let roots = spec.roots();
    let pt = spec.min_poly_lifted();
    let factors: Vec<Poly<Complex<R>>> = roots
        .iter()
        .map(|(l, m)| Poly::linear(l).pow(*m))
        .collect();
    let projector = |k: usize| -> Result<Poly<Complex<R>>> {
        let q = factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(Poly::one(), |acc, (_, f)| &acc * f);
        let (lambda, m) = &roots[k];
        let a = series_inverse_at(&q, lambda, *m)?;
        mod_reduce(&(&a * &q), &pt)
    };
    let l = spec.complex_pairs.len();
    let pair_projectors = (0..l).map(|i| projector(2 * i)).collect::<Result<Vec<_>>>()?;
    let real_projectors = (0..spec.real_roots.len())
        .map(|j| real_part_checked(&projector(2 * l + j)?, "real-root projector"))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectorSet {
        spectral: spec.clone(),
        pair_projectors,
        real_projectors,
        evaluated: None,
    })
}

impl<R: RealField> ProjectorSet<R> {
    /// Every projector polynomial in the order of [`SpectralData::roots`]:
    /// `π_k, π̄_k` for each pair, then the real-root projectors.
    pub fn all_polys(&self) -> Vec<Poly<Complex<R>>> {
        let mut out = Vec::new();
        for p in &self.pair_projectors {
            out.push(p.clone());
            out.push(p.conjugate());
        }
        out.extend(self.real_projectors.iter().map(lift_real));
        out
    }

    /// `π(T)` for every polynomial of [`Self::all_polys`].
    pub fn evaluate_all(&self, t: &Matrix<Rational>) -> Vec<Matrix<Complex<R>>> {
        if let Some(m) = &self.evaluated {
            if m.first().map(Matrix::n) == Some(t.n()) {
                return m.clone();
            }
        }
        self.all_polys()
            .iter()
            .map(|p| eval_poly_at_rational_matrix(p, t))
            .collect()
    }

    /// Fill the matrix cache for `T`.
    pub fn evaluate(&mut self, t: &Matrix<Rational>) {
        self.evaluated = None;
        self.evaluated = Some(self.evaluate_all(t));
    }

    pub fn matrices(&self) -> Option<&[Matrix<Complex<R>>]> {
        self.evaluated.as_deref()
    }

    /// Real projectors onto the real invariant subspaces: `π_k + π̄_k` for each
    /// pair, then `π_k` for each real root.
    pub fn real_frame_polys(&self) -> Vec<Poly<R>> {
        let mut out: Vec<Poly<R>> = self
            .pair_projectors
            .iter()
            .map(|p| Poly::new(p.coeffs().iter().map(|c| c.re.clone() + c.re.clone()).collect()))
            .collect();
        out.extend(self.real_projectors.iter().cloned());
        out
    }

    /// Drop the matrix cache, for callers that edit the polynomials.
    pub fn clear_cache(&mut self) {
        self.evaluated = None;
    }
}

fn aggregate<F: Field>(report: &mut VerificationReport, name: &str, mats: impl IntoIterator<Item = Matrix<F>>, tol: f64) {
    let mut passed = true;
    let mut residual: f64 = 0.0;
    for m in mats {
        let (ok, r) = zero_check(&m, tol);
        passed &= ok;
        residual = residual.max(r);
    }
    report.push(name, passed, residual);
}

/// Check partition of identity, pairwise annihilation (conjugates included),
/// idempotence and `(T − λ_r)^{m_r} π_r(T) = 0`.
///
/// `tol` applies in numeric mode only; exact mode checks exact vanishing.
pub fn verify_projector_identities<R: RealField>(
    ps: &ProjectorSet<R>,
    t: &Matrix<Rational>,
    tol: f64,
) -> Result<VerificationReport> {
    let p_t = minimal_polynomial(t);
    if p_t != ps.spectral.min_poly {
        return Err(JordanError::InconsistentInput(format!(
            "projectors were built for {} but the matrix has minimal polynomial {}",
            ps.spectral.min_poly, p_t
        )));
    }
    let n = t.n();
    let mats = ps.evaluate_all(t);
    let roots = ps.spectral.roots();
    let id = Matrix::<Complex<R>>::identity(n);
    let tc: Matrix<Complex<R>> = t.lift();
    let mut report = VerificationReport::new();

    let sum = mats.iter().fold(Matrix::zeros(n), |acc, m| &acc + m);
    aggregate(&mut report, "partition_of_identity", [&sum - &id], tol);

    let mut products = Vec::new();
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            if i != j {
                products.push(&mats[i] * &mats[j]);
            }
        }
    }
    aggregate(&mut report, "pairwise_annihilation", products, tol);

    aggregate(
        &mut report,
        "idempotence",
        mats.iter().map(|p| &(p * p) - p),
        tol,
    );

    aggregate(
        &mut report,
        "local_nilpotency",
        mats.iter().zip(&roots).map(|(p, (lambda, m))| {
            let shifted = &tc - &Matrix::scalar(n, lambda.clone());
            &shifted.pow(*m) * p
        }),
        tol,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Radical};
    use crate::spectral::factor_exact;

    type C = Complex<Radical>;

    fn gr(re: Rational, im: Rational) -> C {
        Complex::new(Radical::from_rational(re), Radical::from_rational(im))
    }

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&k| rat(k, 1)).collect())
    }

    fn example_t() -> Matrix<Rational> {
        let rows: [[i64; 4]; 4] = [[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 0, 2]];
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| rat(k, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn single_root_projector_is_one() {
        let ps = build_projectors(&factor_exact(&qp(&[0, 1])).unwrap()).unwrap();
        assert_eq!(ps.real_projectors, vec![Poly::<Radical>::one()]);
        let rep = verify_projector_identities(&ps, &Matrix::zeros(3), 0.0).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn worked_example_projectors() {
        let ps = build_projectors(&factor_exact(&qp(&[8, -16, 14, -6, 1])).unwrap()).unwrap();
        // ¼(x − 1 + i)(x − 2)²
        let x = Poly::<C>::x();
        let lin = &x - &Poly::constant(gr(rat(1, 1), rat(-1, 1)));
        let two = Poly::linear(&gr(rat(2, 1), rat(0, 1)));
        let pi1 = (&lin * &two.pow(2)).scale(&gr(rat(1, 4), rat(0, 1)));
        assert_eq!(ps.pair_projectors, vec![pi1]);
        // −½(x − 3)(x² − 2x + 2)
        let pi2 = (&qp(&[-3, 1]) * &qp(&[2, -2, 1])).scale(&rat(-1, 2));
        assert_eq!(ps.real_projectors, vec![pi2.map(|q| Radical::from_rational(q.clone()))]);
        let rep = verify_projector_identities(&ps, &example_t(), 0.0).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn lagrange_pair() {
        let ps = build_projectors(&factor_exact(&qp(&[2, -3, 1])).unwrap()).unwrap();
        let lift = |p: Poly<Rational>| p.map(|q| Radical::from_rational(q.clone()));
        assert_eq!(ps.real_projectors, vec![lift(qp(&[2, -1])), lift(qp(&[-1, 1]))]);
    }

    #[test]
    fn scaled_projector_fails() {
        let mut ps = build_projectors(&factor_exact(&qp(&[8, -16, 14, -6, 1])).unwrap()).unwrap();
        ps.pair_projectors[0] = ps.pair_projectors[0].scale(&gr(rat(2, 1), rat(0, 1)));
        let t = example_t();
        let rep = verify_projector_identities(&ps, &t, 0.0).unwrap();
        assert!(!rep.get("idempotence").unwrap().passed);
        assert!(!rep.get("partition_of_identity").unwrap().passed);
        let p = eval_poly_at_rational_matrix(&ps.pair_projectors[0], &t);
        let direct = (&(&p * &p) - &p).frobenius_norm();
        assert!(rep.get("idempotence").unwrap().residual >= direct);
    }

    #[test]
    fn mismatched_matrix_is_inconsistent() {
        let ps = build_projectors(&factor_exact(&qp(&[-1, 1])).unwrap()).unwrap();
        assert!(matches!(
            verify_projector_identities(&ps, &example_t(), 0.0),
            Err(JordanError::InconsistentInput(_))
        ));
    }

    #[test]
    fn numeric_projectors_match_exact() {
        let p = qp(&[8, -16, 14, -6, 1]);
        let exact = build_projectors(&factor_exact(&p).unwrap()).unwrap();
        let num = build_projectors(&crate::spectral::factor_numeric::<f64>(&p, 1e-10).unwrap()).unwrap();
        for (a, b) in exact.all_polys().iter().zip(num.all_polys()) {
            for k in 0..4 {
                assert!((a.coeff(k).to_c64() - b.coeff(k)).norm() < 1e-12);
            }
        }
        let rep = verify_projector_identities(&num, &example_t(), 4.0 * DEFAULT_IDENTITY_TOLERANCE).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
