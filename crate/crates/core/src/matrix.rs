//! Square matrices over a [`Field`], the minimal polynomial, polynomial
//! evaluation and the finite exponential / logarithm series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{JordanError, Result};
use crate::poly::{poly_lcm, Poly};
use crate::scalar::{Complex64, Field, Rational, RealField, ToScalar};

/// Dense `n × n` matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(n: usize, data: Vec<F>) -> Result<Self> {
        if n == 0 {
            return Err(JordanError::ShapeError("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(JordanError::ShapeError(format!(
                "{} entries for a {n}x{n} matrix",
                data.len()
            )));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(JordanError::ShapeError("matrix rows must have length n".into()));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(values: Vec<F>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, v) in values.into_iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix<F>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.n + c] = v;
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        self.data.chunks(self.n)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for c in 0..n {
            for r in 0..n {
                out.push(self.data[r * n + c].clone());
            }
        }
        Matrix { n, data: out }
    }

    pub fn conjugate(&self) -> Self {
        self.map(Field::conj)
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        (self - &Self::identity(self.n)).is_zero()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let m = x.magnitude();
                m * m
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).frobenius_norm()
    }

    /// Exact equality for exact fields; Frobenius distance within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if F::EXACT {
            self == other
        } else {
            self.distance(other) <= tol
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(JordanError::ShapeError(format!(
                "dimensions {} and {} differ",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Row echelon form by Gaussian elimination; returns the pivot count and
    /// the product of the pivots with the row-swap sign.
    fn eliminate(&self, mut a: Vec<F>, cols: usize) -> (usize, F, Vec<F>) {
        let rows = a.len() / cols;
        let mut det = F::one();
        let mut rank = 0;
        for c in 0..cols.min(self.n) {
            if rank == rows {
                break;
            }
            let pivot = pick_pivot((rank..rows).map(|r| (r, &a[r * cols + c])));
            let Some(p) = pivot else {
                det = F::zero();
                continue;
            };
            if p != rank {
                for k in 0..cols {
                    a.swap(p * cols + k, rank * cols + k);
                }
                det = -det;
            }
            let pv = a[rank * cols + c].clone();
            det = det * pv.clone();
            let inv = pv.inv();
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let f = a[r * cols + c].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let t = f.clone() * a[rank * cols + k].clone();
                    a[r * cols + k] = a[r * cols + k].clone() - t;
                }
            }
            rank += 1;
        }
        (rank, det, a)
    }

    pub fn det(&self) -> F {
        let (rank, det, _) = self.eliminate(self.data.clone(), self.n);
        if rank < self.n {
            F::zero()
        } else {
            det
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate(self.data.clone(), self.n).0
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let cols = 2 * n;
        let mut aug = Vec::with_capacity(n * cols);
        for r in 0..n {
            aug.extend_from_slice(&self.data[r * n..(r + 1) * n]);
            for c in 0..n {
                aug.push(if r == c { F::one() } else { F::zero() });
            }
        }
        let (rank, _, a) = self.eliminate(aug, cols);
        if rank < n {
            return Err(JordanError::NotInvertible);
        }
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            let inv = a[r * cols + r].inv();
            for c in 0..n {
                out.push(a[r * cols + n + c].clone() * inv.clone());
            }
        }
        Ok(Matrix { n, data: out })
    }
}

impl<F: Field> Matrix<F> {
    /// The same matrix over ℚ when every entry is rational.
    pub fn to_rational(&self) -> Option<Matrix<Rational>> {
        let data = self
            .data
            .iter()
            .map(Field::as_exact_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }

    /// Dense complex double copy.
    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |r, c| self.get(r, c).to_c64())
    }

    /// Dense double copy of the real parts.
    pub fn to_nalgebra_real(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |r, c| self.get(r, c).to_c64().re)
    }
}

impl<R: RealField> Matrix<R> {
    pub fn complexify(&self) -> Matrix<Complex<R>> {
        self.map(|x| Complex::new(x.clone(), R::zero()))
    }
}

impl Matrix<Rational> {
    /// Embed rational entries into any field.
    pub fn lift<G: Field>(&self) -> Matrix<G> {
        self.map(G::from_rational)
    }
}

fn pick_pivot<'a, F: Field>(cands: impl Iterator<Item = (usize, &'a F)>) -> Option<usize> {
    if F::EXACT {
        let mut best: Option<(usize, usize)> = None;
        for (r, v) in cands {
            if v.is_zero() {
                continue;
            }
            let cost = v.term_count();
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((r, cost));
            }
            if cost == 1 {
                break;
            }
        }
        best.map(|(r, _)| r)
    } else {
        let mut best: Option<(usize, f64)> = None;
        for (r, v) in cands {
            let m = v.magnitude();
            if m > 0.0 && best.is_none_or(|(_, b)| m > b) {
                best = Some((r, m));
            }
        }
        best.map(|(r, _)| r)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<F: Field + ToScalar> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_scalar().render()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<'a, F: Field> Add<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, F: Field> Sub<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl<'a, F: Field> Mul<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = vec![F::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j] = out[i * n + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Matrix { n, data: out }
    }
}

/// Monic polynomial of least degree with `p(T)·v = 0`.
fn vector_annihilator<F: Field>(t: &Matrix<F>, v: Vec<F>) -> Poly<F> {
    // reduced Krylov vectors with their representation as polynomials in T
    let mut basis: Vec<(usize, Vec<F>, Poly<F>)> = Vec::new();
    let mut current = v;
    let mut k = 0;
    loop {
        let mut w = current.clone();
        let mut rep = Poly::monomial(F::one(), k);
        for (pivot, b, rb) in &basis {
            if w[*pivot].is_zero() {
                continue;
            }
            let f = w[*pivot].clone() / b[*pivot].clone();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = wi.clone() - f.clone() * bi.clone();
            }
            rep = &rep - &rb.scale(&f);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return rep,
            Some(pivot) => basis.push((pivot, w, rep)),
        }
        current = t.mul_vec(&current);
        k += 1;
    }
}

fn poly_apply_to_vector<F: Field>(p: &Poly<F>, t: &Matrix<F>, v: &[F]) -> Vec<F> {
    let mut acc = vec![F::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = t.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
    acc
}

/// Minimal polynomial over an exact field: least common multiple of the
/// Krylov annihilators of the standard basis vectors.
pub fn minimal_polynomial<F: Field>(t: &Matrix<F>) -> Poly<F> {
    debug_assert!(F::EXACT, "minimal polynomial needs exact arithmetic");
    let n = t.n();
    let mut p = Poly::one();
    for j in 0..n {
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        if j > 0 && poly_apply_to_vector(&p, t, &e).iter().all(|x| x.is_zero()) {
            continue;
        }
        let local = vector_annihilator(t, e);
        p = poly_lcm(&p, &local).expect("annihilators are nonzero");
        if p.degree() == Some(n) {
            break;
        }
    }
    p
}

/// Characteristic polynomial `det(xI − T)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial<F: Field>(t: &Matrix<F>) -> Poly<F> {
    let n = t.n();
    let mut c = vec![F::zero(); n + 1];
    c[n] = F::one();
    let mut m = Matrix::zeros(n);
    for k in 1..=n {
        let shifted = &m + &Matrix::scalar(n, c[n - k + 1].clone());
        m = t * &shifted;
        let tr = m.trace();
        c[n - k] = -(tr / F::from_i64(k as i64));
    }
    Poly::new(c)
}

/// Horner evaluation `p(T) = a₀I + a₁T + ⋯ + a_mT^m`.
pub fn eval_poly_at_matrix<F: Field>(p: &Poly<F>, t: &Matrix<F>) -> Matrix<F> {
    let n = t.n();
    let mut acc = Matrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = &acc * t;
        for i in 0..n {
            let d = acc.get(i, i).clone() + c.clone();
            acc.set(i, i, d);
        }
    }
    acc
}

/// `p(T)` for a rational `T`: powers of `T` are formed over ℚ and only the
/// final combination is done in `F`.
pub fn eval_poly_at_rational_matrix<F: Field>(p: &Poly<F>, t: &Matrix<Rational>) -> Matrix<F> {
    let n = t.n();
    let mut acc = Matrix::<F>::zeros(n);
    let mut power = Matrix::<Rational>::identity(n);
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            power = &power * t;
        }
        if c.is_zero() {
            continue;
        }
        for (a, q) in acc.data.iter_mut().zip(&power.data) {
            if !num_traits::Zero::is_zero(q) {
                *a = a.clone() + c.clone() * F::from_rational(q);
            }
        }
    }
    acc
}

fn negligible_matrix<F: Field>(m: &Matrix<F>, scale: f64) -> bool {
    if F::EXACT {
        m.is_zero()
    } else {
        m.frobenius_norm() <= 1e-9 * scale.max(1.0)
    }
}

/// `exp(N) = Σ_{j<n} N^j / j!` for nilpotent `N`.
pub fn matrix_exp_nilpotent<F: Field>(nil: &Matrix<F>) -> Result<Matrix<F>> {
    let n = nil.n();
    let scale = nil.frobenius_norm().powi(n as i32);
    if !negligible_matrix(&nil.pow(n), scale) {
        return Err(JordanError::NotNilpotent);
    }
    let mut term = Matrix::identity(n);
    let mut acc = Matrix::identity(n);
    for j in 1..n {
        term = (&term * nil).scale(&F::from_i64(j as i64).inv());
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `log(u) = Σ_{1≤j<n} (−1)^{j+1} (u − I)^j / j` for unipotent `u`.
pub fn matrix_log_unipotent<F: Field>(u: &Matrix<F>) -> Result<Matrix<F>> {
    let n = u.n();
    let m = u - &Matrix::identity(n);
    let scale = m.frobenius_norm().powi(n as i32);
    if !negligible_matrix(&m.pow(n), scale) {
        return Err(JordanError::NotUnipotent);
    }
    let mut power = Matrix::identity(n);
    let mut acc = Matrix::zeros(n);
    for j in 1..n {
        power = &power * &m;
        let c = F::from_i64(if j % 2 == 1 { 1 } else { -1 }) / F::from_i64(j as i64);
        acc = &acc + &power.scale(&c);
    }
    Ok(acc)
}

/// Outcome of a commutation test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Commutation {
    pub commutes: bool,
    /// Frobenius norm of `AB − BA`.
    pub residual: f64,
}

/// `AB = BA`, exactly for exact fields, within `tol` otherwise.
pub fn commutes<F: Field>(a: &Matrix<F>, b: &Matrix<F>, tol: f64) -> Result<Commutation> {
    a.check_shape(b)?;
    let c = a.commutator(b);
    let residual = c.frobenius_norm();
    let commutes = if F::EXACT { c.is_zero() } else { residual <= tol };
    Ok(Commutation { commutes, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    pub(crate) fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| rat(k, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&k| rat(k, 1)).collect())
    }

    fn example_t() -> Matrix<Rational> {
        qm(&[&[1, 1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 0, 2]])
    }

    #[test]
    fn minimal_polynomial_examples() {
        for n in 1..5 {
            assert_eq!(minimal_polynomial(&Matrix::<Rational>::identity(n)), qp(&[-1, 1]));
        }
        assert_eq!(minimal_polynomial(&qm(&[&[0, 1], &[0, 0]])), qp(&[0, 0, 1]));
        assert_eq!(minimal_polynomial(&example_t()), qp(&[8, -16, 14, -6, 1]));
    }

    #[test]
    fn characteristic_polynomial_of_worked_example() {
        assert_eq!(characteristic_polynomial(&example_t()), qp(&[8, -16, 14, -6, 1]));
        assert_eq!(characteristic_polynomial(&Matrix::<Rational>::identity(2)), qp(&[1, -2, 1]));
    }

    #[test]
    fn evaluation_examples() {
        let t = example_t();
        assert_eq!(eval_poly_at_matrix(&Poly::x(), &t), t);
        assert!(eval_poly_at_matrix(&minimal_polynomial(&t), &t).is_zero());
        let e = qp(&[-4, 4, -1]).scale(&rat(1, 2));
        let expected = qm(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(eval_poly_at_matrix(&e, &t), expected);
        assert_eq!(eval_poly_at_rational_matrix(&e, &t), expected);
    }

    #[test]
    fn exp_and_log_examples() {
        let z = Matrix::<Rational>::zeros(3);
        assert_eq!(matrix_exp_nilpotent(&z).unwrap(), Matrix::identity(3));
        let n2 = qm(&[&[0, 1], &[0, 0]]);
        assert_eq!(matrix_exp_nilpotent(&n2).unwrap(), qm(&[&[1, 1], &[0, 1]]));
        let n3 = qm(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let mut expected = qm(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        expected.set(0, 2, rat(1, 2));
        assert_eq!(matrix_exp_nilpotent(&n3).unwrap(), expected);
        assert_eq!(matrix_log_unipotent(&expected).unwrap(), n3);
        assert_eq!(matrix_log_unipotent(&Matrix::<Rational>::identity(2)).unwrap(), Matrix::zeros(2));
        assert_eq!(matrix_log_unipotent(&qm(&[&[1, 1], &[0, 1]])).unwrap(), n2);
        assert_eq!(matrix_exp_nilpotent(&qm(&[&[1, 0], &[0, 0]])), Err(JordanError::NotNilpotent));
        assert_eq!(matrix_log_unipotent(&qm(&[&[2, 0], &[0, 1]])), Err(JordanError::NotUnipotent));
    }

    #[test]
    fn commutation_examples() {
        let t = example_t();
        let p = eval_poly_at_matrix(&qp(&[3, -1, 0, 2]), &t);
        assert!(commutes(&t, &p, 0.0).unwrap().commutes);
        let a = qm(&[&[0, 1], &[0, 0]]);
        let c = commutes(&a, &a.transpose(), 0.0).unwrap();
        assert!(!c.commutes);
        assert!(c.residual > 0.0);
        assert!(matches!(commutes(&a, &t, 0.0), Err(JordanError::ShapeError(_))));
    }

    #[test]
    fn inverse_det_rank() {
        let a = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), rat(1, 1));
        assert_eq!(&a * &a.inverse().unwrap(), Matrix::identity(2));
        let s = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.det(), rat(0, 1));
        assert_eq!(s.inverse(), Err(JordanError::NotInvertible));
        let f: Matrix<f64> = a.map(crate::scalar::RealField::to_f64);
        assert!((&f * &f.inverse().unwrap()).approx_eq(&Matrix::identity(2), 1e-12));
    }
}
