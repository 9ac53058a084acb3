//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored lowest degree first with no trailing zero; the zero
//! polynomial is the empty vector and has no degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{JordanError, Result};
use crate::scalar::{Field, Scalar, ToScalar};

#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![F::zero(), F::one()],
        }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `x − root`
    pub fn linear(root: &F) -> Self {
        Poly {
            coeffs: vec![-root.clone(), F::one()],
        }
    }

    /// `Π (x − r)`
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a F>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inv();
                let mut p = self.scale(&inv);
                if let Some(last) = p.coeffs.last_mut() {
                    *last = F::one();
                }
                p
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficientwise complex conjugate.
    pub fn conjugate(&self) -> Self {
        Self::new(self.coeffs.iter().map(Field::conj).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| JordanError::DegenerateInput("division by the zero polynomial".into()))?;
        let Some(pd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if pd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lead = d.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); pd - dd + 1];
        for i in (0..=pd - dd).rev() {
            let c = r[i + dd].clone() * inv_lead.clone();
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate().take(dd) {
                    r[i + j] = r[i + j].clone() - c.clone() * dj.clone();
                }
            }
            r[i + dd] = F::zero();
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Coefficients of `p(a + y)` as a polynomial in `y`.
    pub fn taylor_shift(&self, a: &F) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone() * a.clone();
                c[j] = c[j].clone() + t;
            }
        }
        Self::new(c)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Human-readable form such as `x^3 - 1/2*x + (1+1i)`.
impl<F: Field + ToScalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_scalar();
            let (neg, body) = match &s {
                Scalar::Rational(q) if q < &num_traits::zero() => (true, (-q.clone()).to_scalar().render()),
                Scalar::Rational(_) => (false, s.render()),
                _ => (false, format!("({})", s.render())),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => f.write_str(&body)?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{body}*x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{body}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.clone() + b.clone(),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => F::zero(),
                })
                .collect(),
        )
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        self + &(-o)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(JordanError::DegenerateInput("gcd of two zero polynomials".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1)?;
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn poly_extended_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    if a.is_zero() && b.is_zero() {
        return Err(JordanError::DegenerateInput("gcd of two zero polynomials".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.lead().expect("nonzero remainder").inv();
    Ok((r0.monic(), s0.scale(&inv), t0.scale(&inv)))
}

/// Monic least common multiple of two nonzero polynomials.
pub fn poly_lcm<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    let g = poly_gcd(a, b)?;
    let (q, _) = a.div_rem(&g)?;
    Ok((&q * b).monic())
}

/// Yun's algorithm: `p = lc(p)·Π fᵢ^{eᵢ}` with monic, squarefree, pairwise
/// coprime `fᵢ`, multiplicities increasing.
pub fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    if p.is_zero() {
        return Err(JordanError::DegenerateInput(
            "squarefree decomposition of the zero polynomial".into(),
        ));
    }
    let f = p.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.div_rem(&a0)?.0;
    let c = df.div_rem(&a0)?.0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&b, &d)?;
        let nb = b.div_rem(&a)?.0;
        let nc = d.div_rem(&a)?.0;
        d = &nc - &nb.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Coefficientwise conjugate.
pub fn conjugate_poly<F: Field>(p: &Poly<F>) -> Poly<F> {
    p.conjugate()
}

/// Remainder of `p` on division by `m`.
pub fn mod_reduce<F: Field>(p: &Poly<F>, m: &Poly<F>) -> Result<Poly<F>> {
    Ok(p.div_rem(m)?.1)
}

/// Polynomial `a` of degree `< m` with `a·q ≡ 1 mod (x − λ)^m`: the truncated
/// Taylor expansion of `1/q` at `λ`.
pub fn series_inverse_at<F: Field>(q: &Poly<F>, lambda: &F, m: usize) -> Result<Poly<F>> {
    if m == 0 {
        return Err(JordanError::DegenerateInput("series order must be positive".into()));
    }
    let c = q.taylor_shift(lambda);
    let c0 = c.coeff(0);
    if c0.is_zero() {
        return Err(JordanError::SingularLocalInverse);
    }
    let inv0 = c0.inv();
    let mut b: Vec<F> = Vec::with_capacity(m);
    b.push(inv0.clone());
    for k in 1..m {
        let mut acc = F::zero();
        for j in 1..=k {
            acc = acc + c.coeff(j) * b[k - j].clone();
        }
        b.push(-(acc * inv0.clone()));
    }
    let step = Poly::linear(lambda);
    let mut a = Poly::zero();
    for bj in b.into_iter().rev() {
        a = &(&a * &step) + &Poly::constant(bj);
    }
    Ok(a)
}
