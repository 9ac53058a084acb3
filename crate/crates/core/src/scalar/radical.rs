//! Radical rationals: finite sums `Σ q·√m` with `m` square-free.
//!
//! The square roots of distinct square-free integers are linearly independent
//! over ℚ, so the sorted term list is a canonical form and structural equality
//! is value equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::text::ParseScalarError;
use super::{Field, RealField, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    // sorted by radicand; radicand 1 is the rational part; no zero coefficients
    terms: Vec<(BigUint, Rational)>,
}

impl Radical {
    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Radical {
                terms: vec![(BigUint::one(), q)],
            }
        }
    }

    /// `coeff · √m` for an arbitrary non-negative integer `m`.
    ///
    /// Returns `None` when `m` is too large to split into square and
    /// square-free parts by trial division.
    pub fn term(coeff: Rational, m: &BigUint) -> Option<Self> {
        if m.is_zero() || coeff.is_zero() {
            return Some(Self::zero());
        }
        let (s, r) = square_free_decomposition(m)?;
        let c = coeff * Rational::from_integer(BigInt::from(s));
        Some(Self::from_map(std::iter::once((r, c)).collect()))
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt_rational(q: &Rational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        let n = (q.numer() * q.denom()).to_biguint()?;
        let den = Rational::from_integer(q.denom().clone());
        Self::term(Rational::one() / den, &n)
    }

    fn from_map(map: BTreeMap<BigUint, Rational>) -> Self {
        Radical {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(BigUint, Rational)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, q)] if m.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    pub fn rational_part(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, q)| q.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, q)| {
                let qf = ToPrimitive::to_f64(q).unwrap_or(f64::NAN);
                if m.is_one() {
                    qf
                } else {
                    qf * m.to_f64().unwrap_or(f64::NAN).sqrt()
                }
            })
            .sum()
    }

    /// Exact sign, by floating point when clearly decided and by rational
    /// interval refinement of the square roots otherwise.
    pub fn signum_exact(&self) -> Ordering {
        match self.terms.as_slice() {
            [] => return Ordering::Equal,
            [(_, q)] => return q.cmp(&Rational::zero()),
            _ => {}
        }
        let approx = self.to_f64();
        let scale: f64 = self
            .terms
            .iter()
            .map(|(m, q)| {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN).abs() * m.to_f64().unwrap_or(f64::NAN).sqrt()
            })
            .sum();
        if approx.is_finite() && scale.is_finite() && approx.abs() > 1e-10 * scale {
            return approx.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
        }
        let mut bits = 64usize;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    fn enclosure(&self, bits: usize) -> (Rational, Rational) {
        let scale = BigInt::one() << bits;
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (m, q) in &self.terms {
            if m.is_one() {
                lo += q;
                hi += q;
                continue;
            }
            let s = BigInt::from((m << (2 * bits)).sqrt());
            let a = Rational::new(s.clone(), scale.clone());
            let b = Rational::new(s + 1, scale.clone());
            if q.is_positive() {
                lo += q * a;
                hi += q * b;
            } else {
                lo += q * b;
                hi += q * a;
            }
        }
        (lo, hi)
    }

    /// Automorphism flipping `√b` for a coprime-base element `b`.
    fn flip(&self, b: &BigUint) -> Self {
        Radical {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| {
                    if (m % b).is_zero() {
                        (m.clone(), -q.clone())
                    } else {
                        (m.clone(), q.clone())
                    }
                })
                .collect(),
        }
    }

    /// Multiplicative inverse by successive conjugation over a coprime base
    /// of the radicands; `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let base = coprime_base(self.terms.iter().map(|(m, _)| m.clone()));
        let mut num = Self::one();
        let mut den = self.clone();
        for b in &base {
            let c = den.flip(b);
            num = &num * &c;
            den = &den * &c;
        }
        let d = den
            .as_rational()
            .expect("conjugation over a coprime base leaves a rational norm");
        Some(num.scale(&d.recip()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Radical {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }
}

/// Split `n = s² · r` with `r` square-free.
///
/// Trial division runs up to 2²²; a cofactor without small prime factors is
/// accepted as square-free when it is below 2⁶⁶ and not a perfect square.
/// Larger unfactored cofactors give `None`.
pub fn square_free_decomposition(n: &BigUint) -> Option<(BigUint, BigUint)> {
    const LIMIT: u64 = 1 << 22;
    if n.is_zero() {
        return None;
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut r = BigUint::one();
    let mut d: u64 = 2;
    let mut exhausted = false;
    while d <= LIMIT {
        if let Some(small) = rest.to_u64() {
            if (d as u128) * (d as u128) > small as u128 {
                exhausted = true;
                break;
            }
            if small % d == 0 {
                let mut x = small;
                let mut e = 0u32;
                while x % d == 0 {
                    x /= d;
                    e += 1;
                }
                rest = BigUint::from(x);
                s *= BigUint::from(d).pow(e / 2);
                if e % 2 == 1 {
                    r *= d;
                }
            }
        } else {
            let dd = BigUint::from(d);
            let mut e = 0u32;
            while (&rest % &dd).is_zero() {
                rest /= &dd;
                e += 1;
            }
            if e > 0 {
                s *= dd.pow(e / 2);
                if e % 2 == 1 {
                    r *= &dd;
                }
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((s, r));
    }
    if exhausted {
        return Some((s, r * rest));
    }
    let t = rest.sqrt();
    if &t * &t == rest {
        return Some((s * t, r));
    }
    if rest.bits() <= 66 {
        return Some((s, r * rest));
    }
    None
}

/// Pairwise coprime integers > 1 whose products give every input (inputs are
/// square-free).
fn coprime_base(items: impl IntoIterator<Item = BigUint>) -> Vec<BigUint> {
    let mut base: Vec<BigUint> = Vec::new();
    let mut stack: Vec<BigUint> = items.into_iter().collect();
    while let Some(x) = stack.pop() {
        if x.is_one() || x.is_zero() {
            continue;
        }
        match base.iter().position(|b| !b.gcd(&x).is_one()) {
            None => base.push(x),
            Some(i) => {
                let b = base.swap_remove(i);
                let g = b.gcd(&x);
                if b == x {
                    base.push(b);
                    continue;
                }
                stack.push(&b / &g);
                stack.push(&x / &g);
                stack.push(g);
            }
        }
    }
    base.sort();
    base
}

impl Zero for Radical {
    fn zero() -> Self {
        Radical { terms: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Radical {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn add(self, o: &Radical) -> Radical {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &o.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Radical { terms: out }
    }
}

impl<'a> Mul<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn mul(self, o: &Radical) -> Radical {
        if self.is_zero() || o.is_zero() {
            return Radical::zero();
        }
        if let Some(q) = self.as_rational() {
            return o.scale(&q);
        }
        if let Some(q) = o.as_rational() {
            return self.scale(&q);
        }
        let mut acc: BTreeMap<BigUint, Rational> = BTreeMap::new();
        for (m, p) in &self.terms {
            for (n, q) in &o.terms {
                let g = m.gcd(n);
                let r = (m / &g) * (n / &g);
                let c = p * q * Rational::from_integer(BigInt::from(g));
                let slot = acc.entry(r).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        Radical::from_map(acc)
    }
}

impl<'a> Sub<&'a Radical> for &'a Radical {
    type Output = Radical;
    fn sub(self, o: &Radical) -> Radical {
        self + &(-o.clone())
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, o: Radical) -> Radical {
        &self + &o
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, o: Radical) -> Radical {
        &self + &(-o)
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, o: Radical) -> Radical {
        &self * &o
    }
}

impl Div for Radical {
    type Output = Radical;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Radical) -> Radical {
        let inv = o.checked_inv().expect("division of a radical by zero");
        &self * &inv
    }
}

/// Remainder in a field: always zero for a nonzero divisor.
impl Rem for Radical {
    type Output = Radical;
    fn rem(self, o: Radical) -> Radical {
        assert!(!o.is_zero(), "remainder by zero");
        Radical::zero()
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical {
            terms: self.terms.into_iter().map(|(m, q)| (m, -q)).collect(),
        }
    }
}

impl Num for Radical {
    type FromStrRadixErr = ParseScalarError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, ParseScalarError> {
        if radix != 10 {
            return Err(ParseScalarError::new(s, "only radix 10 is supported"));
        }
        super::text::parse_radical(s)
    }
}

impl Field for Radical {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        Radical::from_rational(q.clone())
    }
    fn to_c64(&self) -> super::Complex64 {
        super::Complex64::new(self.to_f64(), 0.0)
    }
    fn term_count(&self) -> usize {
        self.terms.len().max(1)
    }
    fn as_exact_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

impl RealField for Radical {
    fn cmp_zero(&self) -> Ordering {
        self.signum_exact()
    }
    fn sqrt_checked(&self) -> Option<Self> {
        let q = self.as_rational()?;
        Radical::sqrt_rational(&q)
    }
    fn to_f64(&self) -> f64 {
        Radical::to_f64(self)
    }
    fn precision_bits() -> Option<u32> {
        None
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render_radical(self))
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sqrt(m: u64) -> Radical {
        Radical::term(Rational::one(), &BigUint::from(m)).unwrap()
    }

    #[test]
    fn products_of_roots_reduce() {
        assert_eq!(&sqrt(2) * &sqrt(2), Radical::from_rational(rat(2, 1)));
        assert_eq!(&sqrt(2) * &sqrt(3), sqrt(6));
        // √6·√10 = 2√15
        assert_eq!(
            &sqrt(6) * &sqrt(10),
            Radical::term(rat(2, 1), &BigUint::from(15u32)).unwrap()
        );
        assert_eq!(sqrt(12), Radical::term(rat(2, 1), &BigUint::from(3u32)).unwrap());
    }

    #[test]
    fn inverse_over_multiquadratic_field() {
        let x = &(&Radical::one() + &sqrt(2)) + &sqrt(3);
        let y = x.checked_inv().unwrap();
        assert_eq!(&x * &y, Radical::one());
        let z = &sqrt(6) + &Radical::from_rational(rat(-5, 2));
        assert_eq!(&z * &z.checked_inv().unwrap(), Radical::one());
        assert!(Radical::zero().checked_inv().is_none());
    }

    #[test]
    fn exact_sign_near_cancellation() {
        // 99/70 approximates √2 from above
        let x = &sqrt(2) - &Radical::from_rational(rat(99, 70));
        assert_eq!(x.signum_exact(), Ordering::Less);
        let y = &sqrt(2) - &Radical::from_rational(rat(140, 99));
        assert_eq!(y.signum_exact(), Ordering::Greater);
        // 5√2 - 7.0710678118654752440 + tiny
        let big = Rational::new(
            BigInt::from(70710678118654752u64),
            BigInt::from(10000000000000000u64),
        );
        let z = &sqrt(2).scale(&rat(5, 1)) - &Radical::from_rational(big);
        assert_eq!(z.signum_exact(), Ordering::Greater);
    }

    #[test]
    fn square_free_split() {
        let (s, r) = square_free_decomposition(&BigUint::from(72u32)).unwrap();
        assert_eq!((s, r), (BigUint::from(6u32), BigUint::from(2u32)));
        let p: u64 = 1_000_000_007;
        let (s, r) = square_free_decomposition(&BigUint::from(p * p * 3)).unwrap();
        assert_eq!((s, r), (BigUint::from(p), BigUint::from(3u32)));
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(
            Radical::sqrt_rational(&rat(1, 2)).unwrap(),
            sqrt(2).scale(&rat(1, 2))
        );
        assert_eq!(
            Radical::sqrt_rational(&rat(9, 4)).unwrap(),
            Radical::from_rational(rat(3, 2))
        );
        assert!(Radical::sqrt_rational(&rat(-1, 1)).is_none());
    }

    #[test]
    fn coprime_base_splits_shared_factors() {
        let b = coprime_base([6u32, 10, 15].map(BigUint::from));
        assert_eq!(b, [2u32, 3, 5].map(BigUint::from).to_vec());
    }
}
