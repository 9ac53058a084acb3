//! Scalar fields used throughout the crate.
//!
//! Everything above this module is written against [`Field`] (and [`RealField`]
//! where an ordering or a square root is required), so the same polynomial and
//! matrix code runs over exact rationals, Gaussian rationals, radical rationals
//! and their complex extension, as well as over `f64` / `f32` and their complex
//! counterparts for numeric mode.

mod radical;
mod text;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub use radical::{square_free_decomposition, Radical};
pub use text::{parse_rational, render_uniform, ParseScalarError, Ring, Scalar, ToScalar};

/// Exact rational number in lowest terms.
pub type Rational = num_rational::BigRational;
/// Complex number with rational real and imaginary parts.
pub type Gaussian = Complex<Rational>;
/// Complex number whose parts are radical rationals.
pub type GaussianRadical = Complex<Radical>;
/// Double precision complex number.
pub type Complex64 = Complex<f64>;

/// Field element: the arithmetic every polynomial and matrix routine needs.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `true` when `==` and `is_zero` are exact.
    const EXACT: bool;

    /// Complex conjugate; identity on real fields.
    fn conj(&self) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(k: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(k)))
    }

    fn to_c64(&self) -> Complex64;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Zero test: exact for exact fields, `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Number of radical terms carried by this value; 1 for non-radical fields.
    fn term_count(&self) -> usize {
        1
    }

    /// The value as an exact rational, when it is one.
    fn as_exact_rational(&self) -> Option<Rational> {
        None
    }
}

/// Ordered real field with enough structure to build complex extensions.
pub trait RealField: Field + Num {
    /// Sign of the value, exact for exact fields.
    fn cmp_zero(&self) -> Ordering;

    /// Square root when it exists in this field (always for floats).
    fn sqrt_checked(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Mantissa bits for floating types, `None` for exact ones.
    fn precision_bits() -> Option<u32>;

    fn abs_val(&self) -> Self {
        if self.cmp_zero() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn cmp_val(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).cmp_zero()
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(RealField::to_f64(self), 0.0)
    }
    fn as_exact_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl RealField for Rational {
    fn cmp_zero(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn sqrt_checked(&self) -> Option<Self> {
        Radical::sqrt_rational(self)?.as_rational()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn precision_bits() -> Option<u32> {
        None
    }
}

macro_rules! float_field {
    ($t:ty, $bits:expr) => {
        impl Field for $t {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                *self
            }
            fn from_rational(q: &Rational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }
            fn to_c64(&self) -> Complex64 {
                Complex64::new(*self as f64, 0.0)
            }
        }

        impl RealField for $t {
            fn cmp_zero(&self) -> Ordering {
                self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
            }
            fn sqrt_checked(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn precision_bits() -> Option<u32> {
                Some($bits)
            }
        }
    };
}

float_field!(f64, 53);
float_field!(f32, 24);

impl<R: RealField> Field for Complex<R> {
    const EXACT: bool = R::EXACT;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(R::from_rational(q), R::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn inv(&self) -> Self {
        let d = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        Complex::new(self.re.clone() / d.clone(), -self.im.clone() / d)
    }
    fn term_count(&self) -> usize {
        self.re.term_count() + self.im.term_count()
    }
    fn as_exact_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.as_exact_rational()
        } else {
            None
        }
    }
}

/// Shorthand constructor for `n/d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational as an element of any field.
pub fn lift<F: Field>(q: &Rational) -> F {
    F::from_rational(q)
}

/// Imaginary unit of a complex extension.
pub fn imag_unit<R: RealField>() -> Complex<R> {
    Complex::new(R::zero(), R::one())
}

/// `|z|^2` of a complex number.
pub fn norm_sq<R: RealField>(z: &Complex<R>) -> R {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

/// Drop the imaginary part if it is zero (exactly, or within `tol` in float mode).
pub fn real_part_if_real<R: RealField>(z: &Complex<R>, tol: f64) -> Option<R> {
    z.im.is_negligible(tol).then(|| z.re.clone())
}

/// Conversion from an exact radical value into another real field.
pub trait FromRadical: RealField {
    fn from_radical(r: &Radical) -> Self;
}

impl FromRadical for Radical {
    fn from_radical(r: &Radical) -> Self {
        r.clone()
    }
}
impl FromRadical for f64 {
    fn from_radical(r: &Radical) -> Self {
        r.to_f64()
    }
}
impl FromRadical for f32 {
    fn from_radical(r: &Radical) -> Self {
        r.to_f64() as f32
    }
}
