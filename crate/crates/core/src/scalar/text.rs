//! Tagged scalar values and their string forms.
//!
//! | ring               | example                       |
//! |--------------------|-------------------------------|
//! | `rational`         | `-3/4`, `2`                   |
//! | `gaussian-rational`| `1/2-3/4i`                    |
//! | `radical-rational` | `1/2+3*sqrt(2)-sqrt(6)`       |
//! | `gaussian-radical` | `(1/2*sqrt(2))+(-1/2*sqrt(2))i` |
//! | `complex-float`    | `1.2599210498948732e0`, `1e0-2e0i` |
//!
//! Input rationals may also be written as decimals (`0.25`, `-1.5e-3`); they
//! are converted exactly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Complex64, Field, Gaussian, GaussianRadical, Radical, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

impl ParseScalarError {
    pub(crate) fn new(input: &str, reason: &str) -> Self {
        ParseScalarError {
            input: input.to_string(),
            reason: reason.to_string(),
        }
    }
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse scalar {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseScalarError {}

/// Ring tag of a scalar or of a polynomial / matrix (widest entry).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ring {
    Rational,
    GaussianRational,
    RadicalRational,
    GaussianRadical,
    ComplexFloat,
}

impl Ring {
    /// Smallest ring containing both.
    pub fn join(self, other: Ring) -> Ring {
        use Ring::*;
        match (self, other) {
            (ComplexFloat, _) | (_, ComplexFloat) => ComplexFloat,
            (a, b) if a == b => a,
            (Rational, x) | (x, Rational) => x,
            _ => GaussianRadical,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Ring::Rational => "rational",
            Ring::GaussianRational => "gaussian-rational",
            Ring::RadicalRational => "radical-rational",
            Ring::GaussianRadical => "gaussian-radical",
            Ring::ComplexFloat => "complex-float",
        }
    }
}

/// A single scalar with its ring tag.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(Gaussian),
    Radical(Radical),
    GaussianRadical(GaussianRadical),
    Float(Complex64),
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Rational(_) => Ring::Rational,
            Scalar::Gaussian(_) => Ring::GaussianRational,
            Scalar::Radical(_) => Ring::RadicalRational,
            Scalar::GaussianRadical(_) => Ring::GaussianRadical,
            Scalar::Float(_) => Ring::ComplexFloat,
        }
    }

    /// Parse any exact string form. Decimal strings become exact rationals.
    pub fn parse(s: &str) -> Result<Scalar, ParseScalarError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseScalarError::new(s, "empty string"));
        }
        if t.ends_with('i') {
            if t.starts_with('(') || t.contains("sqrt") {
                return parse_gaussian_radical(t).map(Scalar::GaussianRadical);
            }
            return parse_gaussian(t).map(Scalar::Gaussian);
        }
        if t.contains("sqrt") {
            return parse_radical(t).map(Scalar::Radical);
        }
        parse_rational(t).map(Scalar::Rational)
    }

    /// Exact rational value, if this scalar is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Gaussian(z) if z.im.is_zero() => Some(z.re.clone()),
            Scalar::Radical(r) => r.as_rational(),
            Scalar::GaussianRadical(z) if z.im.is_zero() => z.re.as_rational(),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Rational(q) => q.to_c64(),
            Scalar::Gaussian(z) => z.to_c64(),
            Scalar::Radical(r) => r.to_c64(),
            Scalar::GaussianRadical(z) => z.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    /// Re-express in a wider ring (no-op when already there).
    pub fn widen(&self, ring: Ring) -> Scalar {
        if self.ring() == ring {
            return self.clone();
        }
        match ring {
            Ring::Rational => self.clone(),
            Ring::GaussianRational => match self {
                Scalar::Rational(q) => Scalar::Gaussian(Complex::new(q.clone(), Rational::zero())),
                _ => self.clone(),
            },
            Ring::RadicalRational => match self {
                Scalar::Rational(q) => Scalar::Radical(Radical::from_rational(q.clone())),
                _ => self.clone(),
            },
            Ring::GaussianRadical => match self {
                Scalar::Rational(q) => Scalar::GaussianRadical(Complex::new(
                    Radical::from_rational(q.clone()),
                    Radical::zero(),
                )),
                Scalar::Gaussian(z) => Scalar::GaussianRadical(Complex::new(
                    Radical::from_rational(z.re.clone()),
                    Radical::from_rational(z.im.clone()),
                )),
                Scalar::Radical(r) => {
                    Scalar::GaussianRadical(Complex::new(r.clone(), Radical::zero()))
                }
                _ => self.clone(),
            },
            Ring::ComplexFloat => Scalar::Float(self.to_c64()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Rational(q) => render_rational(q),
            Scalar::Gaussian(z) => {
                let im = render_rational(&z.im);
                if z.im.is_negative() {
                    format!("{}{}i", render_rational(&z.re), im)
                } else {
                    format!("{}+{}i", render_rational(&z.re), im)
                }
            }
            Scalar::Radical(r) => render_radical(r),
            Scalar::GaussianRadical(z) => {
                format!("({})+({})i", render_radical(&z.re), render_radical(&z.im))
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    render_float(z.re)
                } else {
                    format!("{}{}i", render_float(z.re), signed_float(z.im))
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Narrowest tagged form of a field element.
pub trait ToScalar {
    fn to_scalar(&self) -> Scalar;
}

impl ToScalar for Rational {
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }
}

impl ToScalar for Radical {
    fn to_scalar(&self) -> Scalar {
        match self.as_rational() {
            Some(q) => Scalar::Rational(q),
            None => Scalar::Radical(self.clone()),
        }
    }
}

impl ToScalar for Gaussian {
    fn to_scalar(&self) -> Scalar {
        if self.im.is_zero() {
            Scalar::Rational(self.re.clone())
        } else {
            Scalar::Gaussian(self.clone())
        }
    }
}

impl ToScalar for GaussianRadical {
    fn to_scalar(&self) -> Scalar {
        if self.im.is_zero() {
            return self.re.to_scalar();
        }
        match (self.re.as_rational(), self.im.as_rational()) {
            (Some(a), Some(b)) => Scalar::Gaussian(Complex::new(a, b)),
            _ => Scalar::GaussianRadical(self.clone()),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl ToScalar for $t {
            fn to_scalar(&self) -> Scalar {
                Scalar::Float(Complex64::new(*self as f64, 0.0))
            }
        }
        impl ToScalar for Complex<$t> {
            fn to_scalar(&self) -> Scalar {
                Scalar::Float(Complex64::new(self.re as f64, self.im as f64))
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Render a sequence in one common ring; returns the ring tag used.
pub fn render_uniform<'a, T: ToScalar + 'a>(
    values: impl IntoIterator<Item = &'a T>,
) -> (Ring, Vec<String>) {
    let scalars: Vec<Scalar> = values.into_iter().map(ToScalar::to_scalar).collect();
    let ring = scalars
        .iter()
        .map(Scalar::ring)
        .fold(Ring::Rational, Ring::join);
    let strings = scalars.iter().map(|s| s.widen(ring).render()).collect();
    (ring, strings)
}

pub(crate) fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn render_radical(r: &Radical) -> String {
    if r.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, q)) in r.terms().iter().enumerate() {
        let neg = q.is_negative();
        let mag = q.abs();
        if k > 0 {
            out.push(if neg { '-' } else { '+' });
        } else if neg {
            out.push('-');
        }
        if m.is_one() {
            out.push_str(&render_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&format!("sqrt({m})"));
        } else {
            out.push_str(&format!("{}*sqrt({m})", render_rational(&mag)));
        }
    }
    out
}

fn render_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn signed_float(x: f64) -> String {
    if x.is_sign_negative() {
        format!("{x:.16e}")
    } else {
        format!("+{x:.16e}")
    }
}

/// Exact rational from `p/q`, an integer, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let t = s.trim();
    let err = |why: &str| ParseScalarError::new(s, why);
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = t[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("not a rational number"));
    }
    if exponent.abs() > 10_000 {
        return Err(err("exponent out of range"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| err("bad digits"))?;
    if neg {
        num = -num;
    }
    let shift = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    Ok(if shift >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-shift) as usize))
    })
}

/// Split at top-level `+`/`-` signs, keeping the sign with each piece.
fn split_signed_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start => {
                let prev = bytes[i - 1];
                if prev == b'e' || prev == b'E' || prev == b'/' || prev == b'*' {
                    continue;
                }
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn parse_radical(s: &str) -> Result<Radical, ParseScalarError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ParseScalarError::new(s, "empty string"));
    }
    let mut acc = Radical::zero();
    for piece in split_signed_terms(&t) {
        let (neg, body) = match piece.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, piece.strip_prefix('+').unwrap_or(piece)),
        };
        let term = match body.find("sqrt(") {
            None => Radical::from_rational(parse_rational(body)?),
            Some(pos) => {
                let coeff = match body[..pos].strip_suffix('*') {
                    Some(c) => parse_rational(c)?,
                    None if pos == 0 => Rational::one(),
                    None => return Err(ParseScalarError::new(s, "expected '*' before sqrt")),
                };
                let inner = body[pos + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| ParseScalarError::new(s, "unclosed sqrt("))?;
                let m: BigUint = inner
                    .parse()
                    .map_err(|_| ParseScalarError::new(s, "radicand must be a non-negative integer"))?;
                Radical::term(coeff, &m)
                    .ok_or_else(|| ParseScalarError::new(s, "radicand too large to factor"))?
            }
        };
        acc = &acc + &(if neg { -term } else { term });
    }
    Ok(acc)
}

fn parse_gaussian(s: &str) -> Result<Gaussian, ParseScalarError> {
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| ParseScalarError::new(s, "missing trailing 'i'"))?;
    let pieces = split_signed_terms(body);
    let imag = |p: &str| -> Result<Rational, ParseScalarError> {
        match p {
            "" | "+" => Ok(Rational::one()),
            "-" => Ok(-Rational::one()),
            _ => parse_rational(p.strip_prefix('+').unwrap_or(p)),
        }
    };
    match pieces.as_slice() {
        [im] => Ok(Complex::new(Rational::zero(), imag(im)?)),
        [re, im] => Ok(Complex::new(parse_rational(re)?, imag(im)?)),
        _ => Err(ParseScalarError::new(s, "expected a+bi")),
    }
}

fn parse_gaussian_radical(s: &str) -> Result<GaussianRadical, ParseScalarError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_suffix(")i")
        .and_then(|b| b.strip_prefix('('))
        .ok_or_else(|| ParseScalarError::new(s, "expected (re)+(im)i"))?;
    let (re, im) = body
        .split_once(")+(")
        .ok_or_else(|| ParseScalarError::new(s, "expected (re)+(im)i"))?;
    Ok(Complex::new(parse_radical(re)?, parse_radical(im)?))
}
