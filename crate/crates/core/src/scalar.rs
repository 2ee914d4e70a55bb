//! Scalar fields used as matrix and polynomial coefficients.
//!
//! Three backends are provided:
//!
//! - [`Rational`]: exact rationals in canonical reduced form (the default),
//! - [`GaussRational`]: exact Gaussian rationals `a + b i`, opt-in,
//! - [`C64`]: double precision complex numbers for irrational curve points.
//!
//! Matrices and polynomials are generic over [`Field`], so a computation
//! never mixes backends; converting between them is always explicit.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Double precision complex scalar.
pub type C64 = Complex<f64>;

/// A commutative field with an involution (complex conjugation).
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and equality tests are meaningful.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Approximate absolute value, used for pivot selection and reporting.
    fn modulus(&self) -> f64;
    fn from_rational(q: &Rational) -> Self;
    fn to_complex(&self) -> C64;
    /// Inverse of [`to_complex`](Field::to_complex) on the float backend;
    /// `None` for exact scalars.
    fn from_complex(z: C64) -> Option<Self>;
    /// Text form used in JSON artifacts.
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_complex(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_complex(_: C64) -> Option<Self> {
        None
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Parses `"a"` or `"a/b"` with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::BadScalar(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl Field for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn from_rational(q: &Rational) -> Self {
        C64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_complex(&self) -> C64 {
        *self
    }
    fn from_complex(z: C64) -> Option<Self> {
        Some(z)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if let Ok(q) = parse_rational(&t) {
            return Ok(Self::from_rational(&q));
        }
        let v = C64::from_str(&t).map_err(|_| Error::BadScalar(s.to_string()))?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::BadScalar(s.to_string()));
        }
        Ok(v)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Exact Gaussian rational `re + im * i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self::new(Zero::zero(), One::one())
    }

    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm_sqr();
        assert!(!Zero::is_zero(&n), "division by zero");
        let q = self * Field::conj(&o);
        Self::new(q.re / &n, q.im / n)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", self.re, sign, self.im.abs())
    }
}

impl Field for GaussRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::new(q.clone(), Zero::zero())
    }
    fn to_complex(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn from_complex(_: C64) -> Option<Self> {
        None
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        let bad = || Error::BadScalar(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::from_rational(&parse_rational(&t)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        let re = parse_rational(re).map_err(|_| bad())?;
        let im = parse_rational(im).map_err(|_| bad())?;
        Ok(Self::new(re, im))
    }
}

/// Shorthand for an exact rational from a small integer.
pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for an exact rational `num/den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_forms() {
        assert_eq!(qf(6, -4).to_text(), "-3/2");
        assert_eq!(q(7).to_text(), "7");
        assert_eq!(Rational::parse_text(" -3/2 ").unwrap(), qf(-3, 2));
        assert!(Rational::parse_text("1/0").is_err());
        assert!(Rational::parse_text("x").is_err());
    }

    #[test]
    fn rational_is_canonical() {
        let a = qf(10, -4);
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(a.numer(), &BigInt::from(-5));
    }

    #[test]
    fn gaussian_arithmetic_and_text() {
        let i = GaussRational::i();
        assert_eq!(i.clone() * i.clone(), -GaussRational::one());
        assert_eq!(i.conj(), -i.clone());
        let z = GaussRational::new(qf(1, 2), qf(-3, 4));
        assert_eq!(z.to_text(), "1/2-3/4*i");
        assert_eq!(GaussRational::parse_text("1/2-3/4*i").unwrap(), z);
        assert_eq!(
            GaussRational::parse_text("-1/2+i").unwrap(),
            GaussRational::new(qf(-1, 2), q(1))
        );
        assert_eq!(GaussRational::parse_text("-i").unwrap(), -i);
        assert_eq!(GaussRational::parse_text("5").unwrap(), GaussRational::from_i64(5));
        let w = z.clone() / z.clone();
        assert!(w.is_one());
    }

    #[test]
    fn complex_parse_rejects_nan() {
        assert_eq!(C64::parse_text("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(C64::parse_text("3/4").unwrap(), C64::new(0.75, 0.0));
        assert!(C64::parse_text("NaN").is_err());
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(q(3).pow(5), q(243));
        assert_eq!(q(3).pow(0), q(1));
    }
}
