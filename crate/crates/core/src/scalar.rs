//! Numeric scalars: the same algorithms run over `Complex<f64>` (floating mode)
//! and `Complex<BigRational>` (exact mode).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, Integer, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
/// Exact complex rational.
pub type CQ = Complex<BigRational>;

/// Relative tolerance used for floating-mode equality.
pub const FLOAT_REL_TOL: f64 = 1e-12;

/// Real field underlying a [`Scalar`].
pub trait Real:
    Clone + Debug + PartialEq + PartialOrd + Send + Sync + 'static + Num + Neg<Output = Self>
{
    const EXACT: bool;
    fn from_int(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact conversion of the binary value for rationals; `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    /// Text form that parses back to the same value.
    fn to_text(&self) -> String;

    fn pow_int(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `self * factor` where `factor` has a small representation.
    fn mul_small(&self, factor: &Self) -> Self {
        self.clone() * factor.clone()
    }
}

impl Real for f64 {
    const EXACT: bool = false;
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

impl Real for BigRational {
    const EXACT: bool = true;
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
    /// Cross-reduces against the small factor so no gcd of two large integers is needed.
    fn mul_small(&self, factor: &Self) -> Self {
        let (a, b) = (self.numer(), self.denom());
        let (c, d) = (factor.numer(), factor.denom());
        if c.is_zero() {
            return BigRational::zero();
        }
        let g_ad = (a % d).gcd(d);
        let g_bc = (b % c).gcd(c);
        let numer = (a / &g_ad) * (c / &g_bc);
        let denom = (b / &g_bc) * (d / &g_ad);
        if denom.is_negative() {
            BigRational::new_raw(-numer, -denom)
        } else {
            BigRational::new_raw(numer, denom)
        }
    }
    fn to_text(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Complex scalar over a [`Real`] field.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Real: Real;
    const EXACT: bool;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re_part(&self) -> Self::Real;
    fn im_part(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;

    fn from_real(r: Self::Real) -> Self {
        Self::from_parts(r, Self::Real::zero())
    }
    fn from_int(v: i64) -> Self {
        Self::from_real(Self::Real::from_int(v))
    }
    fn from_c64(c: C64) -> Option<Self> {
        Some(Self::from_parts(
            Self::Real::from_f64(c.re)?,
            Self::Real::from_f64(c.im)?,
        ))
    }
    fn scale_real(&self, r: &Self::Real) -> Self {
        Self::from_parts(self.re_part() * r.clone(), self.im_part() * r.clone())
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    /// Zero test: exact in rational mode, `|x| <= FLOAT_REL_TOL * scale` otherwise.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= FLOAT_REL_TOL * scale.max(f64::MIN_POSITIVE)
        }
    }
    /// Equality: exact in rational mode, relative `FLOAT_REL_TOL` otherwise.
    fn close_to(&self, other: &Self, scale: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(scale)
    }
}

impl<R: Real> Scalar for Complex<R> {
    type Real = R;
    const EXACT: bool = R::EXACT;

    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }
    fn re_part(&self) -> R {
        self.re.clone()
    }
    fn im_part(&self) -> R {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Falling factorial `m (m-1) ... (m-k+1)` as a scalar (zero when `0 <= m < k`).
pub fn falling_factorial<S: Scalar>(m: i64, k: usize) -> S {
    let mut acc = S::one();
    for j in 0..k as i64 {
        let f = m - j;
        if f == 0 {
            return S::zero();
        }
        acc = acc * S::from_int(f);
    }
    acc
}

/// Binomial coefficient as a scalar.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    S::from_int(acc as i64)
}

/// Parses an exact rational: integers, `p/q`, and decimals such as `-1.25` or `3e-2`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("3e-2").unwrap(), q(3, 100));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("1.5E2").unwrap(), q(150, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling_factorial::<C64>(5, 2), C64::new(20.0, 0.0));
        assert_eq!(falling_factorial::<C64>(1, 2), C64::zero());
        assert_eq!(falling_factorial::<C64>(-2, 2), C64::new(6.0, 0.0));
        assert_eq!(binomial::<C64>(6, 3), C64::new(20.0, 0.0));
    }

    #[test]
    fn float_closeness_is_relative() {
        let a = C64::new(1e6, 0.0);
        let b = C64::new(1e6 + 1e-7, 0.0);
        assert!(a.close_to(&b, 1e6));
        assert!(!a.close_to(&C64::new(1e6 + 1.0, 0.0), 1e6));
    }
}
