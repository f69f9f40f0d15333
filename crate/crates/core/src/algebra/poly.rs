use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use crate::scalar::{Real, Scalar, C64};

/// Dense polynomial in `z`, lowest power first, with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// `c z^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// Product of `(z - r)` over the given roots, scaled by `lead`.
    pub fn from_roots(lead: S, roots: &[S]) -> Self {
        roots.iter().fold(Self::constant(lead), |acc, r| {
            acc * Self::new(vec![-r.clone(), S::one()])
        })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `z^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> S {
        self.coeffs.get(j).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.clone() * S::from_int(j as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn eval(&self, z: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn eval_c64(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::zero(), |acc, c| acc * z + c.to_c64())
    }

    pub fn to_c64(&self) -> Poly<C64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_c64).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Equality up to the scalar tolerance, relative to the larger operand.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|j| self.coeff(j).close_to(&other.coeff(j), scale))
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, rhs: Poly<S>) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

fn real_text<R: Real>(x: &R) -> String {
    if R::EXACT {
        x.to_text()
    } else {
        x.to_f64().to_string()
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (re, im) = (c.re_part(), c.im_part());
            let negative = im.is_zero() && re < S::Real::zero();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let text = if im.is_zero() {
                real_text(&if negative { -re } else { re })
            } else if re.is_zero() {
                format!("{}i", real_text(&im))
            } else {
                let (sign, mag) = if im < S::Real::zero() {
                    ("-", -im)
                } else {
                    ("+", im)
                };
                format!("({}{sign}{}i)", real_text(&re), real_text(&mag))
            };
            match j {
                0 => write!(f, "{text}")?,
                _ if text == "1" => write!(f, "{}", monomial_text(j))?,
                _ if text.contains('/') && !text.starts_with('(') => {
                    write!(f, "({text}){}", monomial_text(j))?
                }
                _ => write!(f, "{text}{}", monomial_text(j))?,
            }
        }
        Ok(())
    }
}

fn monomial_text(j: usize) -> String {
    match j {
        1 => "z".into(),
        _ => format!("z^{j}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Poly<C64> {
        Poly::new(c.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1.0, 1.0]);
        let b = p(&[-1.0, 1.0]);
        assert_eq!(&a * &b, p(&[-1.0, 0.0, 1.0]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(p(&[0.0, 0.0]).degree(), None);
    }

    #[test]
    fn derivative_and_shift() {
        let a = p(&[1.0, 2.0, 3.0]);
        assert_eq!(a.derivative(), p(&[2.0, 6.0]));
        assert_eq!(a.nth_derivative(2), p(&[6.0]));
        assert_eq!(a.shift(2), p(&[0.0, 0.0, 1.0, 2.0, 3.0]));
    }

    #[test]
    fn roots_constructor() {
        let r = [C64::new(0.5, 0.0), C64::new(3.0, 0.0)];
        let q = Poly::from_roots(C64::new(1.0, 0.0), &r);
        assert_eq!(q, p(&[1.5, -3.5, 1.0]));
        assert!(q.eval(&r[1]).norm() < 1e-14);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0.5, -1.25, 1.0]).to_string(), "0.5 - 1.25z + z^2");
        let half = crate::scalar::parse_rational("1/2").unwrap();
        let zero = crate::scalar::parse_rational("0").unwrap();
        let e = Poly::new(vec![
            crate::scalar::CQ::new(half.clone(), zero.clone()),
            crate::scalar::CQ::new(-half.clone(), zero),
            crate::scalar::CQ::new(half.clone(), half),
        ]);
        assert_eq!(e.to_string(), "1/2 - (1/2)z + (1/2+1/2i)z^2");
    }
}
