use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::{binomial, falling_factorial, Scalar, C64};

/// Differential expression `sum_k p_k(z) D^k` with `D = d/dz`.
///
/// `coeffs[k]` multiplies `D^k`; trailing zero coefficients are dropped, so
/// the zero expression has no coefficients and no order.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffExpr<S> {
    coeffs: Vec<Poly<S>>,
}

impl<S: Scalar> DiffExpr<S> {
    pub fn new(mut coeffs: Vec<Poly<S>>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Like [`DiffExpr::new`] but rejects coefficients with `deg p_k > N + k`,
    /// which lie outside the adjointable algebra.
    pub fn new_in_algebra(coeffs: Vec<Poly<S>>) -> Result<Self> {
        let e = Self::new(coeffs);
        e.check_degree_bound()?;
        Ok(e)
    }

    /// Builds from nested coefficient lists: `rows[k][j]` is the `z^j` coefficient of `p_k`.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        Self::new(rows.into_iter().map(Poly::new).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::multiplication(Poly::one())
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: Poly<S>) -> Self {
        Self::new(vec![p])
    }

    /// `c z^j D^k`.
    pub fn term(c: S, j: usize, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); k + 1];
        coeffs[k] = Poly::monomial(c, j);
        Self::new(coeffs)
    }

    /// The derivative `D`.
    pub fn derivative() -> Self {
        Self::term(S::one(), 0, 1)
    }

    /// The Euler operator `zD`.
    pub fn euler() -> Self {
        Self::term(S::one(), 1, 1)
    }

    pub fn coeffs(&self) -> &[Poly<S>] {
        &self.coeffs
    }

    /// Coefficient of `D^k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> Poly<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Poly<S>> {
        self.coeffs.last()
    }

    /// `max_k (deg p_k - k)` over nonzero coefficients.
    pub fn degree_excess(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.degree().map(|d| d as i64 - k as i64))
            .max()
    }

    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn check_degree_bound(&self) -> Result<()> {
        let Some(n) = self.order() else { return Ok(()) };
        for (k, p) in self.coeffs.iter().enumerate() {
            if let Some(d) = p.degree() {
                if d > n + k {
                    return Err(Error::NotInAlgebra(format!(
                        "coefficient of D^{k} has degree {d} > {}",
                        n + k
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Composition `self ∘ other`, expanded with the Leibniz rule.
    pub fn compose(&self, other: &Self) -> Self {
        let (Some(n1), Some(n2)) = (self.order(), other.order()) else {
            return Self::zero();
        };
        let mut out = vec![Poly::zero(); n1 + n2 + 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.coeffs.iter().enumerate() {
                let mut dq = q.clone();
                for l in 0..=i {
                    if dq.is_zero() {
                        break;
                    }
                    let term = (p * &dq).scale(&binomial::<S>(i, l));
                    out[i - l + j] = &out[i - l + j] + &term;
                    dq = dq.derivative();
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// Image of `z^m`: `sum_k p_k(z) m(m-1)...(m-k+1) z^(m-k)`.
    pub fn apply_to_monomial(&self, m: usize) -> Poly<S> {
        let mut out: Vec<S> = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            if k > m || p.is_zero() {
                continue;
            }
            let f = falling_factorial::<S>(m as i64, k);
            let base = m - k;
            if out.len() < base + p.coeffs().len() {
                out.resize(base + p.coeffs().len(), S::zero());
            }
            for (j, c) in p.coeffs().iter().enumerate() {
                out[base + j] = out[base + j].clone() + c.clone() * f.clone();
            }
        }
        Poly::new(out)
    }

    /// Image of the Fourier mode `z^m` for any integer `m`, as `(power, coefficient)` pairs.
    pub fn apply_to_mode(&self, m: i64) -> Vec<(i64, S)> {
        let mut out: Vec<(i64, S)> = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            let f = falling_factorial::<S>(m, k);
            if f.is_zero() {
                continue;
            }
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let power = m - k as i64 + j as i64;
                let v = c.clone() * f.clone();
                match out.iter_mut().find(|(q, _)| *q == power) {
                    Some(slot) => slot.1 = slot.1.clone() + v,
                    None => out.push((power, v)),
                }
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        out.sort_by_key(|(q, _)| *q);
        out
    }

    /// Applies the expression to a polynomial.
    pub fn apply(&self, f: &Poly<S>) -> Poly<S> {
        let mut acc = Poly::zero();
        let mut df = f.clone();
        for p in &self.coeffs {
            acc = &acc + &(p * &df);
            df = df.derivative();
        }
        acc
    }

    pub fn to_c64(&self) -> DiffExpr<C64> {
        DiffExpr::new(self.coeffs.iter().map(Poly::to_c64).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Poly::max_abs).fold(0.0, f64::max)
    }

    /// Coefficient-wise equality up to the scalar tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            let m = a.coeffs().len().max(b.coeffs().len());
            (0..m).all(|j| a.coeff(j).close_to(&b.coeff(j), scale))
        })
    }
}

impl<S: Scalar> Add for &DiffExpr<S> {
    type Output = DiffExpr<S>;
    fn add(self, rhs: &DiffExpr<S>) -> DiffExpr<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffExpr::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &DiffExpr<S> {
    type Output = DiffExpr<S>;
    fn sub(self, rhs: &DiffExpr<S>) -> DiffExpr<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffExpr::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &DiffExpr<S> {
    type Output = DiffExpr<S>;
    fn mul(self, rhs: &DiffExpr<S>) -> DiffExpr<S> {
        self.compose(rhs)
    }
}

impl<S: Scalar> Neg for &DiffExpr<S> {
    type Output = DiffExpr<S>;
    fn neg(self) -> DiffExpr<S> {
        DiffExpr::new(self.coeffs.iter().map(|p| -p).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for DiffExpr<S> {
            type Output = DiffExpr<S>;
            fn $m(self, rhs: DiffExpr<S>) -> DiffExpr<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<S: Scalar> fmt::Display for DiffExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{p}]")?,
                1 => write!(f, "[{p}]D")?,
                _ => write!(f, "[{p}]D^{k}")?,
            }
        }
        Ok(())
    }
}
