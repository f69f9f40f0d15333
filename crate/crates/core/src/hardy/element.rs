use num::{One, Zero};

use crate::algebra::Poly;
use crate::hardy::WeightSequence;
use crate::scalar::{Real, Scalar};

/// Finitely supported element of the weighted Hardy space, stored by Taylor coefficients.
///
/// Equality is exact in rational mode and relative (`1e-12`) in floating mode.
#[derive(Clone, Debug)]
pub struct HardyElement<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> HardyElement<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// The basis monomial `z^n` (not normalised).
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![S::zero(); n + 1];
        c[n] = S::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> S {
        self.coeffs.get(n).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_poly(&self) -> Poly<S> {
        Poly::new(self.coeffs.clone())
    }

    pub fn norm_squared(&self, w: &WeightSequence<S::Real>) -> S::Real {
        inner_product(w, self, self).re_part()
    }

    pub fn norm(&self, w: &WeightSequence<S::Real>) -> f64 {
        self.norm_squared(w).to_f64().sqrt()
    }
}

impl<S: Scalar> From<Poly<S>> for HardyElement<S> {
    fn from(p: Poly<S>) -> Self {
        Self::new(p.coeffs().to_vec())
    }
}

impl<S: Scalar> PartialEq for HardyElement<S> {
    fn eq(&self, other: &Self) -> bool {
        let scale = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .map(Scalar::magnitude)
            .fold(0.0, f64::max);
        let n = self.len().max(other.len());
        (0..n).all(|j| self.coeff(j).close_to(&other.coeff(j), scale))
    }
}

/// `<f, g> = sum_n f_n conj(g_n) beta_n^2`.
pub fn inner_product<S: Scalar>(
    w: &WeightSequence<S::Real>,
    f: &HardyElement<S>,
    g: &HardyElement<S>,
) -> S {
    f.coeffs
        .iter()
        .zip(&g.coeffs)
        .enumerate()
        .fold(S::zero(), |acc, (n, (a, b))| {
            acc + (a.clone() * b.conj()).scale_real(&w.beta_squared(n))
        })
}

/// Sobolev-type norm `(sum_n (1 + n^(2k)) |f_n|^2 beta_n^2)^(1/2)`.
pub fn sobolev_norm<S: Scalar>(w: &WeightSequence<S::Real>, f: &HardyElement<S>, k: u32) -> f64 {
    let mut acc = S::Real::zero();
    for (n, c) in f.coeffs.iter().enumerate() {
        let weight = S::Real::one() + S::Real::from_int(n as i64).pow_int(2 * k);
        let mag = c.re_part() * c.re_part() + c.im_part() * c.im_part();
        acc = acc + weight * mag * w.beta_squared(n);
    }
    acc.to_f64().sqrt()
}
