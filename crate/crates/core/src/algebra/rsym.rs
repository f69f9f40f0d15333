//! Leading coefficients whose roots pair up under reflection in the unit circle.

use num::{One, Zero};

use crate::algebra::poly::Poly;
use crate::algebra::regularity::CIRCLE_TOL;
use crate::algebra::roots::{flatten_roots, poly_roots};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// Pairing tolerance between an outer root and the reflection of an inner root.
pub const PAIRING_TOL: f64 = 1e-8;

/// Conjugate-reversed polynomial `sum_j conj(c_j) z^(2N - j)`: the leading
/// coefficient of the adjoint of an order-`N` expression with leading coefficient `p`.
pub fn leading_adjoint_coeff<S: Scalar>(p: &Poly<S>, order: usize) -> Result<Poly<S>> {
    if p.degree().is_some_and(|d| d > 2 * order) {
        return Err(Error::Invalid(format!(
            "leading coefficient of degree {} exceeds 2N = {}",
            p.degree().unwrap_or(0),
            2 * order
        )));
    }
    let mut out = vec![S::zero(); 2 * order + 1];
    for (j, c) in p.coeffs().iter().enumerate() {
        out[2 * order - j] = c.conj();
    }
    Ok(Poly::new(out))
}

/// Factorisation `p_N = C1 rho_1(z) ... rho_M(z) z^(N-M)` with
/// `rho_m(z) = conj(z_m) z^2 - (|z_m|^2 + 1) z + z_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSymmetryReport {
    pub order: usize,
    pub is_r_symmetric: bool,
    pub c1: C64,
    /// Nonzero roots inside the unit disc, repeated by multiplicity.
    pub inner_roots: Vec<C64>,
    pub zero_root_multiplicity: usize,
}

impl RSymmetryReport {
    /// `rho_m(t, z) = t conj(z_m) z^2 - (|t z_m|^2 + 1) z + t z_m`.
    pub fn rho(&self, m: usize, t: f64) -> Poly<C64> {
        let zm = self.inner_roots[m];
        Poly::new(vec![
            zm * t,
            C64::new(-(t * t * zm.norm_sqr() + 1.0), 0.0),
            zm.conj() * t,
        ])
    }

    /// `prod_m rho_m(t, z) z^(N-M)` (without the scale `C1`).
    pub fn product(&self, t: f64) -> Poly<C64> {
        (0..self.inner_roots.len())
            .fold(Poly::one(), |acc, m| &acc * &self.rho(m, t))
            .shift(self.zero_root_multiplicity)
    }

    /// `C1 prod_m rho_m(z) z^(N-M)`; reproduces `p_N` when the analysis succeeded.
    pub fn reconstruct(&self) -> Poly<C64> {
        self.product(1.0).scale(&self.c1)
    }
}

pub fn r_symmetry_analysis<S: Scalar>(p: &Poly<S>, order: usize) -> Result<RSymmetryReport> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::DegenerateInput("zero leading coefficient".into()))?;
    if deg > 2 * order {
        return Err(Error::Invalid(format!(
            "leading coefficient of degree {deg} exceeds 2N = {}",
            2 * order
        )));
    }
    let roots = poly_roots(p)?;
    let zero_mult: usize = roots
        .iter()
        .filter(|r| r.value.is_zero())
        .map(|r| r.multiplicity)
        .sum();
    let nonzero: Vec<C64> = flatten_roots(&roots)
        .into_iter()
        .filter(|z| !z.is_zero())
        .collect();
    if let Some(z) = nonzero
        .iter()
        .find(|z| (z.norm() - 1.0).abs() <= CIRCLE_TOL)
    {
        return Err(Error::NotRSymmetric(format!(
            "root {z} lies on the unit circle"
        )));
    }
    let inner: Vec<C64> = nonzero.iter().copied().filter(|z| z.norm() < 1.0).collect();
    let mut outer: Vec<Option<C64>> = nonzero
        .iter()
        .copied()
        .filter(|z| z.norm() > 1.0)
        .map(Some)
        .collect();
    if zero_mult + inner.len() != order {
        return Err(Error::NotRSymmetric(format!(
            "expected {order} roots in the disc, found {}",
            zero_mult + inner.len()
        )));
    }
    if outer.len() != inner.len() {
        return Err(Error::NotRSymmetric(format!(
            "{} inner roots but {} outer roots",
            inner.len(),
            outer.len()
        )));
    }
    for z in &inner {
        let target = C64::one() / z.conj();
        let best = outer
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.map(|w| (i, (w - target).norm())))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= PAIRING_TOL * target.norm().max(1.0) => outer[i] = None,
            _ => {
                return Err(Error::NotRSymmetric(format!(
                    "inner root {z} has no partner near {target}"
                )))
            }
        }
    }
    let lead = p.coeff(deg).to_c64();
    let c1 = inner.iter().fold(lead, |acc, z| acc / z.conj());
    let report = RSymmetryReport {
        order,
        is_r_symmetric: true,
        c1,
        inner_roots: inner,
        zero_root_multiplicity: zero_mult,
    };
    let target = p.to_c64();
    let rebuilt = report.reconstruct();
    let err = (&rebuilt - &target).max_abs();
    if err > PAIRING_TOL * target.max_abs().max(1.0) {
        return Err(Error::NotRSymmetric(format!(
            "reconstruction differs from the input by {err:.3e}"
        )));
    }
    Ok(report)
}
