//! Growth constants of the spectrum: `λ_n ≈ C1 (n/τ + C2)^N`.

use nalgebra::{DMatrix, DVector};
use num::Zero;

use crate::algebra::{r_symmetry_analysis, Poly};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// Quadrature nodes for `τ`; the result is compared against twice as many.
pub const TAU_GRID: usize = 4096;
/// Exponent slack `ε` in the remainder bound `|r_n| <= R n^(N-2+ε)`.
pub const REMAINDER_EPSILON: f64 = 0.5;
/// Fewest eigenvalues accepted by [`asymptotic_fit`].
pub const MIN_FIT_POINTS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct TauReport {
    pub order: usize,
    pub tau: f64,
    /// Leading constant, with its sign chosen so that `P_N > 0` on the circle.
    pub c1: f64,
    /// `C1` before the sign adjustment.
    pub c1_raw: C64,
    pub p_min: f64,
    pub p_max: f64,
    /// Difference between the `TAU_GRID` and `2 TAU_GRID` node rules.
    pub quadrature_error: f64,
}

fn circle_values(p: &Poly<C64>, order: usize, scale: C64, nodes: usize) -> Result<Vec<f64>> {
    let vals: Vec<C64> = (0..nodes)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / nodes as f64;
            let z = C64::from_polar(1.0, theta);
            p.eval(&z) * C64::from_polar(1.0, -(order as f64) * theta) / scale
        })
        .collect();
    let big = vals.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let worst = vals.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if worst > 1e-10 * big {
        return Err(Error::NotRSymmetric(format!(
            "e^(-iNθ) p_N(e^(iθ)) / C1 is not real (imaginary part {worst:.3e})"
        )));
    }
    Ok(vals.into_iter().map(|v| v.re).collect())
}

fn mean_root(p: &[f64], order: usize) -> f64 {
    p.iter().map(|x| x.powf(-1.0 / order as f64)).sum::<f64>() / p.len() as f64
}

/// `τ = (1/2π) ∫ P_N(θ)^(-1/N) dθ` with `P_N(θ) = Re(C1^(-1) e^(-iNθ) p_N(e^(iθ)))`.
///
/// `C1` comes from the R-symmetric factorisation when it exists and is the
/// coefficient of `z^N` otherwise.
pub fn tau_and_c1<S: Scalar>(lead: &Poly<S>, order: usize) -> Result<TauReport> {
    if order == 0 {
        return Err(Error::Invalid("order must be positive".into()));
    }
    let p = lead.to_c64();
    let c1_raw = match r_symmetry_analysis(&p, order) {
        Ok(r) => r.c1,
        Err(Error::NotRSymmetric(_)) => p.coeff(order),
        Err(e) => return Err(e),
    };
    if c1_raw.is_zero() {
        return Err(Error::DegenerateInput("C1 vanishes".into()));
    }
    let mut vals = circle_values(&p, order, c1_raw, TAU_GRID)?;
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo <= 0.0 && hi >= 0.0 {
        return Err(Error::SignChange { min: lo, max: hi });
    }
    let sign = if hi < 0.0 { -1.0 } else { 1.0 };
    for v in vals.iter_mut() {
        *v *= sign;
    }
    let tau = mean_root(&vals, order);
    let fine: Vec<f64> = circle_values(&p, order, c1_raw, 2 * TAU_GRID)?
        .into_iter()
        .map(|v| v * sign)
        .collect();
    let check = mean_root(&fine, order);
    let quadrature_error = (check - tau).abs();
    if quadrature_error > 1e-10 * tau.abs() {
        return Err(Error::Quadrature(format!(
            "{TAU_GRID}- and {}-node rules differ by {quadrature_error:.3e}",
            2 * TAU_GRID
        )));
    }
    let c1_real = if c1_raw.im.abs() <= 1e-12 * c1_raw.norm() {
        c1_raw.re
    } else {
        return Err(Error::NotRSymmetric(format!("C1 = {c1_raw} is not real")));
    };
    Ok(TauReport {
        order,
        tau,
        c1: sign * c1_real,
        c1_raw,
        p_min: sign * if sign > 0.0 { lo } else { hi },
        p_max: sign * if sign > 0.0 { hi } else { lo },
        quadrature_error,
    })
}

/// Least-squares fit of the constants in `λ_n = C1 (n/τ + C2)^N + r_n`.
#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    pub order: usize,
    pub tau: f64,
    pub c1: f64,
    pub c2: C64,
    /// `τ` estimated from the eigenvalues alone.
    pub fitted_tau: f64,
    pub epsilon: f64,
    /// `r_n` for every supplied eigenvalue.
    pub residuals: Vec<C64>,
    /// Inclusive index range used for `remainder_bound`.
    pub range: (usize, usize),
    /// `max |r_n| / n^(N-2+ε)` over `range`.
    pub remainder_bound: f64,
    /// Log-log slope of `max |r_n|` between the two halves of `range`.
    pub growth_slope: f64,
}

impl AsymptoticFit {
    /// `max |r_n| / n^(N-2+ε)` over `from..=to`.
    pub fn envelope(&self, from: usize, to: usize) -> f64 {
        let p = self.order as f64 - 2.0 + self.epsilon;
        (from.max(1)..=to.min(self.residuals.len() - 1))
            .map(|n| self.residuals[n].norm() / (n as f64).powf(p))
            .fold(0.0, f64::max)
    }

    /// Whether the remainder grows no faster than `n^(N-2+ε)`.
    pub fn is_bounded(&self) -> bool {
        self.growth_slope <= self.order as f64 - 2.0 + self.epsilon
    }
}

/// `(λ_n / C1)^(1/N)` on a continuous branch, tracked downwards from the
/// largest index by linear extrapolation.
fn branch_roots(eigs: &[C64], order: usize, c1: f64) -> Vec<C64> {
    let n = eigs.len();
    let inv = 1.0 / order as f64;
    let principal = |z: C64| (z / c1).powf(inv);
    let mut y = vec![C64::zero(); n];
    y[n - 1] = principal(eigs[n - 1]);
    if n > 1 {
        y[n - 2] = principal(eigs[n - 2]);
    }
    let turn = C64::from_polar(1.0, std::f64::consts::TAU * inv);
    for k in (0..n.saturating_sub(2)).rev() {
        let guess = y[k + 1] * 2.0 - y[k + 2];
        let mut cand = principal(eigs[k]);
        let mut best = cand;
        for _ in 0..order {
            if (cand - guess).norm() < (best - guess).norm() {
                best = cand;
            }
            cand *= turn;
        }
        y[k] = best;
    }
    y
}

/// Least squares `y ≈ X β` column by column for real and imaginary parts.
fn solve_ls(rows: &[Vec<f64>], rhs: &[C64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let cols = rows[0].len();
    let x = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let svd = x.svd(true, true);
    let solve = |b: DVector<f64>| -> Result<Vec<f64>> {
        svd.solve(&b, 1e-14)
            .map(|v| v.iter().copied().collect())
            .map_err(|e| Error::Invalid(format!("least squares failed: {e}")))
    };
    let re = solve(DVector::from_iterator(rhs.len(), rhs.iter().map(|z| z.re)))?;
    let im = solve(DVector::from_iterator(rhs.len(), rhs.iter().map(|z| z.im)))?;
    Ok((re, im))
}

fn upper_half(len: usize) -> std::ops::Range<usize> {
    (len / 2).max(1)..len
}

/// `τ` and `C2` from `y_n = n/τ + C2 + a/n + b/n^2` over the upper half of the data.
pub fn fit_tau(eigs: &[C64], order: usize, c1: f64) -> Result<(f64, C64)> {
    check_input(eigs, order)?;
    let y = branch_roots(eigs, order, c1);
    let idx = upper_half(eigs.len());
    let rows: Vec<Vec<f64>> = idx
        .clone()
        .map(|n| {
            let n = n as f64;
            vec![n, 1.0, 1.0 / n, 1.0 / (n * n)]
        })
        .collect();
    let rhs: Vec<C64> = idx.map(|n| y[n]).collect();
    let (re, im) = solve_ls(&rows, &rhs)?;
    if re[0] <= 0.0 {
        return Err(Error::Invalid("fitted growth rate is not positive".into()));
    }
    Ok((1.0 / re[0], C64::new(re[1], im[1])))
}

fn check_input(eigs: &[C64], order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::Invalid(
            "asymptotic fits need order at least 2".into(),
        ));
    }
    if eigs.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            have: eigs.len(),
        });
    }
    Ok(())
}

/// Fits `C2` with `τ` and `C1` held fixed and measures the remainder
/// `r_n = λ_n / C1 - (n/τ + C2)^N` over the upper three quarters of the indices.
pub fn asymptotic_fit(eigs: &[C64], order: usize, tau: f64, c1: f64) -> Result<AsymptoticFit> {
    check_input(eigs, order)?;
    if !(tau > 0.0) || c1 == 0.0 {
        return Err(Error::Invalid(format!(
            "need τ > 0 and C1 ≠ 0, got {tau}, {c1}"
        )));
    }
    let y = branch_roots(eigs, order, c1);
    let idx = upper_half(eigs.len());
    let rows: Vec<Vec<f64>> = idx
        .clone()
        .map(|n| {
            let n = n as f64;
            vec![1.0, 1.0 / n, 1.0 / (n * n)]
        })
        .collect();
    let rhs: Vec<C64> = idx.map(|n| y[n] - n as f64 / tau).collect();
    let (re, im) = solve_ls(&rows, &rhs)?;
    let c2 = C64::new(re[0], im[0]);
    let (fitted_tau, _) = fit_tau(eigs, order, c1)?;
    let residuals: Vec<C64> = eigs
        .iter()
        .enumerate()
        .map(|(n, z)| z / c1 - (C64::new(n as f64 / tau, 0.0) + c2).powu(order as u32))
        .collect();
    let len = eigs.len();
    let range = (len / 4, len - 1);
    let mut fit = AsymptoticFit {
        order,
        tau,
        c1,
        c2,
        fitted_tau,
        epsilon: REMAINDER_EPSILON,
        residuals,
        range,
        remainder_bound: 0.0,
        growth_slope: 0.0,
    };
    fit.remainder_bound = fit.envelope(range.0, range.1);
    let mid = (range.0 + range.1) / 2;
    let peak = |a: usize, b: usize| (a..=b).map(|n| fit.residuals[n].norm()).fold(0.0, f64::max);
    let (lo, hi) = (peak(range.0, mid), peak(mid + 1, range.1));
    let centre = |a: usize, b: usize| ((a.max(1) * b) as f64).sqrt();
    fit.growth_slope = if lo > 0.0 && hi > 0.0 {
        (hi / lo).ln() / (centre(mid + 1, range.1) / centre(range.0, mid)).ln()
    } else {
        0.0
    };
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn first_order_tau() {
        let r = tau_and_c1(&Poly::new(vec![c(0.5), c(-1.25), c(0.5)]), 1).unwrap();
        assert!((r.tau - 4.0 / 3.0).abs() < 1e-12);
        assert!((r.c1 + 1.0).abs() < 1e-12);
        assert!((r.c1 / r.tau + 0.75).abs() < 1e-12);
    }

    #[test]
    fn pure_power_tau() {
        let r = tau_and_c1(&Poly::monomial(c(1.0), 2), 2).unwrap();
        assert!((r.tau - 1.0).abs() < 1e-14);
        assert_eq!(r.c1, 1.0);
    }

    #[test]
    fn sign_change_detected() {
        let p = Poly::new(vec![c(1.0), c(1.0), c(1.0)]);
        assert!(matches!(tau_and_c1(&p, 1), Err(Error::SignChange { .. })));
    }

    #[test]
    fn synthetic_fit_recovers_constants() {
        let eigs: Vec<C64> = (0..60)
            .map(|n| c(2.0 * (n as f64 / 1.5 + 0.3).powi(2) + 0.7))
            .collect();
        let fit = asymptotic_fit(&eigs, 2, 1.5, 2.0).unwrap();
        assert!((fit.c2 - c(0.3)).norm() < 1e-3);
        assert!((fit.fitted_tau - 1.5).abs() < 1e-4);
        assert!(fit.is_bounded());
    }

    #[test]
    fn too_few_points() {
        let eigs = vec![c(1.0); 10];
        assert!(matches!(
            asymptotic_fit(&eigs, 2, 1.0, 1.0),
            Err(Error::InsufficientData {
                needed: 30,
                have: 10
            })
        ));
        assert!(matches!(
            asymptotic_fit(&eigs, 1, 1.0, 1.0),
            Err(Error::Invalid(_))
        ));
    }
}
