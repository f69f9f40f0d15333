//! Independent checks: closed-form first-order eigenfunctions, the matrix
//! adjoint, and the periodic (Fourier) realisation of an expression.

use num::{One, Zero};

use crate::algebra::{adjoint, flatten_roots, poly_roots, DiffExpr, Poly};
use crate::error::{Error, Result};
use crate::hardy::{HardyElement, WeightSequence};
use crate::linalg::eigen_general;
use crate::scalar::{Real, Scalar, C64};
use crate::spectral::{assemble_periodic_matrix, converged_spectrum, SpectrumReport};

/// `L = b_0 + σ a_2 z + a_2 (z - z_1)(z - z_2) D`.
///
/// Its eigenfunctions are `(z - z_1)^n (z - z_2)^(-(n + σ))` with eigenvalues
/// `b_0 + a_2 (σ z_1 - (z_2 - z_1) n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstOrderSpec {
    pub a2: C64,
    pub z1: C64,
    pub z2: C64,
    pub b0: C64,
    pub sigma: f64,
}

impl FirstOrderSpec {
    pub fn expression(&self) -> DiffExpr<C64> {
        let lead = Poly::from_roots(self.a2, &[self.z1, self.z2]);
        let zero_order = Poly::new(vec![self.b0, self.a2 * self.sigma]);
        DiffExpr::new(vec![zero_order, lead])
    }

    pub fn eigenvalue(&self, n: usize) -> C64 {
        self.b0 + self.a2 * (self.z1 * self.sigma - (self.z2 - self.z1) * n as f64)
    }

    /// Recognises `l` as an instance with `|z_1| < 1 < |z_2|`.
    pub fn from_expression<S: Scalar>(l: &DiffExpr<S>, sigma: f64) -> Option<Self> {
        let l = l.to_c64();
        if l.order() != Some(1) {
            return None;
        }
        let lead = l.coeff(1);
        let p0 = l.coeff(0);
        if lead.degree() != Some(2) || p0.degree().is_some_and(|d| d > 1) {
            return None;
        }
        let a2 = lead.coeff(2);
        let mut roots = flatten_roots(&poly_roots(&lead).ok()?);
        roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        let (z1, z2) = (roots[0], roots[1]);
        let scale = l.max_abs().max(1.0);
        if z1.norm() >= 1.0 || z2.norm() <= 1.0 || (p0.coeff(1) - a2 * sigma).norm() > 1e-12 * scale
        {
            return None;
        }
        Some(Self {
            a2,
            z1,
            z2,
            b0: p0.coeff(0),
            sigma,
        })
    }

    pub fn spectrum(&self, count: usize) -> Vec<C64> {
        (0..count).map(|n| self.eigenvalue(n)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct EigenfunctionOracle {
    pub eigenvalue: C64,
    /// First `terms` Taylor coefficients, scaled so the first nonzero one is 1.
    pub function: HardyElement<C64>,
    /// `||(L - λ) P_T y||_β / ||P_T y||_β`; `None` for a single term.
    pub residual: Option<f64>,
}

/// Taylor coefficients of the `n`-th eigenfunction from the recurrence
/// `d_(k+1) = d_k (k + n + σ) / (z_2 (k + 1))` for `(1 - z/z_2)^(-(n + σ))`.
pub fn first_order_eigenfunction(
    spec: &FirstOrderSpec,
    n: usize,
    terms: usize,
    w: &WeightSequence<f64>,
) -> Result<EigenfunctionOracle> {
    if terms == 0 {
        return Err(Error::Invalid(
            "need at least one Taylor coefficient".into(),
        ));
    }
    if spec.z2.is_zero() {
        return Err(Error::RecurrenceBreakdown(0));
    }
    let exponent = n as f64 + spec.sigma;
    let mut series = vec![C64::one(); terms];
    for k in 0..terms - 1 {
        series[k + 1] = series[k] * ((k as f64 + exponent) / (k as f64 + 1.0)) / spec.z2;
        if !series[k + 1].is_finite() {
            return Err(Error::RecurrenceBreakdown(k + 1));
        }
    }
    let front = Poly::from_roots(C64::one(), &vec![spec.z1; n]);
    let mut coeffs = vec![C64::zero(); terms];
    for (i, a) in front.coeffs().iter().enumerate() {
        for (j, b) in series.iter().enumerate().take(terms.saturating_sub(i)) {
            coeffs[i + j] += a * b;
        }
    }
    let Some(first) = coeffs.iter().copied().find(|c| !c.is_zero()) else {
        return Err(Error::DegenerateInput(
            "eigenfunction truncates to zero".into(),
        ));
    };
    for c in coeffs.iter_mut() {
        *c /= first;
    }
    let lambda = spec.eigenvalue(n);
    let y = Poly::new(coeffs.clone());
    let residual = (terms > 1).then(|| {
        let image = &spec.expression().apply(&y) - &y.scale(&lambda);
        let num = HardyElement::new(image.coeffs().to_vec()).norm(w);
        num / HardyElement::new(coeffs.clone()).norm(w)
    });
    Ok(EigenfunctionOracle {
        eigenvalue: lambda,
        function: HardyElement::new(coeffs),
        residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjointMatrixReport {
    pub truncation: usize,
    /// `max |<L* z^k, z^n> - <z^k, L z^n>| / (β_n β_k)` over `n, k <= truncation`.
    pub max_defect: f64,
    /// Every compared entry agreed exactly (always the case in rational mode).
    pub exact: bool,
}

/// Compares the formal adjoint with the conjugate transpose of the matrix of `l`.
pub fn adjoint_matrix_oracle<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    truncation: usize,
) -> Result<AdjointMatrixReport> {
    let star = adjoint(l, w)?;
    let forward: Vec<Poly<S>> = (0..=truncation).map(|k| l.apply_to_monomial(k)).collect();
    let backward: Vec<Poly<S>> = (0..=truncation)
        .map(|k| star.apply_to_monomial(k))
        .collect();
    let mut max_defect: f64 = 0.0;
    let mut exact = true;
    for n in 0..=truncation {
        for k in 0..=truncation {
            let lhs = backward[k].coeff(n).scale_real(&w.beta_squared(n));
            let rhs = forward[n].coeff(k).conj().scale_real(&w.beta_squared(k));
            let d = lhs - rhs;
            if d.is_zero() {
                continue;
            }
            exact = false;
            let scale = (w.beta_squared(n).to_f64() * w.beta_squared(k).to_f64()).sqrt();
            max_defect = max_defect.max(d.magnitude() / scale);
        }
    }
    Ok(AdjointMatrixReport {
        truncation,
        max_defect,
        exact,
    })
}

#[derive(Clone, Debug)]
pub struct PeriodicReport {
    pub hardy: SpectrumReport,
    /// Fourier modes `-M..=M` with `M` the finest Hardy truncation.
    pub max_mode: usize,
    /// Nearest Fourier eigenvalue to each Hardy eigenvalue.
    pub nearest: Vec<C64>,
    /// `|λ_n - μ_n| / (1 + |λ_n|)` for each pair.
    pub distances: Vec<f64>,
    pub tol: f64,
}

impl PeriodicReport {
    pub fn max_distance(&self) -> f64 {
        self.distances.iter().copied().fold(0.0, f64::max)
    }

    pub fn contained(&self) -> bool {
        self.max_distance() <= self.tol
    }
}

/// Checks that the converged Hardy eigenvalues `λ_0..λ_(n_max-1)` reappear
/// among the eigenvalues of the Fourier truncation of the same expression.
pub fn periodic_embedding_check<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    n_max: usize,
    tol: f64,
) -> Result<PeriodicReport> {
    let hardy = converged_spectrum(l, w, n_max, (tol * 1e-3).max(1e-12))?;
    let max_mode = hardy.final_truncation();
    let fourier = assemble_periodic_matrix(l, max_mode);
    let values = eigen_general(fourier.entries(), false)?.values;
    let mut nearest = Vec::with_capacity(hardy.len());
    let mut distances = Vec::with_capacity(hardy.len());
    for z in &hardy.eigenvalues {
        let mu = values
            .iter()
            .copied()
            .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
            .ok_or_else(|| Error::DegenerateInput("empty Fourier truncation".into()))?;
        distances.push((mu - z).norm() / (1.0 + z.norm()));
        nearest.push(mu);
    }
    Ok(PeriodicReport {
        hardy,
        max_mode,
        nearest,
        distances,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn example() -> FirstOrderSpec {
        FirstOrderSpec {
            a2: c(0.5),
            z1: c(0.5),
            z2: c(2.0),
            b0: c(0.0),
            sigma: 2.0,
        }
    }

    #[test]
    fn closed_form_spectrum() {
        let s = example();
        assert_eq!(s.eigenvalue(0), c(0.5));
        assert_eq!(s.eigenvalue(4), c(-2.5));
        assert!(s.expression().approx_eq(&DiffExpr::new(vec![
            Poly::new(vec![c(0.0), c(1.0)]),
            Poly::new(vec![c(0.5), c(-1.25), c(0.5)]),
        ])));
    }

    #[test]
    fn recognises_first_order_form() {
        let s = example();
        let got = FirstOrderSpec::from_expression(&s.expression(), 2.0).unwrap();
        assert!((got.z1 - s.z1).norm() < 1e-12 && (got.z2 - s.z2).norm() < 1e-12);
        assert!(FirstOrderSpec::from_expression(&s.expression(), 1.0).is_none());
        assert!(FirstOrderSpec::from_expression(&DiffExpr::<C64>::euler(), 2.0).is_none());
    }

    #[test]
    fn eigenfunction_residual_decays() {
        let w = WeightSequence::new(2.0).unwrap();
        let short = first_order_eigenfunction(&example(), 3, 20, &w).unwrap();
        let long = first_order_eigenfunction(&example(), 3, 80, &w).unwrap();
        assert!(long.residual.unwrap() < short.residual.unwrap());
        assert!(long.residual.unwrap() < 1e-12);
        assert_eq!(long.function.coeff(0), c(1.0));
        assert!(first_order_eigenfunction(&example(), 0, 1, &w)
            .unwrap()
            .residual
            .is_none());
    }

    #[test]
    fn zero_pole_breaks_recurrence() {
        let w = WeightSequence::new(2.0).unwrap();
        let mut s = example();
        s.z2 = c(0.0);
        assert!(matches!(
            first_order_eigenfunction(&s, 1, 5, &w),
            Err(Error::RecurrenceBreakdown(0))
        ));
    }

    #[test]
    fn rational_adjoint_matrix_is_exact() {
        let q =
            |n: i64| num::Complex::new(BigRational::from_integer(n.into()), BigRational::zero());
        let w = WeightSequence::new(BigRational::new(1.into(), 3.into())).unwrap();
        let l = DiffExpr::new(vec![Poly::new(vec![q(2)]), Poly::new(vec![q(1), q(3)])]);
        let r = adjoint_matrix_oracle(&l, &w, 12).unwrap();
        assert!(r.exact);
        assert_eq!(r.max_defect, 0.0);
    }
}
