//! Eigenvalues that are stable under refinement of the truncation.

use crate::algebra::{d_regularity, r_symmetry_analysis, DiffExpr};
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::linalg::{
    eigen_general, hermitian_band_eigenvalues, inverse_iteration, vec_norm, CMatrix,
};
use crate::scalar::{Scalar, C64};
use crate::spectral::asymptotics::{asymptotic_fit, tau_and_c1, AsymptoticFit};
use crate::spectral::truncation::{assemble_hardy_matrix, TruncatedOperator};

/// Truncation schedule and acceptance thresholds.
#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    /// Relative stability tolerance: `|λ(M) - λ(2M)| <= tol (1 + |λ|)`.
    pub tol: f64,
    /// First truncation; defaults to `max(64, 8 n_max)`.
    pub initial_truncation: Option<usize>,
    pub max_truncation: usize,
    /// Cap for the dense non-Hermitian path, whose cost is cubic.
    pub max_general_truncation: usize,
    /// Fraction of trailing coefficients inspected by the spurious-mode filter.
    pub tail_fraction: f64,
    /// Eigenvectors with relative tail norm above this are treated as truncation artefacts.
    pub tail_mass: f64,
}

impl SpectrumOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            initial_truncation: None,
            max_truncation: 1 << 13,
            max_general_truncation: 1 << 10,
            tail_fraction: 0.1,
            tail_mass: 1e-6,
        }
    }
}

/// Converged eigenvalues `λ_0, λ_1, ...` of a differential expression.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Ordered along `direction`: increasing `Re(λ conj(direction))`.
    pub eigenvalues: Vec<C64>,
    /// `|λ(2M) - λ(M)|` at the accepting pair of truncations.
    pub errors: Vec<f64>,
    /// Unit eigenvectors in the orthonormal monomial basis at the finest truncation.
    pub eigenvectors: Vec<Vec<C64>>,
    pub truncations_used: Vec<usize>,
    pub hermitian: bool,
    /// Unit complex number along which large eigenvalues grow.
    pub direction: C64,
    pub tol: f64,
    pub tail_fraction: f64,
    pub tail_mass: f64,
    pub fit: Option<AsymptoticFit>,
}

impl SpectrumReport {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn final_truncation(&self) -> usize {
        self.truncations_used.last().copied().unwrap_or(0)
    }

    pub fn max_imag(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }
}

struct Level {
    m: usize,
    op: TruncatedOperator,
    values: Vec<C64>,
    hermitian: bool,
    vectors: Option<CMatrix>,
}

impl Level {
    fn solve(l: &DiffExpr<C64>, w: &WeightSequence<f64>, m: usize) -> Result<Self> {
        let op = assemble_hardy_matrix(l, w, m)?;
        let hermitian = op.is_hermitian();
        let (values, vectors) = if hermitian {
            let v = hermitian_band_eigenvalues(op.entries(), op.band_width())?;
            (v.into_iter().map(|x| C64::new(x, 0.0)).collect(), None)
        } else {
            let e = eigen_general(op.entries(), true)?;
            (e.values, e.vectors)
        };
        Ok(Self {
            m,
            op,
            values,
            hermitian,
            vectors,
        })
    }

    fn vector(&self, i: usize) -> Vec<C64> {
        match &self.vectors {
            Some(v) => v.column(i).to_vec(),
            None => {
                let (kl, ku) = self.op.bands();
                inverse_iteration(self.op.entries(), kl, ku, self.values[i])
            }
        }
    }

    fn nearest(&self, z: C64) -> C64 {
        if self.hermitian {
            let pos = self.values.partition_point(|v| v.re < z.re);
            let mut best = None::<C64>;
            for j in [pos.wrapping_sub(1), pos] {
                if let Some(v) = self.values.get(j) {
                    if best.is_none_or(|b| (v - z).norm() < (b - z).norm()) {
                        best = Some(*v);
                    }
                }
            }
            best.unwrap_or(C64::new(f64::INFINITY, 0.0))
        } else {
            self.values
                .iter()
                .copied()
                .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
                .unwrap_or(C64::new(f64::INFINITY, 0.0))
        }
    }
}

/// Relative norm of the trailing `fraction` of a vector's coefficients.
pub fn tail_ratio(x: &[C64], fraction: f64) -> f64 {
    let n = x.len();
    let k = ((n as f64 * fraction).ceil() as usize).clamp(1, n.max(1));
    let total = vec_norm(x);
    if total == 0.0 {
        return 0.0;
    }
    vec_norm(&x[n - k..]) / total
}

enum Attempt {
    Done {
        picks: Vec<usize>,
        errors: Vec<f64>,
        vectors: Vec<Vec<C64>>,
        direction: C64,
    },
    Short(usize),
}

fn attempt(coarse: &Level, fine: &Level, n_max: usize, opts: &SpectrumOptions) -> Attempt {
    let diffs: Vec<f64> = fine
        .values
        .iter()
        .map(|z| (coarse.nearest(*z) - z).norm())
        .collect();
    let stable: Vec<bool> = fine
        .values
        .iter()
        .zip(&diffs)
        .map(|(z, d)| *d <= opts.tol * (1.0 + z.norm()))
        .collect();
    let Some(anchor) = fine
        .values
        .iter()
        .zip(&stable)
        .filter(|(_, s)| **s)
        .map(|(z, _)| *z)
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
    else {
        return Attempt::Short(0);
    };
    let direction = if anchor.norm() > 0.0 {
        anchor / anchor.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let key = |z: &C64| (z * direction.conj()).re;
    let mut order: Vec<usize> = (0..fine.values.len()).collect();
    order.sort_by(|&a, &b| {
        key(&fine.values[a])
            .total_cmp(&key(&fine.values[b]))
            .then(fine.values[a].im.total_cmp(&fine.values[b].im))
    });

    let mut picks = Vec::new();
    let mut vectors = Vec::new();
    for i in order {
        let v = fine.vector(i);
        let spurious = tail_ratio(&v, opts.tail_fraction) > opts.tail_mass;
        match (stable[i], spurious) {
            (true, false) => {
                picks.push(i);
                vectors.push(v);
                if picks.len() == n_max {
                    let errors = picks.iter().map(|&p| diffs[p]).collect();
                    return Attempt::Done {
                        picks,
                        errors,
                        vectors,
                        direction,
                    };
                }
            }
            (false, true) => continue,
            _ => return Attempt::Short(picks.len()),
        }
    }
    Attempt::Short(picks.len())
}

pub fn converged_spectrum<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    n_max: usize,
    tol: f64,
) -> Result<SpectrumReport> {
    converged_spectrum_with(l, w, n_max, &SpectrumOptions::with_tol(tol))
}

/// Doubles the truncation from `M_0` until the first `n_max` eigenvalues
/// (in the growth direction) agree between consecutive truncations.
pub fn converged_spectrum_with<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    n_max: usize,
    opts: &SpectrumOptions,
) -> Result<SpectrumReport> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let reg = d_regularity(l)?;
    if !reg.is_regular {
        return Err(Error::NotRegular {
            distance: reg.circle_distance,
        });
    }
    let lf = l.to_c64();
    let wf = w.to_floating();
    let m0 = opts
        .initial_truncation
        .unwrap_or_else(|| 64.max(8 * n_max))
        .max(reg.order)
        .max(n_max);
    let mut used = vec![m0];
    let mut coarse = Level::solve(&lf, &wf, m0)?;
    let mut best = 0usize;
    let mut stalled = 0usize;
    loop {
        let m = 2 * coarse.m;
        if m > opts.max_truncation || (!coarse.hermitian && m > opts.max_general_truncation) {
            return Err(Error::ConvergenceFailure {
                size: coarse.m + 1,
                reason: format!(
                    "only {best} of {n_max} eigenvalues stabilised by truncation {}",
                    coarse.m
                ),
            });
        }
        let fine = Level::solve(&lf, &wf, m)?;
        used.push(m);
        match attempt(&coarse, &fine, n_max, opts) {
            Attempt::Done {
                picks,
                errors,
                vectors,
                direction,
            } => {
                let eigenvalues: Vec<C64> = picks.iter().map(|&i| fine.values[i]).collect();
                let mut report = SpectrumReport {
                    eigenvalues,
                    errors,
                    eigenvectors: vectors,
                    truncations_used: used,
                    hermitian: fine.hermitian,
                    direction,
                    tol: opts.tol,
                    tail_fraction: opts.tail_fraction,
                    tail_mass: opts.tail_mass,
                    fit: None,
                };
                report.fit = default_fit(&lf, &report);
                return Ok(report);
            }
            Attempt::Short(k) => {
                if k > best {
                    best = k;
                    stalled = 0;
                } else {
                    stalled += 1;
                }
                if !fine.hermitian && stalled >= 2 {
                    return Err(Error::ConvergenceFailure {
                        size: m + 1,
                        reason: format!(
                            "no progress beyond {best} of {n_max} eigenvalues over two refinements"
                        ),
                    });
                }
            }
        }
        coarse = fine;
    }
}

/// Asymptotic fit attached when the data allow it (order at least two,
/// R-symmetric leading coefficient, at least 30 eigenvalues).
fn default_fit(l: &DiffExpr<C64>, report: &SpectrumReport) -> Option<AsymptoticFit> {
    let order = l.order()?;
    if order < 2 || report.len() < 30 {
        return None;
    }
    let lead = l.leading()?;
    r_symmetry_analysis(lead, order).ok()?;
    let tc = tau_and_c1(lead, order).ok()?;
    asymptotic_fit(&report.eigenvalues, order, tc.tau, tc.c1).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn first_order_ladder() {
        let w = WeightSequence::new(2.0).unwrap();
        let l = DiffExpr::new(vec![
            Poly::new(vec![c(0.0), c(1.0)]),
            Poly::new(vec![c(0.5), c(-1.25), c(0.5)]),
        ]);
        let r = converged_spectrum(&l, &w, 21, 1e-8).unwrap();
        assert!(r.hermitian);
        for (n, z) in r.eigenvalues.iter().enumerate() {
            assert!((z - c(0.5 - 0.75 * n as f64)).norm() < 1e-8, "n={n}: {z}");
        }
    }

    #[test]
    fn euler_square() {
        let w = WeightSequence::new(1.0).unwrap();
        let r = converged_spectrum(&DiffExpr::<C64>::euler().pow(2), &w, 10, 1e-12).unwrap();
        for (n, z) in r.eigenvalues.iter().enumerate() {
            assert_eq!(*z, c((n * n) as f64));
        }
    }

    #[test]
    fn irregular_input() {
        let w = WeightSequence::new(1.0).unwrap();
        let l = DiffExpr::new(vec![Poly::zero(), Poly::new(vec![c(-1.0), c(1.0)])]);
        assert!(matches!(
            converged_spectrum(&l, &w, 3, 1e-8),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn tail_ratio_of_unit_vectors() {
        let mut x = vec![C64::new(0.0, 0.0); 20];
        x[0] = c(1.0);
        assert_eq!(tail_ratio(&x, 0.1), 0.0);
        x[19] = c(1.0);
        assert!((tail_ratio(&x, 0.1) - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
