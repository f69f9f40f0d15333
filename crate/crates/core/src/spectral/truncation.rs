use crate::algebra::DiffExpr;
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::linalg::CMatrix;
use crate::scalar::{Real, Scalar};

/// Index set of a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Orthonormal monomials `z^n / beta_n`, `n = 0..=M`.
    Hardy { max_index: usize },
    /// Fourier modes `e^{i m theta}`, `m = -M..=M`, unweighted.
    Fourier { max_mode: usize },
}

/// Square section of the infinite matrix of a differential expression.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    entries: CMatrix,
    basis: Basis,
    /// Nonzero entries satisfy `row - col <= lower` and `col - row <= upper`.
    lower: usize,
    upper: usize,
}

impl TruncatedOperator {
    pub fn new(entries: CMatrix, basis: Basis, lower: usize, upper: usize) -> Self {
        Self {
            entries,
            basis,
            lower,
            upper,
        }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// `(sub-diagonals, super-diagonals)` that may be nonzero.
    pub fn bands(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    pub fn band_width(&self) -> usize {
        self.lower.max(self.upper)
    }

    /// Mode label of a row or column (`n` for Hardy, `m` for Fourier).
    pub fn label(&self, i: usize) -> i64 {
        match self.basis {
            Basis::Hardy { .. } => i as i64,
            Basis::Fourier { max_mode } => i as i64 - max_mode as i64,
        }
    }

    /// `max |A - A^H|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries.hermitian_defect()
    }

    /// Hermitian up to `1e-12` relative to the largest entry.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= 1e-12 * self.entries.max_abs()
    }

    /// Largest entry outside the declared band.
    pub fn band_violation(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                if i > j + self.lower || j > i + self.upper {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }
}

fn bands_of<S: Scalar>(l: &DiffExpr<S>) -> (usize, usize) {
    let upper = l.order().unwrap_or(0);
    let lower = l.degree_excess().unwrap_or(0).max(0) as usize;
    (lower, upper)
}

/// Matrix of `l` in the orthonormal basis `z^n / beta_n`, `n = 0..=m`:
/// `A[n, k] = (beta_n / beta_k) * [z^n] (l z^k)`.
pub fn assemble_hardy_matrix<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    m: usize,
) -> Result<TruncatedOperator> {
    let order = l.order().unwrap_or(0);
    if m < order {
        return Err(Error::Invalid(format!(
            "truncation {m} is below the order {order}"
        )));
    }
    let wf = w.to_floating();
    let mut a = CMatrix::zeros(m + 1, m + 1);
    for k in 0..=m {
        let image = l.apply_to_monomial(k);
        for (n, c) in image.coeffs().iter().enumerate().take(m + 1) {
            if c.is_zero() {
                continue;
            }
            a[(n, k)] = c.to_c64() * wf.norm_ratio(n, k);
        }
    }
    let (lower, upper) = bands_of(l);
    Ok(TruncatedOperator::new(
        a,
        Basis::Hardy { max_index: m },
        lower,
        upper,
    ))
}

/// Matrix of `l` on the Fourier modes `-m..=m` with the unweighted inner product.
pub fn assemble_periodic_matrix<S: Scalar>(l: &DiffExpr<S>, m: usize) -> TruncatedOperator {
    let size = 2 * m + 1;
    let mi = m as i64;
    let mut a = CMatrix::zeros(size, size);
    for col in 0..size {
        let mode = col as i64 - mi;
        for (power, c) in l.apply_to_mode(mode) {
            if (-mi..=mi).contains(&power) {
                a[((power + mi) as usize, col)] = c.to_c64();
            }
        }
    }
    let (lower, upper) = bands_of(l);
    TruncatedOperator::new(a, Basis::Fourier { max_mode: m }, lower, upper)
}

/// `max |A - A^H|` over the section `0..=m`, computed from the Gram entries
/// `[z^n](l z^k) beta_n^2`, so that it is exactly zero in rational mode when
/// the section is Hermitian.
pub fn section_hermitian_defect<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    m: usize,
) -> f64 {
    let images: Vec<_> = (0..=m).map(|k| l.apply_to_monomial(k)).collect();
    let mut worst: f64 = 0.0;
    for k in 0..=m {
        for n in 0..=k {
            let g_nk = images[k].coeff(n).scale_real(&w.beta_squared(n));
            let g_kn = images[n].coeff(k).scale_real(&w.beta_squared(k));
            let d = g_nk - g_kn.conj();
            if d.is_zero() {
                continue;
            }
            let scale = (w.beta_squared(n).to_f64() * w.beta_squared(k).to_f64()).sqrt();
            worst = worst.max(d.magnitude() / scale);
        }
    }
    worst
}
