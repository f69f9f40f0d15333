use std::cmp::Ordering;

use crate::error::Result;
use crate::linalg::{eigen_general, hermitian_band_eigenvalues};
use crate::scalar::C64;
use crate::spectral::truncation::TruncatedOperator;

/// Orders by real part, then imaginary part.
pub fn spectral_order(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// All eigenvalues of the truncation, sorted by real then imaginary part.
///
/// Hermitian sections (defect at most `1e-12` of the largest entry) use the
/// banded Hermitian solver and have exactly real output.
pub fn eigenvalues(a: &TruncatedOperator) -> Result<Vec<C64>> {
    let mut values: Vec<C64> = if a.is_hermitian() {
        hermitian_band_eigenvalues(a.entries(), a.band_width())?
            .into_iter()
            .map(|x| C64::new(x, 0.0))
            .collect()
    } else {
        eigen_general(a.entries(), false)?.values
    };
    values.sort_by(spectral_order);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DiffExpr;
    use crate::hardy::WeightSequence;
    use crate::linalg::CMatrix;
    use crate::spectral::truncation::{assemble_hardy_matrix, Basis};

    #[test]
    fn cubic_euler() {
        let w = WeightSequence::new(1.0).unwrap();
        let l = DiffExpr::<C64>::euler().pow(3);
        let a = assemble_hardy_matrix(&l, &w, 5).unwrap();
        let got = eigenvalues(&a).unwrap();
        for (n, z) in got.iter().enumerate() {
            assert_eq!(*z, C64::new((n * n * n) as f64, 0.0));
        }
    }

    #[test]
    fn jordan_block() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let a = TruncatedOperator::new(m, Basis::Hardy { max_index: 1 }, 0, 1);
        let got = eigenvalues(&a).unwrap();
        assert!(got.iter().all(|z| z.norm() < 1e-12));
        assert_eq!(got.len(), 2);
    }
}
