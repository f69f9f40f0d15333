//! Dense and banded complex eigenvalue solvers.

mod band;
mod matrix;
mod schur;

pub use band::{hermitian_band_eigenvalues, inverse_iteration, tridiagonal_eigenvalues, BandLu};
pub use matrix::{vec_norm, CMatrix};
pub use schur::{balance, eigen_general, EigenDecomposition};
