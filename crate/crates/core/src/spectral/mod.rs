//! Truncated matrices, converged spectra and their asymptotics.

pub mod asymptotics;
pub mod converge;
pub mod eigen;
pub mod gaps;
pub mod homotopy;
pub mod truncation;

pub use asymptotics::{asymptotic_fit, fit_tau, tau_and_c1, AsymptoticFit, TauReport};
pub use converge::{
    converged_spectrum, converged_spectrum_with, tail_ratio, SpectrumOptions, SpectrumReport,
};
pub use eigen::{eigenvalues, spectral_order};
pub use gaps::{gap_check, partner_shift, GapReport};
pub use homotopy::{homotopy_track, HomotopyPaths};
pub use truncation::{
    assemble_hardy_matrix, assemble_periodic_matrix, section_hermitian_defect, Basis,
    TruncatedOperator,
};
