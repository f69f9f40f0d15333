//! Differential operators with polynomial coefficients acting on weighted
//! Hardy spaces of the unit disc.
//!
//! The crate computes formal adjoints exactly (over complex rationals) or in
//! floating point, recognises and decomposes formally symmetric expressions,
//! and studies the spectra of their banded matrix truncations: convergence
//! control, large-index asymptotics, gap structure, and continuation along a
//! deformation to a power of the Euler operator.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod hardy;
pub mod linalg;
pub mod oracles;
pub mod scalar;
pub mod spectral;

pub use algebra::{DiffExpr, Poly};
pub use error::{Error, Result};
pub use hardy::{HardyElement, WeightSequence};
pub use scalar::{Scalar, C64, CQ};
