//! Polynomials, differential expressions and their formal adjoints.

mod adjoint;
mod deform;
mod expr;
mod poly;
mod regularity;
mod roots;
mod rsym;
mod symmetric;

pub use adjoint::{adjoint, adjoint_with, verification_horizon, AdjointOptions};
pub use deform::{deformation_expression, Deformation};
pub use expr::DiffExpr;
pub use poly::Poly;
pub use regularity::{d_regularity, fredholm_index, RegularityReport, CIRCLE_TOL};
pub use roots::{flatten_roots, poly_roots, Root, ROOT_CLUSTER_TOL};
pub use rsym::{leading_adjoint_coeff, r_symmetry_analysis, RSymmetryReport, PAIRING_TOL};
pub use symmetric::{
    b_expressions, is_formally_symmetric, raising_expression, stork_expression,
    symmetric_decomposition, symmetric_with_leading, SymmetricDecomposition,
};
