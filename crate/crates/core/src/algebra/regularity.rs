use crate::algebra::expr::DiffExpr;
use crate::algebra::roots::poly_roots;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Roots within this distance of the unit circle make an expression irregular.
pub const CIRCLE_TOL: f64 = 1e-9;

/// Position of the leading coefficient's roots relative to the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub order: usize,
    /// No root of the leading coefficient lies on the unit circle.
    pub is_regular: bool,
    /// `min | |r| - 1 |` over the roots; infinite when there are none.
    pub circle_distance: f64,
    /// Roots strictly inside the unit disc, counted with multiplicity.
    pub inner_roots: usize,
}

impl RegularityReport {
    /// `N - K` for regular expressions.
    pub fn index(&self) -> Option<i64> {
        self.is_regular
            .then(|| self.order as i64 - self.inner_roots as i64)
    }
}

pub fn d_regularity<S: Scalar>(l: &DiffExpr<S>) -> Result<RegularityReport> {
    let (Some(order), Some(lead)) = (l.order(), l.leading()) else {
        return Err(Error::DegenerateInput(
            "the zero expression has no leading coefficient".into(),
        ));
    };
    let roots = poly_roots(lead)?;
    let circle_distance = roots
        .iter()
        .map(|r| (r.value.norm() - 1.0).abs())
        .fold(f64::INFINITY, f64::min);
    let inner_roots = roots
        .iter()
        .filter(|r| r.value.norm() < 1.0)
        .map(|r| r.multiplicity)
        .sum();
    Ok(RegularityReport {
        order,
        is_regular: circle_distance > CIRCLE_TOL,
        circle_distance,
        inner_roots,
    })
}

/// Fredholm index `N - K` of a D-regular expression of order `N` whose
/// leading coefficient has `K` roots in the open unit disc.
pub fn fredholm_index<S: Scalar>(l: &DiffExpr<S>) -> Result<i64> {
    let report = d_regularity(l)?;
    report.index().ok_or(Error::NotRegular {
        distance: report.circle_distance,
    })
}
