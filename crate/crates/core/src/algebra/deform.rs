//! Symmetric path from `±(zD)^N` to a given symmetric D-regular expression.

use crate::algebra::expr::DiffExpr;
use crate::algebra::regularity::d_regularity;
use crate::algebra::rsym::{r_symmetry_analysis, RSymmetryReport};
use crate::algebra::symmetric::{is_formally_symmetric, symmetric_with_leading};
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::scalar::{Scalar, C64};

/// Precomputed data for evaluating the deformation at many `t`.
#[derive(Clone, Debug)]
pub struct Deformation {
    target: DiffExpr<C64>,
    order: usize,
    report: RSymmetryReport,
    /// `L - L_0(1)`, of order below `N`.
    lower: DiffExpr<C64>,
    weights: WeightSequence<f64>,
}

impl Deformation {
    pub fn new<S: Scalar>(l: &DiffExpr<S>, w: &WeightSequence<S::Real>) -> Result<Self> {
        if !is_formally_symmetric(l, w) {
            return Err(Error::SymmetryViolation {
                order: l.order().unwrap_or(0),
            });
        }
        let reg = d_regularity(l)?;
        if !reg.is_regular {
            return Err(Error::NotRegular {
                distance: reg.circle_distance,
            });
        }
        let order = reg.order;
        let lead = l.leading().expect("regular expressions are nonzero");
        let report = r_symmetry_analysis(lead, order)?;
        let target = l.to_c64();
        let weights = w.to_floating();
        let mut this = Self {
            target: target.clone(),
            order,
            report,
            lower: DiffExpr::zero(),
            weights,
        };
        let top = this.principal(1.0)?;
        this.lower = &target - &top;
        Ok(this)
    }

    pub fn report(&self) -> &RSymmetryReport {
        &self.report
    }

    /// Scale of the leading coefficient at `t`: `sign(C1) |C1|^t`, so the
    /// path starts at `±(zD)^N` and ends at the leading coefficient of `L`.
    pub fn scale(&self, t: f64) -> f64 {
        let c1 = self.report.c1.re;
        c1.signum() * c1.abs().powf(t)
    }

    /// Leading coefficient `p_N(t, z)`.
    pub fn leading(&self, t: f64) -> crate::algebra::Poly<C64> {
        self.report.product(t).scale(&C64::new(self.scale(t), 0.0))
    }

    /// Symmetric expression built from the top-order `B_{N,r}` pairs with leading coefficient `p_N(t, z)`.
    pub fn principal(&self, t: f64) -> Result<DiffExpr<C64>> {
        symmetric_with_leading(&self.leading(t), self.order, &self.weights)
    }

    /// `L(t) = L_0(t) + t (L - L_0(1))`; exactly `L` at `t = 1`.
    pub fn at(&self, t: f64) -> Result<DiffExpr<C64>> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Invalid(format!(
                "deformation parameter {t} outside [0, 1]"
            )));
        }
        if t == 1.0 {
            return Ok(self.target.clone());
        }
        Ok(&self.principal(t)? + &self.lower.scale(&C64::new(t, 0.0)))
    }
}

/// `L(t)` for a single parameter value.
pub fn deformation_expression<S: Scalar>(
    l: &DiffExpr<S>,
    t: f64,
    w: &WeightSequence<S::Real>,
) -> Result<DiffExpr<C64>> {
    Deformation::new(l, w)?.at(t)
}
