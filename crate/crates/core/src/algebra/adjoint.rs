//! Formal adjoints with respect to the weighted inner product.
//!
//! For `L = sum p_k D^k` the adjoint `L+` satisfies
//! `<L z^m, z^n> = <z^m, L+ z^n>`, so the image of `z^n` under `L+` has
//! `z^m` coefficient `conj(c_{n,m}) beta_n^2 / beta_m^2`, where `c_{n,m}` is
//! the `z^n` coefficient of `L z^m`. The coefficients of `L+` are read off
//! the images of `1, z, ..., z^N` and then checked on further monomials.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::expr::DiffExpr;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::scalar::{falling_factorial, Scalar};

/// Tuning for the floating-mode spot checks.
#[derive(Clone, Debug)]
pub struct AdjointOptions {
    /// Number of random large-index monomials checked in floating mode.
    pub spot_checks: usize,
    pub seed: u64,
    /// Relative tolerance for floating-mode checks.
    pub tol: f64,
    /// Spot checks draw indices from `(horizon, spot_range]`.
    pub spot_range: usize,
}

impl Default for AdjointOptions {
    fn default() -> Self {
        Self {
            spot_checks: 32,
            seed: 0x5eed_ad10,
            tol: 1e-9,
            spot_range: 10_000,
        }
    }
}

/// Largest monomial index checked deterministically: `4N + max deg p_k + 4`.
pub fn verification_horizon<S: Scalar>(l: &DiffExpr<S>) -> usize {
    4 * l.order().unwrap_or(0) + l.max_coeff_degree() + 4
}

pub fn adjoint<S: Scalar>(l: &DiffExpr<S>, w: &WeightSequence<S::Real>) -> Result<DiffExpr<S>> {
    adjoint_with(l, w, &AdjointOptions::default())
}

pub fn adjoint_with<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    opts: &AdjointOptions,
) -> Result<DiffExpr<S>> {
    let Some(order) = l.order() else {
        return Ok(DiffExpr::zero());
    };
    let excess = l.degree_excess().unwrap_or(0).max(0) as usize;
    let horizon = verification_horizon(l);
    let images: Vec<Poly<S>> = (0..=horizon + order)
        .map(|m| l.apply_to_monomial(m))
        .collect();

    let mut q: Vec<Poly<S>> = Vec::with_capacity(order + 1);
    for big_m in 0..=order {
        let t = target_image(w, big_m, order, excess, |m| images[m].clone())?;
        let mut rest = t;
        for (k, qk) in q.iter().enumerate() {
            let f = falling_factorial::<S>(big_m as i64, k);
            rest = &rest - &qk.shift(big_m - k).scale(&f);
        }
        let inv = S::one() / falling_factorial::<S>(big_m as i64, big_m);
        let qm = rest.scale(&inv);
        if qm.degree().is_some_and(|d| d > order + big_m) {
            return Err(Error::NotInAlgebra(format!(
                "adjoint coefficient of D^{big_m} would have degree {}",
                qm.degree().unwrap_or(0)
            )));
        }
        q.push(qm);
    }
    let adj = DiffExpr::new(q);

    for n in 0..=horizon {
        let t = target_image(w, n, order, excess, |m| images[m].clone())?;
        check_match(&adj.apply_to_monomial(n), &t, n, opts.tol)?;
    }
    if !S::EXACT && opts.spot_checks > 0 && opts.spot_range > horizon {
        let mut rng = StdRng::seed_from_u64(opts.seed);
        for _ in 0..opts.spot_checks {
            let n = rng.gen_range(horizon + 1..=opts.spot_range);
            let t = target_image(w, n, order, excess, |m| l.apply_to_monomial(m))?;
            check_match(&adj.apply_to_monomial(n), &t, n, opts.tol)?;
        }
    }
    Ok(adj)
}

/// Image of `z^n` under the adjoint, built from the action of `l` alone.
fn target_image<S: Scalar>(
    w: &WeightSequence<S::Real>,
    n: usize,
    order: usize,
    excess: usize,
    image: impl Fn(usize) -> Poly<S>,
) -> Result<Poly<S>> {
    let lo = n.saturating_sub(excess);
    let hi = n + order;
    let mut out = vec![S::zero(); hi + 1];
    for (m, slot) in out.iter_mut().enumerate().take(hi + 1).skip(lo) {
        let c = image(m).coeff(n);
        if c.is_zero() {
            continue;
        }
        if m.abs_diff(n) > order {
            return Err(Error::NotInAlgebra(format!(
                "z^{m} reaches z^{n}, outside the band of width {order}"
            )));
        }
        *slot = c.conj().scale_real(&w.ratio(n, m));
    }
    Ok(Poly::new(out))
}

fn check_match<S: Scalar>(got: &Poly<S>, want: &Poly<S>, n: usize, tol: f64) -> Result<()> {
    let ok = if S::EXACT {
        got == want
    } else {
        let scale = got.max_abs().max(want.max_abs()).max(f64::MIN_POSITIVE);
        let len = got.coeffs().len().max(want.coeffs().len());
        (0..len).all(|j| (got.coeff(j) - want.coeff(j)).magnitude() <= tol * scale)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotInAlgebra(format!(
            "recovered adjoint disagrees with the required action on z^{n}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, CQ};
    use num::rational::BigRational;
    use num::Zero;

    fn q(s: &str) -> CQ {
        CQ::new(parse_rational(s).unwrap(), BigRational::zero())
    }

    #[test]
    fn derivative_adjoint() {
        for s in ["1/3", "1", "2"] {
            let w = WeightSequence::parse(s).unwrap();
            let adj = adjoint(&DiffExpr::<CQ>::derivative(), &w).unwrap();
            let want = DiffExpr::from_rows(vec![vec![q("0"), q(s)], vec![q("0"), q("0"), q("1")]]);
            assert_eq!(adj, want);
        }
    }

    #[test]
    fn euler_is_self_adjoint() {
        let w = WeightSequence::parse("1/3").unwrap();
        let e = DiffExpr::<CQ>::euler();
        assert_eq!(adjoint(&e, &w).unwrap(), e);
    }

    #[test]
    fn multiplication_by_z_squared_is_rejected() {
        let w = WeightSequence::parse("2").unwrap();
        let l = DiffExpr::multiplication(Poly::monomial(q("1"), 2));
        assert!(matches!(adjoint(&l, &w), Err(Error::NotInAlgebra(_))));
    }

    #[test]
    fn zero_has_zero_adjoint() {
        let w = WeightSequence::new(2.0).unwrap();
        assert!(adjoint(&DiffExpr::<crate::scalar::C64>::zero(), &w)
            .unwrap()
            .is_zero());
    }
}
