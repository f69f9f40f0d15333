//! Formally symmetric expressions and their expansion in the `B_{n,r}` family.

use crate::algebra::adjoint::adjoint;
use crate::algebra::expr::DiffExpr;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::scalar::{binomial, falling_factorial, Scalar};

/// True when `L+ = L` (exactly in rational mode, to relative `1e-12` otherwise).
/// Expressions outside the adjointable algebra are not symmetric.
pub fn is_formally_symmetric<S: Scalar>(l: &DiffExpr<S>, w: &WeightSequence<S::Real>) -> bool {
    adjoint(l, w).is_ok_and(|adj| adj.approx_eq(l))
}

/// The adjoint of `D`: `z^2 D + sigma z`.
pub fn raising_expression<S: Scalar>(w: &WeightSequence<S::Real>) -> DiffExpr<S> {
    let sigma = S::from_real(w.sigma().clone());
    &DiffExpr::term(S::one(), 2, 1) + &DiffExpr::term(sigma, 1, 0)
}

/// `B_{n,r} = (zD)^(n-r) D^r` and its adjoint `(z^2 D + sigma z)^r (zD)^(n-r)`.
pub fn b_expressions<S: Scalar>(
    n: usize,
    r: usize,
    w: &WeightSequence<S::Real>,
) -> Result<(DiffExpr<S>, DiffExpr<S>)> {
    if r > n {
        return Err(Error::Invalid(format!(
            "B_(n,r) needs r <= n, got n={n}, r={r}"
        )));
    }
    let euler = DiffExpr::<S>::euler().pow((n - r) as u32);
    let b = euler.compose(&DiffExpr::derivative().pow(r as u32));
    let b_adj = raising_expression::<S>(w).pow(r as u32).compose(&euler);
    Ok((b, b_adj))
}

/// Coefficients `c_{n,r}` with `L = sum_{n,r} (c_{n,r} B_{n,r} + conj(c_{n,r}) B+_{n,r})`.
///
/// `c_{n,0}` is real, so its pair contributes `2 c_{n,0} (zD)^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricDecomposition<S> {
    /// `coeffs[n][r]` for `0 <= r <= n <= order`.
    coeffs: Vec<Vec<S>>,
}

impl<S: Scalar> SymmetricDecomposition<S> {
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn get(&self, n: usize, r: usize) -> S {
        self.coeffs
            .get(n)
            .and_then(|row| row.get(r))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.coeffs
    }

    /// Nonzero coefficients as `(n, r, c_{n,r})`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.coeffs.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(r, c)| (n, r, c))
        })
    }

    /// Sums the expansion back into a single expression.
    pub fn reconstruct(&self, w: &WeightSequence<S::Real>) -> Result<DiffExpr<S>> {
        let mut acc = DiffExpr::zero();
        for (n, r, c) in self.terms() {
            acc = &acc + &pair(n, r, c, w)?;
        }
        Ok(acc)
    }
}

/// `c B_{n,r} + conj(c) B+_{n,r}`.
fn pair<S: Scalar>(n: usize, r: usize, c: &S, w: &WeightSequence<S::Real>) -> Result<DiffExpr<S>> {
    let (b, b_adj) = b_expressions::<S>(n, r, w)?;
    Ok(&b.scale(c) + &b_adj.scale(&c.conj()))
}

/// Expands a formally symmetric expression, peeling orders from the top.
pub fn symmetric_decomposition<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
) -> Result<SymmetricDecomposition<S>> {
    let Some(order) = l.order() else {
        return Ok(SymmetricDecomposition { coeffs: Vec::new() });
    };
    let mut coeffs: Vec<Vec<S>> = (0..=order).map(|n| vec![S::zero(); n + 1]).collect();
    let mut residual = l.clone();
    let mut scale = l.max_abs().max(1.0);
    for n in (0..=order).rev() {
        let p = residual.coeff(n);
        let two = S::from_int(2);
        coeffs[n][0] = S::from_real(p.coeff(n).re_part()) / two;
        for r in 1..=n {
            coeffs[n][r] = p.coeff(n + r).conj();
        }
        for r in 0..=n {
            if coeffs[n][r].is_zero() {
                continue;
            }
            let term = pair(n, r, &coeffs[n][r], w)?;
            scale = scale.max(term.max_abs());
            residual = &residual - &term;
        }
        let left = residual.coeff(n);
        if !left.coeffs().iter().all(|c| c.is_negligible(scale)) {
            return Err(Error::SymmetryViolation { order: n });
        }
    }
    if !residual
        .coeffs()
        .iter()
        .all(|p| p.coeffs().iter().all(|c| c.is_negligible(scale)))
    {
        return Err(Error::SymmetryViolation { order: 0 });
    }
    Ok(SymmetricDecomposition { coeffs })
}

/// Symmetric expression of order `n` whose leading coefficient is the
/// conjugate-palindromic polynomial `lead` (degree at most `2n`, with
/// `z^(n+r)` coefficient the conjugate of the `z^(n-r)` coefficient).
pub fn symmetric_with_leading<S: Scalar>(
    lead: &Poly<S>,
    n: usize,
    w: &WeightSequence<S::Real>,
) -> Result<DiffExpr<S>> {
    if lead.degree().is_some_and(|d| d > 2 * n) {
        return Err(Error::Invalid(format!(
            "leading coefficient of degree {} exceeds 2N = {}",
            lead.degree().unwrap_or(0),
            2 * n
        )));
    }
    let mut acc = DiffExpr::zero();
    let half = S::from_real(lead.coeff(n).re_part()) / S::from_int(2);
    if !half.is_zero() {
        acc = &acc + &pair(n, 0, &half, w)?;
    }
    for r in 1..=n {
        let c = lead.coeff(n + r).conj();
        if !c.is_zero() {
            acc = &acc + &pair(n, r, &c, w)?;
        }
    }
    Ok(acc)
}

/// `l_{n,r} = (c z^(n+r) + conj(c) z^(n-r)) D^n
///   + sum_{k=1}^r c binom(r,k) (n+1)!/(n+1-k)! z^(n+r-k) D^(n-k)`,
/// symmetric for the weights with `sigma = 2`.
pub fn stork_expression<S: Scalar>(n: usize, r: usize, c: &S) -> Result<DiffExpr<S>> {
    if r > n {
        return Err(Error::Invalid(format!(
            "l_(n,r) needs r <= n, got n={n}, r={r}"
        )));
    }
    let mut coeffs = vec![Poly::zero(); n + 1];
    coeffs[n] = &Poly::monomial(c.clone(), n + r) + &Poly::monomial(c.conj(), n - r);
    for k in 1..=r {
        let f = c.clone() * binomial::<S>(r, k) * falling_factorial::<S>(n as i64 + 1, k);
        coeffs[n - k] = &coeffs[n - k] + &Poly::monomial(f, n + r - k);
    }
    Ok(DiffExpr::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, C64, CQ};
    use num::Zero;

    fn q(re: &str, im: &str) -> CQ {
        CQ::new(parse_rational(re).unwrap(), parse_rational(im).unwrap())
    }

    #[test]
    fn stork_symmetry_depends_on_sigma() {
        let w2 = WeightSequence::parse("2").unwrap();
        let w1 = WeightSequence::parse("1").unwrap();
        let l = stork_expression(1, 1, &q("1", "0")).unwrap();
        assert!(is_formally_symmetric(&l, &w2));
        assert!(!is_formally_symmetric(&l, &w1));
    }

    #[test]
    fn decomposition_of_first_order_example() {
        let w = WeightSequence::parse("2").unwrap();
        let l = DiffExpr::from_rows(vec![
            vec![q("0", "0"), q("1", "0")],
            vec![q("1/2", "0"), q("-5/4", "0"), q("1/2", "0")],
        ]);
        let d = symmetric_decomposition(&l, &w).unwrap();
        assert_eq!(d.get(1, 1), q("1/2", "0"));
        assert_eq!(d.get(1, 0), q("-5/8", "0"));
        assert!(d.get(0, 0).is_zero());
        assert_eq!(d.reconstruct(&w).unwrap(), l);
    }

    #[test]
    fn asymmetric_input_is_reported() {
        let w = WeightSequence::parse("2").unwrap();
        let l = DiffExpr::<CQ>::derivative();
        assert!(matches!(
            symmetric_decomposition(&l, &w),
            Err(Error::SymmetryViolation { order: 1 })
        ));
    }

    #[test]
    fn b_pairs_are_adjoint() {
        let w = WeightSequence::parse("1/3").unwrap();
        for n in 0..4 {
            for r in 0..=n {
                let (b, b_adj) = b_expressions::<CQ>(n, r, &w).unwrap();
                assert_eq!(adjoint(&b, &w).unwrap(), b_adj);
            }
        }
    }

    #[test]
    fn leading_builder_matches_requested_coefficient() {
        let w = WeightSequence::new(2.0).unwrap();
        let lead = Poly::new(vec![
            C64::new(0.5, 0.0),
            C64::new(-1.25, 0.0),
            C64::new(0.5, 0.0),
        ]);
        let l = symmetric_with_leading(&lead, 1, &w).unwrap();
        assert!(l.leading().unwrap().approx_eq(&lead));
        assert!(is_formally_symmetric(&l, &w));
    }
}
