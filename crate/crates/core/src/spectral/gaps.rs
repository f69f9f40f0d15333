//! Separation of the model sequence `γ_n = (n/τ + C)^N`, `n ∈ Z`.

use crate::error::{Error, Result};
use crate::scalar::C64;

/// Values closer than this (relative to `max(1, |γ_n|)`) count as a pair.
pub const PAIR_TOL: f64 = 1e-12;
/// Tolerance for deciding that `2τC` is an integer.
pub const INTEGER_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct GapReport {
    pub tau: f64,
    pub c: C64,
    pub order: usize,
    pub radius: i64,
    /// `|γ_n|` is strictly increasing in `|n|` on both sides from here on.
    pub monotone_from: i64,
    /// Smallest `|n|` entering `min_gap`: `max(monotone_from, radius / 2)`.
    pub checked_from: i64,
    /// `min |γ_n - γ_m| / |n|^(N-1)` over checked `n` and all `m` with `γ_m ≠ γ_n`.
    pub min_gap: f64,
    /// Coinciding values `(n, m)` with `n < m` among the checked indices.
    pub pairs: Vec<(i64, i64)>,
    /// Largest number of partners of any checked index.
    pub max_partners: usize,
    /// `m = -n - 2τC` when `N` is even and `2τC` is an integer.
    pub partner_shift: Option<i64>,
    /// Observed pairs are exactly those predicted by `partner_shift`.
    pub consistent: bool,
}

impl GapReport {
    pub fn expects_pairs(&self) -> bool {
        self.partner_shift.is_some()
    }
}

fn gamma(n: i64, tau: f64, c: C64, order: usize) -> C64 {
    (C64::new(n as f64 / tau, 0.0) + c).powu(order as u32)
}

/// Predicted pairing shift `s` with `γ_{-n-s} = γ_n`.
pub fn partner_shift(tau: f64, c: C64, order: usize) -> Option<i64> {
    if !order.is_multiple_of(2) || c.im.abs() > INTEGER_TOL {
        return None;
    }
    let s = 2.0 * tau * c.re;
    let r = s.round();
    ((s - r).abs() <= INTEGER_TOL).then_some(r as i64)
}

pub fn gap_check(tau: f64, c: C64, order: usize, radius: i64) -> Result<GapReport> {
    if !(tau > 0.0) || order < 2 || radius < 2 {
        return Err(Error::Invalid(format!(
            "need τ > 0, N >= 2 and radius >= 2, got {tau}, {order}, {radius}"
        )));
    }
    let values: Vec<C64> = (-radius..=radius)
        .map(|n| gamma(n, tau, c, order))
        .collect();
    let at = |n: i64| values[(n + radius) as usize];
    let mut monotone_from = radius;
    while monotone_from > 0 {
        let k = monotone_from - 1;
        let up = at(k).norm() < at(k + 1).norm();
        let down = at(-k).norm() < at(-k - 1).norm();
        if !(up && down) {
            break;
        }
        monotone_from = k;
    }
    let checked_from = monotone_from.max(radius / 2);
    let shift = partner_shift(tau, c, order);
    let scale = |n: i64| (n.unsigned_abs().max(1) as f64).powi(order as i32 - 1);
    let mut min_gap = f64::INFINITY;
    let mut pairs = Vec::new();
    let mut max_partners = 0;
    let mut consistent = true;
    for n in (-radius..=radius).filter(|n| n.abs() >= checked_from) {
        let g = at(n);
        let tol = PAIR_TOL * g.norm().max(1.0);
        let mut partners = 0;
        for m in (-radius..=radius).filter(|&m| m != n) {
            let d = (at(m) - g).norm();
            if d <= tol {
                partners += 1;
                if n < m || m.abs() < checked_from {
                    pairs.push((n.min(m), n.max(m)));
                }
                if shift.is_none_or(|s| m != -n - s) {
                    consistent = false;
                }
            } else {
                min_gap = min_gap.min(d / scale(n));
            }
        }
        if let Some(s) = shift {
            let m = -n - s;
            if m != n && m.abs() <= radius && (at(m) - g).norm() > tol {
                consistent = false;
            }
        }
        max_partners = max_partners.max(partners);
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(GapReport {
        tau,
        c,
        order,
        radius,
        monotone_from,
        checked_from,
        min_gap,
        pairs,
        max_partners,
        partner_shift: shift,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn squares_pair_up() {
        let r = gap_check(1.0, c(0.0), 2, 100).unwrap();
        assert_eq!(r.partner_shift, Some(0));
        assert!(r.consistent);
        assert!(r.pairs.contains(&(-60, 60)));
        assert_eq!(r.max_partners, 1);
        assert!(r.min_gap > 1.9);
    }

    #[test]
    fn shifted_squares_are_injective() {
        let r = gap_check(1.0, c(0.25), 2, 100).unwrap();
        assert!(r.partner_shift.is_none());
        assert!(r.pairs.is_empty());
        assert!(r.consistent);
        assert!(r.min_gap > 0.9);
    }

    #[test]
    fn cubes_are_injective() {
        let r = gap_check(1.0, c(0.0), 3, 100).unwrap();
        assert!(r.pairs.is_empty());
        assert!(r.min_gap > 2.9);
    }

    #[test]
    fn integer_shift_pairs() {
        let r = gap_check(2.0, c(0.5), 2, 50).unwrap();
        assert_eq!(r.partner_shift, Some(2));
        assert!(r.consistent);
        assert!(r.pairs.contains(&(-32, 30)));
    }
}
