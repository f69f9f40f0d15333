//! Eigenvalue paths along the symmetric deformation `L(t)`, `t ∈ [0, 1]`.

use crate::algebra::{Deformation, DiffExpr};
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::scalar::{Scalar, C64};
use crate::spectral::converge::{converged_spectrum, SpectrumReport};

/// A matched eigenvalue may move at most this many local gaps per step.
pub const MAX_JUMP_GAPS: f64 = 5.0;
/// Interval halvings allowed before a step is declared ambiguous.
pub const MAX_REFINE_DEPTH: usize = 8;
/// A prediction must land within this fraction of the local spacing of its match.
pub const CAPTURE_FRACTION: f64 = 0.25;

#[derive(Clone, Debug)]
pub struct HomotopyPaths {
    pub order: usize,
    /// Sign `s` of the start `L(0) = s (zD)^N`.
    pub start_sign: f64,
    /// Parameter values, increasing from 0 to 1 (refined where needed).
    pub ts: Vec<f64>,
    /// `paths[k][j]` is the `k`-th path at `ts[j]`; `paths[k][0] = s k^N`.
    pub paths: Vec<Vec<C64>>,
    /// Index of each path's endpoint in the converged spectrum of `L`.
    pub end_index: Vec<usize>,
    /// `max_k |λ_k(0) - s k^N|`.
    pub start_error: f64,
    /// Largest distance between a path endpoint and its converged eigenvalue of `L`.
    pub end_error: f64,
    /// Largest single-step move relative to the local gap.
    pub max_jump_ratio: f64,
    pub max_imag: f64,
}

impl HomotopyPaths {
    pub fn count(&self) -> usize {
        self.paths.len()
    }

    /// Every path starts at its own `s k^N` and ends at a distinct eigenvalue of `L`.
    pub fn preserves_count(&self) -> bool {
        let mut ends = self.end_index.clone();
        ends.sort_unstable();
        ends.dedup();
        ends.len() == self.paths.len()
    }
}

struct Tracker<'a> {
    def: &'a Deformation,
    weights: WeightSequence<f64>,
    work: usize,
    tol: f64,
}

impl Tracker<'_> {
    fn spectrum(&self, t: f64) -> Result<SpectrumReport> {
        let l = self.def.at(t)?;
        converged_spectrum(&l, &self.weights, self.work, self.tol)
    }

    /// Matches the first `tracked` entries of `from` to `to` by proximity to
    /// the secant predictions `guess`; `None` when the assignment is not clear-cut.
    fn matching(
        &self,
        from: &[C64],
        guess: &[C64],
        to: &[C64],
        tracked: usize,
    ) -> Option<(Vec<usize>, f64)> {
        let mut out = Vec::with_capacity(tracked);
        let mut ratio: f64 = 0.0;
        for (k, (a, p)) in from.iter().zip(guess).take(tracked).enumerate() {
            let gap = from
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, b)| (b - a).norm())
                .fold(f64::INFINITY, f64::min);
            let (best, miss) = to
                .iter()
                .enumerate()
                .map(|(j, b)| (j, (b - p).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))?;
            let spacing = to
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != best)
                .map(|(_, b)| (b - to[best]).norm())
                .fold(f64::INFINITY, f64::min);
            if miss > CAPTURE_FRACTION * spacing || out.contains(&best) {
                return None;
            }
            let r = if gap > 0.0 {
                (to[best] - a).norm() / gap
            } else {
                f64::INFINITY
            };
            if r > MAX_JUMP_GAPS {
                return None;
            }
            ratio = ratio.max(r);
            out.push(best);
        }
        Some((out, ratio))
    }
}

/// Tracks the lowest `n_max` eigenvalues of `L(t)` over `steps` uniform
/// steps, halving a step (up to [`MAX_REFINE_DEPTH`] times) when the matching
/// is ambiguous.
pub fn homotopy_track<S: Scalar>(
    l: &DiffExpr<S>,
    w: &WeightSequence<S::Real>,
    n_max: usize,
    steps: usize,
    tol: f64,
) -> Result<HomotopyPaths> {
    if n_max == 0 || steps == 0 {
        return Err(Error::Invalid("n_max and steps must be positive".into()));
    }
    let def = Deformation::new(l, w)?;
    let order = def.report().order;
    let tracker = Tracker {
        def: &def,
        weights: w.to_floating(),
        work: n_max + (n_max / 4).max(4),
        tol,
    };
    let start = tracker.spectrum(0.0)?;
    let sign = def.leading(0.0).coeff(order).re.signum();
    let start_error = start
        .eigenvalues
        .iter()
        .take(n_max)
        .enumerate()
        .map(|(k, z)| (z - C64::new(sign * (k as f64).powi(order as i32), 0.0)).norm())
        .fold(0.0, f64::max);

    let mut ts = vec![0.0];
    let mut paths: Vec<Vec<C64>> = start.eigenvalues[..n_max]
        .iter()
        .map(|z| vec![*z])
        .collect();
    let mut current = start.eigenvalues.clone();
    let mut max_jump_ratio: f64 = 0.0;
    let mut final_spectrum = start;
    let mut t0 = 0.0;
    let mut previous: Option<(f64, Vec<C64>)> = None;
    for j in 1..=steps {
        let t1 = j as f64 / steps as f64;
        let mut stack = vec![(t1, 0usize)];
        while let Some((target, depth)) = stack.pop() {
            let next = tracker.spectrum(target)?;
            let guess: Vec<C64> = match &previous {
                Some((tp, old)) => {
                    let h = (target - t0) / (t0 - tp);
                    current
                        .iter()
                        .zip(old)
                        .map(|(a, b)| a + (a - b) * h)
                        .collect()
                }
                None => current.clone(),
            };
            let matched = tracker.matching(&current, &guess, &next.eigenvalues, n_max);
            match matched {
                Some((idx, ratio)) => {
                    max_jump_ratio = max_jump_ratio.max(ratio);
                    for (k, path) in paths.iter_mut().enumerate() {
                        path.push(next.eigenvalues[idx[k]]);
                    }
                    let fresh: Vec<C64> = idx.iter().map(|&i| next.eigenvalues[i]).collect();
                    previous = Some((t0, current[..n_max].to_vec()));
                    current = fresh;
                    current.extend(
                        (0..next.eigenvalues.len())
                            .filter(|i| !idx.contains(i))
                            .map(|i| next.eigenvalues[i]),
                    );
                    ts.push(target);
                    t0 = target;
                    final_spectrum = next;
                }
                None if depth < MAX_REFINE_DEPTH => {
                    stack.push((target, depth + 1));
                    stack.push((0.5 * (t0 + target), depth + 1));
                }
                None => return Err(Error::PathAmbiguity { t: target }),
            }
        }
    }

    let end_index: Vec<usize> = paths
        .iter()
        .map(|p| {
            let z = *p.last().expect("paths are nonempty");
            final_spectrum
                .eigenvalues
                .iter()
                .position(|w| *w == z)
                .expect("endpoints come from the final spectrum")
        })
        .collect();
    let reference = converged_spectrum(l, w, tracker.work, tol)?;
    let end_error = end_index
        .iter()
        .zip(&paths)
        .map(|(&i, p)| match reference.eigenvalues.get(i) {
            Some(z) => (z - p.last().expect("nonempty")).norm(),
            None => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let max_imag = paths
        .iter()
        .flatten()
        .map(|z| z.im.abs())
        .fold(0.0, f64::max);
    Ok(HomotopyPaths {
        order,
        start_sign: sign,
        ts,
        paths,
        end_index,
        start_error,
        end_error,
        max_jump_ratio,
        max_imag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn euler_square_paths_are_constant() {
        let w = WeightSequence::new(2.0).unwrap();
        let h = homotopy_track(&DiffExpr::<C64>::euler().pow(2), &w, 8, 4, 1e-10).unwrap();
        assert_eq!(h.ts, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        for (n, path) in h.paths.iter().enumerate() {
            assert!(path.iter().all(|z| (z - c((n * n) as f64)).norm() < 1e-9));
        }
    }

    #[test]
    fn first_order_paths_are_linear_in_n() {
        let w = WeightSequence::new(2.0).unwrap();
        let l = DiffExpr::new(vec![
            Poly::new(vec![c(0.0), c(1.0)]),
            Poly::new(vec![c(0.5), c(-1.25), c(0.5)]),
        ]);
        let h = homotopy_track(&l, &w, 6, 8, 1e-9).unwrap();
        assert!(h.preserves_count());
        assert!(h.start_error < 1e-12);
        assert!(h.end_error < 1e-9);
        for (j, t) in h.ts.iter().enumerate() {
            for (n, path) in h.paths.iter().enumerate() {
                let want = t * t / 2.0 - (1.0 - t * t / 4.0) * n as f64;
                assert!(
                    (path[j] - c(want)).norm() < 1e-7,
                    "t={t} n={n}: {}",
                    path[j]
                );
            }
        }
    }
}
