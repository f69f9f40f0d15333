//! Hermitian banded eigenvalues: Givens band reduction to tridiagonal form
//! (bulge chasing), then implicit QL. Eigenvectors come from inverse
//! iteration with a banded LU factorisation.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_norm, CMatrix};
use crate::scalar::C64;

/// Lower triangle of a Hermitian band matrix with one extra diagonal of room for bulges.
struct HermitianBand {
    n: usize,
    width: usize,
    data: Vec<C64>,
}

impl HermitianBand {
    fn from_dense(a: &CMatrix, bandwidth: usize) -> Self {
        let n = a.rows();
        let width = bandwidth + 1;
        let mut data = vec![C64::zero(); n * (width + 1)];
        for j in 0..n {
            for d in 0..=bandwidth.min(n - 1 - j) {
                let i = j + d;
                let v = if d == 0 {
                    C64::new(a[(i, i)].re, 0.0)
                } else {
                    (a[(i, j)] + a[(j, i)].conj()) * 0.5
                };
                data[j * (width + 1) + d] = v;
            }
        }
        Self { n, width, data }
    }

    fn get(&self, i: usize, j: usize) -> C64 {
        if i >= j {
            let d = i - j;
            if d > self.width {
                C64::zero()
            } else {
                self.data[j * (self.width + 1) + d]
            }
        } else {
            self.get(j, i).conj()
        }
    }

    fn set(&mut self, i: usize, j: usize, v: C64) {
        if i >= j {
            let d = i - j;
            debug_assert!(d <= self.width, "write outside stored band");
            if d <= self.width {
                self.data[j * (self.width + 1) + d] = v;
            }
        } else {
            self.set(j, i, v.conj());
        }
    }

    /// `A <- G A G^H` with `G` acting on rows `p`, `p + 1` as `[c s; -conj(s) c]`.
    fn rotate(&mut self, p: usize, c: f64, s: C64) {
        let q = p + 1;
        let lo = p.saturating_sub(self.width);
        let hi = (q + self.width).min(self.n - 1);
        for k in lo..=hi {
            if k == p || k == q {
                continue;
            }
            let x = self.get(p, k);
            let y = self.get(q, k);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let np = x * c + s * y;
            let nq = y * c - s.conj() * x;
            if k < p || k - p <= self.width {
                self.set(p, k, np);
            }
            if k < q || k - q <= self.width {
                self.set(q, k, nq);
            }
        }
        let a = self.get(p, p).re;
        let d = self.get(q, q).re;
        let w = self.get(q, p);
        let sw = (s * w).re;
        let s2 = s.norm_sqr();
        let new_pp = c * c * a + 2.0 * c * sw + s2 * d;
        let new_qq = s2 * a - 2.0 * c * sw + c * c * d;
        let new_qp =
            w * (c * c) - s.conj() * (a * c) - s.conj() * s.conj() * w.conj() + s.conj() * (c * d);
        self.set(p, p, C64::new(new_pp, 0.0));
        self.set(q, q, C64::new(new_qq, 0.0));
        self.set(q, p, new_qp);
    }

    /// Reduces to tridiagonal form one bandwidth at a time.
    fn tridiagonalize(&mut self, bandwidth: usize) {
        for b in (2..=bandwidth).rev() {
            for j in 0..self.n {
                if j + b >= self.n {
                    break;
                }
                let mut col = j;
                let mut row = j + b;
                loop {
                    let y = self.get(row, col);
                    if y.is_zero() {
                        break;
                    }
                    let x = self.get(row - 1, col);
                    let (c, s) = rotation(x, y);
                    self.rotate(row - 1, c, s);
                    self.set(row, col, C64::zero());
                    col = row - 1;
                    row += b;
                    if row >= self.n {
                        break;
                    }
                }
            }
        }
    }
}

/// `(c, s)` with `-conj(s) x + c y = 0`.
fn rotation(x: C64, y: C64) -> (f64, C64) {
    let ny = y.norm();
    if x.is_zero() {
        return (0.0, y.conj() / ny);
    }
    let nx = x.norm();
    let r = nx.hypot(ny);
    (nx / r, (x / nx) * y.conj() / r)
}

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit QL.
/// `off[i]` couples `i` and `i + 1`.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::ConvergenceFailure {
                    size: n,
                    reason: "tridiagonal QL did not converge".into(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Eigenvalues of a Hermitian matrix whose entries vanish beyond `bandwidth`
/// diagonals, in ascending order.
pub fn hermitian_band_eigenvalues(a: &CMatrix, bandwidth: usize) -> Result<Vec<f64>> {
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let bw = bandwidth.min(n - 1);
    let mut band = HermitianBand::from_dense(a, bw);
    band.tridiagonalize(bw);
    let diag: Vec<f64> = (0..n).map(|i| band.get(i, i).re).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1))
        .map(|i| band.get(i + 1, i).norm())
        .collect();
    let mut vals = tridiagonal_eigenvalues(&diag, &off)?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Banded LU factorisation with partial pivoting.
pub struct BandLu {
    n: usize,
    kl: usize,
    width: usize,
    data: Vec<C64>,
    pivots: Vec<usize>,
}

impl BandLu {
    /// Factorises `a - shift I`, where `a` has `kl` sub- and `ku` super-diagonals.
    /// Zero pivots are replaced by a tiny multiple of the matrix norm.
    pub fn factor(a: &CMatrix, kl: usize, ku: usize, shift: C64) -> Self {
        let n = a.rows();
        let width = 2 * kl + ku + 1;
        let mut data = vec![C64::zero(); n * width];
        let idx = |i: usize, j: usize| i * width + (j + kl - i);
        for i in 0..n {
            let lo = i.saturating_sub(kl);
            let hi = (i + ku).min(n - 1);
            for j in lo..=hi {
                let mut v = a[(i, j)];
                if i == j {
                    v -= shift;
                }
                data[idx(i, j)] = v;
            }
        }
        let tiny = (a.max_abs() * f64::EPSILON).max(f64::MIN_POSITIVE);
        let mut pivots = vec![0; n];
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            for i in k + 1..=last {
                if data[idx(i, k)].norm() > data[idx(p, k)].norm() {
                    p = i;
                }
            }
            pivots[k] = p;
            let jend = (k + ku + kl).min(n - 1);
            if p != k {
                for j in k..=jend {
                    data.swap(idx(k, j), idx(p, j));
                }
            }
            if data[idx(k, k)].norm() < tiny {
                data[idx(k, k)] = C64::new(tiny, 0.0);
            }
            let piv = data[idx(k, k)];
            for i in k + 1..=last {
                let l = data[idx(i, k)] / piv;
                data[idx(i, k)] = l;
                if l.is_zero() {
                    continue;
                }
                for j in k + 1..=jend {
                    let u = data[idx(k, j)];
                    data[idx(i, j)] -= l * u;
                }
            }
        }
        Self {
            n,
            kl,
            width,
            data,
            pivots,
        }
    }

    pub fn solve(&self, b: &mut [C64]) {
        let n = self.n;
        let (kl, width) = (self.kl, self.width);
        let idx = |i: usize, j: usize| i * width + (j + kl - i);
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            for i in k + 1..=(k + kl).min(n - 1) {
                b[i] -= self.data[idx(i, k)] * bk;
            }
        }
        let ubw = width - kl - 1;
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..=(k + ubw).min(n - 1) {
                s -= self.data[idx(k, j)] * b[j];
            }
            b[k] = s / self.data[idx(k, k)];
        }
    }
}

/// Unit eigenvector for an eigenvalue of a banded matrix, by inverse iteration.
pub fn inverse_iteration(a: &CMatrix, kl: usize, ku: usize, lambda: C64) -> Vec<C64> {
    let n = a.rows();
    let lu = BandLu::factor(a, kl, ku, lambda);
    let mut x: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0 + 0.25 * ((i * 7 + 3) % 11) as f64 / 11.0, 0.0))
        .collect();
    for _ in 0..3 {
        lu.solve(&mut x);
        let nrm = vec_norm(&x);
        if nrm == 0.0 || !nrm.is_finite() {
            break;
        }
        x.iter_mut().for_each(|v| *v /= nrm);
    }
    x
}
