//! Eigenvalues of general complex matrices: diagonal balancing, Householder
//! reduction to Hessenberg form, then shifted QR sweeps down to Schur form.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_norm, CMatrix};
use crate::scalar::C64;

/// Eigenvalues (unsorted) and optionally unit eigenvectors, one per column.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<C64>,
    pub vectors: Option<CMatrix>,
}

fn cabs1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Scales rows and columns by powers of two so that their norms are comparable.
/// Returns the balanced matrix `D^-1 A D` and the diagonal of `D`.
pub fn balance(a: &CMatrix) -> (CMatrix, Vec<f64>) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let mut b = a.clone();
    let mut scale = vec![1.0; n];
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += cabs1(b[(j, i)]);
                    r += cabs1(b[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                for j in 0..n {
                    b[(i, j)] /= f;
                    b[(j, i)] *= f;
                }
            }
        }
    }
    (b, scale)
}

/// Reduces `a` to upper Hessenberg form in place; returns the accumulated
/// unitary factor when requested.
fn hessenberg(a: &mut CMatrix, want_q: bool) -> Option<CMatrix> {
    let n = a.rows();
    let mut q = want_q.then(|| CMatrix::identity(n));
    if n < 3 {
        return q;
    }
    let mut v = vec![C64::zero(); n];
    let mut w = vec![C64::zero(); n];
    for j in 0..n - 2 {
        let len = n - j - 1;
        let x: Vec<C64> = (0..len).map(|i| a[(j + 1 + i, j)]).collect();
        let norm = vec_norm(&x);
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if norm == 0.0 || tail == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let beta = -phase * norm;
        v[..len].copy_from_slice(&x);
        v[0] = x0 - beta;
        let tau = 2.0 / vec_norm(&v[..len]).powi(2);

        for col in j..n {
            let column = a.column_mut(col);
            let mut s = C64::zero();
            for i in 0..len {
                s += v[i].conj() * column[j + 1 + i];
            }
            if s.is_zero() {
                continue;
            }
            let s = s * tau;
            for i in 0..len {
                column[j + 1 + i] -= v[i] * s;
            }
        }
        apply_right(a, &v[..len], tau, j + 1, &mut w);
        if let Some(q) = q.as_mut() {
            apply_right(q, &v[..len], tau, j + 1, &mut w);
        }
        a[(j + 1, j)] = beta;
        for i in j + 2..n {
            a[(i, j)] = C64::zero();
        }
    }
    q
}

/// `M <- M (I - tau v v^H)` acting on columns `offset..offset+len`.
fn apply_right(m: &mut CMatrix, v: &[C64], tau: f64, offset: usize, w: &mut [C64]) {
    let rows = m.rows();
    w[..rows].iter_mut().for_each(|x| *x = C64::zero());
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (wr, a) in w.iter_mut().zip(m.column(offset + i)) {
            *wr += a * vi;
        }
    }
    for (i, vi) in v.iter().enumerate() {
        let f = vi.conj() * tau;
        if f.is_zero() {
            continue;
        }
        for (a, wr) in m.column_mut(offset + i).iter_mut().zip(w.iter()) {
            *a -= wr * f;
        }
    }
}

/// Rotation `[c s; -conj(s) c]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: C64, y: C64) -> (f64, C64, C64) {
    if y.is_zero() {
        return (1.0, C64::zero(), x);
    }
    let ny = y.norm();
    if x.is_zero() {
        return (0.0, y.conj() / ny, C64::new(ny, 0.0));
    }
    let nx = x.norm();
    let r = nx.hypot(ny);
    let alpha = x / nx;
    (nx / r, alpha * y.conj() / r, alpha * r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (m1, m2) = (mid + disc, mid - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Shifted QR on a Hessenberg matrix. With `want_t` the full triangular
/// factor is maintained and rotations are accumulated into `z`.
fn hessenberg_qr(h: &mut CMatrix, mut z: Option<&mut CMatrix>, want_t: bool) -> Result<()> {
    let n = h.rows();
    if n == 0 {
        return Ok(());
    }
    let ulp = f64::EPSILON;
    let smlnum = f64::MIN_POSITIVE * (n as f64 / ulp);
    let itmax = 30 * n.max(10);
    let mut total = 0usize;
    let mut ihi = n - 1;
    loop {
        let mut its = 0usize;
        loop {
            let mut l = ihi;
            while l > 0 {
                let sub = h[(l, l - 1)];
                if cabs1(sub) <= smlnum {
                    break;
                }
                let mut tst = cabs1(h[(l - 1, l - 1)]) + cabs1(h[(l, l)]);
                if tst == 0.0 {
                    if l >= 2 {
                        tst += cabs1(h[(l - 1, l - 2)]);
                    }
                    if l < ihi {
                        tst += cabs1(h[(l + 1, l)]);
                    }
                }
                if cabs1(sub) <= ulp * tst {
                    let ab = cabs1(sub).max(cabs1(h[(l - 1, l)]));
                    let ba = cabs1(sub).min(cabs1(h[(l - 1, l)]));
                    let diff = h[(l - 1, l - 1)] - h[(l, l)];
                    let aa = cabs1(h[(l, l)]).max(cabs1(diff));
                    let bb = cabs1(h[(l, l)]).min(cabs1(diff));
                    let s = aa + ab;
                    if ba * (ab / s) <= smlnum.max(ulp * (bb * (aa / s))) {
                        break;
                    }
                }
                l -= 1;
            }
            if l > 0 {
                h[(l, l - 1)] = C64::zero();
            }
            if l >= ihi {
                break;
            }
            its += 1;
            total += 1;
            if total > itmax {
                return Err(Error::ConvergenceFailure {
                    size: n,
                    reason: format!(
                        "QR iteration limit reached with {} eigenvalues left",
                        ihi + 1
                    ),
                });
            }
            let shift = if its.is_multiple_of(10) {
                h[(ihi, ihi)] + 0.75 * cabs1(h[(ihi, ihi - 1)])
            } else if its % 10 == 5 {
                h[(l, l)] + 0.75 * cabs1(h[(l + 1, l)])
            } else {
                wilkinson_shift(
                    h[(ihi - 1, ihi - 1)],
                    h[(ihi - 1, ihi)],
                    h[(ihi, ihi - 1)],
                    h[(ihi, ihi)],
                )
            };
            let jend = if want_t { n - 1 } else { ihi };
            let istart = if want_t { 0 } else { l };
            for k in l..ihi {
                let (x, y) = if k == l {
                    (h[(l, l)] - shift, h[(l + 1, l)])
                } else {
                    (h[(k, k - 1)], h[(k + 1, k - 1)])
                };
                let (c, s, r) = givens(x, y);
                if k > l {
                    h[(k, k - 1)] = r;
                    h[(k + 1, k - 1)] = C64::zero();
                }
                for j in k..=jend {
                    let (a, b) = (h[(k, j)], h[(k + 1, j)]);
                    h[(k, j)] = a * c + s * b;
                    h[(k + 1, j)] = b * c - s.conj() * a;
                }
                let sc = s.conj();
                for i in istart..=(k + 2).min(ihi) {
                    let (a, b) = (h[(i, k)], h[(i, k + 1)]);
                    h[(i, k)] = a * c + b * sc;
                    h[(i, k + 1)] = b * c - a * s;
                }
                if let Some(z) = z.as_deref_mut() {
                    for i in 0..n {
                        let (a, b) = (z[(i, k)], z[(i, k + 1)]);
                        z[(i, k)] = a * c + b * sc;
                        z[(i, k + 1)] = b * c - a * s;
                    }
                }
            }
        }
        if ihi == 0 {
            return Ok(());
        }
        ihi -= 1;
    }
}

/// Eigenvectors of an upper triangular matrix, mapped back through `z`.
fn triangular_vectors(t: &CMatrix, z: &CMatrix) -> CMatrix {
    let n = t.rows();
    let tnorm = t.max_abs().max(f64::MIN_POSITIVE);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE * n as f64 / f64::EPSILON);
    let mut out = CMatrix::zeros(n, n);
    let mut y = vec![C64::zero(); n];
    for k in 0..n {
        let lambda = t[(k, k)];
        y.iter_mut().for_each(|v| *v = C64::zero());
        y[k] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut s = C64::zero();
            for (i, yi) in y.iter().enumerate().take(k + 1).skip(j + 1) {
                s += t[(j, i)] * yi;
            }
            let mut d = t[(j, j)] - lambda;
            if d.norm() < smin {
                d = C64::new(smin, 0.0);
            }
            y[j] = -s / d;
            if y[j].norm() > 1e100 {
                let f = 1.0 / y[j].norm();
                y.iter_mut().take(k + 1).for_each(|v| *v *= f);
            }
        }
        let col = out.column_mut(k);
        for (i, yi) in y.iter().enumerate().take(k + 1) {
            if yi.is_zero() {
                continue;
            }
            for (o, zz) in col.iter_mut().zip(z.column(i)) {
                *o += zz * yi;
            }
        }
    }
    out
}

/// All eigenvalues of a square complex matrix, and optionally eigenvectors.
pub fn eigen_general(a: &CMatrix, want_vectors: bool) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::Invalid("eigenproblem needs a square matrix".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: want_vectors.then(|| CMatrix::zeros(0, 0)),
        });
    }
    if a.max_abs().is_nan() || a.max_abs().is_infinite() {
        return Err(Error::Invalid("matrix has non-finite entries".into()));
    }
    let (mut h, scale) = balance(a);
    let mut q = hessenberg(&mut h, want_vectors);
    hessenberg_qr(&mut h, q.as_mut(), want_vectors)?;
    let values: Vec<C64> = (0..n).map(|i| h[(i, i)]).collect();
    let vectors = q.map(|q| {
        let mut v = triangular_vectors(&h, &q);
        for k in 0..n {
            let col = v.column_mut(k);
            for (x, s) in col.iter_mut().zip(&scale) {
                *x *= *s;
            }
            let nrm = vec_norm(col);
            if nrm > 0.0 {
                col.iter_mut().for_each(|x| *x /= nrm);
            }
        }
        v
    });
    Ok(EigenDecomposition { values, vectors })
}
