use num::Zero;

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::{eigen_general, CMatrix};
use crate::scalar::{Scalar, C64};

/// Roots closer than this (relative to `max(1, |z|)`) are reported as one root.
pub const ROOT_CLUSTER_TOL: f64 = 1e-8;

/// A root with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: C64,
    pub multiplicity: usize,
}

/// Roots of a polynomial with multiplicities; nonzero constants have none.
///
/// Exact zero low-order coefficients give an exact root at the origin.
/// The rest come from the companion matrix, polished by Newton steps.
pub fn poly_roots<S: Scalar>(p: &Poly<S>) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero polynomial has no root set".into(),
        ));
    }
    let coeffs: Vec<C64> = p.coeffs().iter().map(Scalar::to_c64).collect();
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let rest = Poly::new(coeffs[zeros..].to_vec());
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(Root {
            value: C64::zero(),
            multiplicity: zeros,
        });
    }
    let deg = rest.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(roots);
    }
    let lead = rest.coeff(deg);
    let mut raw: Vec<C64> = if deg == 1 {
        vec![-rest.coeff(0) / lead]
    } else {
        let companion = CMatrix::from_fn(deg, deg, |i, j| {
            if j == deg - 1 {
                -rest.coeff(i) / lead
            } else if i == j + 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::zero()
            }
        });
        eigen_general(&companion, false)?.values
    };
    let deriv = rest.derivative();
    for z in raw.iter_mut() {
        *z = newton_polish(&rest, &deriv, *z);
    }
    roots.extend(cluster(&rest, raw));
    Ok(roots)
}

/// Roots repeated according to multiplicity.
pub fn flatten_roots(roots: &[Root]) -> Vec<C64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect()
}

fn newton_polish(p: &Poly<C64>, dp: &Poly<C64>, mut z: C64) -> C64 {
    let mut fz = p.eval(&z).norm();
    for _ in 0..30 {
        let d = dp.eval(&z);
        if d.is_zero() {
            break;
        }
        let step = p.eval(&z) / d;
        let cand = z - step;
        let fc = p.eval(&cand).norm();
        if !(fc < fz) {
            break;
        }
        z = cand;
        fz = fc;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Groups nearby computed roots. Loose groups of size `m` that are well
/// explained by a single root of multiplicity `m` (a root of `p^(m-1)` with
/// residual no worse than the members') are collapsed first.
fn cluster(p: &Poly<C64>, raw: Vec<C64>) -> Vec<Root> {
    let mut used = vec![false; raw.len()];
    let mut out: Vec<Root> = Vec::new();
    for i in 0..raw.len() {
        if used[i] {
            continue;
        }
        let loose = 1e-4 * raw[i].norm().max(1.0);
        let group: Vec<usize> = (i..raw.len())
            .filter(|&j| !used[j] && (raw[j] - raw[i]).norm() <= loose)
            .collect();
        if group.len() > 1 {
            let m = group.len();
            let mean = group.iter().map(|&j| raw[j]).sum::<C64>() / m as f64;
            let dm = p.nth_derivative(m - 1);
            let center = newton_polish(&dm, &dm.derivative(), mean);
            let worst = group
                .iter()
                .map(|&j| p.eval(&raw[j]).norm())
                .fold(0.0, f64::max);
            let scale: f64 = p.coeffs().iter().map(|c| c.norm()).sum::<f64>()
                * center.norm().max(1.0).powi(p.degree().unwrap_or(0) as i32);
            if p.eval(&center).norm() <= 10.0 * worst + f64::EPSILON * scale {
                for &j in &group {
                    used[j] = true;
                }
                out.push(Root {
                    value: center,
                    multiplicity: m,
                });
                continue;
            }
        }
        let tight = ROOT_CLUSTER_TOL * raw[i].norm().max(1.0);
        let members: Vec<usize> = (i..raw.len())
            .filter(|&j| !used[j] && (raw[j] - raw[i]).norm() <= tight)
            .collect();
        let value = members.iter().map(|&j| raw[j]).sum::<C64>() / members.len() as f64;
        for &j in &members {
            used[j] = true;
        }
        out.push(Root {
            value,
            multiplicity: members.len(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn simple_quadratic() {
        let p = Poly::new(vec![c(1.5), c(-3.5), c(1.0)]);
        let mut r = flatten_roots(&poly_roots(&p).unwrap());
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(0.5)).norm() < 1e-14);
        assert!((r[1] - c(3.0)).norm() < 1e-14);
    }

    #[test]
    fn exact_zero_roots() {
        let p = Poly::new(vec![c(0.0), c(0.0), c(1.0)]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(
            r,
            vec![Root {
                value: c(0.0),
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn double_root_is_merged() {
        let p = Poly::from_roots(c(2.0), &[c(0.5), c(0.5), c(-3.0)]);
        let r = poly_roots(&p).unwrap();
        let double = r.iter().find(|x| x.multiplicity == 2).expect("double root");
        assert!((double.value - c(0.5)).norm() < 1e-10);
        assert_eq!(r.iter().map(|x| x.multiplicity).sum::<usize>(), 3);
    }

    #[test]
    fn close_distinct_roots_stay_apart() {
        let p = Poly::from_roots(c(1.0), &[c(0.5), c(0.5 + 1e-6)]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            poly_roots(&Poly::<C64>::zero()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(poly_roots(&Poly::constant(c(3.0))).unwrap().is_empty());
    }
}
