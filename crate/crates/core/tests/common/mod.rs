#![allow(dead_code)]

use num::{BigRational, Complex};
use rand::rngs::StdRng;
use rand::Rng;
use weighted_hardy::algebra::{DiffExpr, Poly};
use weighted_hardy::{WeightSequence, C64, CQ};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn cq(re: BigRational, im: BigRational) -> CQ {
    Complex::new(re, im)
}

pub fn qi(re: i64, im: i64) -> CQ {
    cq(rat(re, 1), rat(im, 1))
}

pub fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn weights(p: i64, q: i64) -> WeightSequence<BigRational> {
    WeightSequence::new(rat(p, q)).unwrap()
}

/// `(a2 z^2 + a1 z + a0) D + sigma a2 z + b0`.
pub fn first_order_form(a2: CQ, a1: CQ, a0: CQ, b0: CQ, sigma: &BigRational) -> DiffExpr<CQ> {
    let lower = Poly::new(vec![b0, cq(a2.re.clone() * sigma, a2.im.clone() * sigma)]);
    DiffExpr::new(vec![lower, Poly::new(vec![a0, a1, a2])])
}

/// Adjoint of the first-order form written out coefficient by coefficient:
/// `(conj a0 z^2 + conj a1 z + conj a2) D + sigma conj(a0) z + conj(b0)`.
pub fn first_order_form_adjoint(
    a2: &CQ,
    a1: &CQ,
    a0: &CQ,
    b0: &CQ,
    sigma: &BigRational,
) -> DiffExpr<CQ> {
    let cj = |z: &CQ| z.conj();
    let lower = Poly::new(vec![
        cj(b0),
        cq(a0.re.clone() * sigma, -a0.im.clone() * sigma),
    ]);
    DiffExpr::new(vec![lower, Poly::new(vec![cj(a2), cj(a1), cj(a0)])])
}

pub fn small_rational(rng: &mut StdRng) -> BigRational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn small_complex(rng: &mut StdRng) -> CQ {
    cq(small_rational(rng), small_rational(rng))
}

/// A random first-order generator together with its closed-form adjoint.
pub fn random_generator(rng: &mut StdRng, sigma: &BigRational) -> (DiffExpr<CQ>, DiffExpr<CQ>) {
    let (a2, a1, a0, b0) = (
        small_complex(rng),
        small_complex(rng),
        small_complex(rng),
        small_complex(rng),
    );
    let adj = first_order_form_adjoint(&a2, &a1, &a0, &b0, sigma);
    (first_order_form(a2, a1, a0, b0, sigma), adj)
}

/// Product of `count` random generators, with the reversed product of the
/// generators' closed-form adjoints.
pub fn random_product(
    rng: &mut StdRng,
    sigma: &BigRational,
    count: usize,
) -> (DiffExpr<CQ>, DiffExpr<CQ>) {
    let mut l = DiffExpr::identity();
    let mut adj = DiffExpr::identity();
    for _ in 0..count {
        let (g, g_adj) = random_generator(rng, sigma);
        l = l.compose(&g);
        adj = g_adj.compose(&adj);
    }
    (l, adj)
}

/// Random exact symmetric expression of the given order, built from
/// `c_{n,r}` coefficients (real for `r = 0`), returned alongside.
pub fn random_symmetric(
    rng: &mut StdRng,
    order: usize,
    w: &WeightSequence<BigRational>,
) -> (DiffExpr<CQ>, Vec<Vec<CQ>>) {
    loop {
        let rows: Vec<Vec<CQ>> = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|r| {
                        if r == 0 {
                            cq(small_rational(rng), rat(0, 1))
                        } else {
                            small_complex(rng)
                        }
                    })
                    .collect()
            })
            .collect();
        if rows[order].iter().all(num::Zero::is_zero) {
            continue;
        }
        let mut l = DiffExpr::zero();
        for (n, row) in rows.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                let (b, b_adj) = weighted_hardy::algebra::b_expressions::<CQ>(n, r, w).unwrap();
                l = &l + &(&b.scale(c) + &b_adj.scale(&c.conj()));
            }
        }
        if l.order() != Some(order) {
            continue;
        }
        return (l, rows);
    }
}

/// `(0.5 z^2 - 1.25 z + 0.5) D + z`, symmetric at sigma = 2.
pub fn first_order_example() -> DiffExpr<CQ> {
    DiffExpr::new(vec![
        Poly::new(vec![qi(0, 0), qi(1, 0)]),
        Poly::new(vec![
            cq(rat(1, 2), rat(0, 1)),
            cq(rat(-5, 4), rat(0, 1)),
            cq(rat(1, 2), rat(0, 1)),
        ]),
    ])
}

/// `3 (zD)^2 + z D^2 + (z^2 D + 2z)(zD) = (z^3 + 3z^2 + z) D^2 + (3z^2 + 3z) D`.
pub fn second_order_example() -> DiffExpr<CQ> {
    DiffExpr::new(vec![
        Poly::zero(),
        Poly::new(vec![qi(0, 0), qi(3, 0), qi(3, 0)]),
        Poly::new(vec![qi(0, 0), qi(1, 0), qi(3, 0), qi(1, 0)]),
    ])
}
