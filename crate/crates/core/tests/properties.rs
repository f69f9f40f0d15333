//! Randomised invariants of weights, adjoints, symmetric expressions and spectra.

mod common;

use std::time::Instant;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weighted_hardy::algebra::{
    adjoint, d_regularity, fredholm_index, is_formally_symmetric, leading_adjoint_coeff,
    symmetric_decomposition, symmetric_with_leading, DiffExpr, Poly,
};
use weighted_hardy::hardy::inner_product;
use weighted_hardy::oracles::{
    adjoint_matrix_oracle, first_order_eigenfunction, periodic_embedding_check, FirstOrderSpec,
};
use weighted_hardy::spectral::{
    assemble_hardy_matrix, converged_spectrum, eigenvalues, section_hermitian_defect, tau_and_c1,
};
use weighted_hardy::{HardyElement, WeightSequence, C64, CQ};

use common::*;

const SIGMAS: [(i64, i64); 5] = [(1, 3), (1, 2), (1, 1), (2, 1), (5, 1)];

fn sigma_of(rng: &mut StdRng) -> BigRational {
    let (p, q) = SIGMAS[rng.gen_range(0..SIGMAS.len())];
    rat(p, q)
}

fn random_element(rng: &mut StdRng, len: usize) -> HardyElement<C64> {
    HardyElement::new(
        (0..len)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

fn random_disc_point(rng: &mut StdRng, lo: f64, hi: f64) -> C64 {
    C64::from_polar(
        rng.gen_range(lo..hi),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Rational point strictly inside the disc of radius 4/5.
fn random_inner_rational(rng: &mut StdRng) -> CQ {
    loop {
        let z = cq(rat(rng.gen_range(-4..=4), 5), rat(rng.gen_range(-4..=4), 5));
        if z.norm_sqr() <= rat(16, 25) && !z.is_zero() {
            return z;
        }
    }
}

/// Symmetric first-order expression with R-symmetric leading coefficient
/// `c1 rho(z)` and a real constant term.
fn r_symmetric_first_order(rng: &mut StdRng, w: &WeightSequence<BigRational>) -> DiffExpr<CQ> {
    let z1 = random_inner_rational(rng);
    let mag = z1.norm_sqr();
    let rho = Poly::new(vec![
        z1.clone(),
        cq(-(mag + rat(1, 1)), rat(0, 1)),
        z1.conj(),
    ]);
    let mut c1 = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    if c1.is_zero() {
        c1 = rat(1, 1);
    }
    let lead = rho.scale(&cq(c1, rat(0, 1)));
    let l = symmetric_with_leading(&lead, 1, w).unwrap();
    &l + &DiffExpr::multiplication(Poly::constant(cq(small_rational(rng), rat(0, 1))))
}

#[test]
fn weight_recursion_holds_exactly_to_ten_thousand() {
    let start = Instant::now();
    for (p, q) in SIGMAS {
        let w = WeightSequence::new(rat(p, q)).unwrap();
        let mut prev = w.beta_squared(0);
        assert_eq!(prev, rat(1, 1));
        // beta_(n+1)^2 (q n + p) = beta_n^2 q (n + 1), compared on cross-multiplied integers.
        for n in 0..10_000i64 {
            let next = w.beta_squared(n as usize + 1);
            let lhs = next.numer() * BigInt::from(q * n + p) * prev.denom();
            let rhs = prev.numer() * BigInt::from(q * (n + 1)) * next.denom();
            assert_eq!(lhs, rhs, "sigma={p}/{q}, n={n}");
            prev = next;
        }
    }
    let elapsed = start.elapsed();
    println!("exact weights to 10^4 for 5 parameters: {elapsed:.2?}");
    assert!(elapsed.as_secs() < 60);
}

#[test]
fn unit_and_bergman_weights() {
    let one = weights(1, 1);
    let two = weights(2, 1);
    for n in 0..200 {
        assert_eq!(one.beta_squared(n), rat(1, 1));
        assert_eq!(two.beta_squared(n), rat(1, n as i64 + 1));
    }
}

#[test]
fn degree_bound_violation_is_rejected() {
    let w = weights(2, 1);
    let l = DiffExpr::new(vec![Poly::zero(), Poly::monomial(qi(1, 0), 3)]);
    assert!(matches!(
        adjoint(&l, &w),
        Err(weighted_hardy::Error::NotInAlgebra(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_is_bounded(seed in any::<u64>(), len in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma).unwrap().to_floating();
        let f = random_element(&mut rng, len);
        let mut shifted = vec![C64::zero()];
        shifted.extend_from_slice(f.coeffs());
        let zf = HardyElement::new(shifted);
        prop_assert!(zf.norm(&w) <= w.multiplier_norm_bound() * f.norm(&w) * (1.0 + 1e-12));
    }

    #[test]
    fn cauchy_schwarz(seed in any::<u64>(), len in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma).unwrap().to_floating();
        let f = random_element(&mut rng, len);
        let g = random_element(&mut rng, len);
        let ip = inner_product(&w, &f, &g).norm();
        prop_assert!(ip <= f.norm(&w) * g.norm(&w) * (1.0 + 1e-12));
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), count in 1usize..=2) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, expected) = random_product(&mut rng, &sigma, count);
        let star = adjoint(&l, &w).unwrap();
        prop_assert_eq!(&star, &expected);
        prop_assert_eq!(adjoint(&star, &w).unwrap(), l);
    }

    #[test]
    fn adjoint_reverses_products_and_is_conjugate_linear(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, 1);
        let (m, _) = random_product(&mut rng, &sigma, 1);
        let c = small_complex(&mut rng);
        let (ls, ms) = (adjoint(&l, &w).unwrap(), adjoint(&m, &w).unwrap());
        prop_assert_eq!(adjoint(&l.compose(&m), &w).unwrap(), ms.compose(&ls));
        prop_assert_eq!(adjoint(&(&l + &m), &w).unwrap(), &ls + &ms);
        prop_assert_eq!(adjoint(&l.scale(&c), &w).unwrap(), ls.scale(&c.conj()));
    }

    #[test]
    fn adjoint_stays_in_the_algebra(seed in any::<u64>(), count in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, count);
        let star = adjoint(&l, &w).unwrap();
        prop_assert!(star.check_degree_bound().is_ok());
        prop_assert!(star.order() <= l.order());
    }

    #[test]
    fn leading_roots_reflect(seed in any::<u64>(), order in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let degree = rng.gen_range(1..=2 * order);
        let roots: Vec<C64> = (0..degree).map(|_| random_disc_point(&mut rng, 0.3, 3.0)).collect();
        let p = Poly::from_roots(C64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)), &roots);
        let q = leading_adjoint_coeff(&p, order).unwrap();
        for r in &roots {
            let image = C64::new(1.0, 0.0) / r.conj();
            let value = q.eval_c64(image).norm();
            let scale: f64 = q.coeffs().iter().enumerate().map(|(j, c)| c.norm() * image.norm().powi(j as i32)).sum();
            prop_assert!(value <= 1e-10 * scale, "root {r} reflected to {image}: |q| = {value}");
        }
        for j in 0..2 * order - degree {
            prop_assert!(q.coeff(j).is_zero());
        }
    }

    #[test]
    fn symmetric_leading_is_palindromic(seed in any::<u64>(), order in 0usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let (l, _) = random_symmetric(&mut rng, order, &w);
        let lead = l.coeff(order);
        for j in 0..=2 * order {
            prop_assert_eq!(lead.coeff(j), lead.coeff(2 * order - j).conj());
        }
        prop_assert!(lead.coeff(order).im.is_zero());
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>(), order in 0usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let (l, rows) = random_symmetric(&mut rng, order, &w);
        let dec = symmetric_decomposition(&l, &w).unwrap();
        prop_assert_eq!(dec.rows(), rows.as_slice());
        prop_assert_eq!(dec.reconstruct(&w).unwrap(), l);
    }

    #[test]
    fn symmetrised_expressions_are_symmetric(seed in any::<u64>(), count in 1usize..=2) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, count);
        let star = adjoint(&l, &w).unwrap();
        prop_assert!(is_formally_symmetric(&(&l + &star), &w));
        prop_assert!(is_formally_symmetric(&star.compose(&l), &w));
    }

    #[test]
    fn regular_symmetric_expressions_have_index_zero(seed in any::<u64>(), order in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let (l, _) = random_symmetric(&mut rng, order, &w);
        if d_regularity(&l).unwrap().is_regular {
            prop_assert_eq!(fredholm_index(&l).unwrap(), 0);
        }
    }

    #[test]
    fn hardy_matrix_is_banded(seed in any::<u64>(), count in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, count);
        let a = assemble_hardy_matrix(&l, &w, 24).unwrap();
        prop_assert_eq!(a.band_violation(), 0.0);
    }

    #[test]
    fn adjoint_matrix_is_conjugate_transpose(seed in any::<u64>(), count in 1usize..=2) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, count);
        let star = adjoint(&l, &w).unwrap();
        let a = assemble_hardy_matrix(&l, &w, 20).unwrap();
        let b = assemble_hardy_matrix(&star, &w, 20).unwrap();
        let ah = a.entries().conj_transpose();
        let scale = a.entries().max_abs().max(1.0);
        for n in 0..=20 {
            for k in 0..=20 {
                let d = (b.entries()[(n, k)] - ah[(n, k)]).norm();
                prop_assert!(d <= 1e-12 * scale, "entry ({n}, {k}) differs by {d}");
            }
        }
    }

    #[test]
    fn adjoint_matrix_oracle_is_exact(seed in any::<u64>(), count in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = sigma_of(&mut rng);
        let w = WeightSequence::new(sigma.clone()).unwrap();
        let (l, _) = random_product(&mut rng, &sigma, count);
        let report = adjoint_matrix_oracle(&l, &w, 12).unwrap();
        prop_assert!(report.exact);
        prop_assert_eq!(report.max_defect, 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_sections_are_hermitian_with_real_spectrum(seed in any::<u64>(), order in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let (l, _) = random_symmetric(&mut rng, order, &w);
        prop_assert_eq!(section_hermitian_defect(&l, &w, 24), 0.0);
        let a = assemble_hardy_matrix(&l, &w, 24).unwrap();
        prop_assert!(a.is_hermitian());
        let vals = eigenvalues(&a).unwrap();
        prop_assert!(vals.iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn first_order_spacing_matches_growth_constants(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let l = r_symmetric_first_order(&mut rng, &w);
        let tau = tau_and_c1(&l.coeff(1), 1).unwrap();
        let report = converged_spectrum(&l, &w, 6, 1e-10).unwrap();
        let step = tau.c1 / tau.tau;
        for pair in report.eigenvalues.windows(2) {
            let d = pair[1] - pair[0];
            prop_assert!((d - C64::new(step, 0.0)).norm() <= 1e-8 * (1.0 + step.abs()),
                "spacing {d} against C1/τ = {step}");
        }
        // The spectrum runs off in the direction of the sign of C1.
        prop_assert!(report.eigenvalues[5].re * tau.c1.signum() > report.eigenvalues[0].re * tau.c1.signum());
    }

    #[test]
    fn eigenvectors_are_smooth(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let l = r_symmetric_first_order(&mut rng, &w);
        let report = converged_spectrum(&l, &w, 4, 1e-10).unwrap();
        for x in &report.eigenvectors {
            let weighted: Vec<f64> = x
                .iter()
                .enumerate()
                .map(|(n, v)| (1.0 + (n as f64).powi(2)) * v.norm_sqr())
                .collect();
            let total: f64 = weighted.iter().sum();
            let from = weighted.len() - weighted.len() / 10;
            let tail: f64 = weighted[from..].iter().sum();
            prop_assert!(tail < 1e-4 * total, "tail {tail:e} of {total:e}");
        }
    }

    #[test]
    fn periodic_spectrum_contains_hardy_spectrum(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = WeightSequence::new(sigma_of(&mut rng)).unwrap();
        let l = r_symmetric_first_order(&mut rng, &w);
        let report = periodic_embedding_check(&l, &w, 4, 1e-6).unwrap();
        prop_assert!(report.contained(), "max distance {}", report.max_distance());
    }
}

fn random_spec(rng: &mut StdRng) -> FirstOrderSpec {
    let (p, q) = SIGMAS[rng.gen_range(0..SIGMAS.len())];
    FirstOrderSpec {
        a2: random_disc_point(rng, 0.5, 2.0),
        z1: random_disc_point(rng, 0.0, 0.6),
        z2: random_disc_point(rng, 1.5, 3.0),
        b0: C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        sigma: p as f64 / q as f64,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn engine_agrees_with_closed_form(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = random_spec(&mut rng);
        let w = WeightSequence::new(spec.sigma).unwrap();
        let l = spec.expression();
        prop_assert_eq!(FirstOrderSpec::from_expression(&l, spec.sigma).map(|s| s.sigma), Some(spec.sigma));
        let report = converged_spectrum(&l, &w, 5, 1e-9).unwrap();
        for (n, z) in report.eigenvalues.iter().enumerate() {
            let exact = spec.eigenvalue(n);
            prop_assert!((z - exact).norm() <= 1e-8 * (1.0 + exact.norm()), "n={n}: {z} against {exact}");
        }
    }

    #[test]
    fn eigenfunction_residuals_shrink(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = random_spec(&mut rng);
        let w = WeightSequence::new(spec.sigma).unwrap();
        let residuals: Vec<f64> = [16, 32, 64, 128]
            .iter()
            .map(|&t| first_order_eigenfunction(&spec, n, t, &w).unwrap().residual.unwrap())
            .collect();
        for pair in residuals.windows(2) {
            prop_assert!(pair[1] < pair[0] || pair[1] < 1e-13, "{residuals:?}");
        }
    }
}
