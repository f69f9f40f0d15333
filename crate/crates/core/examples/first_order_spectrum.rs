//! Converged spectrum of a first-order operator against its closed form,
//! with Taylor coefficients of the eigenfunctions.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{DiffExpr, Poly};
use weighted_hardy::oracles::{first_order_eigenfunction, FirstOrderSpec};
use weighted_hardy::spectral::{converged_spectrum, tau_and_c1};
use weighted_hardy::{WeightSequence, CQ};

fn q(p: i64, d: i64) -> CQ {
    Complex::new(
        BigRational::new(p.into(), d.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    // (z^2/2 - 5z/4 + 1/2) D + z, symmetric for sigma = 2.
    let l = DiffExpr::new(vec![
        Poly::new(vec![q(0, 1), q(1, 1)]),
        Poly::new(vec![q(1, 2), q(-5, 4), q(1, 2)]),
    ]);
    let w = WeightSequence::parse("2")?;
    let report = converged_spectrum(&l, &w, 12, 1e-10)?;
    println!(
        "truncations {:?}, Hermitian path: {}",
        report.truncations_used, report.hermitian
    );
    let spec = FirstOrderSpec::from_expression(&l, 2.0).expect("first-order form");
    for (n, z) in report.eigenvalues.iter().enumerate() {
        println!(
            "n = {n:2}: {:+.12}  closed form {:+.12}",
            z.re,
            spec.eigenvalue(n).re
        );
    }

    let tau = tau_and_c1(&l.coeff(1), 1)?;
    println!(
        "tau = {:.12}, C1 = {:.6}, C1/tau = {:.12}",
        tau.tau,
        tau.c1,
        tau.c1 / tau.tau
    );

    let wf = w.to_floating();
    for terms in [8, 16, 32, 64] {
        let ef = first_order_eigenfunction(&spec, 3, terms, &wf)?;
        println!(
            "eigenfunction n = 3 with {terms:2} terms: residual {:.3e}",
            ef.residual.unwrap_or(0.0)
        );
    }
    Ok(())
}
