//! Growth constants of a second-order spectrum: tau by quadrature, the fitted
//! shift C2, and the remainder envelope.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{DiffExpr, Poly};
use weighted_hardy::spectral::{asymptotic_fit, converged_spectrum, tau_and_c1};
use weighted_hardy::{WeightSequence, CQ};

fn q(v: i64) -> CQ {
    Complex::new(
        BigRational::from_integer(v.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    // 3 (zD)^2 + z D^2 + (z^2 D + 2z)(zD) at sigma = 2.
    let l = DiffExpr::new(vec![
        Poly::zero(),
        Poly::new(vec![q(0), q(3), q(3)]),
        Poly::new(vec![q(0), q(1), q(3), q(1)]),
    ]);
    let w = WeightSequence::parse("2")?;
    let tau = tau_and_c1(&l.coeff(2), 2)?;
    println!(
        "tau = {:.12} (quadrature error {:.1e}), C1 = {:.6}, P ranges over [{:.4}, {:.4}]",
        tau.tau, tau.quadrature_error, tau.c1, tau.p_min, tau.p_max
    );

    let report = converged_spectrum(&l, &w, 80, 1e-9)?;
    println!(
        "{} eigenvalues, truncations {:?}",
        report.len(),
        report.truncations_used
    );
    let fit = asymptotic_fit(&report.eigenvalues, 2, tau.tau, tau.c1)?;
    println!("C2 = {:.8}, fitted tau = {:.12}", fit.c2.re, fit.fitted_tau);
    println!(
        "R = {:.4e} over {:?}, growth slope of the remainder {:.3}",
        fit.remainder_bound, fit.range, fit.growth_slope
    );
    for n in [10, 20, 40, 79] {
        let model = tau.c1 * (n as f64 / tau.tau + fit.c2.re).powi(2);
        println!(
            "n = {n:2}: lambda = {:.6}, model = {:.6}",
            report.eigenvalues[n].re, model
        );
    }
    Ok(())
}
