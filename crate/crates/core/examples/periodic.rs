//! Hardy-space eigenvalues reappear in the Fourier truncation of the same expression.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{DiffExpr, Poly};
use weighted_hardy::oracles::periodic_embedding_check;
use weighted_hardy::{WeightSequence, CQ};

fn q(p: i64, d: i64) -> CQ {
    Complex::new(
        BigRational::new(p.into(), d.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    let l = DiffExpr::new(vec![
        Poly::zero(),
        Poly::new(vec![q(0, 1), q(3, 1), q(3, 1)]),
        Poly::new(vec![q(0, 1), q(1, 1), q(3, 1), q(1, 1)]),
    ]);
    let w = WeightSequence::parse("2")?;
    let report = periodic_embedding_check(&l, &w, 10, 1e-6)?;
    println!("Fourier modes -{0}..{0}", report.max_mode);
    for (n, (z, d)) in report
        .hardy
        .eigenvalues
        .iter()
        .zip(&report.distances)
        .enumerate()
    {
        println!(
            "n = {n}: hardy {:12.6}, nearest periodic {:12.6}, distance {d:.1e}",
            z.re, report.nearest[n].re
        );
    }
    println!("contained: {}", report.contained());
    Ok(())
}
