//! Eigenvalue paths from a power of the Euler operator to a second-order operator.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{DiffExpr, Poly};
use weighted_hardy::spectral::homotopy_track;
use weighted_hardy::{WeightSequence, CQ};

fn q(v: i64) -> CQ {
    Complex::new(
        BigRational::from_integer(v.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    let l = DiffExpr::new(vec![
        Poly::zero(),
        Poly::new(vec![q(0), q(3), q(3)]),
        Poly::new(vec![q(0), q(1), q(3), q(1)]),
    ]);
    let w = WeightSequence::parse("2")?;
    let h = homotopy_track(&l, &w, 8, 32, 1e-9)?;
    println!(
        "{} paths, {} parameter values, start sign {}, largest jump {:.3} local gaps",
        h.count(),
        h.ts.len(),
        h.start_sign,
        h.max_jump_ratio
    );
    let last = h.ts.len() - 1;
    for (k, path) in h.paths.iter().enumerate() {
        println!(
            "path {k}: {:8.4} -> {:8.4} -> {:10.6}",
            path[0].re,
            path[last / 2].re,
            path[last].re
        );
    }
    Ok(())
}
