//! D-regularity and the Fredholm index from the roots of the leading coefficient.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{d_regularity, fredholm_index, DiffExpr, Poly};
use weighted_hardy::CQ;

fn q(p: i64, d: i64) -> CQ {
    Complex::new(
        BigRational::new(p.into(), d.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    let cases = [
        ("D", DiffExpr::<CQ>::derivative()),
        (
            "z^2 D",
            DiffExpr::new(vec![Poly::zero(), Poly::monomial(q(1, 1), 2)]),
        ),
        (
            "(z - 1/2)(z - 3) D",
            DiffExpr::new(vec![
                Poly::zero(),
                Poly::from_roots(q(1, 1), &[q(1, 2), q(3, 1)]),
            ]),
        ),
        ("(zD)^3", DiffExpr::<CQ>::euler().pow(3)),
        (
            "(z^2 + 1) D",
            DiffExpr::new(vec![
                Poly::zero(),
                Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]),
            ]),
        ),
    ];
    for (name, l) in cases {
        let report = d_regularity(&l)?;
        match fredholm_index(&l) {
            Ok(index) => println!(
                "{name:>20}: index {index} ({} inner roots, distance to circle {:.3})",
                report.inner_roots, report.circle_distance
            ),
            Err(e) => println!("{name:>20}: {e}"),
        }
    }
    Ok(())
}
