//! Exact formal adjoints and their agreement with the conjugate-transposed matrix.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{adjoint, DiffExpr, Poly};
use weighted_hardy::oracles::adjoint_matrix_oracle;
use weighted_hardy::{WeightSequence, CQ};

fn q(p: i64, d: i64) -> CQ {
    Complex::new(
        BigRational::new(p.into(), d.into()),
        BigRational::from_integer(0.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    let d = DiffExpr::<CQ>::derivative();
    let euler = DiffExpr::<CQ>::euler();
    for sigma in ["1/3", "1", "2"] {
        let w = WeightSequence::parse(sigma)?;
        println!("sigma = {sigma}");
        println!("  adjoint(D)  = {}", adjoint(&d, &w)?);
        println!("  adjoint(zD) = {}", adjoint(&euler, &w)?);
    }

    // (z - 1/2) D + 1/3 at sigma = 1/3, and its product with D.
    let w = WeightSequence::parse("1/3")?;
    let l = DiffExpr::new(vec![
        Poly::constant(q(1, 3)),
        Poly::new(vec![q(-1, 2), q(1, 1)]),
    ]);
    let l_star = adjoint(&l, &w)?;
    println!("L  = {l}");
    println!("L+ = {l_star}");
    println!("(L+)+ == L: {}", adjoint(&l_star, &w)? == l);

    let product = l.compose(&d);
    let reversed = adjoint(&d, &w)?.compose(&l_star);
    println!("(L D)+ == D+ L+: {}", adjoint(&product, &w)? == reversed);

    let report = adjoint_matrix_oracle(&product, &w, 16)?;
    println!(
        "matrix check on the 17x17 section: exact = {}, max defect = {}",
        report.exact, report.max_defect
    );
    Ok(())
}
