//! Formally symmetric expressions: the l_(n,r) family, expansion into
//! symmetric pieces, and construction from a leading coefficient.

use num::{BigRational, Complex};
use weighted_hardy::algebra::{
    is_formally_symmetric, stork_expression, symmetric_decomposition, symmetric_with_leading, Poly,
};
use weighted_hardy::{WeightSequence, CQ};

fn q(re: i64, im: i64) -> CQ {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

fn main() -> weighted_hardy::Result<()> {
    let w2 = WeightSequence::parse("2")?;
    let w1 = WeightSequence::parse("1")?;
    for (n, r) in [(1, 0), (1, 1), (2, 1), (3, 2)] {
        let l = stork_expression(n, r, &q(2, -3))?;
        println!(
            "l_({n},{r}) = {l}\n  symmetric at sigma=2: {}, at sigma=1: {}",
            is_formally_symmetric(&l, &w2),
            is_formally_symmetric(&l, &w1)
        );
    }

    let l = stork_expression(2, 2, &q(1, 1))?;
    let dec = symmetric_decomposition(&l, &w2)?;
    for (n, r, c) in dec.terms() {
        println!("c_({n},{r}) = {c}");
    }
    println!("reconstruction exact: {}", dec.reconstruct(&w2)? == l);

    // 3 + 2 cos(theta) after z = e^(i theta): z^2 + 3z + 1.
    let lead = Poly::new(vec![q(1, 0), q(3, 0), q(1, 0)]);
    let built = symmetric_with_leading(&lead, 1, &w2)?;
    println!("symmetric with leading z^2 + 3z + 1: {built}");
    println!("  symmetric: {}", is_formally_symmetric(&built, &w2));
    Ok(())
}
