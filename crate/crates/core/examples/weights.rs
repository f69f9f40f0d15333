//! Weight sequences, norms and inner products in exact and floating arithmetic.

use num::BigRational;
use weighted_hardy::hardy::{inner_product, sobolev_norm};
use weighted_hardy::{HardyElement, WeightSequence, C64};

fn main() -> weighted_hardy::Result<()> {
    for sigma in ["1/3", "1", "2", "5"] {
        let w = WeightSequence::<BigRational>::parse(sigma)?;
        let first: Vec<String> = (0..5).map(|n| w.beta_squared(n).to_string()).collect();
        println!("sigma = {sigma}: beta_n^2 = {} ...", first.join(", "));
    }

    let w = WeightSequence::new(2.0)?;
    let f = HardyElement::new(vec![
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(0.5, 0.0),
    ]);
    let g = HardyElement::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    println!("||f|| = {:.6}", f.norm(&w));
    println!("<f, g> = {:.6}", inner_product(&w, &f, &g));
    for k in 0..3 {
        println!("Sobolev norm of order {k}: {:.6}", sobolev_norm(&w, &f, k));
    }
    println!(
        "bound on multiplication by z: {}",
        w.multiplier_norm_bound()
    );
    Ok(())
}
