//! Separation of the model sequence (n/tau + C)^N over all integers n.

use weighted_hardy::spectral::gap_check;
use weighted_hardy::C64;

fn main() -> weighted_hardy::Result<()> {
    for (tau, c, order) in [(1.0, 0.0, 2), (1.0, 0.25, 2), (1.0, 0.0, 3), (2.0, 0.5, 2)] {
        let r = gap_check(tau, C64::new(c, 0.0), order, 100)?;
        println!(
            "tau = {tau}, C = {c}, N = {order}: K = {:.4} from |n| >= {}, {} coinciding pairs, shift {:?}, consistent {}",
            r.min_gap,
            r.checked_from,
            r.pairs.len(),
            r.partner_shift,
            r.consistent
        );
        if let Some(&(n, m)) = r.pairs.first() {
            println!("  first pair: gamma_{n} = gamma_{m}");
        }
    }
    Ok(())
}
