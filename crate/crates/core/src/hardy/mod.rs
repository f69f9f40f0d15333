//! Weighted Hardy spaces of power series on the unit disc.

mod element;
mod weights;

pub use element::{inner_product, sobolev_norm, HardyElement};
pub use weights::WeightSequence;
