use super::{check_items, decreasing, Packing};
use crate::error::Result;

/// First-fit decreasing.
pub fn pack_ffd(quantities: &[f64], capacity: f64) -> Result<Packing> {
    check_items(quantities, capacity)?;
    let mut packing = Packing::default();
    for i in decreasing(quantities, 0..quantities.len()) {
        packing.first_fit(i, quantities[i], capacity);
    }
    Ok(packing)
}
