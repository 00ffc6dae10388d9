//! One-dimensional bin packing of site quantities into vehicle-sized bins.
//!
//! Item `i` is the quantity at index `i`; bins hold item indices. All packers
//! are deterministic and break size ties by the lower index.

mod aptas;
mod exact;
mod ffd;
mod mffd;

pub use aptas::{pack_aptas, pack_aptas_detailed, AptasPacking, APTAS_WORK_LIMIT};
pub use exact::{pack_exact, EXACT_MAX_ITEMS};
pub use ffd::pack_ffd;
pub use mffd::pack_mffd;

use crate::error::{Error, Result};

/// Slack on capacity comparisons.
pub const PACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Packing {
    pub bins: Vec<Vec<usize>>,
    pub loads: Vec<f64>,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub(crate) fn open(&mut self, item: usize, size: f64) {
        self.bins.push(vec![item]);
        self.loads.push(size);
    }

    pub(crate) fn put(&mut self, bin: usize, item: usize, size: f64) {
        self.bins[bin].push(item);
        self.loads[bin] += size;
    }

    #[inline]
    pub(crate) fn fits(&self, bin: usize, size: f64, capacity: f64) -> bool {
        self.loads[bin] + size <= capacity + PACK_TOL
    }

    /// Places `item` in the first bin with room, opening a new bin if none.
    pub(crate) fn first_fit(&mut self, item: usize, size: f64, capacity: f64) {
        match (0..self.len()).find(|&b| self.fits(b, size, capacity)) {
            Some(b) => self.put(b, item, size),
            None => self.open(item, size),
        }
    }

    /// True if every index in `0..n` is packed exactly once and no bin overflows.
    pub fn is_valid_for(&self, quantities: &[f64], capacity: f64) -> bool {
        let mut seen = vec![false; quantities.len()];
        for (bin, &load) in self.bins.iter().zip(&self.loads) {
            let sum: f64 = bin.iter().map(|&i| quantities[i]).sum();
            if sum > capacity + PACK_TOL || (sum - load).abs() > PACK_TOL * capacity.max(1.0) {
                return false;
            }
            for &i in bin {
                if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub(crate) fn check_items(quantities: &[f64], capacity: f64) -> Result<()> {
    if !(capacity.is_finite() && capacity > 0.0) {
        return Err(Error::Parameter(format!("bin capacity must be positive, got {capacity}")));
    }
    for (index, &size) in quantities.iter().enumerate() {
        if !(size.is_finite() && size >= 0.0) {
            return Err(Error::Parameter(format!("item {index} has invalid size {size}")));
        }
        if size > capacity + PACK_TOL {
            return Err(Error::ItemTooLarge {
                index,
                size,
                capacity,
            });
        }
    }
    Ok(())
}

/// Indices sorted by decreasing size, lower index first on ties.
pub(crate) fn decreasing(quantities: &[f64], items: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = items.into_iter().collect();
    order.sort_by(|&a, &b| quantities[b].total_cmp(&quantities[a]).then(a.cmp(&b)));
    order
}

/// Volume lower bound `ceil(sum / capacity)`.
pub fn volume_bound(quantities: &[f64], capacity: f64) -> usize {
    let total: f64 = quantities.iter().sum();
    (total / capacity - PACK_TOL).ceil().max(0.0) as usize
}
