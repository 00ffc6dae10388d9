//! Modified first-fit decreasing (Johnson and Garey), at most `71/60 OPT + 1` bins.
//!
//! Items are split into large (> Q/2), medium (> Q/3), small (> Q/6) and tiny.
//! Large items each open a bin, medium and small items are paired into those
//! bins in dedicated passes, the remainder is filled greedily and whatever is
//! left goes through plain FFD.

use super::{check_items, decreasing, Packing};
use crate::error::Result;

pub fn pack_mffd(quantities: &[f64], capacity: f64) -> Result<Packing> {
    check_items(quantities, capacity)?;
    let q = quantities;
    let order = decreasing(q, 0..q.len());
    let class = |i: &usize| {
        let s = q[*i];
        if s > capacity / 2.0 {
            0
        } else if s > capacity / 3.0 {
            1
        } else if s > capacity / 6.0 {
            2
        } else {
            3
        }
    };
    // each list stays in decreasing order
    let mut lists: [Vec<usize>; 4] = Default::default();
    for i in order {
        lists[class(&i)].push(i);
    }
    let [large, mut medium, mut small, tiny] = lists;

    let mut packing = Packing::default();
    for &i in &large {
        packing.open(i, q[i]);
    }
    let n_large = packing.len();

    // forward: largest medium item that fits
    let mut has_medium = vec![false; n_large];
    for b in 0..n_large {
        let Some(&smallest) = medium.last() else { break };
        if !packing.fits(b, q[smallest], capacity) {
            continue;
        }
        if let Some(pos) = medium.iter().position(|&i| packing.fits(b, q[i], capacity)) {
            let i = medium.remove(pos);
            packing.put(b, i, q[i]);
            has_medium[b] = true;
        }
    }

    // backward over bins without a medium item: smallest small item plus the
    // largest small item that still fits
    for b in (0..n_large).rev() {
        if has_medium[b] || small.len() < 2 {
            continue;
        }
        let (a, c) = (small[small.len() - 1], small[small.len() - 2]);
        if !packing.fits(b, q[a] + q[c], capacity) {
            continue;
        }
        let a = small.pop().expect("checked length");
        packing.put(b, a, q[a]);
        if let Some(pos) = small.iter().position(|&i| packing.fits(b, q[i], capacity)) {
            let i = small.remove(pos);
            packing.put(b, i, q[i]);
        }
    }

    // forward over all bins: keep adding the largest remaining item that fits
    let mut rest = decreasing(q, medium.into_iter().chain(small).chain(tiny));
    for b in 0..packing.len() {
        while let Some(pos) = rest.iter().position(|&i| packing.fits(b, q[i], capacity)) {
            let i = rest.remove(pos);
            packing.put(b, i, q[i]);
        }
    }

    for i in rest {
        packing.first_fit(i, q[i], capacity);
    }
    Ok(packing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::pack_exact;

    #[test]
    fn textbook_case_is_optimal() {
        let q = [6.0, 5.0, 4.0, 3.0, 2.0];
        let p = pack_mffd(&q, 10.0).unwrap();
        assert!(p.is_valid_for(&q, 10.0));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn single_item() {
        let p = pack_mffd(&[7.0], 10.0).unwrap();
        assert_eq!(p.bins, vec![vec![0]]);
    }

    #[test]
    fn medium_items_pair_with_large() {
        // both medium items ride along with a large one
        let q = [0.6, 0.6, 0.35, 0.35, 0.2, 0.2, 0.2, 0.2];
        let p = pack_mffd(&q, 1.0).unwrap();
        assert!(p.is_valid_for(&q, 1.0));
        assert_eq!(p.len(), pack_exact(&q, 1.0).unwrap().len());
    }

    #[test]
    fn small_pairs_fill_from_the_back() {
        let q = [0.55, 0.55, 0.2, 0.2, 0.2, 0.2];
        let p = pack_mffd(&q, 1.0).unwrap();
        assert!(p.is_valid_for(&q, 1.0));
        assert_eq!(p.len(), 2);
    }
}
