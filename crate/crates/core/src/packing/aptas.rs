//! Asymptotic approximation scheme of de la Vega and Lueker.
//!
//! Items larger than `eta * Q` are sorted and cut into groups of
//! `ceil(eta^2 * L)` consecutive items; every item is rounded up to the largest
//! size in its group, leaving at most `ceil(1 / eta^2)` distinct sizes. That
//! rounded instance is packed optimally by a dynamic program over item-count
//! vectors, the true items are substituted back, and small items are added
//! first-fit.
//!
//! The dynamic program costs `states * configurations`; past
//! [`APTAS_WORK_LIMIT`] the packer falls back to MFFD and says so.

use super::{check_items, decreasing, pack_mffd, Packing, PACK_TOL};
use crate::error::{Error, Result};

pub const APTAS_WORK_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct AptasPacking {
    pub packing: Packing,
    /// True when the exact grouped packing was too large and MFFD was used.
    pub fell_back: bool,
}

pub fn pack_aptas(quantities: &[f64], capacity: f64, eta: f64) -> Result<Packing> {
    pack_aptas_detailed(quantities, capacity, eta, APTAS_WORK_LIMIT).map(|a| a.packing)
}

pub fn pack_aptas_detailed(
    quantities: &[f64],
    capacity: f64,
    eta: f64,
    work_limit: u64,
) -> Result<AptasPacking> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Parameter(format!("eta must lie in (0, 1), got {eta}")));
    }
    check_items(quantities, capacity)?;
    let q = quantities;
    let threshold = eta * capacity;
    let (large, small): (Vec<usize>, Vec<usize>) = decreasing(q, 0..q.len())
        .into_iter()
        .partition(|&i| q[i] > threshold);

    let classes = round_groups(q, &large, eta);
    let mut packing = match pack_rounded(&classes, capacity, work_limit) {
        Some(p) => p,
        None => {
            return Ok(AptasPacking {
                packing: pack_mffd(q, capacity)?,
                fell_back: true,
            })
        }
    };
    for i in small {
        packing.first_fit(i, q[i], capacity);
    }
    // loads above were accumulated from rounded sizes
    for (bin, load) in packing.bins.iter().zip(packing.loads.iter_mut()) {
        *load = bin.iter().map(|&i| q[i]).sum();
    }
    Ok(AptasPacking {
        packing,
        fell_back: false,
    })
}

/// A rounded size together with the true items that carry it.
struct SizeClass {
    size: f64,
    items: Vec<usize>,
}

fn round_groups(q: &[f64], large: &[usize], eta: f64) -> Vec<SizeClass> {
    if large.is_empty() {
        return Vec::new();
    }
    let group = ((eta * eta * large.len() as f64).ceil() as usize).max(1);
    let mut classes: Vec<SizeClass> = Vec::new();
    for chunk in large.chunks(group) {
        let size = q[chunk[0]];
        match classes.last_mut() {
            Some(c) if c.size == size => c.items.extend_from_slice(chunk),
            _ => classes.push(SizeClass {
                size,
                items: chunk.to_vec(),
            }),
        }
    }
    classes
}

/// Optimal packing of the rounded items, or `None` if over the work limit.
fn pack_rounded(classes: &[SizeClass], capacity: f64, work_limit: u64) -> Option<Packing> {
    let counts: Vec<usize> = classes.iter().map(|c| c.items.len()).collect();
    let states = counts
        .iter()
        .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64 + 1))?;
    if states > work_limit {
        return None;
    }

    let configs = bin_configurations(classes, &counts, capacity, work_limit)?;
    if states.saturating_mul(configs.len().max(1) as u64) > work_limit {
        return None;
    }

    // mixed-radix state index; subtracting a configuration lowers the index
    let mut radix = vec![1usize; counts.len()];
    for j in 1..counts.len() {
        radix[j] = radix[j - 1] * (counts[j - 1] + 1);
    }
    let encode = |v: &[usize]| v.iter().zip(&radix).map(|(a, r)| a * r).sum::<usize>();
    let config_offsets: Vec<usize> = configs.iter().map(|c| encode(c)).collect();

    let n_states = states as usize;
    let mut best = vec![u32::MAX; n_states];
    let mut choice = vec![usize::MAX; n_states];
    best[0] = 0;
    let mut digits = vec![0usize; counts.len()];
    for s in 1..n_states {
        // increment digits to match s
        for j in 0..digits.len() {
            if digits[j] < counts[j] {
                digits[j] += 1;
                break;
            }
            digits[j] = 0;
        }
        for (k, c) in configs.iter().enumerate() {
            if c.iter().zip(&digits).all(|(a, b)| a <= b) {
                let prev = best[s - config_offsets[k]];
                if prev != u32::MAX && prev + 1 < best[s] {
                    best[s] = prev + 1;
                    choice[s] = k;
                }
            }
        }
    }

    let mut remaining: Vec<std::slice::Iter<'_, usize>> =
        classes.iter().map(|c| c.items.iter()).collect();
    let mut packing = Packing::default();
    let mut s = n_states - 1;
    while s != 0 {
        let k = choice[s];
        let mut bin = Vec::new();
        let mut load = 0.0;
        for (j, &take) in configs[k].iter().enumerate() {
            for _ in 0..take {
                bin.push(*remaining[j].next().expect("configuration within counts"));
                load += classes[j].size;
            }
        }
        packing.bins.push(bin);
        packing.loads.push(load);
        s -= config_offsets[k];
    }
    Some(packing)
}

/// All nonzero count vectors that fit in one bin, in lexicographic DFS order.
fn bin_configurations(
    classes: &[SizeClass],
    counts: &[usize],
    capacity: f64,
    work_limit: u64,
) -> Option<Vec<Vec<usize>>> {
    fn dfs(
        j: usize,
        room: f64,
        cur: &mut Vec<usize>,
        classes: &[SizeClass],
        counts: &[usize],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if j == classes.len() {
            if cur.iter().any(|&c| c > 0) {
                out.push(cur.clone());
            }
            return out.len() <= limit;
        }
        let mut k = 0;
        while k <= counts[j] && k as f64 * classes[j].size <= room + PACK_TOL {
            cur[j] = k;
            if !dfs(j + 1, room - k as f64 * classes[j].size, cur, classes, counts, out, limit) {
                return false;
            }
            k += 1;
        }
        cur[j] = 0;
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![0; classes.len()];
    let limit = work_limit.min(usize::MAX as u64) as usize;
    dfs(0, capacity, &mut cur, classes, counts, &mut out, limit).then_some(out)
}
