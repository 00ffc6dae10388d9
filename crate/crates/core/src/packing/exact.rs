use super::{check_items, decreasing, pack_ffd, volume_bound, Packing, PACK_TOL};
use crate::error::{Error, Result};

pub const EXACT_MAX_ITEMS: usize = 20;

/// Minimum-bin packing by branch and bound.
///
/// Items go in decreasing order; each is tried in every open bin with a
/// distinct load, then in a new bin. A node is cut when its open bins plus the
/// volume that cannot fit in their free space already match the incumbent.
pub fn pack_exact(quantities: &[f64], capacity: f64) -> Result<Packing> {
    check_items(quantities, capacity)?;
    if quantities.len() > EXACT_MAX_ITEMS {
        return Err(Error::SizeLimit {
            what: "exact bin packing",
            got: quantities.len(),
            max: EXACT_MAX_ITEMS,
        });
    }
    let incumbent = pack_ffd(quantities, capacity)?;
    let floor = volume_bound(quantities, capacity);
    if incumbent.len() <= floor {
        return Ok(incumbent);
    }

    let order = decreasing(quantities, 0..quantities.len());
    let sizes: Vec<f64> = order.iter().map(|&i| quantities[i]).collect();
    let mut suffix = vec![0.0; sizes.len() + 1];
    for k in (0..sizes.len()).rev() {
        suffix[k] = suffix[k + 1] + sizes[k];
    }

    let mut search = Search {
        sizes: &sizes,
        suffix: &suffix,
        capacity,
        floor,
        best: incumbent.len(),
        best_assign: None,
        loads: Vec::new(),
        assign: vec![0; sizes.len()],
    };
    search.dfs(0);

    let Some(assign) = search.best_assign else {
        return Ok(incumbent);
    };
    let mut packing = Packing::default();
    for (k, &bin) in assign.iter().enumerate() {
        let item = order[k];
        if bin == packing.len() {
            packing.open(item, quantities[item]);
        } else {
            packing.put(bin, item, quantities[item]);
        }
    }
    Ok(packing)
}

struct Search<'a> {
    sizes: &'a [f64],
    suffix: &'a [f64],
    capacity: f64,
    floor: usize,
    best: usize,
    best_assign: Option<Vec<usize>>,
    loads: Vec<f64>,
    assign: Vec<usize>,
}

impl Search<'_> {
    /// Returns true once a packing meeting the volume bound is found.
    fn dfs(&mut self, k: usize) -> bool {
        if k == self.sizes.len() {
            if self.loads.len() < self.best {
                self.best = self.loads.len();
                self.best_assign = Some(self.assign.clone());
            }
            return self.best <= self.floor;
        }
        let free: f64 = self.loads.iter().map(|l| self.capacity - l).sum();
        let overflow = (self.suffix[k] - free).max(0.0);
        let lower = self.loads.len() + (overflow / self.capacity - PACK_TOL).ceil().max(0.0) as usize;
        if lower >= self.best {
            return false;
        }

        let size = self.sizes[k];
        let mut tried: Vec<f64> = Vec::new();
        for b in 0..self.loads.len() {
            let load = self.loads[b];
            if load + size > self.capacity + PACK_TOL || tried.contains(&load) {
                continue;
            }
            tried.push(load);
            self.loads[b] += size;
            self.assign[k] = b;
            let done = self.dfs(k + 1);
            self.loads[b] = load;
            if done {
                return true;
            }
        }
        if self.loads.len() + 1 < self.best {
            self.loads.push(size);
            self.assign[k] = self.loads.len() - 1;
            let done = self.dfs(k + 1);
            self.loads.pop();
            if done {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tries every assignment of items to at most `n` bins.
    fn brute_force_bins(q: &[f64], cap: f64) -> usize {
        fn go(k: usize, q: &[f64], cap: f64, loads: &mut Vec<f64>, best: &mut usize) {
            if loads.len() >= *best {
                return;
            }
            if k == q.len() {
                *best = loads.len();
                return;
            }
            for b in 0..loads.len() {
                if loads[b] + q[k] <= cap + 1e-9 {
                    loads[b] += q[k];
                    go(k + 1, q, cap, loads, best);
                    loads[b] -= q[k];
                }
            }
            loads.push(q[k]);
            go(k + 1, q, cap, loads, best);
            loads.pop();
        }
        let mut best = q.len() + 1;
        go(0, q, cap, &mut Vec::new(), &mut best);
        best.min(q.len())
    }

    #[test]
    fn textbook_case() {
        let q = [6.0, 5.0, 4.0, 3.0, 2.0];
        assert_eq!(brute_force_bins(&q, 10.0), 2);
        assert_eq!(pack_exact(&q, 10.0).unwrap().len(), 2);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(pack_exact(&[1.0], 10.0).unwrap().len(), 1);
        assert_eq!(pack_exact(&[], 10.0).unwrap().len(), 0);
    }

    #[test]
    fn beats_ffd_where_ffd_is_suboptimal() {
        // FFD opens 3 bins; {0.5, 0.3, 0.2} and {0.4, 0.4, 0.2} is optimal
        let q = [0.5, 0.4, 0.4, 0.3, 0.2, 0.2];
        let exact = pack_exact(&q, 1.0).unwrap();
        assert!(exact.is_valid_for(&q, 1.0));
        assert_eq!(exact.len(), brute_force_bins(&q, 1.0));
    }

    #[test]
    fn matches_brute_force_on_small_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..9);
            let q: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=10) as f64).collect();
            let p = pack_exact(&q, 10.0).unwrap();
            assert!(p.is_valid_for(&q, 10.0));
            assert_eq!(p.len(), brute_force_bins(&q, 10.0), "{q:?}");
        }
    }

    #[test]
    fn size_guard() {
        let q = vec![1.0; 21];
        assert!(matches!(pack_exact(&q, 10.0), Err(Error::SizeLimit { .. })));
    }
}
