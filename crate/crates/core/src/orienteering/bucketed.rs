//! Deadline bucketing.
//!
//! Sites are grouped by the dyadic interval `(T / 2^(g+1), T / 2^g]` holding
//! their window close, with `max(1, ceil(log2 T))` levels; the last level
//! also absorbs everything below it, including deadline 0. Groups are routed
//! earliest-deadline first and each group's path continues from where the
//! previous one ended.

use super::exact::exact_path;
use super::insertion::insertion_path;
use super::{prefer, repair_route, solve_exact_dp, Anchor, OrienteeringQuery};
use crate::problem::Problem;
use crate::solution::Route;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlineGroup {
    /// Dyadic level `g`; 0 holds the latest deadlines.
    pub level: u32,
    pub sites: Vec<usize>,
}

/// Nonempty groups ordered by decreasing deadline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlineBuckets {
    pub groups: Vec<DeadlineGroup>,
}

impl DeadlineBuckets {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

fn levels(horizon: u32) -> u32 {
    // ceil(log2 T)
    let ceil_log = u32::BITS - horizon.saturating_sub(1).leading_zeros();
    ceil_log.max(1)
}

fn level_of(close: u32, horizon: u32) -> u32 {
    let last = levels(horizon) - 1;
    if close == 0 {
        return last;
    }
    // largest g with close * 2^g <= T
    let mut g = 0;
    while (close as u64) << (g + 1) <= horizon as u64 {
        g += 1;
    }
    g.min(last)
}

/// Groups `(site id, window close)` pairs by deadline level.
pub fn bucket_by_deadline(sites: &[(usize, u32)], horizon: u32) -> DeadlineBuckets {
    let horizon = horizon.max(1);
    let mut groups: Vec<DeadlineGroup> = (0..levels(horizon))
        .map(|level| DeadlineGroup {
            level,
            sites: Vec::new(),
        })
        .collect();
    for &(id, close) in sites {
        groups[level_of(close, horizon) as usize].sites.push(id);
    }
    groups.retain(|g| !g.sites.is_empty());
    DeadlineBuckets { groups }
}

fn buckets_for(problem: &Problem, sites: &[usize]) -> DeadlineBuckets {
    let keyed: Vec<(usize, u32)> = sites.iter().map(|&s| (s, problem.site(s).close)).collect();
    bucket_by_deadline(&keyed, problem.instance().horizon)
}

/// Deadline-bucketed route, or the plain insertion route if that is better.
pub fn solve_bucketed(query: &OrienteeringQuery<'_>) -> Route {
    let problem = query.problem;
    let limit = query.exact_limit();
    let buckets = buckets_for(problem, &query.sites);
    if buckets.len() == 1 && query.sites.len() <= limit {
        return solve_exact_dp(query).expect("subset within exact limit");
    }

    let route_group = |sites: &[usize], anchor: Anchor| {
        if sites.len() <= limit {
            exact_path(problem, sites, anchor)
        } else {
            insertion_path(problem, sites, anchor)
        }
    };

    let mut chained: Vec<usize> = Vec::new();
    let mut anchor = Anchor::DEPOT;
    for group in buckets.groups.iter().rev() {
        let tail = route_group(&group.sites, anchor);
        if tail.is_empty() {
            continue;
        }
        chained.extend(tail);
        let sched = problem.schedule(&chained);
        if !sched.late.is_empty() {
            chained = repair_route(&Route::new(problem, 0, chained), problem).visits;
        }
        anchor = Anchor {
            site: chained.last().copied(),
            time: problem.schedule(&chained).service.last().copied().unwrap_or(0.0),
            load: problem.load_of(&chained),
        };
    }

    let mut candidates = vec![chained];
    if buckets.len() > 1 {
        for group in &buckets.groups {
            candidates.push(route_group(&group.sites, Anchor::DEPOT));
        }
    }
    candidates.push(insertion_path(problem, &query.sites, Anchor::DEPOT));

    candidates
        .into_iter()
        .map(|path| Route::new(problem, 0, path))
        .min_by(|a, b| prefer((a.profit(), &a.visits), (b.profit(), &b.visits)))
        .expect("at least one candidate")
}

#[cfg(test)]
mod tests {
    use super::super::testutil::random_problem;
    use super::super::{solve_insertion, Strategy};
    use super::*;
    use crate::solution::{check_feasibility, Solution};
    use rand::{Rng, SeedableRng};

    fn ids(b: &DeadlineBuckets) -> Vec<Vec<usize>> {
        b.groups.iter().map(|g| g.sites.clone()).collect()
    }

    #[test]
    fn dyadic_groups_for_horizon_eight() {
        let b = bucket_by_deadline(&[(0, 8), (1, 5), (2, 3), (3, 1)], 8);
        assert_eq!(ids(&b), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn all_at_horizon_is_one_group() {
        let b = bucket_by_deadline(&[(0, 12), (1, 12), (2, 12)], 12);
        assert_eq!(ids(&b), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn zero_deadline_goes_last() {
        let b = bucket_by_deadline(&[(0, 0), (1, 15), (2, 1)], 15);
        assert_eq!(b.groups.last().unwrap().sites, vec![0, 2]);
    }

    #[test]
    fn random_deadlines_partition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let t: u32 = rng.gen_range(1..=64);
            let n = rng.gen_range(1..30);
            let sites: Vec<(usize, u32)> = (0..n).map(|i| (i, rng.gen_range(0..=t))).collect();
            let b = bucket_by_deadline(&sites, t);
            let mut all: Vec<usize> = b.groups.iter().flat_map(|g| g.sites.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            let ceil_log = (t as f64).log2().ceil() as usize;
            assert!(b.len() <= ceil_log + 1);
            // scan oracle: each site in the interval its level names
            for g in &b.groups {
                for &s in &g.sites {
                    let close = sites[s].1 as f64;
                    let hi = t as f64 / 2f64.powi(g.level as i32);
                    let lo = t as f64 / 2f64.powi(g.level as i32 + 1);
                    let is_last = g.level as usize + 1 == ceil_log.max(1);
                    assert!(close <= hi && (close > lo || is_last), "t={t} close={close} level={}", g.level);
                }
            }
        }
    }

    #[test]
    fn single_bucket_reduces_to_exact() {
        for seed in 0..20 {
            let mut p = random_problem(seed, 7, 8);
            let mut inst = p.instance().clone();
            for s in &mut inst.sites {
                s.close = 8;
            }
            p = Problem::new(inst).unwrap();
            let q = OrienteeringQuery::new(&p, (0..7).collect()).unwrap();
            assert_eq!(solve_bucketed(&q), solve_exact_dp(&q).unwrap());
        }
    }

    #[test]
    fn feasible_and_no_worse_than_insertion() {
        for seed in 0..150 {
            let p = random_problem(seed, 10, 8);
            let q = OrienteeringQuery::new(&p, (0..10).collect())
                .unwrap()
                .with_strategy(Strategy::Bucketed);
            let r = solve_bucketed(&q);
            assert!(r.profit() >= solve_insertion(&q).profit() - 1e-12);
            assert!(check_feasibility(&p, &Solution::new(vec![r])).unwrap().is_empty());
        }
    }

    #[test]
    fn two_buckets_beat_either_alone() {
        for seed in 0..60 {
            let p = random_problem(seed, 8, 8);
            let q = OrienteeringQuery::new(&p, (0..8).collect()).unwrap();
            let b = buckets_for(&p, &q.sites);
            if b.len() != 2 {
                continue;
            }
            let combined = solve_bucketed(&q).profit();
            for g in &b.groups {
                let alone = OrienteeringQuery::new(&p, g.sites.clone()).unwrap();
                assert!(combined >= solve_exact_dp(&alone).unwrap().profit() - 1e-12);
            }
        }
    }
}
