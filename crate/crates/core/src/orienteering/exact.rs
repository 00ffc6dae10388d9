//! Exact subset DP for time-window orienteering.
//!
//! A state is (visited set, last site). Because waiting is allowed and cost
//! and time are both path-dependent, a state keeps a Pareto set of labels
//! over (service time at last site, travel cost so far). Labels are pruned to
//! [`PARETO_CAP`] entries by dropping the most expensive one; the earliest
//! label is never dropped.

use super::{prefer, Anchor, OrienteeringQuery, EXACT_DP_MAX_SITES};
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::solution::Route;

pub const PARETO_CAP: usize = 64;

const NO_PARENT: u8 = u8::MAX;

#[derive(Debug, Clone, Copy)]
struct Label {
    time: f64,
    cost: f64,
    prev_last: u8,
    prev_idx: u16,
}

pub fn solve_exact_dp(query: &OrienteeringQuery<'_>) -> Result<Route> {
    if query.sites.len() > EXACT_DP_MAX_SITES {
        return Err(Error::SizeLimit {
            what: "exact orienteering DP",
            got: query.sites.len(),
            max: EXACT_DP_MAX_SITES,
        });
    }
    let path = exact_path(query.problem, &query.sites, Anchor::DEPOT);
    Ok(Route::new(query.problem, 0, path))
}

fn insert(set: &mut Vec<Label>, cand: Label) {
    if set.iter().any(|l| l.time <= cand.time && l.cost <= cand.cost) {
        return;
    }
    set.retain(|l| !(cand.time <= l.time && cand.cost <= l.cost));
    set.push(cand);
    if set.len() > PARETO_CAP {
        let earliest = (0..set.len())
            .min_by(|&a, &b| set[a].time.total_cmp(&set[b].time))
            .expect("nonempty");
        let worst = (0..set.len())
            .filter(|&i| i != earliest)
            .max_by(|&a, &b| set[a].cost.total_cmp(&set[b].cost))
            .expect("more than one label");
        set.remove(worst);
    }
}

/// Best path continuing from `anchor` over any subset of `sites`.
pub(crate) fn exact_path(problem: &Problem, sites: &[usize], anchor: Anchor) -> Vec<usize> {
    let k = sites.len();
    if k == 0 {
        return Vec::new();
    }
    debug_assert!(k <= EXACT_DP_MAX_SITES);
    let full = 1usize << k;
    let mut sets: Vec<Vec<Label>> = vec![Vec::new(); full * k];

    let mut mask_load = vec![0.0; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        mask_load[mask] = mask_load[mask & (mask - 1)] + problem.quantity(sites[low]);
    }

    for (j, &s) in sites.iter().enumerate() {
        let a = problem.arrival(anchor.site, anchor.time, s);
        if !problem.is_late(s, a) {
            sets[(1 << j) * k + j].push(Label {
                time: problem.service_start(s, a),
                cost: problem.dist(anchor.site, Some(s)),
                prev_last: NO_PARENT,
                prev_idx: 0,
            });
        }
    }

    for mask in 1..full {
        for last in 0..k {
            if mask & (1 << last) == 0 {
                continue;
            }
            let idx = mask * k + last;
            if sets[idx].is_empty() {
                continue;
            }
            let labels = std::mem::take(&mut sets[idx]);
            let from = Some(sites[last]);
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let to = sites[j];
                let step = problem.dist(from, Some(to));
                let target = (mask | (1 << j)) * k + j;
                for (li, l) in labels.iter().enumerate() {
                    let a = problem.arrival(from, l.time, to);
                    if problem.is_late(to, a) {
                        continue;
                    }
                    insert(
                        &mut sets[target],
                        Label {
                            time: problem.service_start(to, a),
                            cost: l.cost + step,
                            prev_last: last as u8,
                            prev_idx: li as u16,
                        },
                    );
                }
            }
            sets[idx] = labels;
        }
    }

    let base_revenue = problem.collected(anchor.load);
    let anchor_return = problem.dist(anchor.site, None);
    let profit_of = |mask: usize, last: usize, l: &Label| {
        problem.collected(anchor.load + mask_load[mask]) - base_revenue
            - (l.cost + problem.dist(Some(sites[last]), None) - anchor_return)
    };

    let mut best = 0.0f64;
    for mask in 1..full {
        for last in 0..k {
            for l in &sets[mask * k + last] {
                best = best.max(profit_of(mask, last, l));
            }
        }
    }

    let reconstruct = |mut mask: usize, mut last: usize, mut li: usize| {
        let mut path = Vec::new();
        loop {
            path.push(sites[last]);
            let l = sets[mask * k + last][li];
            if l.prev_last == NO_PARENT {
                break;
            }
            mask &= !(1 << last);
            last = l.prev_last as usize;
            li = l.prev_idx as usize;
        }
        path.reverse();
        path
    };

    let mut chosen: (f64, Vec<usize>) = (0.0, Vec::new());
    for mask in 1..full {
        for last in 0..k {
            for (li, l) in sets[mask * k + last].iter().enumerate() {
                let p = profit_of(mask, last, l);
                if p < best - super::TIE_EPS {
                    continue;
                }
                let path = reconstruct(mask, last, li);
                if prefer((p, &path), (chosen.0, &chosen.1)).is_lt() {
                    chosen = (p, path);
                }
            }
        }
    }
    chosen.1
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{brute_force_profit, random_problem};
    use super::*;
    use crate::instance::{Instance, MetricSpec, Point, Site};
    use crate::solution::{check_feasibility, Solution};

    fn one_site(open: u32, close: u32) -> Problem {
        Problem::new(Instance {
            name: "one".into(),
            depot: Point::new(0.0, 0.0),
            capacity: 50.0,
            speed: 1.0,
            horizon: 10,
            metric: MetricSpec::default(),
            sites: vec![Site {
                id: 0,
                x: 2.0,
                y: 0.0,
                quantity: 10.0,
                open,
                close,
            }],
        })
        .unwrap()
    }

    #[test]
    fn single_reachable_site() {
        let p = one_site(0, 10);
        let r = solve_exact_dp(&OrienteeringQuery::new(&p, vec![0]).unwrap()).unwrap();
        assert_eq!(r.visits, vec![0]);
        assert_eq!(r.profit(), 6.0);
    }

    #[test]
    fn single_unreachable_site() {
        let p = one_site(0, 1);
        let r = solve_exact_dp(&OrienteeringQuery::new(&p, vec![0]).unwrap()).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.profit(), 0.0);
    }

    #[test]
    fn matches_permutation_oracle() {
        for seed in 0..60 {
            let p = random_problem(seed, 6, 10);
            let sites: Vec<usize> = (0..6).collect();
            let q = OrienteeringQuery::new(&p, sites.clone()).unwrap();
            let r = solve_exact_dp(&q).unwrap();
            let oracle = brute_force_profit(&p, &sites);
            assert!((r.profit() - oracle).abs() <= 1e-9, "seed {seed}: {} vs {oracle}", r.profit());
            let sol = Solution::new(vec![r]);
            assert!(check_feasibility(&p, &sol).unwrap().is_empty());
        }
    }

    #[test]
    fn adding_a_site_never_hurts() {
        for seed in 100..130 {
            let p = random_problem(seed, 8, 12);
            let mut prev = 0.0;
            for m in 1..=8 {
                let q = OrienteeringQuery::new(&p, (0..m).collect()).unwrap();
                let profit = solve_exact_dp(&q).unwrap().profit();
                assert!(profit >= prev - 1e-9);
                prev = profit;
            }
        }
    }

    #[test]
    fn size_guard() {
        let p = random_problem(5, 17, 10);
        let q = OrienteeringQuery::new(&p, (0..17).collect()).unwrap();
        assert!(matches!(solve_exact_dp(&q), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn continuation_accounts_for_anchor() {
        let p = random_problem(9, 5, 12);
        let full = exact_path(&p, &[0, 1, 2, 3, 4], Anchor::DEPOT);
        if let Some((&first, rest)) = full.split_first() {
            let sched = p.schedule(&[first]);
            let anchor = Anchor {
                site: Some(first),
                time: sched.service[0],
                load: p.quantity(first),
            };
            let others: Vec<usize> = [0, 1, 2, 3, 4].into_iter().filter(|&s| s != first).collect();
            let tail = exact_path(&p, &others, anchor);
            let total = Anchor::DEPOT.gain(&p, &[first]) + anchor.gain(&p, &tail);
            assert!((total - Anchor::DEPOT.gain(&p, &full)).abs() < 1e-9);
            assert!(rest.is_empty() || !tail.is_empty());
        }
    }
}
