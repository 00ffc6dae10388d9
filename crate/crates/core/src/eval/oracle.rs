use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::solution::{Route, Solution};

pub const ORACLE_MAX_SITES: usize = 8;

/// An optimal solution and the quantities describing it.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub profit: f64,
    /// Fewest vehicles among profit-optimal solutions.
    pub vehicles: usize,
    /// Least total distance among those.
    pub distance: f64,
    pub routes: Vec<Vec<usize>>,
}

impl OracleResult {
    pub fn solution(&self, problem: &Problem) -> Solution {
        Solution::new(
            self.routes
                .iter()
                .enumerate()
                .map(|(v, visits)| Route::new(problem, v, visits.clone()))
                .collect(),
        )
    }
}

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct Best {
    profit: f64,
    vehicles: usize,
    distance: f64,
    /// Route mask used for the lowest site, 0 if that site is left out.
    take: usize,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        if self.profit > other.profit + EPS {
            return true;
        }
        if self.profit < other.profit - EPS {
            return false;
        }
        (self.vehicles, self.distance) < (other.vehicles, other.distance - EPS)
    }
}

/// Exhaustive optimum for up to eight sites.
///
/// Every time-feasible visit order is enumerated to find the cheapest loop
/// over each site set; a set-partition DP then combines disjoint loops.
pub fn brute_force_optimum(problem: &Problem) -> Result<OracleResult> {
    let n = problem.n();
    if n > ORACLE_MAX_SITES {
        return Err(Error::SizeLimit {
            what: "brute-force optimum",
            got: n,
            max: ORACLE_MAX_SITES,
        });
    }
    let full = 1usize << n;
    let mut cheapest: Vec<Option<(f64, Vec<usize>)>> = vec![None; full];
    let mut path = Vec::with_capacity(n);
    enumerate(problem, 0, None, 0.0, 0.0, &mut path, &mut cheapest);

    let route_profit: Vec<Option<f64>> = (0..full)
        .map(|mask| {
            cheapest[mask].as_ref().and_then(|(cost, seq)| {
                let p = problem.collected(problem.load_of(seq)) - cost;
                (p > EPS).then_some(p)
            })
        })
        .collect();

    let mut best = vec![
        Best {
            profit: 0.0,
            vehicles: 0,
            distance: 0.0,
            take: 0,
        };
        full
    ];
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut b = Best { take: 0, ..best[rest] };
        let mut sub = rest;
        loop {
            let with = sub | low;
            if let Some(p) = route_profit[with] {
                let other = &best[mask ^ with];
                let cand = Best {
                    profit: p + other.profit,
                    vehicles: other.vehicles + 1,
                    distance: cheapest[with].as_ref().expect("route exists").0 + other.distance,
                    take: with,
                };
                if cand.better_than(&b) {
                    b = cand;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[mask] = b;
    }

    let mut routes = Vec::new();
    let mut mask = full - 1;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        let take = best[mask].take;
        if take == 0 {
            mask ^= low;
        } else {
            routes.push(cheapest[take].as_ref().expect("route exists").1.clone());
            mask ^= take;
        }
    }
    let top = best[full - 1];
    Ok(OracleResult {
        profit: top.profit,
        vehicles: top.vehicles,
        distance: top.distance,
        routes,
    })
}

fn enumerate(
    problem: &Problem,
    mask: usize,
    last: Option<usize>,
    time: f64,
    cost: f64,
    path: &mut Vec<usize>,
    cheapest: &mut [Option<(f64, Vec<usize>)>],
) {
    if mask != 0 {
        let total = cost + problem.dist(last, None);
        if cheapest[mask].as_ref().map_or(true, |(c, _)| total < c - EPS) {
            cheapest[mask] = Some((total, path.clone()));
        }
    }
    for s in 0..problem.n() {
        if mask & (1 << s) != 0 {
            continue;
        }
        let a = problem.arrival(last, time, s);
        if problem.is_late(s, a) {
            continue;
        }
        path.push(s);
        enumerate(
            problem,
            mask | (1 << s),
            Some(s),
            problem.service_start(s, a),
            cost + problem.dist(last, Some(s)),
            path,
            cheapest,
        );
        path.pop();
    }
}
