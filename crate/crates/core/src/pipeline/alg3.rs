use std::collections::HashMap;

use rayon::prelude::*;

use super::{mffd_groups, number_routes, route_group, SolveOutcome, SolverConfig};
use crate::error::Result;
use crate::instance::Point;
use crate::orienteering::visits_all_on_time;
use crate::packing::PACK_TOL;
use crate::problem::Problem;
use crate::solution::Route;
use crate::wspd::{build_split_tree, calibrate_separation, compute_wspd, Calibration};

/// Site groups bound for one vehicle each. Every group carries at most `Q`
/// and groups are filled first-fit, so at most one is half empty or less.
struct Fleet {
    groups: Vec<Vec<usize>>,
    loads: Vec<f64>,
    capacity: f64,
}

impl Fleet {
    fn add(&mut self, piece: Vec<usize>, load: f64) {
        match self.loads.iter().position(|&l| l + load <= self.capacity + PACK_TOL) {
            Some(k) => {
                self.groups[k].extend(piece);
                self.loads[k] += load;
            }
            None => {
                self.groups.push(piece);
                self.loads.push(load);
            }
        }
    }
}

/// `ceil(sum q / Q)`, at least 1.
pub(crate) fn vehicle_target(problem: &Problem) -> usize {
    let total = problem.instance().total_quantity();
    ((total / problem.capacity() - PACK_TOL).ceil() as usize).max(1)
}

pub fn run_algorithm3(problem: &Problem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let n = problem.n();
    if n == 0 {
        return Ok(SolveOutcome::default());
    }
    let m = vehicle_target(problem);
    let budget = 2 * m;
    let points: Vec<Point> = problem.instance().sites.iter().map(|s| Point::new(s.x, s.y)).collect();
    let mut flags = Vec::new();

    let calibration = match cfg.separation {
        Some(s) => Calibration {
            s,
            pairs: 0,
            clamped: false,
        },
        None => calibrate_separation(&points, m)?,
    };
    if calibration.clamped {
        flags.push(format!("separation_clamped={}", calibration.s));
    }
    let mut pairs = compute_wspd(&build_split_tree(&points)?, calibration.s)?;
    pairs.sort_by_key(|p| p.len());

    let size = |s: usize| problem.collected(problem.quantity(s));
    let mut probes: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut is_small = |side: &[usize]| {
        let load: f64 = side.iter().map(|&s| problem.quantity(s)).sum();
        if load > problem.capacity() + PACK_TOL {
            return false;
        }
        let mut key = side.to_vec();
        key.sort_unstable();
        *probes
            .entry(key)
            .or_insert_with_key(|k| visits_all_on_time(problem, k, cfg.crossover))
    };

    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut fleet = Fleet {
        groups: Vec::new(),
        loads: Vec::new(),
        capacity: problem.capacity(),
    };
    'pairs: for pair in &pairs {
        for side in [&pair.a, &pair.b] {
            if side.iter().all(|&s| covered[s]) || !is_small(side) {
                continue;
            }
            let piece: Vec<usize> = side.iter().copied().filter(|&s| !covered[s]).collect();
            for &s in &piece {
                covered[s] = true;
            }
            remaining -= piece.len();
            let load = piece.iter().map(|&s| size(s)).sum();
            fleet.add(piece, load);
            if remaining == 0 {
                break 'pairs;
            }
        }
    }

    if remaining > 0 {
        flags.push(format!("uncovered={remaining}"));
        let rest: Vec<usize> = (0..n).filter(|&s| !covered[s]).collect();
        let packed = mffd_groups(problem, &rest)?;
        for (bin, load) in packed.bins.into_iter().zip(packed.loads) {
            fleet.add(bin, load);
        }
    }
    debug_assert!(fleet.groups.len() <= budget);

    let mut routes: Vec<Route> = fleet
        .groups
        .par_iter()
        .map(|g| route_group(problem, cfg, g))
        .collect();
    routes.retain(|r| !r.is_empty());

    // Sites a vehicle dropped get a second chance on spare vehicles.
    let mut dropped: Vec<usize> = fleet.groups.concat();
    let mut visited = vec![false; n];
    loop {
        for r in &routes {
            for &s in &r.visits {
                visited[s] = true;
            }
        }
        dropped.retain(|&s| !visited[s]);
        if dropped.is_empty() || routes.len() >= budget {
            break;
        }
        let bins = mffd_groups(problem, &dropped)?.bins;
        let extra: Vec<Route> = bins
            .par_iter()
            .map(|g| route_group(problem, cfg, g))
            .filter(|r| !r.is_empty())
            .collect();
        if extra.is_empty() {
            break;
        }
        let room = budget - routes.len();
        routes.extend(extra.into_iter().take(room));
    }

    Ok(SolveOutcome {
        solution: number_routes(routes),
        flags,
        separation: Some(calibration),
    })
}
