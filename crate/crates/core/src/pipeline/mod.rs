//! End-to-end solvers.
//!
//! * Algorithm 1 packs site quantities into vehicle-sized bins with MFFD,
//!   routes each bin with the orienteering solver and repairs late visits.
//! * Algorithm 2 is the same with the APTAS packer at `eta = 2 / sqrt(10 + p)`.
//! * Algorithm 3 splits sites with a well-separated pair decomposition and
//!   assigns the small sides to vehicles, using at most `2 * ceil(sum q / Q)`
//!   vehicles.

mod alg3;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use alg3::run_algorithm3;

use crate::assumptions::AssumptionParams;
use crate::error::{Error, Result};
use crate::orienteering::{repair_route, OrienteeringQuery, Strategy, DEFAULT_CROSSOVER};
use crate::packing::{pack_aptas_detailed, pack_mffd, Packing, APTAS_WORK_LIMIT};
use crate::problem::Problem;
use crate::solution::{Route, Solution};
use crate::wspd::Calibration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Alg1,
    #[default]
    Alg2,
    Alg3,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Alg1, Algorithm::Alg2, Algorithm::Alg3];
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "alg1" => Ok(Algorithm::Alg1),
            "2" | "alg2" => Ok(Algorithm::Alg2),
            "3" | "alg3" => Ok(Algorithm::Alg3),
            other => Err(Error::Parameter(format!("unknown algorithm '{other}'"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg3 => "alg3",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub params: AssumptionParams,
    pub strategy: Strategy,
    /// Largest subset routed by the exact DP.
    pub crossover: usize,
    /// Fixed WSPD separation for Algorithm 3; calibrated when `None`.
    pub separation: Option<f64>,
    /// Work cap on the APTAS configuration DP before it falls back to MFFD.
    pub aptas_work_limit: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::default(),
            params: AssumptionParams::default(),
            strategy: Strategy::default(),
            crossover: DEFAULT_CROSSOVER,
            separation: None,
            aptas_work_limit: APTAS_WORK_LIMIT,
        }
    }
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            ..Default::default()
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if let Some(s) = self.separation {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::Parameter(format!("separation must be positive, got {s}")));
            }
        }
        Ok(())
    }

    /// APTAS grouping parameter.
    pub fn eta(&self) -> f64 {
        2.0 / (10.0 + self.params.p).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveOutcome {
    pub solution: Solution,
    /// Notes on fallbacks taken, e.g. `aptas_fallback` or `uncovered=3`.
    pub flags: Vec<String>,
    /// WSPD separation used by Algorithm 3.
    pub separation: Option<Calibration>,
}

/// Runs the algorithm selected in `cfg`.
pub fn solve(problem: &Problem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    match cfg.algorithm {
        Algorithm::Alg1 => run_algorithm1(problem, cfg),
        Algorithm::Alg2 => run_algorithm2(problem, cfg),
        Algorithm::Alg3 => run_algorithm3(problem, cfg),
    }
}

pub fn run_algorithm1(problem: &Problem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let packing = pack_mffd(&packing_sizes(problem), problem.capacity())?;
    Ok(SolveOutcome {
        solution: route_groups(problem, cfg, &packing.bins),
        ..Default::default()
    })
}

pub fn run_algorithm2(problem: &Problem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let eta = cfg.eta();
    let packed = pack_aptas_detailed(&packing_sizes(problem), problem.capacity(), eta, cfg.aptas_work_limit)?;
    let mut flags = Vec::new();
    if packed.fell_back {
        flags.push("aptas_fallback".to_string());
    }
    Ok(SolveOutcome {
        solution: route_groups(problem, cfg, &packed.packing.bins),
        flags,
        separation: None,
    })
}

/// Quantities as bin items; a site larger than `Q` fills a bin on its own.
pub(crate) fn packing_sizes(problem: &Problem) -> Vec<f64> {
    (0..problem.n()).map(|s| problem.collected(problem.quantity(s))).collect()
}

pub(crate) fn mffd_groups(problem: &Problem, sites: &[usize]) -> Result<Packing> {
    let sizes: Vec<f64> = sites.iter().map(|&s| problem.collected(problem.quantity(s))).collect();
    let mut packing = pack_mffd(&sizes, problem.capacity())?;
    for bin in &mut packing.bins {
        for item in bin.iter_mut() {
            *item = sites[*item];
        }
    }
    Ok(packing)
}

/// Routes one site group.
pub(crate) fn route_group(problem: &Problem, cfg: &SolverConfig, group: &[usize]) -> Route {
    if group.is_empty() {
        return Route::empty(0);
    }
    let route = OrienteeringQuery::new(problem, group.to_vec())
        .expect("groups hold distinct known sites")
        .with_strategy(cfg.strategy)
        .with_crossover(cfg.crossover)
        .solve();
    repair_route(&route, problem)
}

/// Routes groups in parallel; empty routes are dropped and vehicles numbered
/// in group order.
pub(crate) fn route_groups(problem: &Problem, cfg: &SolverConfig, groups: &[Vec<usize>]) -> Solution {
    let routes: Vec<Route> = groups.par_iter().map(|g| route_group(problem, cfg, g)).collect();
    number_routes(routes)
}

pub(crate) fn number_routes(routes: Vec<Route>) -> Solution {
    Solution::new(
        routes
            .into_iter()
            .filter(|r| !r.is_empty())
            .enumerate()
            .map(|(v, r)| r.with_vehicle(v))
            .collect(),
    )
}
