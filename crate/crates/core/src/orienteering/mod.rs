//! Single-vehicle reward-collecting routes under time windows.
//!
//! Given a subset of sites, pick and order some of them into a depot loop that
//! maximises collected quantity (capped at `Q`) minus travel cost, with every
//! visit inside its window. Three strategies share one interface:
//!
//! * [`solve_exact_dp`]: exact dynamic program over (visited set, last site)
//!   for subsets of up to [`EXACT_DP_MAX_SITES`] sites;
//! * [`solve_insertion`]: cheapest feasible insertion;
//! * [`solve_bucketed`]: sites grouped by dyadic deadline class, groups routed
//!   earliest-deadline first and chained into one loop.
//!
//! [`repair_route`] drops late visits from an arbitrary route and
//! [`visits_all_on_time`] tests whether a set can be served in full.

mod bucketed;
mod exact;
mod insertion;
mod probe;
mod repair;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bucketed::{bucket_by_deadline, solve_bucketed, DeadlineBuckets, DeadlineGroup};
pub use exact::{solve_exact_dp, PARETO_CAP};
pub use insertion::solve_insertion;
pub use probe::visits_all_on_time;
pub use repair::repair_route;

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::solution::Route;

pub const EXACT_DP_MAX_SITES: usize = 16;
pub const DEFAULT_CROSSOVER: usize = 16;
/// Profits closer than this are treated as equal when breaking ties.
pub const TIE_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    ExactDp,
    Insertion,
    #[default]
    Bucketed,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" | "exact_dp" | "exact-dp" => Ok(Strategy::ExactDp),
            "insertion" => Ok(Strategy::Insertion),
            "bucketed" => Ok(Strategy::Bucketed),
            other => Err(Error::Parameter(format!("unknown strategy '{other}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ExactDp => "exact",
            Strategy::Insertion => "insertion",
            Strategy::Bucketed => "bucketed",
        })
    }
}

#[derive(Debug, Clone)]
pub struct OrienteeringQuery<'a> {
    pub problem: &'a Problem,
    pub sites: Vec<usize>,
    pub strategy: Strategy,
    /// Largest subset handed to the exact DP; capped at [`EXACT_DP_MAX_SITES`].
    pub crossover: usize,
}

impl<'a> OrienteeringQuery<'a> {
    pub fn new(problem: &'a Problem, sites: Vec<usize>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::Parameter("orienteering query needs at least one site".into()));
        }
        if let Some(&bad) = sites.iter().find(|&&s| s >= problem.n()) {
            return Err(Error::UnknownSite(bad));
        }
        let mut seen = sites.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != sites.len() {
            return Err(Error::Parameter("orienteering query lists a site twice".into()));
        }
        Ok(OrienteeringQuery {
            problem,
            sites,
            strategy: Strategy::default(),
            crossover: DEFAULT_CROSSOVER,
        })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_crossover(mut self, crossover: usize) -> Self {
        self.crossover = crossover;
        self
    }

    pub(crate) fn exact_limit(&self) -> usize {
        self.crossover.min(EXACT_DP_MAX_SITES)
    }

    /// Runs the configured strategy. The exact strategy hands oversized
    /// subsets to the insertion heuristic instead of failing.
    pub fn solve(&self) -> Route {
        match self.strategy {
            Strategy::ExactDp if self.sites.len() <= self.exact_limit() => {
                solve_exact_dp(self).expect("subset within exact limit")
            }
            Strategy::ExactDp | Strategy::Insertion => solve_insertion(self),
            Strategy::Bucketed => solve_bucketed(self),
        }
    }
}

/// Where a partial route currently stands. Solvers extend it with a path
/// that ends back at the depot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Anchor {
    pub site: Option<usize>,
    pub time: f64,
    pub load: f64,
}

impl Anchor {
    pub const DEPOT: Anchor = Anchor {
        site: None,
        time: 0.0,
        load: 0.0,
    };

    /// Profit added by appending `path` (then returning to the depot).
    #[cfg(test)]
    pub fn gain(&self, problem: &Problem, path: &[usize]) -> f64 {
        if path.is_empty() {
            return 0.0;
        }
        let load = self.load + problem.load_of(path);
        let revenue = problem.collected(load) - problem.collected(self.load);
        let cost = problem.schedule_from(self.site, self.time, path).cost - problem.dist(self.site, None);
        revenue - cost
    }

    pub fn feasible(&self, problem: &Problem, path: &[usize]) -> bool {
        problem.schedule_from(self.site, self.time, path).late.is_empty()
    }
}

/// Route preference: higher profit, then fewer visits, then the
/// lexicographically smaller visit sequence. `Less` means `a` is preferred.
pub(crate) fn prefer(a: (f64, &[usize]), b: (f64, &[usize])) -> Ordering {
    if a.0 > b.0 + TIE_EPS {
        Ordering::Less
    } else if b.0 > a.0 + TIE_EPS {
        Ordering::Greater
    } else {
        a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(b.1))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_parsing() {
        assert_eq!("exact".parse::<Strategy>().unwrap(), Strategy::ExactDp);
        assert_eq!("Insertion".parse::<Strategy>().unwrap(), Strategy::Insertion);
        assert!("greedy".parse::<Strategy>().is_err());
        assert_eq!(Strategy::Bucketed.to_string(), "bucketed");
    }

    #[test]
    fn query_validation() {
        let p = testutil::random_problem(1, 3, 10);
        assert!(OrienteeringQuery::new(&p, vec![]).is_err());
        assert!(OrienteeringQuery::new(&p, vec![0, 3]).is_err());
        assert!(OrienteeringQuery::new(&p, vec![1, 1]).is_err());
        assert!(OrienteeringQuery::new(&p, vec![2, 0]).is_ok());
    }

    #[test]
    fn preference_order() {
        assert_eq!(prefer((2.0, &[1]), (1.0, &[])), Ordering::Less);
        assert_eq!(prefer((1.0, &[1]), (1.0, &[2, 3])), Ordering::Less);
        assert_eq!(prefer((1.0, &[2, 1]), (1.0, &[1, 2])), Ordering::Greater);
    }
}
