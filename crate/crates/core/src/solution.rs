//! Routes, solutions, feasibility checking and profit accounting.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::FORMAT_VERSION;
use crate::problem::{Problem, TIME_TOL};

/// One vehicle's depot-to-depot loop. The depot is implicit at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub vehicle: usize,
    pub visits: Vec<usize>,
    /// Service start time at each visit.
    pub arrivals: Vec<f64>,
    /// Quantity collected, `min(Q, sum of quantities)`.
    pub load: f64,
    pub cost: f64,
    pub revenue: f64,
}

impl Route {
    pub fn empty(vehicle: usize) -> Self {
        Route {
            vehicle,
            visits: Vec::new(),
            arrivals: Vec::new(),
            load: 0.0,
            cost: 0.0,
            revenue: 0.0,
        }
    }

    /// Evaluates a visit order; the result may be infeasible.
    pub fn new(problem: &Problem, vehicle: usize, visits: Vec<usize>) -> Self {
        let sched = problem.schedule(&visits);
        let load = problem.collected(problem.load_of(&visits));
        Route {
            vehicle,
            visits,
            arrivals: sched.service,
            load,
            cost: sched.cost,
            revenue: load,
        }
    }

    pub fn profit(&self) -> f64 {
        self.revenue - self.cost
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn with_vehicle(mut self, vehicle: usize) -> Self {
        self.vehicle = vehicle;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Solution {
    pub routes: Vec<Route>,
    pub profit: f64,
}

impl Solution {
    pub fn new(routes: Vec<Route>) -> Self {
        let profit = routes.iter().map(Route::profit).sum();
        Solution { routes, profit }
    }

    pub fn vehicles(&self) -> usize {
        self.routes.iter().filter(|r| !r.is_empty()).count()
    }

    pub fn total_distance(&self) -> f64 {
        self.routes.iter().map(|r| r.cost).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TimeWindow {
        vehicle: usize,
        site: usize,
        arrival: f64,
        close: u32,
    },
    Capacity {
        vehicle: usize,
        load: f64,
        capacity: f64,
    },
    LoadMismatch {
        vehicle: usize,
        recorded: f64,
        expected: f64,
    },
    ArrivalMismatch {
        vehicle: usize,
        position: usize,
        recorded: f64,
        expected: f64,
    },
    RepeatedVisit {
        vehicle: usize,
        site: usize,
    },
    SharedSite {
        site: usize,
        vehicles: Vec<usize>,
    },
}

fn close_enough(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Lists every constraint breach in `sol`; an empty list means feasible.
///
/// Arrivals are recomputed from the visit order (waiting before a window
/// opens is free). Recorded arrivals and loads must agree with the
/// recomputation. Routes may share only the depot.
pub fn check_feasibility(problem: &Problem, sol: &Solution) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let q = problem.capacity();

    for route in &sol.routes {
        if let Some(&bad) = route.visits.iter().find(|&&s| s >= problem.n()) {
            return Err(Error::UnknownSite(bad));
        }
        let v = route.vehicle;
        let mut seen = std::collections::HashSet::new();
        for &s in &route.visits {
            if !seen.insert(s) {
                out.push(Violation::RepeatedVisit { vehicle: v, site: s });
            } else {
                owners.entry(s).or_default().push(v);
            }
        }

        let sched = problem.schedule(&route.visits);
        // the raw arrival at position p is recovered by replaying the legs
        let mut prev = None;
        let mut t = 0.0;
        for (pos, &s) in route.visits.iter().enumerate() {
            let a = problem.arrival(prev, t, s);
            if sched.late.contains(&pos) {
                out.push(Violation::TimeWindow {
                    vehicle: v,
                    site: s,
                    arrival: a,
                    close: problem.site(s).close,
                });
            }
            t = sched.service[pos];
            prev = Some(s);
        }

        if !route.arrivals.is_empty() {
            if route.arrivals.len() != route.visits.len() {
                out.push(Violation::ArrivalMismatch {
                    vehicle: v,
                    position: route.arrivals.len().min(route.visits.len()),
                    recorded: f64::NAN,
                    expected: f64::NAN,
                });
            } else {
                for (pos, (&rec, &exp)) in route.arrivals.iter().zip(&sched.service).enumerate() {
                    if !close_enough(rec, exp) {
                        out.push(Violation::ArrivalMismatch {
                            vehicle: v,
                            position: pos,
                            recorded: rec,
                            expected: exp,
                        });
                    }
                }
            }
        }

        if route.load > q + TIME_TOL {
            out.push(Violation::Capacity {
                vehicle: v,
                load: route.load,
                capacity: q,
            });
        }
        let expected = problem.collected(problem.load_of(&route.visits));
        if !close_enough(route.load, expected) {
            out.push(Violation::LoadMismatch {
                vehicle: v,
                recorded: route.load,
                expected,
            });
        }
    }

    for (site, vehicles) in owners {
        if vehicles.len() > 1 {
            out.push(Violation::SharedSite { site, vehicles });
        }
    }
    Ok(out)
}

/// Total profit: per route, collected quantity (capped at Q) minus travel cost.
pub fn compute_profit(problem: &Problem, sol: &Solution) -> f64 {
    sol.routes
        .iter()
        .map(|r| problem.collected(problem.load_of(&r.visits)) - problem.schedule(&r.visits).cost)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteRecord {
    pub vehicle: usize,
    pub visits: Vec<usize>,
    #[serde(default)]
    pub arrivals: Vec<f64>,
}

/// On-disk solution document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub version: u32,
    pub instance_name: String,
    pub algorithm: String,
    pub routes: Vec<RouteRecord>,
    pub profit: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl SolutionFile {
    pub fn from_solution(problem: &Problem, algorithm: &str, sol: &Solution) -> Self {
        SolutionFile {
            version: FORMAT_VERSION,
            instance_name: problem.instance().name.clone(),
            algorithm: algorithm.to_string(),
            routes: sol
                .routes
                .iter()
                .map(|r| RouteRecord {
                    vehicle: r.vehicle,
                    visits: r.visits.clone(),
                    arrivals: r.arrivals.clone(),
                })
                .collect(),
            profit: sol.profit,
            flags: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn from_reader<R: Read>(mut source: R) -> Result<Self> {
        let mut text = String::new();
        source.read_to_string(&mut text)?;
        let file: SolutionFile = serde_json::from_str(&text)?;
        if file.version != FORMAT_VERSION {
            return Err(Error::Validation(format!(
                "unsupported solution format version {}",
                file.version
            )));
        }
        Ok(file)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serialization cannot fail")
    }

    /// Rebuilds the in-memory solution; recorded arrivals are kept so that
    /// [`check_feasibility`] can compare them with the recomputed ones.
    pub fn to_solution(&self, problem: &Problem) -> Result<Solution> {
        let mut routes = Vec::with_capacity(self.routes.len());
        for rec in &self.routes {
            if let Some(&bad) = rec.visits.iter().find(|&&s| s >= problem.n()) {
                return Err(Error::UnknownSite(bad));
            }
            let mut route = Route::new(problem, rec.vehicle, rec.visits.clone());
            if !rec.arrivals.is_empty() {
                route.arrivals = rec.arrivals.clone();
            }
            routes.push(route);
        }
        Ok(Solution::new(routes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, MetricSpec, Point, Site};

    fn line(sites: &[(f64, f64, u32, u32)], capacity: f64) -> Problem {
        // (x, quantity, open, close), all on the x axis, speed 1
        let inst = Instance {
            name: "line".into(),
            depot: Point::new(0.0, 0.0),
            capacity,
            speed: 1.0,
            horizon: 100,
            metric: MetricSpec::default(),
            sites: sites
                .iter()
                .enumerate()
                .map(|(id, &(x, q, open, close))| Site {
                    id,
                    x,
                    y: 0.0,
                    quantity: q,
                    open,
                    close,
                })
                .collect(),
        };
        Problem::new(inst).unwrap()
    }

    #[test]
    fn empty_solution_is_feasible_and_worthless() {
        let p = line(&[(1.0, 5.0, 0, 10)], 10.0);
        let sol = Solution::default();
        assert!(check_feasibility(&p, &sol).unwrap().is_empty());
        assert_eq!(compute_profit(&p, &sol), 0.0);
    }

    #[test]
    fn single_site_profit() {
        let p = line(&[(2.0, 10.0, 0, 10)], 10.0);
        let sol = Solution::new(vec![Route::new(&p, 0, vec![0])]);
        assert_eq!(compute_profit(&p, &sol), 6.0);
        assert_eq!(sol.profit, 6.0);
    }

    #[test]
    fn revenue_is_capped_at_capacity() {
        // D -> 0 -> 1 -> D with legs 2, 3, 2 (site 1 at x=5 but 2 from the depot is
        // impossible on a line, so use an explicit matrix)
        let mut p = line(&[(0.0, 10.0, 0, 50), (0.0, 10.0, 0, 50)], 15.0);
        let m = crate::metric::DistanceMatrix::from_rows(
            &[vec![0.0, 2.0, 2.0], vec![2.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]],
            1.0,
        )
        .unwrap();
        p = Problem::with_metric(p.instance().clone(), m).unwrap();
        let sol = Solution::new(vec![Route::new(&p, 0, vec![0, 1])]);
        assert_eq!(compute_profit(&p, &sol), 8.0);
        assert!(check_feasibility(&p, &sol).unwrap().is_empty());
    }

    #[test]
    fn late_arrival_is_flagged() {
        let p = line(&[(6.0, 1.0, 0, 5)], 10.0);
        let sol = Solution::new(vec![Route::new(&p, 0, vec![0])]);
        let v = check_feasibility(&p, &sol).unwrap();
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::TimeWindow { site: 0, arrival, close: 5, .. } if arrival == 6.0));
    }

    #[test]
    fn early_arrival_waits() {
        let p = line(&[(1.0, 1.0, 4, 5), (2.0, 1.0, 0, 5)], 10.0);
        let r = Route::new(&p, 0, vec![0, 1]);
        assert_eq!(r.arrivals, vec![4.0, 5.0]);
        assert!(check_feasibility(&p, &Solution::new(vec![r])).unwrap().is_empty());
    }

    #[test]
    fn shared_site_is_one_violation() {
        let sites = vec![(1.0, 1.0, 0, 50); 4];
        let p = line(&sites, 10.0);
        let sol = Solution::new(vec![
            Route::new(&p, 0, vec![0, 3]),
            Route::new(&p, 1, vec![3, 1]),
        ]);
        let v = check_feasibility(&p, &sol).unwrap();
        assert_eq!(v, vec![Violation::SharedSite { site: 3, vehicles: vec![0, 1] }]);
    }

    #[test]
    fn unknown_site_is_structural_error() {
        let p = line(&[(1.0, 1.0, 0, 5)], 10.0);
        let mut r = Route::new(&p, 0, vec![0]);
        r.visits.push(7);
        assert!(matches!(
            check_feasibility(&p, &Solution::new(vec![r])),
            Err(Error::UnknownSite(7))
        ));
    }

    #[test]
    fn tampered_route_fields_are_caught() {
        let p = line(&[(1.0, 4.0, 0, 5)], 10.0);
        let mut r = Route::new(&p, 0, vec![0]);
        r.load = 12.0;
        r.arrivals[0] = 0.5;
        let v = check_feasibility(&p, &Solution::new(vec![r])).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::Capacity { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::LoadMismatch { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::ArrivalMismatch { .. })));
    }

    #[test]
    fn solution_file_roundtrip() {
        let p = line(&[(1.0, 4.0, 0, 5), (2.0, 3.0, 0, 9)], 10.0);
        let sol = Solution::new(vec![Route::new(&p, 0, vec![1, 0])]);
        let file = SolutionFile::from_solution(&p, "alg1", &sol);
        let text = file.to_json_string();
        let back = SolutionFile::from_reader(text.as_bytes()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_solution(&p).unwrap(), sol);
    }
}
