//! Checks of the three instance assumptions the approximation pipelines rely on.
//!
//! 1. Bounded spread of supplies: `q_max <= Q` and `q_max <= C * n^p * q_min`
//!    (over non-zero quantities).
//! 2. Cheap edges: `c_ij <= eps * q_j / 2` for every node `i` and site `j`.
//! 3. Enough vehicles in the optimum: `m* >= sqrt(10 + p) / alpha`. Only
//!    decidable when an optimal vehicle count is supplied.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{node, DEPOT};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumptionParams {
    pub epsilon: f64,
    pub p: f64,
    pub alpha: f64,
}

impl Default for AssumptionParams {
    fn default() -> Self {
        AssumptionParams {
            epsilon: 0.5,
            p: 6.0,
            alpha: 1.0,
        }
    }
}

impl AssumptionParams {
    pub fn new(epsilon: f64, p: f64, alpha: f64) -> Result<Self> {
        let params = AssumptionParams { epsilon, p, alpha };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("epsilon", self.epsilon), ("p", self.p), ("alpha", self.alpha)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated { witness: String },
    NotCheckable { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub bounded_supply: Verdict,
    pub cheap_edges: Verdict,
    /// Number of `(i, j)` pairs breaking the edge-cost assumption.
    pub cheap_edge_violations: usize,
    pub enough_vehicles: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionOptions {
    /// Constant `C` in `q_max <= C * n^p * q_min`.
    pub spread_constant: f64,
    /// Optimal vehicle count from an exact oracle, if known.
    pub optimal_vehicles: Option<usize>,
}

impl Default for AssumptionOptions {
    fn default() -> Self {
        AssumptionOptions {
            spread_constant: 1.0,
            optimal_vehicles: None,
        }
    }
}

pub fn validate_assumptions(
    problem: &Problem,
    params: &AssumptionParams,
    opts: &AssumptionOptions,
) -> AssumptionReport {
    let inst = problem.instance();
    let nonzero = inst.sites.iter().filter(|s| s.quantity > 0.0);
    let q_min = nonzero.clone().map(|s| s.quantity).reduce(f64::min);
    let q_max = nonzero.map(|s| s.quantity).reduce(f64::max);

    let bounded_supply = match (q_min, q_max) {
        (Some(lo), Some(hi)) => {
            let spread = opts.spread_constant * (inst.len() as f64).powf(params.p) * lo;
            if hi > inst.capacity {
                Verdict::Violated {
                    witness: format!("q_max = {hi} exceeds capacity {}", inst.capacity),
                }
            } else if hi > spread {
                Verdict::Violated {
                    witness: format!("q_max = {hi} exceeds C * n^p * q_min = {spread}"),
                }
            } else {
                Verdict::Holds
            }
        }
        _ => Verdict::Holds,
    };

    let metric = problem.metric();
    let mut first = None;
    let mut count = 0;
    for i in std::iter::once(DEPOT).chain((0..inst.len()).map(node)) {
        for j in 0..inst.len() {
            if i == node(j) {
                continue;
            }
            let c = metric.cost(i, node(j));
            let limit = 0.5 * params.epsilon * inst.sites[j].quantity;
            if c > limit {
                count += 1;
                if first.is_none() {
                    let from = if i == DEPOT {
                        "depot".to_string()
                    } else {
                        format!("site {}", i - 1)
                    };
                    first = Some(format!("c({from}, site {j}) = {c} > {limit}"));
                }
            }
        }
    }
    let cheap_edges = match first {
        None => Verdict::Holds,
        Some(witness) => Verdict::Violated { witness },
    };

    let needed = (10.0 + params.p).sqrt() / params.alpha;
    let enough_vehicles = match opts.optimal_vehicles {
        None => Verdict::NotCheckable {
            reason: "needs the optimal vehicle count".into(),
        },
        Some(m) if m as f64 >= needed => Verdict::Holds,
        Some(m) => Verdict::Violated {
            witness: format!("m* = {m} < sqrt(10 + p) / alpha = {needed}"),
        },
    };

    AssumptionReport {
        q_min,
        q_max,
        bounded_supply,
        cheap_edges,
        cheap_edge_violations: count,
        enough_vehicles,
    }
}
