//! Maximum-profit pickup routing with time windows and a vehicle capacity.
//!
//! Vehicles leave a depot, collect product from supplier sites inside their
//! time windows and return; each vehicle carries at most `Q` units and every
//! site is served by at most one vehicle. The goal is to maximise collected
//! quantity minus travel cost, with an unlimited fleet.
//!
//! The crate provides three approximation pipelines (bin packing or
//! well-separated pair decomposition to split sites between vehicles, then a
//! per-vehicle time-window orienteering solver), exact oracles for small
//! instances, an instance generator and an evaluation harness.

pub mod assumptions;
pub mod error;
pub mod eval;
pub mod generator;
pub mod geojson;
pub mod instance;
pub mod metric;
pub mod orienteering;
pub mod packing;
pub mod pipeline;
pub mod problem;
pub mod solution;
pub mod wspd;

pub use error::{Error, Result};
pub use instance::{load_instance, Instance, MetricMode, Point, Site};
pub use problem::Problem;
pub use solution::{check_feasibility, compute_profit, Route, Solution, Violation};
pub use eval::{brute_force_optimum, evaluate, upper_bound, EvaluationReport};
pub use generator::{generate_instance, GeneratorSpec};
pub use pipeline::{solve, Algorithm, SolveOutcome, SolverConfig};
pub use solution::SolutionFile;
