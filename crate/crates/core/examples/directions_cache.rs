//! Replace Euclidean distances with an offline directions cache.
//!
//! Missing legs are filled by shortest paths over the cached ones.
//!
//! cargo run --example directions_cache

use mppc::metric::import_directions_cache;
use mppc::{generate_instance, solve, Algorithm, GeneratorSpec, Problem, SolverConfig};

const CACHE: &str = r#"[
  {"from": "depot", "to": 0, "distance_km": 1.5, "duration_min": 4},
  {"from": "depot", "to": 1, "distance_km": 2.0},
  {"from": 0, "to": 1, "distance_km": 0.8},
  {"from": 1, "to": 2, "distance_km": 1.1},
  {"from": 2, "to": 3, "distance_km": 0.9},
  {"from": 3, "to": "depot", "distance_km": 2.4}
]"#;

fn main() -> mppc::Result<()> {
    let inst = generate_instance(&GeneratorSpec { n: 4, horizon: 10, seed: 5, ..Default::default() })?;
    let matrix = import_directions_cache(CACHE.as_bytes(), &inst)?;
    for row in matrix.to_rows() {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:5.2}")).collect();
        println!("{}", cells.join(" "));
    }

    let euclid = Problem::new(inst.clone())?;
    let cached = Problem::with_metric(inst, matrix)?;
    for (name, p) in [("euclidean", &euclid), ("cached", &cached)] {
        let sol = solve(p, &SolverConfig::new(Algorithm::Alg2))?.solution;
        println!("{name}: profit {:.2} over {} vehicles", sol.profit, sol.vehicles());
    }
    Ok(())
}
