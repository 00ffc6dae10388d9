//! Solve an instance and write its routes as GeoJSON.
//!
//! cargo run --example geojson_export -- routes.geojson

use mppc::geojson::export_geojson;
use mppc::{generate_instance, solve, Algorithm, GeneratorSpec, Problem, SolverConfig};

fn main() -> mppc::Result<()> {
    let inst = generate_instance(&GeneratorSpec { n: 15, box_km: 8.0, seed: 21, ..Default::default() })?;
    let problem = Problem::new(inst)?;
    let sol = solve(&problem, &SolverConfig::new(Algorithm::Alg3))?.solution;
    let text = export_geojson(&problem, &sol)?;
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, text)?;
            println!("wrote {} routes to {path}", sol.vehicles());
        }
        None => println!("{text}"),
    }
    Ok(())
}
