//! Generate a random instance, solve it with each algorithm and print the
//! evaluation table.
//!
//! cargo run --example quickstart

use mppc::eval::render_table;
use mppc::{evaluate, generate_instance, solve, Algorithm, GeneratorSpec, Problem, SolverConfig};

fn main() -> mppc::Result<()> {
    let inst = generate_instance(&GeneratorSpec {
        n: 20,
        horizon: 12,
        box_km: 8.0,
        seed: 7,
        ..Default::default()
    })?;
    let problem = Problem::new(inst)?;

    let mut rows = Vec::new();
    for alg in Algorithm::ALL {
        let started = std::time::Instant::now();
        let outcome = solve(&problem, &SolverConfig::new(alg))?;
        let ms = started.elapsed().as_secs_f64() * 1e3;
        for r in &outcome.solution.routes {
            println!("{alg} vehicle {}: {:?} profit {:.2}", r.vehicle, r.visits, r.profit());
        }
        rows.push(evaluate(&problem, &outcome.solution, &alg.to_string(), ms, outcome.flags)?);
    }
    print!("\n{}", render_table(&rows));
    Ok(())
}
