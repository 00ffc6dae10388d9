//! Run every algorithm on a small suite and compare against the exact
//! optimum where the oracle can reach it.
//!
//! cargo run --release --example benchmark_table

use mppc::eval::{render_table, ORACLE_MAX_SITES};
use mppc::{brute_force_optimum, evaluate, generate_instance, solve, Algorithm, GeneratorSpec, Problem, SolverConfig};

fn main() -> mppc::Result<()> {
    let mut rows = Vec::new();
    for (seed, n) in [(1, 6), (2, 8), (3, 20), (4, 40)] {
        let inst = generate_instance(&GeneratorSpec { n, box_km: 6.0, seed, ..Default::default() })?;
        let problem = Problem::new(inst)?;
        let opt = (n <= ORACLE_MAX_SITES).then(|| brute_force_optimum(&problem)).transpose()?;
        for alg in Algorithm::ALL {
            let started = std::time::Instant::now();
            let outcome = solve(&problem, &SolverConfig::new(alg))?;
            let ms = started.elapsed().as_secs_f64() * 1e3;
            let mut report = evaluate(&problem, &outcome.solution, &alg.to_string(), ms, outcome.flags)?;
            report.problem = format!("{}/{alg}", report.problem);
            if let Some(o) = &opt {
                println!("{}: P = {:.2}, OPT = {:.2}", report.problem, report.profit, o.profit);
            }
            rows.push(report);
        }
    }
    print!("\n{}", render_table(&rows));
    Ok(())
}
