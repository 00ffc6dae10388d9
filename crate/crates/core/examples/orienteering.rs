//! Route a single vehicle over a subset of sites with each strategy.
//!
//! cargo run --example orienteering

use mppc::orienteering::{bucket_by_deadline, OrienteeringQuery, Strategy};
use mppc::{generate_instance, GeneratorSpec, Problem};

fn main() -> mppc::Result<()> {
    let inst = generate_instance(&GeneratorSpec {
        n: 12,
        horizon: 16,
        box_km: 6.0,
        seed: 3,
        ..Default::default()
    })?;
    let problem = Problem::new(inst)?;
    let sites: Vec<usize> = (0..problem.n()).collect();

    let deadlines: Vec<(usize, u32)> = sites.iter().map(|&s| (s, problem.site(s).close)).collect();
    let buckets = bucket_by_deadline(&deadlines, problem.instance().horizon);
    for g in &buckets.groups {
        println!("deadline level {}: {:?}", g.level, g.sites);
    }

    for strategy in [Strategy::ExactDp, Strategy::Insertion, Strategy::Bucketed] {
        let route = OrienteeringQuery::new(&problem, sites.clone())?.with_strategy(strategy).solve();
        println!(
            "{strategy:>9}: visits {:?} load {:.0} cost {:.2} profit {:.2}",
            route.visits,
            route.load,
            route.cost,
            route.profit()
        );
    }
    Ok(())
}
