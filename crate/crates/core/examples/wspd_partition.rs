//! Build a well-separated pair decomposition of the site coordinates and
//! calibrate the separation to a vehicle target.
//!
//! cargo run --example wspd_partition

use mppc::wspd::{build_split_tree, calibrate_separation, compute_wspd, render_pairs};
use mppc::{generate_instance, GeneratorSpec, Point};

fn main() -> mppc::Result<()> {
    let inst = generate_instance(&GeneratorSpec { n: 10, seed: 11, ..Default::default() })?;
    let points: Vec<Point> = inst.sites.iter().map(|s| s.point()).collect();

    let tree = build_split_tree(&points)?;
    println!("split tree has {} nodes", tree.nodes.len());
    for s in [0.5, 2.0, 8.0] {
        println!("s = {s}: {} pairs", compute_wspd(&tree, s)?.len());
    }

    let pairs = compute_wspd(&tree, 2.0)?;
    print!("{}", render_pairs(&pairs, 2.0));

    let cal = calibrate_separation(&points, 12)?;
    println!("calibrated s = {:.3} with {} pairs (clamped: {})", cal.s, cal.pairs, cal.clamped);
    Ok(())
}
