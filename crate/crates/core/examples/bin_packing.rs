//! Compare the packers on one list of pickup quantities.
//!
//! cargo run --example bin_packing

use mppc::packing::{pack_aptas_detailed, pack_exact, pack_ffd, pack_mffd, volume_bound, APTAS_WORK_LIMIT};

fn main() -> mppc::Result<()> {
    let capacity = 100.0;
    let items = [44.0, 24.0, 24.0, 22.0, 21.0, 17.0, 8.0, 8.0, 6.0, 6.0, 61.0, 37.0, 12.0];
    println!("volume bound: {}", volume_bound(&items, capacity));

    let ffd = pack_ffd(&items, capacity)?;
    let mffd = pack_mffd(&items, capacity)?;
    let aptas = pack_aptas_detailed(&items, capacity, 0.3, APTAS_WORK_LIMIT)?;
    let exact = pack_exact(&items, capacity)?;

    for (name, p) in [("ffd", &ffd), ("mffd", &mffd), ("aptas", &aptas.packing), ("exact", &exact)] {
        assert!(p.is_valid_for(&items, capacity));
        println!("{name:>6}: {} bins", p.len());
        for (bin, load) in p.bins.iter().zip(&p.loads) {
            let sizes: Vec<f64> = bin.iter().map(|&i| items[i]).collect();
            println!("        {load:>5} {sizes:?}");
        }
    }
    if aptas.fell_back {
        println!("aptas fell back to mffd");
    }
    Ok(())
}
