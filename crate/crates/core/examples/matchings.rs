//! Perfect matchings, Tutte violators and maximal barriers.

use rgraphs::matching::{
    enumerate_perfect_matchings, find_maximal_barrier, has_perfect_matching, is_bicritical,
    is_factor_critical, is_matching_covered, maximum_matching, tutte_violator,
};
use rgraphs::{named, Result};

fn main() -> Result<()> {
    for (name, g) in [
        ("K4", named::k4()),
        ("K1,3", named::k13()),
        ("Petersen", named::petersen()),
        ("P4", named::path(4)),
    ] {
        let pms = enumerate_perfect_matchings(&g, 1000);
        println!(
            "{name}: maximum matching {}, {} perfect matchings, matching covered {}, bicritical {}",
            maximum_matching(&g).len(),
            pms.matchings.len(),
            is_matching_covered(&g),
            is_bicritical(&g),
        );
        if !has_perfect_matching(&g) {
            let s = tutte_violator(&g)?.expect("no perfect matching means a violator exists");
            println!("  Tutte violator {:?}", s.members());
        }
    }

    println!("C5 factor-critical: {}", is_factor_critical(&named::cycle(5)));

    let mb = find_maximal_barrier(&named::path(4), 1)?;
    println!(
        "P4 barrier through 1: {:?}, components {:?}",
        mb.barrier.set.members(),
        mb.barrier.components.iter().map(|c| c.members().to_vec()).collect::<Vec<_>>()
    );
    Ok(())
}
