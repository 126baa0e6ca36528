//! An r-graph that is bicritical, non-bipartite and has no non-trivial
//! odd cut of size r is a brick.

use rgraphs::oddcut::{check_brick_theorem, is_brick};
use rgraphs::{named, Result};

fn main() -> Result<()> {
    for (name, g) in [
        ("K4", named::k4()),
        ("prism", named::prism()),
        ("Petersen", named::petersen()),
        ("K3,3", named::k33()),
    ] {
        let c = check_brick_theorem(&g, 3)?;
        println!(
            "{name}: hypothesis {}, brick {}, check holds {}",
            c.hypothesis,
            is_brick(&g),
            c.holds()
        );
    }
    Ok(())
}
