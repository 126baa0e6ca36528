//! Proper edge colourings by bounded search. Budget exhaustion is reported
//! as indeterminate, never as a refutation.

use rgraphs::covers::{proper_edge_coloring, Budget, Outcome};
use rgraphs::multigraph::Multigraph;
use rgraphs::{named, Result};

fn main() -> Result<()> {
    let budget = Budget::default();
    let digon_triple = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)])?;
    for (name, g, colors) in [
        ("K4", named::k4(), 3),
        ("Petersen", named::petersen(), 3),
        ("Petersen", named::petersen(), 4),
        ("triple edge", digon_triple, 3),
    ] {
        let res = proper_edge_coloring(&g, colors, &budget)?;
        match &res.outcome {
            Outcome::Found(c) => println!("{name} with {colors}: {:?}", c.assignment),
            other => println!("{name} with {colors}: {} after {} nodes", other.status(), res.nodes),
        }
    }

    let tiny = Budget { nodes: 5, ..Budget::default() };
    let res = proper_edge_coloring(&named::petersen(), 3, &tiny)?;
    println!("Petersen with 3 and a 5-node budget: {}", res.outcome.status());
    Ok(())
}
