//! The trichotomy for r-graphs: bipartite, a non-trivial odd cut of size r,
//! or bicritical.

use rgraphs::oddcut::{classify, find_nontrivial_r_cut, is_r_graph};
use rgraphs::{named, Multigraph, Result};

fn main() -> Result<()> {
    let graphs: Vec<(&str, Multigraph)> = vec![
        ("K4", named::k4()),
        ("K3,3", named::k33()),
        ("prism", named::prism()),
        ("Petersen", named::petersen()),
        ("bridged cubic", named::bridged_cubic()),
    ];
    for (name, g) in &graphs {
        let check = is_r_graph(g, 3);
        if let Some(f) = &check.failure {
            println!("{name}: not a 3-graph ({f})");
            continue;
        }
        let c = classify(g, 3)?;
        println!(
            "{name}: bipartite={} tight cut={} bicritical={} satisfied={}",
            c.bipartite, c.nontrivial_r_cut, c.bicritical, c.satisfied
        );
        if let Some(x) = find_nontrivial_r_cut(g, 3)? {
            println!("  cut side {:?}", x.members());
        }
    }
    Ok(())
}
