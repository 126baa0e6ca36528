//! Reading graphs and measuring cuts.
//!
//! Parses graph6 and edge-list text, then looks at boundaries, bridges and
//! the minimum odd cut found through a Gomory–Hu tree.

use rgraphs::format::{parse, to_edge_list, to_graph6};
use rgraphs::multigraph::{boundary, bridges, is_bipartite};
use rgraphs::oddcut::{gomory_hu_tree, min_odd_cut};
use rgraphs::{named, Result, VertexSet};

fn main() -> Result<()> {
    let k4 = parse("C~")?;
    println!("graph6 C~ -> n={} m={}", k4.vertex_count(), k4.edge_count());

    // edge lists allow parallel edges: a theta graph with a doubled chord
    let theta = parse("4 6\n0 1\n1 2\n2 3\n3 0\n0 2\n0 2\n")?;
    println!("theta:\n{}", to_edge_list(&theta));
    println!("theta as graph6: {:?}", to_graph6(&theta).map_err(|e| e.to_string()));

    let p = named::petersen();
    let outer = VertexSet::new(10, 0..5)?;
    let cut = boundary(&p, &outer)?;
    println!("Petersen outer 5-cycle has boundary {:?}", cut.boundary);
    println!("Petersen bipartite: {}", is_bipartite(&p).is_some());

    let tree = gomory_hu_tree(&p)?;
    for link in tree.links() {
        println!("  tree link {}-{} carries {}", link.u, link.v, link.flow);
    }
    let odd = min_odd_cut(&p)?;
    println!("Petersen min odd cut: {} via {:?}", odd.size, odd.side.members());

    let bridged = named::bridged_cubic();
    println!("bridged cubic: bridges {:?}, min odd cut {}", bridges(&bridged), min_odd_cut(&bridged)?.size);
    Ok(())
}
