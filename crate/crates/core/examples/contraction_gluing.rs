//! Contract both sides of a tight cut, solve the halves, glue the answers.

use rgraphs::covers::{
    check_fulkerson_cover, check_proper_coloring, fulkerson_cover, glue_colorings, glue_covers,
    proper_edge_coloring, Budget, Outcome,
};
use rgraphs::oddcut::{contract_side, find_nontrivial_r_cut};
use rgraphs::{named, Error, Result};

fn found<T>(o: Outcome<T>) -> Result<T> {
    match o {
        Outcome::Found(t) => Ok(t),
        _ => Err(Error::Precondition("side unsolved".into())),
    }
}

fn main() -> Result<()> {
    let g = named::prism();
    let b = Budget::default();
    let x = find_nontrivial_r_cut(&g, 3)?.ok_or_else(|| Error::Precondition("no tight cut".into()))?;
    let pair = contract_side(&g, &x)?;
    println!("side {:?}, cut edges {:?}", x.members(), pair.cut);
    println!("G1: n={} m={}", pair.g1.vertex_count(), pair.g1.edge_count());
    println!("G2: n={} m={}", pair.g2.vertex_count(), pair.g2.edge_count());

    let c1 = found(proper_edge_coloring(&pair.g1, 3, &b)?.outcome)?;
    let c2 = found(proper_edge_coloring(&pair.g2, 3, &b)?.outcome)?;
    let glued = glue_colorings(&pair, &c1, &c2)?;
    check_proper_coloring(&g, &glued)?;
    println!("glued colouring {:?}", glued.assignment);

    let f1 = found(fulkerson_cover(&pair.g1, 3, &b)?.outcome)?;
    let f2 = found(fulkerson_cover(&pair.g2, 3, &b)?.outcome)?;
    let cover = glue_covers(&pair, &f1, &f2)?;
    check_fulkerson_cover(&g, &cover)?;
    println!("glued cover verified, {} matchings", cover.matchings.len());
    Ok(())
}
