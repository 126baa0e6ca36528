//! Expand Petersen into its 30-vertex gadget and confirm that no two
//! perfect matchings avoid the old edges pairwise. K4 is the control.

use rgraphs::covers::Budget;
use rgraphs::gadget::{
    build_gadget, is_unslicable, project_matching, verify_gadget_is_rgraph,
    verify_no_fixed_f_family,
};
use rgraphs::matching::enumerate_perfect_matchings;
use rgraphs::{named, Result};

fn main() -> Result<()> {
    let b = Budget::default();
    for (name, h) in [("Petersen", named::petersen()), ("K4", named::k4())] {
        println!("{name}: {:?}", is_unslicable(&h, 3, &b)?);
        let res = build_gadget(&h, 1)?;
        let g = &res.graph;
        println!(
            "  gadget n={} m={} 3-regular={}",
            g.vertex_count(),
            g.edge_count(),
            g.is_regular(3)
        );
        println!("  r-graph check holds: {}", verify_gadget_is_rgraph(&res)?.holds());
        let verdict = verify_no_fixed_f_family(&res, &b)?;
        println!(
            "  {} perfect matchings, no admissible pair: {:?}",
            verdict.matchings_enumerated,
            verdict.confirmed()
        );
        let pm = &enumerate_perfect_matchings(g, 1).matchings[0];
        let proj = project_matching(&res, pm)?;
        println!("  first matching projects to H edges {:?}", proj.h_edges);
    }
    Ok(())
}
