//! Fulkerson covers, triple-empty families and families avoiding a fixed
//! perfect matching.

use rgraphs::covers::{fixed_f_family, fulkerson_cover, triple_empty_family, Budget, Outcome};
use rgraphs::matching::enumerate_perfect_matchings;
use rgraphs::{named, Result};

fn main() -> Result<()> {
    let b = Budget::default();
    let p = named::petersen();

    if let Outcome::Found(cover) = fulkerson_cover(&p, 3, &b)?.outcome {
        println!("Petersen Fulkerson cover:");
        for m in &cover.matchings {
            println!("  {:?}", m.edges());
        }
    }

    for t in [3, 6] {
        let res = triple_empty_family(&p, t, &b)?;
        println!("Petersen triple-empty family of {t}: {}", res.outcome.status());
    }

    let f = enumerate_perfect_matchings(&p, 10).matchings[0].clone();
    let res = fixed_f_family(&p, &f, 2, &b)?;
    println!("two matchings avoiding F = {:?} pairwise: {}", f.edges(), res.outcome.status());
    if let Outcome::Found(fam) = res.outcome {
        for m in &fam.matchings {
            println!("  {:?}", m.edges());
        }
    }
    Ok(())
}
