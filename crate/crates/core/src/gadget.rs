//! Vertex-to-multicycle expansion and the fixed-matching refutation.
//!
//! Every vertex of a `(2k+1)`-regular graph `H` is replaced by a cycle of
//! length `r = 2k+1` whose edges have multiplicity `k`. The original ("old")
//! edges then form a perfect matching `F` of the expanded graph `G`. When `H`
//! is an unslicable `r`-graph, no `2k` perfect matchings `F_1..F_2k` of `G`
//! satisfy `F ∩ F_i ∩ F_j = ∅` for all pairs.

use itertools::Itertools;
use serde::Serialize;

use crate::covers::{fixed_f_search, Budget, MatchingFamily, Outcome};
use crate::error::{Error, Result};
use crate::format::to_edge_list;
use crate::matching::{enumerate_perfect_matchings, PerfectMatching};
use crate::multigraph::{boundary_size_of_mask, delete_edges, Multigraph, VertexSet};
use crate::oddcut::{gomory_hu_tree, is_r_graph, min_odd_cut, RGraphCheck};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Slicability {
    Unslicable,
    /// Removing `matching` leaves an `(r-1)`-graph.
    Slicable { matching: PerfectMatching },
    /// The matching list was truncated before a slicing matching was seen.
    Indeterminate,
}

/// Whether some perfect matching `F` of `H` leaves `H - F` an `(r-1)`-graph.
pub fn is_unslicable(h: &Multigraph, r: usize, budget: &Budget) -> Result<Slicability> {
    is_r_graph(h, r).into_result(r)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let pms = enumerate_perfect_matchings(h, budget.pm_cap);
    for pm in &pms.matchings {
        let rest = delete_edges(h, pm.edges())?;
        if is_r_graph(&rest.graph, r - 1).holds {
            return Ok(Slicability::Slicable {
                matching: pm.clone(),
            });
        }
    }
    Ok(if pms.truncated {
        Slicability::Indeterminate
    } else {
        Slicability::Unslicable
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetResult {
    pub h: Multigraph,
    pub k: usize,
    pub graph: Multigraph,
    /// Images of the edges of `H`.
    pub f: PerfectMatching,
    /// Cycle vertices replacing each vertex of `H`, in cycle order.
    pub cycle_of: Vec<Vec<usize>>,
    /// Id in `graph` of each edge of `H`.
    pub old_edge_of: Vec<usize>,
}

impl GadgetResult {
    pub fn r(&self) -> usize {
        2 * self.k + 1
    }

    /// Old edges leaving the cycle of `v`, ascending.
    pub fn cycle_boundary(&self, v: usize) -> Vec<usize> {
        self.h
            .incident(v)
            .iter()
            .map(|&(_, e)| self.old_edge_of[e])
            .sorted()
            .collect()
    }
}

/// Everything needed to re-verify a gadget externally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetExport {
    pub k: usize,
    pub edge_list: String,
    pub f: Vec<usize>,
    pub cycle_of: Vec<Vec<usize>>,
    pub old_edge_of: Vec<usize>,
}

impl From<&GadgetResult> for GadgetExport {
    fn from(res: &GadgetResult) -> Self {
        GadgetExport {
            k: res.k,
            edge_list: to_edge_list(&res.graph),
            f: res.f.edges().to_vec(),
            cycle_of: res.cycle_of.clone(),
            old_edge_of: res.old_edge_of.clone(),
        }
    }
}

/// Expands every vertex of the `(2k+1)`-regular graph `h` into a multicycle.
///
/// Vertex `i` of `h` becomes `r*i .. r*i + r - 1`. Old edges keep their ids
/// `0..|E(h)|`; the edges of `h` at `i`, ascending by id, attach to cycle
/// positions `0..r`. Cycle edges follow, `k` consecutive ids per position
/// pair `(j, j+1 mod r)`.
pub fn build_gadget(h: &Multigraph, k: usize) -> Result<GadgetResult> {
    if k == 0 {
        return Err(Error::Construction("k must be at least 1".into()));
    }
    let r = 2 * k + 1;
    if let Some((v, d)) = h.regularity_violation(r) {
        return Err(Error::Construction(format!(
            "input must be {r}-regular for k = {k}; vertex {v} has degree {d}"
        )));
    }
    let n = h.vertex_count();
    let cycle_of: Vec<Vec<usize>> = (0..n).map(|i| (r * i..r * i + r).collect()).collect();
    // position of each (vertex, edge) attachment
    let mut attach = vec![[usize::MAX; 2]; h.edge_count()];
    for v in 0..n {
        for (pos, &(_, e)) in h.incident(v).iter().enumerate() {
            let edge = h.edges()[e];
            let slot = if edge.u == v { 0 } else { 1 };
            attach[e][slot] = cycle_of[v][pos];
        }
    }
    let mut pairs: Vec<(usize, usize)> = attach.iter().map(|a| (a[0], a[1])).collect();
    for cyc in &cycle_of {
        for j in 0..r {
            for _ in 0..k {
                pairs.push((cyc[j], cyc[(j + 1) % r]));
            }
        }
    }
    let graph = Multigraph::new(n * r, pairs)?;
    let old_edge_of: Vec<usize> = (0..h.edge_count()).collect();
    let f = PerfectMatching::new(&graph, old_edge_of.iter().copied())
        .map_err(|e| Error::Construction(format!("old edges are not a perfect matching: {e}")))?;
    Ok(GadgetResult {
        h: h.clone(),
        k,
        graph,
        f,
        cycle_of,
        old_edge_of,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetRGraphCheck {
    pub r_graph: RGraphCheck,
    /// Every proper part of every cycle is separated by at least `2k` of that
    /// cycle's edges.
    pub cycle_cuts_at_least_2k: bool,
    /// Unions of whole cycles over odd sides of the Gomory–Hu tree of `H`
    /// are odd in `G` with the same cut size, and the minimum odd cut of
    /// `G`, when it crosses no cycle edge, projects to an odd set of `H`
    /// with the same cut size.
    pub projection_consistent: bool,
}

impl GadgetRGraphCheck {
    pub fn holds(&self) -> bool {
        self.r_graph.holds && self.cycle_cuts_at_least_2k && self.projection_consistent
    }
}

fn cycle_cuts_ok(res: &GadgetResult) -> bool {
    let g = &res.graph;
    let need = 2 * res.k;
    res.cycle_of.iter().all(|cyc| {
        let r = cyc.len();
        let local: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter_map(|e| {
                let a = cyc.iter().position(|&x| x == e.u)?;
                let b = cyc.iter().position(|&x| x == e.v)?;
                Some((a, b))
            })
            .collect();
        (1..(1u64 << r) - 1).all(|bits| {
            let inside = |p: usize| bits >> p & 1 == 1;
            local.iter().filter(|&&(a, b)| inside(a) != inside(b)).count() >= need
        })
    })
}

fn lift(res: &GadgetResult, side: &VertexSet) -> Vec<bool> {
    let mut mask = vec![false; res.graph.vertex_count()];
    for &v in side.members() {
        for &x in &res.cycle_of[v] {
            mask[x] = true;
        }
    }
    mask
}

fn projection_ok(res: &GadgetResult) -> Result<bool> {
    let h = &res.h;
    let g = &res.graph;
    if h.vertex_count() >= 2 && h.is_connected() {
        let tree = gomory_hu_tree(h)?;
        for i in 0..tree.links().len() {
            let side = tree.link_side(i);
            if !side.is_odd() {
                continue;
            }
            let mask = lift(res, &side);
            let odd = mask.iter().filter(|&&b| b).count() % 2 == 1;
            let h_cut = boundary_size_of_mask(h, &side.to_mask());
            if !odd || boundary_size_of_mask(g, &mask) != h_cut {
                return Ok(false);
            }
        }
    }
    if g.vertex_count() >= 2 && g.vertex_count() % 2 == 0 && g.is_connected() {
        let cut = min_odd_cut(g)?;
        let old: Vec<bool> = {
            let mut m = vec![false; g.edge_count()];
            for &e in &res.old_edge_of {
                m[e] = true;
            }
            m
        };
        if cut.cut_edges.iter().all(|&e| old[e]) {
            // a cut of old edges only contains each cycle wholly or not at all
            let side = cut.side.to_mask();
            let mut members = Vec::new();
            for (v, cyc) in res.cycle_of.iter().enumerate() {
                let inside = cyc.iter().filter(|&&x| side[x]).count();
                if inside == cyc.len() {
                    members.push(v);
                } else if inside != 0 {
                    return Ok(false);
                }
            }
            let proj = VertexSet::new(h.vertex_count(), members)?;
            if !proj.is_odd() || boundary_size_of_mask(h, &proj.to_mask()) != cut.size {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the expanded graph is a `(2k+1)`-graph, along with the two
/// structural facts behind it.
pub fn verify_gadget_is_rgraph(res: &GadgetResult) -> Result<GadgetRGraphCheck> {
    let r_graph = is_r_graph(&res.graph, res.r());
    Ok(GadgetRGraphCheck {
        r_graph,
        cycle_cuts_at_least_2k: cycle_cuts_ok(res),
        projection_consistent: projection_ok(res)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedFVerdict {
    /// Refuted means no admissible family exists: the counterexample holds.
    pub outcome: Outcome<MatchingFamily>,
    pub matchings_enumerated: usize,
    pub nodes: u64,
    /// Whether the matching searched against is exactly the old edges.
    pub canonical_f: bool,
}

impl FixedFVerdict {
    /// `Some(true)` when no family exists, `None` when indeterminate.
    pub fn confirmed(&self) -> Option<bool> {
        match &self.outcome {
            Outcome::Refuted => Some(true),
            Outcome::Found(_) => Some(false),
            Outcome::Indeterminate(_) => None,
        }
    }
}

/// Exhaustively searches for `2k` distinct perfect matchings of the gadget
/// with `F ∩ F_i ∩ F_j = ∅` for all pairs.
pub fn verify_no_fixed_f_family(res: &GadgetResult, budget: &Budget) -> Result<FixedFVerdict> {
    let g = &res.graph;
    let f = PerfectMatching::new(g, res.f.edges().iter().copied())?;
    let canonical_f = res.old_edge_of.iter().copied().sorted().eq(f.edges().iter().copied());
    let pms = enumerate_perfect_matchings(g, budget.pm_cap);
    let search = fixed_f_search(g, &f, &pms, 2 * res.k, budget);
    Ok(FixedFVerdict {
        outcome: search.outcome,
        matchings_enumerated: pms.matchings.len(),
        nodes: search.nodes,
        canonical_f,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    /// Edges of `H` whose images lie in the matching.
    pub h_edges: Vec<usize>,
    /// Per vertex of `H`: matching edges leaving its cycle (always odd).
    pub boundary_counts: Vec<usize>,
}

impl Projection {
    /// Every cycle is left by exactly one matching edge, so `h_edges` is a
    /// perfect matching of `H`.
    pub fn is_perfect_on_h(&self) -> bool {
        self.boundary_counts.iter().all(|&c| c == 1)
    }
}

pub fn project_matching(res: &GadgetResult, m: &PerfectMatching) -> Result<Projection> {
    let m = PerfectMatching::new(&res.graph, m.edges().iter().copied())
        .map_err(|e| Error::InvalidArgument(format!("not a perfect matching of the gadget: {e}")))?;
    let h_edges: Vec<usize> = (0..res.h.edge_count())
        .filter(|&e| m.contains(res.old_edge_of[e]))
        .collect();
    let mut boundary_counts = vec![0; res.h.vertex_count()];
    for &e in &h_edges {
        let edge = res.h.edges()[e];
        boundary_counts[edge.u] += 1;
        boundary_counts[edge.v] += 1;
    }
    if let Some(v) = boundary_counts.iter().position(|&c| c % 2 == 0) {
        return Err(Error::Integrity(format!(
            "matching meets the cut around vertex {v} in {} edges",
            boundary_counts[v]
        )));
    }
    Ok(Projection {
        h_edges,
        boundary_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn unslicable_examples() {
        let b = Budget::default();
        assert_eq!(is_unslicable(&named::petersen(), 3, &b).unwrap(), Slicability::Unslicable);
        match is_unslicable(&named::k4(), 3, &b).unwrap() {
            Slicability::Slicable { matching } => assert_eq!(matching.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            is_unslicable(&named::k33(), 3, &b).unwrap(),
            Slicability::Slicable { .. }
        ));
    }

    #[test]
    fn gadget_counts() {
        let res = build_gadget(&named::petersen(), 1).unwrap();
        assert_eq!((res.graph.vertex_count(), res.graph.edge_count()), (30, 45));
        assert!(res.graph.is_regular(3));
        assert_eq!(res.f.edges(), (0..15).collect::<Vec<_>>().as_slice());

        let res = build_gadget(&named::k4(), 1).unwrap();
        assert_eq!((res.graph.vertex_count(), res.graph.edge_count()), (12, 18));

        assert!(matches!(
            build_gadget(&named::petersen(), 2),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn gadget_k2_has_parallel_cycle_edges() {
        // K6 is 5-regular
        let pairs: Vec<_> = (0..6).tuple_combinations().collect();
        let k6 = Multigraph::new(6, pairs).unwrap();
        let res = build_gadget(&k6, 2).unwrap();
        assert!(res.graph.is_regular(5));
        assert_eq!(res.graph.vertex_count(), 30);
        assert_eq!(res.graph.edge_count(), 15 + 6 * 5 * 2);
        assert_eq!(res.graph.multiplicity(0, 1), 2);
        for v in 0..6 {
            assert_eq!(res.cycle_boundary(v).len(), 5);
        }
    }

    #[test]
    fn gadget_is_r_graph() {
        for h in [named::petersen(), named::k4()] {
            let res = build_gadget(&h, 1).unwrap();
            let check = verify_gadget_is_rgraph(&res).unwrap();
            assert!(check.holds(), "{check:?}");
        }
    }

    #[test]
    fn corrupted_gadget_fails_degree_clause() {
        let res = build_gadget(&named::petersen(), 1).unwrap();
        let cut = delete_edges(&res.graph, &[15]).unwrap();
        let bad = GadgetResult {
            graph: cut.graph,
            ..res
        };
        let check = verify_gadget_is_rgraph(&bad).unwrap();
        assert!(!check.holds());
        assert!(matches!(
            check.r_graph.failure,
            Some(crate::oddcut::RGraphFailure::Degree { .. })
        ));
    }

    #[test]
    fn projections_have_odd_counts() {
        let res = build_gadget(&named::petersen(), 1).unwrap();
        let p = project_matching(&res, &res.f).unwrap();
        assert_eq!(p.h_edges.len(), 15);
        assert!(p.boundary_counts.iter().all(|&c| c == 3));

        let res = build_gadget(&named::k4(), 1).unwrap();
        for m in enumerate_perfect_matchings(&res.graph, 1000).matchings {
            let p = project_matching(&res, &m).unwrap();
            assert!(p.boundary_counts.iter().all(|&c| c == 1 || c == 3));
        }
    }

    #[test]
    fn projection_rejects_non_matchings() {
        let res = build_gadget(&named::k4(), 1).unwrap();
        let not_pm = PerfectMatching::from_sorted_unchecked(vec![0]);
        assert!(matches!(
            project_matching(&res, &not_pm),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn fixed_f_refutation_on_petersen_gadget() {
        let res = build_gadget(&named::petersen(), 1).unwrap();
        let v = verify_no_fixed_f_family(&res, &Budget::default()).unwrap();
        assert_eq!(v.confirmed(), Some(true));
        assert!(v.canonical_f);
        assert_eq!(v.matchings_enumerated, 64);
    }

    #[test]
    fn fixed_f_negative_control_on_k4_gadget() {
        let res = build_gadget(&named::k4(), 1).unwrap();
        let v = verify_no_fixed_f_family(&res, &Budget::default()).unwrap();
        assert_eq!(v.confirmed(), Some(false));
    }

    #[test]
    fn non_canonical_f_is_flagged() {
        let res = build_gadget(&named::k4(), 1).unwrap();
        let other = enumerate_perfect_matchings(&res.graph, 1000)
            .matchings
            .into_iter()
            .find(|m| m != &res.f)
            .unwrap();
        let swapped = GadgetResult { f: other, ..res };
        let v = verify_no_fixed_f_family(&swapped, &Budget::default()).unwrap();
        assert!(!v.canonical_f);
    }
}
