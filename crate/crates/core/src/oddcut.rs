//! Odd cuts, r-graph recognition and the structural trichotomy.
//!
//! The minimum odd cut is read off a Gomory–Hu tree: among the tree links
//! whose removal leaves odd components, the one with the smallest flow gives
//! a globally minimum odd cut. Non-trivial size-`r` odd cuts are found either
//! through a maximal barrier with more than one vertex (its non-singleton
//! components have boundary exactly `r`) or, failing that, by an exhaustive
//! scan of odd subsets.

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::matching::{bicriticality_violation, find_maximal_barrier, is_bicritical, BRUTE_FORCE_BOUND};
use crate::multigraph::{
    boundary, boundary_of_mask, boundary_size_of_mask, is_bipartite, vertex_connectivity_at_least,
    Bipartition, CutEdges, Multigraph, VertexSet,
};

/// Largest order for the exhaustive odd-subset scan in
/// [`find_nontrivial_r_cut`].
pub const SUBSET_SCAN_BOUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeLink {
    pub u: usize,
    pub v: usize,
    pub flow: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GomoryHuTree {
    n: usize,
    links: Vec<TreeLink>,
}

impl GomoryHuTree {
    pub fn links(&self) -> &[TreeLink] {
        &self.links
    }

    fn tree_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, l) in self.links.iter().enumerate() {
            adj[l.u].push((l.v, i));
            adj[l.v].push((l.u, i));
        }
        adj
    }

    /// Vertices on `links[link].u`'s side once the link is removed.
    pub fn link_side(&self, link: usize) -> VertexSet {
        let adj = self.tree_adjacency();
        let start = self.links[link].u;
        let mut mask = vec![false; self.n];
        mask[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, i) in &adj[x] {
                if i != link && !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        VertexSet::from_mask(&mask)
    }

    /// Smallest flow on the tree path between `a` and `b`.
    pub fn min_cut_value(&self, a: usize, b: usize) -> Option<u64> {
        if a == b {
            return None;
        }
        let adj = self.tree_adjacency();
        let mut best: Vec<Option<u64>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(y, i) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    let f = self.links[i].flow;
                    best[y] = Some(best[x].map_or(f, |b| b.min(f)));
                    queue.push_back(y);
                }
            }
        }
        best[b]
    }
}

/// Gomory–Hu tree by Gusfield's method, with `n - 1` max-flow computations in
/// fixed vertex order.
pub fn gomory_hu_tree(g: &Multigraph) -> Result<GomoryHuTree> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "Gomory-Hu tree needs at least two vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut net = FlowNetwork::from_graph(g);
    let mut parent = vec![0usize; n];
    let mut flow = vec![0u64; n];
    for s in 1..n {
        let t = parent[s];
        let (value, side) = net.min_cut(s, t);
        flow[s] = value;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            flow[s] = flow[t];
            flow[t] = value;
        }
    }
    let links = (1..n)
        .map(|s| TreeLink {
            u: s,
            v: parent[s],
            flow: flow[s],
        })
        .collect();
    Ok(GomoryHuTree { n, links })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCutResult {
    /// Odd side, the lexicographically smaller of the two.
    pub side: VertexSet,
    pub size: usize,
    pub cut_edges: Vec<usize>,
}

pub fn min_odd_cut(g: &Multigraph) -> Result<OddCutResult> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(Error::Parity(format!(
            "minimum odd cut needs an even number of vertices, got {n}"
        )));
    }
    let tree = gomory_hu_tree(g)?;
    let mut best: Option<(u64, VertexSet)> = None;
    for (i, link) in tree.links().iter().enumerate() {
        if best.as_ref().is_some_and(|(f, _)| *f <= link.flow) {
            continue;
        }
        let side = tree.link_side(i);
        if side.is_odd() {
            best = Some((link.flow, side));
        }
    }
    // n even and n >= 2: the leaf side of any link containing a leaf is odd
    let (flow, side) = best.expect("some Gomory-Hu link separates an odd side");
    let side = side.canonical_side();
    let cut = boundary(g, &side)?;
    if cut.len() as u64 != flow {
        return Err(Error::Integrity(format!(
            "Gomory-Hu link flow {flow} differs from its fundamental cut size {}",
            cut.len()
        )));
    }
    Ok(OddCutResult {
        size: cut.len(),
        cut_edges: cut.boundary,
        side,
    })
}

/// The first clause of the r-graph definition that fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum RGraphFailure {
    Empty,
    Disconnected { component: VertexSet },
    OddOrder { n: usize },
    Degree { vertex: usize, degree: usize },
    SmallOddCut { side: VertexSet, size: usize, cut_edges: Vec<usize> },
}

impl fmt::Display for RGraphFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RGraphFailure::Empty => write!(f, "graph has no vertices"),
            RGraphFailure::Disconnected { component } => {
                write!(f, "disconnected (component {:?})", component.members())
            }
            RGraphFailure::OddOrder { n } => write!(f, "odd number of vertices ({n})"),
            RGraphFailure::Degree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            RGraphFailure::SmallOddCut { side, size, .. } => {
                write!(f, "odd set {:?} has only {size} boundary edges", side.members())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RGraphCheck {
    pub holds: bool,
    pub failure: Option<RGraphFailure>,
}

impl RGraphCheck {
    pub(crate) fn into_result(self, r: usize) -> Result<()> {
        match self.failure {
            None => Ok(()),
            Some(reason) => Err(Error::NotRGraph { r, reason }),
        }
    }
}

/// Connected, even order, `r`-regular, and every odd cut has at least `r`
/// edges.
pub fn is_r_graph(g: &Multigraph, r: usize) -> RGraphCheck {
    let fail = |failure| RGraphCheck {
        holds: false,
        failure: Some(failure),
    };
    let n = g.vertex_count();
    if n == 0 {
        return fail(RGraphFailure::Empty);
    }
    let comps = g.components();
    if comps.len() > 1 {
        return fail(RGraphFailure::Disconnected {
            component: VertexSet::new(n, comps[0].iter().copied()).expect("component in range"),
        });
    }
    if n % 2 == 1 {
        return fail(RGraphFailure::OddOrder { n });
    }
    if let Some((vertex, degree)) = g.regularity_violation(r) {
        return fail(RGraphFailure::Degree { vertex, degree });
    }
    let cut = min_odd_cut(g).expect("connected graph of even order");
    if cut.size < r {
        return fail(RGraphFailure::SmallOddCut {
            side: cut.side,
            size: cut.size,
            cut_edges: cut.cut_edges,
        });
    }
    RGraphCheck {
        holds: true,
        failure: None,
    }
}

fn require_r_graph(g: &Multigraph, r: usize) -> Result<()> {
    is_r_graph(g, r).into_result(r)
}

/// A non-trivial odd set with exactly `r` boundary edges, if one exists.
///
/// The returned side is the lexicographically smaller of the set and its
/// complement (both are witnesses).
pub fn find_nontrivial_r_cut(g: &Multigraph, r: usize) -> Result<Option<VertexSet>> {
    require_r_graph(g, r)?;
    let n = g.vertex_count();
    if n <= 2 {
        return Ok(None);
    }
    if n <= BRUTE_FORCE_BOUND {
        if let Some(x) = barrier_cut(g, r)? {
            return Ok(Some(x));
        }
    }
    if n > SUBSET_SCAN_BOUND {
        return Err(Error::ResourceLimit(format!(
            "no barrier witness and odd-subset scan needs n <= {SUBSET_SCAN_BOUND}, got {n}"
        )));
    }
    Ok(scan_nontrivial_r_cut(g, r))
}

/// Barrier route: a maximal barrier with `|S| > 1` has components whose
/// boundaries are exactly `r`; any non-singleton one is a witness.
fn barrier_cut(g: &Multigraph, r: usize) -> Result<Option<VertexSet>> {
    for anchor in 0..g.vertex_count() {
        let mb = find_maximal_barrier(g, anchor)?;
        if mb.barrier.set.len() < 2 {
            continue;
        }
        for comp in &mb.barrier.components {
            if comp.len() > 1 {
                let size = boundary(g, comp)?.len();
                if size != r {
                    return Err(Error::Integrity(format!(
                        "component {:?} of maximal barrier {:?} has boundary {size}, expected {r}",
                        comp.members(),
                        mb.barrier.set.members()
                    )));
                }
                return Ok(Some(comp.clone().canonical_side()));
            }
        }
    }
    Ok(None)
}

/// Odd subsets of size 3, 5, ..., n - 3 in lexicographic order.
fn scan_nontrivial_r_cut(g: &Multigraph, r: usize) -> Option<VertexSet> {
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for size in (3..=n.saturating_sub(3)).step_by(2) {
        for x in (0..n).combinations(size) {
            for &v in &x {
                mask[v] = true;
            }
            let hit = boundary_size_of_mask(g, &mask) == r;
            for &v in &x {
                mask[v] = false;
            }
            if hit {
                return Some(VertexSet::new(n, x).expect("subset in range").canonical_side());
            }
        }
    }
    None
}

/// The three conditions of the decomposition trichotomy with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub bipartite: bool,
    pub bipartition: Option<Bipartition>,
    pub nontrivial_r_cut: bool,
    pub cut: Option<CutEdges>,
    pub bicritical: bool,
    /// A pair whose deletion leaves no perfect matching, when not bicritical
    /// and `n >= 4`.
    pub bicriticality_violation: Option<(usize, usize)>,
    pub satisfied: bool,
}

pub fn classify(g: &Multigraph, r: usize) -> Result<Classification> {
    require_r_graph(g, r)?;
    let bipartition = is_bipartite(g);
    let cut = match find_nontrivial_r_cut(g, r)? {
        Some(x) => Some(boundary(g, &x)?),
        None => None,
    };
    let bicritical = is_bicritical(g);
    let violation = if bicritical || g.vertex_count() < 4 {
        None
    } else {
        bicriticality_violation(g)
    };
    Ok(Classification {
        bipartite: bipartition.is_some(),
        bipartition,
        nontrivial_r_cut: cut.is_some(),
        cut,
        bicritical,
        bicriticality_violation: violation,
        satisfied: false,
    }
    .settle())
}

impl Classification {
    fn settle(mut self) -> Self {
        self.satisfied = self.bipartite || self.nontrivial_r_cut || self.bicritical;
        self
    }
}

/// Non-bipartite, bicritical and 3-vertex-connected.
pub fn is_brick(g: &Multigraph) -> bool {
    is_bipartite(g).is_none() && is_bicritical(g) && vertex_connectivity_at_least(g, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BrickTheoremCheck {
    /// Bicritical, non-bipartite and without a non-trivial size-`r` odd cut.
    pub hypothesis: bool,
    /// `is_brick`, evaluated only when the hypothesis holds.
    pub is_brick: Option<bool>,
}

impl BrickTheoremCheck {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.is_brick == Some(true)
    }
}

/// Checks on one r-graph that bicritical + non-bipartite + no non-trivial
/// size-`r` odd cut implies being a brick.
pub fn check_brick_theorem(g: &Multigraph, r: usize) -> Result<BrickTheoremCheck> {
    require_r_graph(g, r)?;
    let hypothesis = is_bipartite(g).is_none()
        && is_bicritical(g)
        && find_nontrivial_r_cut(g, r)?.is_none();
    Ok(BrickTheoremCheck {
        hypothesis,
        is_brick: hypothesis.then(|| is_brick(g)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutEdgeImage {
    pub edge: usize,
    pub in_g1: usize,
    pub in_g2: usize,
}

/// The two contractions across an odd cut `∂(X)`.
///
/// `g1` keeps `X` (renumbered in ascending order) and shrinks the rest to
/// the vertex `contracted1 = |X|`; `g2` keeps the complement and shrinks `X`
/// to `contracted2 = n - |X|`. Surviving edges keep their relative order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionPair {
    pub graph: Multigraph,
    pub side: VertexSet,
    pub g1: Multigraph,
    pub g2: Multigraph,
    pub contracted1: usize,
    pub contracted2: usize,
    /// Per original vertex: its index in `g1` (members of `X`) or `g2`.
    pub g1_vertex: Vec<Option<usize>>,
    pub g2_vertex: Vec<Option<usize>>,
    /// Per original edge: its id in `g1` / `g2`, if it survives there.
    pub g1_edge: Vec<Option<usize>>,
    pub g2_edge: Vec<Option<usize>>,
    /// Boundary edges of `X` in ascending id order.
    pub cut: Vec<CutEdgeImage>,
}

pub fn contract_side(g: &Multigraph, x: &VertexSet) -> Result<ContractionPair> {
    let n = g.vertex_count();
    boundary(g, x)?;
    if !x.is_odd() {
        return Err(Error::InvalidArgument(format!(
            "contraction side {:?} has even size",
            x.members()
        )));
    }
    if x.is_trivial() {
        return Err(Error::InvalidArgument(format!(
            "contraction side {:?} is trivial",
            x.members()
        )));
    }
    let inside = {
        let mut m = vec![false; n];
        for &v in x.members() {
            m[v] = true;
        }
        m
    };
    let mut g1_vertex = vec![None; n];
    let mut g2_vertex = vec![None; n];
    let (mut k1, mut k2) = (0, 0);
    for v in 0..n {
        if inside[v] {
            g1_vertex[v] = Some(k1);
            k1 += 1;
        } else {
            g2_vertex[v] = Some(k2);
            k2 += 1;
        }
    }
    let (c1, c2) = (k1, k2);
    let m = g.edge_count();
    let mut g1_edge = vec![None; m];
    let mut g2_edge = vec![None; m];
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    let mut cut = Vec::new();
    for e in g.edges() {
        let img1 = |w: usize| g1_vertex[w].unwrap_or(c1);
        let img2 = |w: usize| g2_vertex[w].unwrap_or(c2);
        match (inside[e.u], inside[e.v]) {
            (true, true) => {
                g1_edge[e.id] = Some(p1.len());
                p1.push((img1(e.u), img1(e.v)));
            }
            (false, false) => {
                g2_edge[e.id] = Some(p2.len());
                p2.push((img2(e.u), img2(e.v)));
            }
            _ => {
                cut.push(CutEdgeImage {
                    edge: e.id,
                    in_g1: p1.len(),
                    in_g2: p2.len(),
                });
                g1_edge[e.id] = Some(p1.len());
                g2_edge[e.id] = Some(p2.len());
                p1.push((img1(e.u), img1(e.v)));
                p2.push((img2(e.u), img2(e.v)));
            }
        }
    }
    debug_assert_eq!(cut.len(), boundary_of_mask(g, &inside).len());
    Ok(ContractionPair {
        graph: g.clone(),
        side: x.clone(),
        g1: Multigraph::new(c1 + 1, p1)?,
        g2: Multigraph::new(c2 + 1, p2)?,
        contracted1: c1,
        contracted2: c2,
        g1_vertex,
        g2_vertex,
        g1_edge,
        g2_edge,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn gomory_hu_examples() {
        let digon = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let t = gomory_hu_tree(&digon).unwrap();
        assert_eq!(t.links(), &[TreeLink { u: 1, v: 0, flow: 2 }]);
        for g in [named::k4(), named::petersen()] {
            let t = gomory_hu_tree(&g).unwrap();
            assert_eq!(t.links().len(), g.vertex_count() - 1);
            assert!(t.links().iter().all(|l| l.flow == 3));
        }
        let disconnected = Multigraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(gomory_hu_tree(&disconnected), Err(Error::Disconnected));
    }

    #[test]
    fn gomory_hu_path_queries() {
        let g = named::path(4);
        let t = gomory_hu_tree(&g).unwrap();
        assert_eq!(t.min_cut_value(0, 3), Some(1));
        let prism = named::prism();
        let t = gomory_hu_tree(&prism).unwrap();
        for (a, b) in (0..6).tuple_combinations() {
            assert_eq!(t.min_cut_value(a, b), Some(3));
        }
    }

    #[test]
    fn min_odd_cut_examples() {
        let c = min_odd_cut(&named::k2()).unwrap();
        assert_eq!((c.side.members(), c.size), (&[0][..], 1));
        assert_eq!(min_odd_cut(&named::petersen()).unwrap().size, 3);
        assert!(matches!(min_odd_cut(&named::k3()), Err(Error::Parity(_))));
        let c = min_odd_cut(&named::bridged_cubic()).unwrap();
        assert_eq!(c.size, 1);
        assert_eq!(c.side.members(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn r_graph_examples() {
        assert!(is_r_graph(&named::petersen(), 3).holds);
        assert!(is_r_graph(&named::k33(), 3).holds);
        let check = is_r_graph(&named::bridged_cubic(), 3);
        assert!(!check.holds);
        match check.failure.unwrap() {
            RGraphFailure::SmallOddCut { side, size, cut_edges } => {
                assert_eq!(size, 1);
                assert_eq!(side.members(), &[0, 1, 2, 3, 4]);
                assert_eq!(cut_edges, vec![14]);
            }
            other => panic!("unexpected failure {other:?}"),
        }
        assert_eq!(
            is_r_graph(&named::k4(), 2).failure,
            Some(RGraphFailure::Degree { vertex: 0, degree: 3 })
        );
        assert_eq!(
            is_r_graph(&named::k3(), 2).failure,
            Some(RGraphFailure::OddOrder { n: 3 })
        );
        assert!(matches!(
            is_r_graph(&Multigraph::new(4, [(0, 1), (2, 3)]).unwrap(), 1).failure,
            Some(RGraphFailure::Disconnected { .. })
        ));
        assert_eq!(is_r_graph(&Multigraph::empty(0), 3).failure, Some(RGraphFailure::Empty));
    }

    #[test]
    fn nontrivial_cut_examples() {
        let x = find_nontrivial_r_cut(&named::prism(), 3).unwrap().unwrap();
        assert_eq!(x.members(), &[0, 1, 2]);
        assert_eq!(find_nontrivial_r_cut(&named::k4(), 3).unwrap(), None);
        assert_eq!(find_nontrivial_r_cut(&named::petersen(), 3).unwrap(), None);
        // K3,3: side A is a maximal barrier whose components are singletons
        assert_eq!(find_nontrivial_r_cut(&named::k33(), 3).unwrap(), None);
        assert!(matches!(
            find_nontrivial_r_cut(&named::k4(), 2),
            Err(Error::NotRGraph { r: 2, .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&named::k33(), 3).unwrap();
        assert_eq!((c.bipartite, c.nontrivial_r_cut, c.bicritical), (true, false, false));
        assert!(c.bicriticality_violation.is_some());
        let c = classify(&named::prism(), 3).unwrap();
        assert_eq!((c.bipartite, c.nontrivial_r_cut, c.bicritical), (false, true, true));
        assert_eq!(c.cut.as_ref().unwrap().boundary, vec![6, 7, 8]);
        let c = classify(&named::petersen(), 3).unwrap();
        assert_eq!((c.bipartite, c.nontrivial_r_cut, c.bicritical), (false, false, true));
        assert!(c.satisfied);

        let digon3 = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let c = classify(&digon3, 3).unwrap();
        assert!(c.bipartite && c.satisfied && !c.nontrivial_r_cut);

        assert!(matches!(
            classify(&named::bridged_cubic(), 3),
            Err(Error::NotRGraph { .. })
        ));
    }

    #[test]
    fn brick_examples() {
        assert!(is_brick(&named::k4()));
        assert!(is_brick(&named::petersen()));
        assert!(!is_brick(&named::k33()));
        assert!(is_brick(&named::prism()));
    }

    #[test]
    fn brick_theorem_examples() {
        let c = check_brick_theorem(&named::petersen(), 3).unwrap();
        assert!(c.hypothesis && c.holds());
        let c = check_brick_theorem(&named::k33(), 3).unwrap();
        assert!(!c.hypothesis && c.holds());
        let c = check_brick_theorem(&named::prism(), 3).unwrap();
        assert!(!c.hypothesis && c.holds());
    }

    #[test]
    fn contraction_of_prism() {
        let prism = named::prism();
        let pair = contract_side(&prism, &VertexSet::new(6, [0, 1, 2]).unwrap()).unwrap();
        for h in [&pair.g1, &pair.g2] {
            assert_eq!((h.vertex_count(), h.edge_count()), (4, 6));
            assert!(h.is_regular(3));
            assert!(h.is_simple());
            assert!(is_r_graph(h, 3).holds);
        }
        assert_eq!(pair.cut.len(), 3);
        assert_eq!(pair.g1.degree(pair.contracted1), 3);
        assert_eq!(pair.g2.degree(pair.contracted2), 3);
    }

    #[test]
    fn contraction_of_even_cycle() {
        let c6 = named::cycle(6);
        assert!(is_r_graph(&c6, 2).holds);
        let pair = contract_side(&c6, &VertexSet::new(6, [0, 1, 2]).unwrap()).unwrap();
        assert_eq!(pair.cut.len(), 2);
        for h in [&pair.g1, &pair.g2] {
            assert_eq!(h.vertex_count(), 4);
            assert!(is_r_graph(h, 2).holds);
        }
    }

    #[test]
    fn contraction_rejects_bad_sides() {
        let k4 = named::k4();
        assert!(matches!(
            contract_side(&k4, &VertexSet::new(4, [0]).unwrap()),
            Err(Error::InvalidArgument(_))
        ));
        let prism = named::prism();
        assert!(matches!(
            contract_side(&prism, &VertexSet::new(6, [0, 1]).unwrap()),
            Err(Error::InvalidArgument(_))
        ));
    }
}
