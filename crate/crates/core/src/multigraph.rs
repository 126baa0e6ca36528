//! Loopless multigraphs with individually identified parallel edges.
//!
//! Vertices are `0..n`, edges are `0..m` in insertion order. Multiplicity of a
//! vertex pair is never stored; it is the number of edges joining the pair.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// The endpoint opposite to `w`. `w` must be an endpoint.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_endpoint(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// Endpoints as `(min, max)`.
    pub fn normalized(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbour, edge id), ascending by edge id
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn new<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        for (id, (u, v)) in pairs.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            edges.push(Edge { id, u, v });
            incidence[u].push((v, id));
            incidence[v].push((u, id));
        }
        Ok(Multigraph { n, edges, incidence })
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<Edge> {
        self.edges.get(id).copied().ok_or(Error::InvalidEdge {
            edge: id,
            m: self.edges.len(),
        })
    }

    /// `(neighbour, edge id)` pairs at `v`, ascending by edge id.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// First vertex whose degree differs from `r`, with its degree.
    pub fn regularity_violation(&self, r: usize) -> Option<(usize, usize)> {
        (0..self.n).map(|v| (v, self.degree(v))).find(|&(_, d)| d != r)
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.regularity_violation(r).is_none()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incidence[u].iter().filter(|&&(w, _)| w == v).count()
    }

    /// Underlying simple graph: sorted distinct neighbours per vertex.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        self.incidence
            .iter()
            .map(|inc| inc.iter().map(|&(w, _)| w).sorted().dedup().collect())
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().map(Edge::normalized).all_unique()
    }

    /// Connected components of the subgraph induced by vertices with
    /// `alive[v]`, each sorted, ordered by smallest member.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &(w, _) in &self.incidence[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n])
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}`.
impl Serialize for Multigraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Multigraph", 2)?;
        st.serialize_field("n", &self.vertex_count())?;
        let edges: Vec<[usize; 2]> = self.edges().iter().map(|e| [e.u, e.v]).collect();
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// A subset of the vertices of a graph on `universe` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let members: Vec<usize> = members.into_iter().sorted().dedup().collect();
        if let Some(&v) = members.last() {
            if v >= universe {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    n: universe,
                });
            }
        }
        Ok(VertexSet { universe, members })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet {
            universe: mask.len(),
            members: (0..mask.len()).filter(|&v| mask[v]).collect(),
        }
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            members: Vec::new(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_odd(&self) -> bool {
        self.members.len() % 2 == 1
    }

    /// Trivial sets have size 1 or `universe - 1`.
    pub fn is_trivial(&self) -> bool {
        let k = self.members.len();
        k == 1 || k + 1 == self.universe
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.to_mask();
        VertexSet {
            universe: self.universe,
            members: (0..self.universe).filter(|&v| !mask[v]).collect(),
        }
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    /// The lexicographically smaller of this set and its complement.
    pub fn canonical_side(self) -> VertexSet {
        let other = self.complement();
        if other.members < self.members {
            other
        } else {
            self
        }
    }

    fn check_against(&self, g: &Multigraph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::InvalidVertex {
                vertex: v,
                n: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    /// Mask over `g`'s vertices.
    fn mask_for(&self, g: &Multigraph) -> Result<Vec<bool>> {
        self.check_against(g)?;
        let mut mask = vec![false; g.vertex_count()];
        for &v in &self.members {
            mask[v] = true;
        }
        Ok(mask)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// The edges with exactly one endpoint in `side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutEdges {
    pub side: VertexSet,
    pub boundary: Vec<usize>,
}

impl CutEdges {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

pub fn boundary(g: &Multigraph, x: &VertexSet) -> Result<CutEdges> {
    let mask = x.mask_for(g)?;
    Ok(CutEdges {
        side: x.clone(),
        boundary: boundary_of_mask(g, &mask),
    })
}

pub(crate) fn boundary_of_mask(g: &Multigraph, mask: &[bool]) -> Vec<usize> {
    g.edges()
        .iter()
        .filter(|e| mask[e.u] != mask[e.v])
        .map(|e| e.id)
        .collect()
}

pub(crate) fn boundary_size_of_mask(g: &Multigraph, mask: &[bool]) -> usize {
    g.edges().iter().filter(|e| mask[e.u] != mask[e.v]).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Two-colouring by BFS; the smallest vertex of every component goes left.
pub fn is_bipartite(g: &Multigraph) -> Option<Bipartition> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let cv = colour[v].unwrap();
            for &(w, _) in g.incident(v) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let right_mask: Vec<bool> = colour.iter().map(|c| c == &Some(true)).collect();
    let right = VertexSet::from_mask(&right_mask);
    Some(Bipartition {
        left: right.complement(),
        right,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddComponents {
    /// Number of odd-size components.
    pub count: usize,
    pub components: Vec<VertexSet>,
}

pub fn odd_components(g: &Multigraph, removed: &VertexSet) -> Result<OddComponents> {
    let alive: Vec<bool> = removed.mask_for(g)?.iter().map(|&r| !r).collect();
    Ok(odd_components_within(g, &alive))
}

pub(crate) fn odd_components_within(g: &Multigraph, alive: &[bool]) -> OddComponents {
    let n = g.vertex_count();
    let components: Vec<VertexSet> = g
        .components_within(alive)
        .into_iter()
        .map(|c| VertexSet {
            universe: n,
            members: c,
        })
        .collect();
    OddComponents {
        count: components.iter().filter(|c| c.is_odd()).count(),
        components,
    }
}

/// Result of [`delete_edges`]: the smaller graph and the old→new id map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDeletion {
    pub graph: Multigraph,
    pub new_id: Vec<Option<usize>>,
}

pub fn delete_edges(g: &Multigraph, deleted: &[usize]) -> Result<EdgeDeletion> {
    let m = g.edge_count();
    let mut gone = vec![false; m];
    for &e in deleted {
        if e >= m {
            return Err(Error::InvalidEdge { edge: e, m });
        }
        gone[e] = true;
    }
    let mut new_id = vec![None; m];
    let mut pairs = Vec::with_capacity(m);
    for e in g.edges() {
        if !gone[e.id] {
            new_id[e.id] = Some(pairs.len());
            pairs.push((e.u, e.v));
        }
    }
    let graph = Multigraph::new(g.vertex_count(), pairs)?;
    Ok(EdgeDeletion { graph, new_id })
}

/// True iff `n > k` and no set of fewer than `k` vertices disconnects the
/// graph. Exhaustive over removal sets, so intended for small `k`.
pub fn vertex_connectivity_at_least(g: &Multigraph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    for size in 0..k {
        for removed in (0..n).combinations(size) {
            let mut alive = vec![true; n];
            for v in removed {
                alive[v] = false;
            }
            if g.components_within(&alive).len() > 1 {
                return false;
            }
        }
    }
    true
}

/// Bridge edge ids, ascending (lowpoint DFS; parallel edges are never bridges).
pub fn bridges(g: &Multigraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, edge id used to enter, next incidence index)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (v, via) = (top.0, top.1);
            if let Some(&(w, e)) = g.incident(v).get(top.2) {
                top.2 += 1;
                if Some(e) == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(parent, _, _))) = (via, stack.last()) {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Multigraph::new(2, [(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(
            Multigraph::new(2, [(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn boundary_examples() {
        let k2 = Multigraph::new(2, [(0, 1)]).unwrap();
        let cut = boundary(&k2, &VertexSet::new(2, [0]).unwrap()).unwrap();
        assert_eq!(cut.boundary, vec![0]);

        let p = named::petersen();
        for v in 0..10 {
            let x = VertexSet::new(10, [v]).unwrap();
            assert_eq!(boundary(&p, &x).unwrap().len(), 3);
        }

        let prism = named::prism();
        let x = VertexSet::new(6, [0, 1, 2]).unwrap();
        let cut = boundary(&prism, &x).unwrap();
        let rungs: Vec<_> = cut
            .boundary
            .iter()
            .map(|&e| prism.edge(e).unwrap().normalized())
            .collect();
        assert_eq!(rungs, vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn boundary_rejects_foreign_vertex() {
        let k2 = Multigraph::new(2, [(0, 1)]).unwrap();
        let x = VertexSet::new(5, [4]).unwrap();
        assert_eq!(
            boundary(&k2, &x),
            Err(Error::InvalidVertex { vertex: 4, n: 2 })
        );
    }

    #[test]
    fn bipartite_examples() {
        let parts = is_bipartite(&named::k33()).unwrap();
        assert_eq!(parts.left.len(), 3);
        assert_eq!(parts.right.len(), 3);
        assert!(is_bipartite(&named::petersen()).is_none());
        assert!(is_bipartite(&named::prism()).is_none());
        // a digon is bipartite
        assert!(is_bipartite(&Multigraph::new(2, [(0, 1), (0, 1)]).unwrap()).is_some());
    }

    #[test]
    fn odd_component_examples() {
        let k4 = named::k4();
        let oc = odd_components(&k4, &VertexSet::empty(4)).unwrap();
        assert_eq!((oc.count, oc.components.len()), (0, 1));

        let star = named::k13();
        let oc = odd_components(&star, &VertexSet::new(4, [0]).unwrap()).unwrap();
        assert_eq!(oc.count, 3);

        let oc = odd_components(&named::k3(), &VertexSet::empty(3)).unwrap();
        assert_eq!(oc.count, 1);
    }

    #[test]
    fn delete_perfect_matching() {
        let k4 = named::k4();
        // edges: 01 02 03 12 13 23 ; {01, 23} is a perfect matching
        let d = delete_edges(&k4, &[0, 5]).unwrap();
        assert!(d.graph.is_regular(2));
        assert!(d.graph.is_connected());
        assert_eq!(d.new_id, vec![None, Some(0), Some(1), Some(2), Some(3), None]);

        let same = delete_edges(&k4, &[]).unwrap();
        assert_eq!(same.graph, k4);

        assert_eq!(
            delete_edges(&k4, &[6]),
            Err(Error::InvalidEdge { edge: 6, m: 6 })
        );
    }

    #[test]
    fn connectivity_examples() {
        assert!(vertex_connectivity_at_least(&named::petersen(), 3));
        assert!(!vertex_connectivity_at_least(&named::path(3), 2));
        assert!(vertex_connectivity_at_least(&named::k4(), 3));
        assert!(!vertex_connectivity_at_least(&named::k4(), 4));
    }

    #[test]
    fn bridge_detection() {
        assert_eq!(bridges(&named::path(4)), vec![0, 1, 2]);
        assert!(bridges(&named::petersen()).is_empty());
        assert!(bridges(&Multigraph::new(2, [(0, 1), (0, 1)]).unwrap()).is_empty());
        let g = named::bridged_cubic();
        assert_eq!(bridges(&g).len(), 1);
    }

    #[test]
    fn complement_and_triviality() {
        let x = VertexSet::new(6, [3, 4, 5]).unwrap();
        assert!(!x.is_trivial());
        assert_eq!(x.clone().canonical_side().members(), &[0, 1, 2]);
        assert!(VertexSet::new(6, [0, 1, 2, 3, 4]).unwrap().is_trivial());
    }
}
