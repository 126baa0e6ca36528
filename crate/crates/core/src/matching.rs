//! Exact matching engine.
//!
//! Maximum matchings come from Edmonds' blossom-shrinking algorithm run on the
//! underlying simple graph; results are reported with concrete edge ids (the
//! lowest id among parallel edges). Perfect matchings are enumerated by
//! branching on the lowest uncovered vertex, edges in ascending id order.
//! The remaining predicates (Tutte violators, factor- and bi-criticality,
//! maximal barriers) are evaluated by deletion and exhaustive scans.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multigraph::{odd_components_within, Multigraph, VertexSet};

/// Largest order for which exhaustive subset scans are attempted.
pub const BRUTE_FORCE_BOUND: usize = 20;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, stored as sorted edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn new(g: &Multigraph, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let edges: Vec<usize> = edges.into_iter().sorted().collect();
        let mut covered = vec![false; g.vertex_count()];
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!(
                    "edge {} listed twice",
                    w[0]
                )));
            }
        }
        for &id in &edges {
            let e = g.edge(id)?;
            for x in [e.u, e.v] {
                if covered[x] {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {x} covered twice"
                    )));
                }
                covered[x] = true;
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn is_perfect(&self, g: &Multigraph) -> bool {
        2 * self.edges.len() == g.vertex_count()
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges.serialize(s)
    }
}

/// A matching covering every vertex exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PerfectMatching(Matching);

impl PerfectMatching {
    pub fn new(g: &Multigraph, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let m = Matching::new(g, edges)?;
        if !m.is_perfect(g) {
            return Err(Error::InvalidArgument(format!(
                "{} edges cannot cover {} vertices",
                m.len(),
                g.vertex_count()
            )));
        }
        Ok(PerfectMatching(m))
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<usize>) -> Self {
        PerfectMatching(Matching { edges })
    }

    pub fn edges(&self) -> &[usize] {
        self.0.edges()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.contains(edge)
    }

    pub fn as_matching(&self) -> &Matching {
        &self.0
    }
}

/// Blossom matcher over the simple graph underlying a multigraph, able to run
/// on vertex-deleted subgraphs without rebuilding adjacency.
pub(crate) struct Matcher<'g> {
    g: &'g Multigraph,
    adj: Vec<Vec<usize>>,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    alive: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Search<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &self.adj[v] {
                if !self.alive[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    self.used[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }
}

impl<'g> Matcher<'g> {
    pub(crate) fn new(g: &'g Multigraph) -> Self {
        Matcher {
            g,
            adj: g.simple_adjacency(),
        }
    }

    /// Mate of every vertex in a maximum matching of the subgraph induced by
    /// `alive`.
    pub(crate) fn mates(&self, alive: &[bool]) -> Vec<usize> {
        let n = self.adj.len();
        let mut s = Search {
            adj: &self.adj,
            alive,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        };
        // greedy start
        for v in 0..n {
            if !alive[v] || s.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| alive[w] && s.mate[w] == NONE) {
                s.mate[v] = w;
                s.mate[w] = v;
            }
        }
        for v in 0..n {
            if !alive[v] || s.mate[v] != NONE {
                continue;
            }
            if let Some(mut w) = s.find_path(v) {
                while w != NONE {
                    let pv = s.parent[w];
                    let next = s.mate[pv];
                    s.mate[w] = pv;
                    s.mate[pv] = w;
                    w = next;
                }
            }
        }
        s.mate
    }

    pub(crate) fn has_perfect_matching_within(&self, alive: &[bool]) -> bool {
        let live = alive.iter().filter(|&&a| a).count();
        if live % 2 == 1 {
            return false;
        }
        let mates = self.mates(alive);
        (0..alive.len()).all(|v| !alive[v] || mates[v] != NONE)
    }

    fn lowest_edge_between(&self, u: usize, v: usize) -> usize {
        self.g
            .incident(u)
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, id)| id)
            .expect("mates are adjacent")
    }

    pub(crate) fn maximum_matching(&self) -> Matching {
        let mates = self.mates(&vec![true; self.adj.len()]);
        let edges = (0..mates.len())
            .filter(|&v| mates[v] != NONE && v < mates[v])
            .map(|v| self.lowest_edge_between(v, mates[v]))
            .sorted()
            .collect();
        Matching { edges }
    }
}

pub fn maximum_matching(g: &Multigraph) -> Matching {
    Matcher::new(g).maximum_matching()
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    Matcher::new(g).has_perfect_matching_within(&vec![true; g.vertex_count()])
}

/// Exhaustive search for a set `X` with more odd components in `G - X` than
/// `|X|`. Sets are tried by size, then lexicographically.
pub fn tutte_violator(g: &Multigraph) -> Result<Option<VertexSet>> {
    tutte_violator_bounded(g, BRUTE_FORCE_BOUND)
}

pub fn tutte_violator_bounded(g: &Multigraph, bound: usize) -> Result<Option<VertexSet>> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::ResourceLimit(format!(
            "Tutte scan over 2^{n} subsets exceeds the bound n <= {bound}"
        )));
    }
    for size in 0..=n {
        for removed in (0..n).combinations(size) {
            let mut alive = vec![true; n];
            for &v in &removed {
                alive[v] = false;
            }
            if odd_components_within(g, &alive).count > size {
                return VertexSet::new(n, removed).map(Some);
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PmEnumeration {
    pub matchings: Vec<PerfectMatching>,
    /// Set when more than `cap` perfect matchings exist.
    pub truncated: bool,
}

impl PmEnumeration {
    pub fn is_complete(&self) -> bool {
        !self.truncated
    }
}

struct PmEnumerator<'g> {
    g: &'g Multigraph,
    cap: usize,
    covered: Vec<bool>,
    stack: Vec<usize>,
    out: Vec<PerfectMatching>,
    truncated: bool,
}

impl PmEnumerator<'_> {
    fn dead_end(&self) -> bool {
        (0..self.covered.len()).any(|v| {
            !self.covered[v] && self.g.incident(v).iter().all(|&(w, _)| self.covered[w])
        })
    }

    fn run(&mut self) {
        if self.truncated {
            return;
        }
        let Some(v) = self.covered.iter().position(|&c| !c) else {
            if self.out.len() == self.cap {
                self.truncated = true;
            } else {
                self.out
                    .push(PerfectMatching::from_sorted_unchecked(self.stack.iter().copied().sorted().collect()));
            }
            return;
        };
        if self.dead_end() {
            return;
        }
        self.covered[v] = true;
        for &(w, id) in self.g.incident(v) {
            if self.covered[w] {
                continue;
            }
            self.covered[w] = true;
            self.stack.push(id);
            self.run();
            self.stack.pop();
            self.covered[w] = false;
            if self.truncated {
                break;
            }
        }
        self.covered[v] = false;
    }
}

/// All perfect matchings in branching order, at most `cap` of them.
pub fn enumerate_perfect_matchings(g: &Multigraph, cap: usize) -> PmEnumeration {
    enumerate_with_forced(g, &[], cap)
}

/// Perfect matchings containing every edge of `forced` (which must itself be
/// a matching; otherwise the result is empty).
pub fn enumerate_with_forced(g: &Multigraph, forced: &[usize], cap: usize) -> PmEnumeration {
    let n = g.vertex_count();
    let mut e = PmEnumerator {
        g,
        cap,
        covered: vec![false; n],
        stack: Vec::new(),
        out: Vec::new(),
        truncated: false,
    };
    if n % 2 == 1 {
        return PmEnumeration {
            matchings: Vec::new(),
            truncated: false,
        };
    }
    for &id in forced {
        let Ok(edge) = g.edge(id) else {
            return PmEnumeration {
                matchings: Vec::new(),
                truncated: false,
            };
        };
        if e.covered[edge.u] || e.covered[edge.v] {
            return PmEnumeration {
                matchings: Vec::new(),
                truncated: false,
            };
        }
        e.covered[edge.u] = true;
        e.covered[edge.v] = true;
        e.stack.push(id);
    }
    e.run();
    PmEnumeration {
        matchings: e.out,
        truncated: e.truncated,
    }
}

/// Every edge lies in some perfect matching (vacuously true without edges).
pub fn is_matching_covered(g: &Multigraph) -> bool {
    let matcher = Matcher::new(g);
    let mut alive = vec![true; g.vertex_count()];
    g.edges().iter().all(|e| {
        alive[e.u] = false;
        alive[e.v] = false;
        let ok = matcher.has_perfect_matching_within(&alive);
        alive[e.u] = true;
        alive[e.v] = true;
        ok
    })
}

pub fn is_factor_critical(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n % 2 == 0 {
        return false;
    }
    let matcher = Matcher::new(g);
    let mut alive = vec![true; n];
    (0..n).all(|u| {
        alive[u] = false;
        let ok = matcher.has_perfect_matching_within(&alive);
        alive[u] = true;
        ok
    })
}

pub(crate) fn is_factor_critical_within(matcher: &Matcher<'_>, n: usize, part: &[usize]) -> bool {
    if part.len() % 2 == 0 {
        return false;
    }
    let mut alive = vec![false; n];
    for &v in part {
        alive[v] = true;
    }
    part.iter().all(|&u| {
        alive[u] = false;
        let ok = matcher.has_perfect_matching_within(&alive);
        alive[u] = true;
        ok
    })
}

pub fn is_bicritical(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    n >= 4 && n % 2 == 0 && bicriticality_violation(g).is_none()
}

/// First pair `(u, v)` with `G - u - v` lacking a perfect matching. Only
/// meaningful for even `n >= 4`.
pub fn bicriticality_violation(g: &Multigraph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    let matcher = Matcher::new(g);
    let mut alive = vec![true; n];
    (0..n).tuple_combinations().find(|&(u, v)| {
        alive[u] = false;
        alive[v] = false;
        let ok = matcher.has_perfect_matching_within(&alive);
        alive[u] = true;
        alive[v] = true;
        !ok
    })
}

/// A set `S` with exactly `|S|` odd components in `G - S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Barrier {
    pub set: VertexSet,
    /// All components of `G - S`, ordered by smallest vertex.
    pub components: Vec<VertexSet>,
    /// Number of odd components of `G - S`; equals `|S|`.
    pub odd_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalBarrier {
    pub barrier: Barrier,
    /// Factor-criticality of each component, aligned with `components`.
    pub factor_critical: Vec<bool>,
}

impl MaximalBarrier {
    pub fn all_components_factor_critical(&self) -> bool {
        self.factor_critical.iter().all(|&b| b)
    }
}

/// A barrier containing `anchor` with no barrier as a proper superset.
///
/// Supersets of `{anchor}` are scanned from the largest admissible size
/// (`n / 2`) downwards, so the first barrier hit has maximum cardinality among
/// those containing `anchor`, and is therefore maximal.
pub fn find_maximal_barrier(g: &Multigraph, anchor: usize) -> Result<MaximalBarrier> {
    let n = g.vertex_count();
    if anchor >= n {
        return Err(Error::InvalidVertex { vertex: anchor, n });
    }
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::ResourceLimit(format!(
            "barrier scan needs n <= {BRUTE_FORCE_BOUND}, got {n}"
        )));
    }
    let matcher = Matcher::new(g);
    if !matcher.has_perfect_matching_within(&vec![true; n]) {
        return Err(Error::Precondition(
            "barrier search requires a perfect matching".into(),
        ));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != anchor).collect();
    for size in (1..=n / 2).rev() {
        for rest in others.iter().copied().combinations(size - 1) {
            let mut alive = vec![true; n];
            alive[anchor] = false;
            for &v in &rest {
                alive[v] = false;
            }
            let oc = odd_components_within(g, &alive);
            if oc.count != size {
                continue;
            }
            let factor_critical = oc
                .components
                .iter()
                .map(|c| is_factor_critical_within(&matcher, n, c.members()))
                .collect();
            let set = VertexSet::new(n, rest.into_iter().chain([anchor]))?;
            return Ok(MaximalBarrier {
                barrier: Barrier {
                    set,
                    odd_count: oc.count,
                    components: oc.components,
                },
                factor_critical,
            });
        }
    }
    unreachable!("a singleton is a barrier in a graph with a perfect matching")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn maximum_matching_sizes() {
        assert_eq!(maximum_matching(&named::k4()).len(), 2);
        assert_eq!(maximum_matching(&named::k3()).len(), 1);
        assert_eq!(maximum_matching(&named::petersen()).len(), 5);
        assert_eq!(maximum_matching(&Multigraph::empty(3)).len(), 0);
    }

    #[test]
    fn maximum_matching_uses_lowest_parallel_edge() {
        let g = Multigraph::new(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(maximum_matching(&g).edges(), &[0]);
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(has_perfect_matching(&named::k4()));
        assert!(!has_perfect_matching(&named::k13()));
        assert!(has_perfect_matching(&named::triangles_with_bridge()));
        assert!(!has_perfect_matching(&named::k3()));
        assert!(has_perfect_matching(&Multigraph::empty(0)));
    }

    #[test]
    fn tutte_examples() {
        let x = tutte_violator(&named::k13()).unwrap().unwrap();
        assert_eq!(x.members(), &[0]);
        let x = tutte_violator(&named::k3()).unwrap().unwrap();
        assert!(x.is_empty());
        assert_eq!(tutte_violator(&named::petersen()).unwrap(), None);
        assert!(matches!(
            tutte_violator(&named::path(21)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_perfect_matchings(&named::k4(), 100).matchings.len(), 3);
        assert_eq!(enumerate_perfect_matchings(&named::petersen(), 100).matchings.len(), 6);
        assert_eq!(enumerate_perfect_matchings(&named::k33(), 100).matchings.len(), 6);
        assert!(enumerate_perfect_matchings(&named::k3(), 100).matchings.is_empty());
    }

    #[test]
    fn enumeration_order_is_fixed() {
        let pms = enumerate_perfect_matchings(&named::k4(), 100).matchings;
        let lists: Vec<&[usize]> = pms.iter().map(|m| m.edges()).collect();
        // vertex 0 tries edges 01, 02, 03 in turn
        assert_eq!(lists, vec![&[0, 5][..], &[1, 4][..], &[2, 3][..]]);
    }

    #[test]
    fn enumeration_truncates_at_cap() {
        let e = enumerate_perfect_matchings(&named::petersen(), 4);
        assert_eq!(e.matchings.len(), 4);
        assert!(e.truncated);
        let e = enumerate_perfect_matchings(&named::petersen(), 6);
        assert_eq!(e.matchings.len(), 6);
        assert!(!e.truncated);
    }

    #[test]
    fn parallel_edges_give_distinct_matchings() {
        let g = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(enumerate_perfect_matchings(&g, 10).matchings.len(), 3);
    }

    #[test]
    fn matching_covered_examples() {
        assert!(is_matching_covered(&named::petersen()));
        assert!(is_matching_covered(&named::k4()));
        assert!(!is_matching_covered(&named::path(4)));
    }

    #[test]
    fn critical_examples() {
        assert!(is_factor_critical(&named::k3()));
        assert!(is_factor_critical(&named::cycle(5)));
        assert!(!is_factor_critical(&named::k4()));

        assert!(is_bicritical(&named::k4()));
        assert!(is_bicritical(&named::petersen()));
        assert!(!is_bicritical(&named::k33()));
        assert!(!is_bicritical(&named::k2()));
    }

    #[test]
    fn barrier_examples() {
        let b = find_maximal_barrier(&named::k4(), 0).unwrap();
        assert_eq!(b.barrier.set.members(), &[0]);
        assert_eq!(b.barrier.components.len(), 1);
        assert!(b.all_components_factor_critical());

        let b = find_maximal_barrier(&named::k33(), 1).unwrap();
        assert_eq!(b.barrier.set.members(), &[0, 1, 2]);
        assert_eq!(b.barrier.odd_count, 3);

        for v in 0..10 {
            let b = find_maximal_barrier(&named::petersen(), v).unwrap();
            assert_eq!(b.barrier.set.members(), &[v]);
            assert!(b.all_components_factor_critical());
        }

        assert!(matches!(
            find_maximal_barrier(&named::k13(), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn perfect_matching_validation() {
        let k4 = named::k4();
        assert!(PerfectMatching::new(&k4, [0, 5]).is_ok());
        assert!(PerfectMatching::new(&k4, [0]).is_err());
        assert!(PerfectMatching::new(&k4, [0, 1]).is_err());
        assert!(PerfectMatching::new(&k4, [0, 9]).is_err());
    }
}
