//! Exact searches for edge colourings, Berge–Fulkerson covers and restricted
//! perfect-matching families, plus gluing of colourings and covers across a
//! size-`r` odd cut.
//!
//! Every search is backtracking with an explicit node budget and reports one
//! of three outcomes: a witness, an exhaustive refutation, or indeterminate
//! (budget exhausted, or the perfect-matching list it worked from was
//! truncated). A timeout is never reported as a refutation.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching, PmEnumeration};
use crate::multigraph::Multigraph;
use crate::oddcut::{is_r_graph, ContractionPair};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_PM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Search nodes before giving up.
    pub nodes: u64,
    /// Perfect matchings enumerated before truncating.
    pub pm_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: DEFAULT_NODE_BUDGET,
            pm_cap: DEFAULT_PM_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inconclusive {
    BudgetExhausted,
    EnumerationTruncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Refuted,
    Indeterminate(Inconclusive),
}

impl<T> Outcome<T> {
    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::Refuted => "refuted",
            Outcome::Indeterminate(_) => "indeterminate",
        }
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Outcome::Refuted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: Outcome<T>,
    pub nodes: u64,
}

impl<T> SearchResult<T> {
    /// Refutations found over a truncated matching list become
    /// indeterminate.
    fn downgrade_if(mut self, truncated: bool) -> Self {
        if truncated && self.outcome.is_refuted() {
            self.outcome = Outcome::Indeterminate(Inconclusive::EnumerationTruncated);
        }
        self
    }
}

struct Counter {
    nodes: u64,
    limit: u64,
}

impl Counter {
    fn new(limit: u64) -> Self {
        Counter { nodes: 0, limit }
    }

    /// Counts a node; false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.limit
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

fn finish<T>(step: Step, witness: impl FnOnce() -> T, nodes: u64) -> SearchResult<T> {
    let outcome = match step {
        Step::Found => Outcome::Found(witness()),
        Step::Exhausted => Outcome::Refuted,
        Step::Aborted => Outcome::Indeterminate(Inconclusive::BudgetExhausted),
    };
    SearchResult { outcome, nodes }
}

// ---------------------------------------------------------------------------
// edge colourings

/// Colour of every edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub colors: usize,
    pub assignment: Vec<usize>,
}

impl EdgeColoring {
    /// Edge ids of each colour class.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.colors];
        for (e, &c) in self.assignment.iter().enumerate() {
            classes[c].push(e);
        }
        classes
    }
}

/// Checks totality, range and properness edge by edge.
pub fn check_proper_coloring(g: &Multigraph, c: &EdgeColoring) -> Result<()> {
    if c.assignment.len() != g.edge_count() {
        return Err(Error::Integrity(format!(
            "colouring covers {} of {} edges",
            c.assignment.len(),
            g.edge_count()
        )));
    }
    if let Some(e) = c.assignment.iter().position(|&x| x >= c.colors) {
        return Err(Error::Integrity(format!("edge {e} has colour out of range")));
    }
    for v in 0..g.vertex_count() {
        let mut seen = vec![None; c.colors];
        for &(_, e) in g.incident(v) {
            let col = c.assignment[e];
            if let Some(other) = seen[col] {
                return Err(Error::Integrity(format!(
                    "edges {other} and {e} share vertex {v} and colour {col}"
                )));
            }
            seen[col] = Some(e);
        }
    }
    Ok(())
}

struct Colorer<'g> {
    g: &'g Multigraph,
    full: u64,
    used: Vec<u64>,
    color: Vec<Option<usize>>,
    counter: Counter,
}

impl Colorer<'_> {
    fn feasible(&self, e: usize) -> u64 {
        let edge = self.g.edges()[e];
        self.full & !(self.used[edge.u] | self.used[edge.v])
    }

    fn set(&mut self, e: usize, c: usize) {
        let edge = self.g.edges()[e];
        self.used[edge.u] |= 1 << c;
        self.used[edge.v] |= 1 << c;
        self.color[e] = Some(c);
    }

    fn unset(&mut self, e: usize, c: usize) {
        let edge = self.g.edges()[e];
        self.used[edge.u] &= !(1 << c);
        self.used[edge.v] &= !(1 << c);
        self.color[e] = None;
    }

    fn search(&mut self) -> Step {
        // fail-first: fewest feasible colours, ties by lowest id
        let mut pick: Option<(u32, usize)> = None;
        for e in 0..self.color.len() {
            if self.color[e].is_some() {
                continue;
            }
            let k = self.feasible(e).count_ones();
            if k == 0 {
                return Step::Exhausted;
            }
            if pick.is_none_or(|(best, _)| k < best) {
                pick = Some((k, e));
            }
        }
        let Some((_, e)) = pick else {
            return Step::Found;
        };
        let mut options = self.feasible(e);
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            if !self.counter.tick() {
                return Step::Aborted;
            }
            self.set(e, c);
            match self.search() {
                Step::Exhausted => self.unset(e, c),
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Proper edge colouring with `colors` colours (at most 64). Edge 0 is fixed
/// to colour 0.
pub fn proper_edge_coloring(
    g: &Multigraph,
    colors: usize,
    budget: &Budget,
) -> Result<SearchResult<EdgeColoring>> {
    if colors > 64 {
        return Err(Error::InvalidArgument(format!(
            "at most 64 colours are supported, got {colors}"
        )));
    }
    let m = g.edge_count();
    let witness = |color: &[Option<usize>]| EdgeColoring {
        colors,
        assignment: color.iter().map(|c| c.expect("total colouring")).collect(),
    };
    if m == 0 {
        return Ok(finish(Step::Found, || witness(&[]), 0));
    }
    if colors == 0 {
        return Ok(finish(Step::Exhausted, || unreachable!(), 0));
    }
    let mut s = Colorer {
        g,
        full: if colors == 64 { u64::MAX } else { (1u64 << colors) - 1 },
        used: vec![0; g.vertex_count()],
        color: vec![None; m],
        counter: Counter::new(budget.nodes),
    };
    s.counter.tick();
    s.set(0, 0);
    let step = s.search();
    let nodes = s.counter.nodes;
    let result = finish(step, || witness(&s.color), nodes);
    if let Some(c) = result.outcome.found() {
        check_proper_coloring(g, c)?;
    }
    Ok(result)
}

/// Combines colourings of the two contractions into a colouring of the
/// original graph, permuting the colours of `c2` so that cut edges agree.
pub fn glue_colorings(
    pair: &ContractionPair,
    c1: &EdgeColoring,
    c2: &EdgeColoring,
) -> Result<EdgeColoring> {
    if c1.colors != c2.colors {
        return Err(Error::Integrity(format!(
            "colour counts differ: {} vs {}",
            c1.colors, c2.colors
        )));
    }
    check_proper_coloring(&pair.g1, c1)?;
    check_proper_coloring(&pair.g2, c2)?;
    let colors = c1.colors;
    // perm[colour in c2] = colour in c1
    let mut perm = vec![None; colors];
    let mut hit = vec![false; colors];
    for img in &pair.cut {
        let a = c1.assignment[img.in_g1];
        let b = c2.assignment[img.in_g2];
        if perm[b].is_some() || hit[a] {
            return Err(Error::Integrity(format!(
                "cut edge {} repeats a colour at the contracted vertex",
                img.edge
            )));
        }
        perm[b] = Some(a);
        hit[a] = true;
    }
    let mut spare = (0..colors).filter(|&a| !hit[a]);
    let perm: Vec<usize> = perm
        .into_iter()
        .map(|p| p.unwrap_or_else(|| spare.next().expect("bijection completes")))
        .collect();
    let assignment = (0..pair.graph.edge_count())
        .map(|e| match (pair.g1_edge[e], pair.g2_edge[e]) {
            (Some(e1), _) => c1.assignment[e1],
            (None, Some(e2)) => perm[c2.assignment[e2]],
            (None, None) => unreachable!("every edge survives in a contraction"),
        })
        .collect();
    let glued = EdgeColoring { colors, assignment };
    check_proper_coloring(&pair.graph, &glued)?;
    Ok(glued)
}

// ---------------------------------------------------------------------------
// perfect-matching bitsets

fn edge_bits(m: usize, pm: &PerfectMatching) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(m);
    for &e in pm.edges() {
        bits.insert(e);
    }
    bits
}

// ---------------------------------------------------------------------------
// Berge–Fulkerson covers

/// `2r` perfect matchings (a multiset, in non-decreasing enumeration order)
/// covering every edge exactly twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FulkersonCover {
    pub r: usize,
    pub matchings: Vec<PerfectMatching>,
}

pub fn check_fulkerson_cover(g: &Multigraph, cover: &FulkersonCover) -> Result<()> {
    if cover.matchings.len() != 2 * cover.r {
        return Err(Error::Integrity(format!(
            "cover has {} matchings, expected {}",
            cover.matchings.len(),
            2 * cover.r
        )));
    }
    let mut count = vec![0usize; g.edge_count()];
    for pm in &cover.matchings {
        PerfectMatching::new(g, pm.edges().iter().copied())
            .map_err(|e| Error::Integrity(format!("cover member is not a perfect matching: {e}")))?;
        for &e in pm.edges() {
            count[e] += 1;
        }
    }
    if let Some(e) = count.iter().position(|&c| c != 2) {
        return Err(Error::Integrity(format!(
            "edge {e} is covered {} times",
            count[e]
        )));
    }
    Ok(())
}

/// Doubles every colour class of a proper `r`-edge-colouring of an
/// `r`-regular graph.
pub fn cover_from_coloring(g: &Multigraph, coloring: &EdgeColoring) -> Result<FulkersonCover> {
    let mut matchings = Vec::new();
    for class in coloring.color_classes() {
        let pm = PerfectMatching::new(g, class)?;
        matchings.push(pm.clone());
        matchings.push(pm);
    }
    let cover = FulkersonCover {
        r: coloring.colors,
        matchings,
    };
    check_fulkerson_cover(g, &cover)?;
    Ok(cover)
}

struct CoverSearch<'a> {
    pms: &'a [PerfectMatching],
    containing: Vec<Vec<usize>>,
    count: Vec<u8>,
    chosen: Vec<usize>,
    counter: Counter,
}

impl CoverSearch<'_> {
    fn usable(&self, p: usize) -> bool {
        self.pms[p].edges().iter().all(|&e| self.count[e] < 2)
    }

    fn add(&mut self, p: usize) {
        for &e in self.pms[p].edges() {
            self.count[e] += 1;
        }
        self.chosen.push(p);
    }

    fn remove(&mut self, p: usize) {
        for &e in self.pms[p].edges() {
            self.count[e] -= 1;
        }
        self.chosen.pop();
    }

    fn search(&mut self) -> Step {
        // the deficient edge with the fewest usable matchings
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..self.count.len() {
            if self.count[e] >= 2 {
                continue;
            }
            let k = self.containing[e].iter().filter(|&&p| self.usable(p)).count();
            if k == 0 {
                return Step::Exhausted;
            }
            if pick.is_none_or(|(best, _)| k < best) {
                pick = Some((k, e));
            }
        }
        let Some((_, e)) = pick else {
            return Step::Found;
        };
        let candidates: Vec<usize> = self.containing[e]
            .iter()
            .copied()
            .filter(|&p| self.usable(p))
            .collect();
        if self.count[e] == 1 {
            for p in candidates {
                if !self.counter.tick() {
                    return Step::Aborted;
                }
                self.add(p);
                match self.search() {
                    Step::Exhausted => self.remove(p),
                    other => return other,
                }
            }
            return Step::Exhausted;
        }
        // e is uncovered: choose both of its matchings at once, p <= q
        for (i, &p) in candidates.iter().enumerate() {
            self.add(p);
            for &q in &candidates[i..] {
                if !self.usable(q) {
                    continue;
                }
                if !self.counter.tick() {
                    return Step::Aborted;
                }
                self.add(q);
                match self.search() {
                    Step::Exhausted => self.remove(q),
                    other => return other,
                }
            }
            self.remove(p);
        }
        Step::Exhausted
    }
}

fn fulkerson_search(
    g: &Multigraph,
    r: usize,
    pms: &PmEnumeration,
    budget: &Budget,
) -> SearchResult<FulkersonCover> {
    let mut containing = vec![Vec::new(); g.edge_count()];
    for (i, pm) in pms.matchings.iter().enumerate() {
        for &e in pm.edges() {
            containing[e].push(i);
        }
    }
    let mut s = CoverSearch {
        pms: &pms.matchings,
        containing,
        count: vec![0; g.edge_count()],
        chosen: Vec::new(),
        counter: Counter::new(budget.nodes),
    };
    let step = s.search();
    let witness = || {
        let mut idx = s.chosen.clone();
        idx.sort_unstable();
        FulkersonCover {
            r,
            matchings: idx.into_iter().map(|i| pms.matchings[i].clone()).collect(),
        }
    };
    finish(step, witness, s.counter.nodes).downgrade_if(pms.truncated)
}

/// A multiset of `2r` perfect matchings covering every edge exactly twice.
pub fn fulkerson_cover(
    g: &Multigraph,
    r: usize,
    budget: &Budget,
) -> Result<SearchResult<FulkersonCover>> {
    is_r_graph(g, r).into_result(r)?;
    let pms = enumerate_perfect_matchings(g, budget.pm_cap);
    let result = fulkerson_search(g, r, &pms, budget);
    if let Some(cover) = result.outcome.found() {
        check_fulkerson_cover(g, cover)?;
    }
    Ok(result)
}

/// Combines covers of the two contractions into a cover of the original graph
/// by pairing, for each cut edge, the two `g1` matchings through it with the
/// two `g2` matchings through it (lowest index with lowest index).
pub fn glue_covers(
    pair: &ContractionPair,
    c1: &FulkersonCover,
    c2: &FulkersonCover,
) -> Result<FulkersonCover> {
    if c1.r != c2.r || pair.cut.len() != c1.r {
        return Err(Error::Integrity(format!(
            "covers for r = {} and r = {} do not fit a cut of size {}",
            c1.r,
            c2.r,
            pair.cut.len()
        )));
    }
    check_fulkerson_cover(&pair.g1, c1)?;
    check_fulkerson_cover(&pair.g2, c2)?;
    let through = |cover: &FulkersonCover, image: &dyn Fn(usize) -> usize| -> Result<Vec<Vec<usize>>> {
        let mut by_cut = vec![Vec::new(); pair.cut.len()];
        for (i, pm) in cover.matchings.iter().enumerate() {
            let hits: Vec<usize> = (0..pair.cut.len())
                .filter(|&k| pm.contains(image(k)))
                .collect();
            if hits.len() != 1 {
                return Err(Error::Integrity(format!(
                    "matching {i} meets the contracted vertex's cut in {} edges",
                    hits.len()
                )));
            }
            by_cut[hits[0]].push(i);
        }
        Ok(by_cut)
    };
    let side1 = through(c1, &|k| pair.cut[k].in_g1)?;
    let side2 = through(c2, &|k| pair.cut[k].in_g2)?;

    // g1 id -> original id, g2 id -> original id
    let mut from1 = vec![usize::MAX; pair.g1.edge_count()];
    let mut from2 = vec![usize::MAX; pair.g2.edge_count()];
    for e in 0..pair.graph.edge_count() {
        if let Some(i) = pair.g1_edge[e] {
            from1[i] = e;
        }
        if let Some(i) = pair.g2_edge[e] {
            from2[i] = e;
        }
    }
    let mut glued = Vec::new();
    for (a, b) in side1.iter().zip(&side2) {
        if a.len() != 2 || b.len() != 2 {
            return Err(Error::Integrity(
                "a cut edge is not covered exactly twice on both sides".into(),
            ));
        }
        for (&i, &j) in a.iter().zip(b) {
            let edges = c1.matchings[i]
                .edges()
                .iter()
                .map(|&x| from1[x])
                .chain(c2.matchings[j].edges().iter().map(|&x| from2[x]));
            let mut edges: Vec<usize> = edges.collect();
            edges.sort_unstable();
            edges.dedup();
            glued.push(PerfectMatching::new(&pair.graph, edges)?);
        }
    }
    glued.sort();
    let cover = FulkersonCover {
        r: c1.r,
        matchings: glued,
    };
    check_fulkerson_cover(&pair.graph, &cover)?;
    Ok(cover)
}

// ---------------------------------------------------------------------------
// matching families

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyConstraint {
    /// Every three members have empty common intersection.
    AllTriplesEmpty,
    /// `F ∩ F_i ∩ F_j` is empty for every pair of members.
    FixedPairsEmpty { fixed: PerfectMatching },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    pub constraint: FamilyConstraint,
    pub matchings: Vec<PerfectMatching>,
}

impl MatchingFamily {
    /// Validates members and the constraint.
    pub fn new(
        g: &Multigraph,
        constraint: FamilyConstraint,
        matchings: Vec<PerfectMatching>,
    ) -> Result<Self> {
        let fam = MatchingFamily {
            constraint,
            matchings,
        };
        check_family(g, &fam)?;
        Ok(fam)
    }
}

pub fn check_family(g: &Multigraph, fam: &MatchingFamily) -> Result<()> {
    let m = g.edge_count();
    let bits: Vec<FixedBitSet> = fam
        .matchings
        .iter()
        .map(|pm| {
            PerfectMatching::new(g, pm.edges().iter().copied())
                .map(|pm| edge_bits(m, &pm))
                .map_err(|e| Error::Integrity(format!("family member is not a perfect matching: {e}")))
        })
        .collect::<Result<_>>()?;
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            if bits[i] == bits[j] {
                return Err(Error::Integrity(format!("members {i} and {j} coincide")));
            }
        }
    }
    match &fam.constraint {
        FamilyConstraint::AllTriplesEmpty => {
            for i in 0..bits.len() {
                for j in i + 1..bits.len() {
                    let mut ij = bits[i].clone();
                    ij.intersect_with(&bits[j]);
                    for k in j + 1..bits.len() {
                        if !ij.is_disjoint(&bits[k]) {
                            return Err(Error::Integrity(format!(
                                "members {i}, {j}, {k} share an edge"
                            )));
                        }
                    }
                }
            }
        }
        FamilyConstraint::FixedPairsEmpty { fixed } => {
            let f = edge_bits(m, fixed);
            for i in 0..bits.len() {
                for j in i + 1..bits.len() {
                    let mut ij = bits[i].clone();
                    ij.intersect_with(&bits[j]);
                    if !ij.is_disjoint(&f) {
                        return Err(Error::Integrity(format!(
                            "members {i} and {j} share an edge of the fixed matching"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

struct TripleSearch<'a> {
    bits: &'a [FixedBitSet],
    target: usize,
    chosen: Vec<usize>,
    // union of pairwise intersections of the chosen members, per depth
    pairs: Vec<FixedBitSet>,
    counter: Counter,
}

impl TripleSearch<'_> {
    fn search(&mut self, from: usize) -> Step {
        if self.chosen.len() == self.target {
            return Step::Found;
        }
        let need = self.target - self.chosen.len();
        for p in from..self.bits.len() {
            if self.bits.len() - p < need {
                break;
            }
            let forbidden = self.pairs.last().expect("root level present");
            if !forbidden.is_disjoint(&self.bits[p]) {
                continue;
            }
            if !self.counter.tick() {
                return Step::Aborted;
            }
            let mut next = forbidden.clone();
            for &q in &self.chosen {
                let mut pq = self.bits[p].clone();
                pq.intersect_with(&self.bits[q]);
                next.union_with(&pq);
            }
            self.pairs.push(next);
            self.chosen.push(p);
            match self.search(p + 1) {
                Step::Exhausted => {
                    self.chosen.pop();
                    self.pairs.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// `t >= 3` distinct perfect matchings with every three having empty common
/// intersection; the lexicographically first family in enumeration order.
pub fn triple_empty_family(
    g: &Multigraph,
    t: usize,
    budget: &Budget,
) -> Result<SearchResult<MatchingFamily>> {
    if t < 3 {
        return Err(Error::InvalidArgument(format!(
            "triple-empty families need t >= 3, got {t}"
        )));
    }
    let pms = enumerate_perfect_matchings(g, budget.pm_cap);
    let m = g.edge_count();
    let bits: Vec<FixedBitSet> = pms.matchings.iter().map(|pm| edge_bits(m, pm)).collect();
    let mut s = TripleSearch {
        bits: &bits,
        target: t,
        chosen: Vec::new(),
        pairs: vec![FixedBitSet::with_capacity(m)],
        counter: Counter::new(budget.nodes),
    };
    let step = s.search(0);
    let chosen = s.chosen.clone();
    let result = finish(
        step,
        || MatchingFamily {
            constraint: FamilyConstraint::AllTriplesEmpty,
            matchings: chosen.iter().map(|&i| pms.matchings[i].clone()).collect(),
        },
        s.counter.nodes,
    )
    .downgrade_if(pms.truncated);
    if let Some(fam) = result.outcome.found() {
        check_family(g, fam)?;
    }
    Ok(result)
}

struct DisjointTraces<'a> {
    traces: &'a [FixedBitSet],
    target: usize,
    chosen: Vec<usize>,
    used: FixedBitSet,
    counter: Counter,
}

impl DisjointTraces<'_> {
    fn search(&mut self, from: usize) -> Step {
        if self.chosen.len() == self.target {
            return Step::Found;
        }
        for b in from..self.traces.len() {
            if self.traces.len() - b < self.target - self.chosen.len() {
                break;
            }
            if !self.used.is_disjoint(&self.traces[b]) {
                continue;
            }
            if !self.counter.tick() {
                return Step::Aborted;
            }
            self.used.union_with(&self.traces[b]);
            self.chosen.push(b);
            match self.search(b + 1) {
                Step::Exhausted => {
                    self.chosen.pop();
                    self.used.difference_with(&self.traces[b]);
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// `t` distinct perfect matchings `F_1..F_t` with `F ∩ F_i ∩ F_j` empty for
/// all `i < j`.
///
/// Only the trace `F_i ∩ F` matters, so matchings are bucketed by trace. The
/// condition is pairwise disjointness of traces: matchings avoiding `F` can
/// always be added, and each non-empty trace can be used at most once.
pub fn fixed_f_family(
    g: &Multigraph,
    fixed: &PerfectMatching,
    t: usize,
    budget: &Budget,
) -> Result<SearchResult<MatchingFamily>> {
    let fixed = PerfectMatching::new(g, fixed.edges().iter().copied())?;
    let pms = enumerate_perfect_matchings(g, budget.pm_cap);
    Ok(fixed_f_search(g, &fixed, &pms, t, budget)).and_then(|r| {
        if let Some(fam) = r.outcome.found() {
            check_family(g, fam)?;
        }
        Ok(r)
    })
}

pub(crate) fn fixed_f_search(
    g: &Multigraph,
    fixed: &PerfectMatching,
    pms: &PmEnumeration,
    t: usize,
    budget: &Budget,
) -> SearchResult<MatchingFamily> {
    let m = g.edge_count();
    let f = edge_bits(m, fixed);
    let mut avoiding = Vec::new();
    // trace -> lowest matching index, in order of first appearance
    let mut buckets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut order: Vec<(usize, FixedBitSet)> = Vec::new();
    for (i, pm) in pms.matchings.iter().enumerate() {
        let mut trace = edge_bits(m, pm);
        trace.intersect_with(&f);
        if trace.is_clear() {
            avoiding.push(i);
            continue;
        }
        let key: Vec<usize> = trace.ones().collect();
        if let std::collections::btree_map::Entry::Vacant(slot) = buckets.entry(key) {
            slot.insert(i);
            order.push((i, trace));
        }
    }
    let free = avoiding.len().min(t);
    let traces: Vec<FixedBitSet> = order.iter().map(|(_, tr)| tr.clone()).collect();
    let mut s = DisjointTraces {
        traces: &traces,
        target: t - free,
        chosen: Vec::new(),
        used: FixedBitSet::with_capacity(m),
        counter: Counter::new(budget.nodes),
    };
    let step = s.search(0);
    let witness = || {
        let mut idx: Vec<usize> = avoiding[..free].to_vec();
        idx.extend(s.chosen.iter().map(|&b| order[b].0));
        idx.sort_unstable();
        MatchingFamily {
            constraint: FamilyConstraint::FixedPairsEmpty {
                fixed: fixed.clone(),
            },
            matchings: idx.into_iter().map(|i| pms.matchings[i].clone()).collect(),
        }
    };
    finish(step, witness, s.counter.nodes).downgrade_if(pms.truncated)
}
