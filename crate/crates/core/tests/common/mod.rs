//! Brute-force oracles shared by the integration tests. None of these call
//! into the library's algorithms; they only read the graph structure.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use rand::Rng;
use rgraphs::format::parse_all;
use rgraphs::Multigraph;

pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    let mut pairs = Vec::with_capacity(m);
    if n >= 2 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            pairs.push((u, v));
        }
    }
    Multigraph::new(n, pairs).unwrap()
}

/// Random spanning tree plus `extra` random edges.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Multigraph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        pairs.push((u, v));
    }
    Multigraph::new(n, pairs).unwrap()
}

/// Perfect matching existence on the vertices in `alive`, by plain recursion.
pub fn brute_has_pm(g: &Multigraph, alive: &[bool]) -> bool {
    let mut covered: Vec<bool> = alive.iter().map(|a| !a).collect();
    fn go(g: &Multigraph, covered: &mut [bool]) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else {
            return true;
        };
        covered[v] = true;
        for e in g.edges() {
            if !e.has_endpoint(v) {
                continue;
            }
            let w = e.other(v);
            if !covered[w] {
                covered[w] = true;
                if go(g, covered) {
                    covered[v] = false;
                    covered[w] = false;
                    return true;
                }
                covered[w] = false;
            }
        }
        covered[v] = false;
        false
    }
    go(g, &mut covered)
}

pub fn cut_size(g: &Multigraph, side: &[bool]) -> usize {
    g.edges().iter().filter(|e| side[e.u] != side[e.v]).count()
}

fn mask_of(n: usize, bits: u64) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

/// Minimum boundary over all odd vertex subsets.
pub fn brute_min_odd_cut(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    (1u64..1 << n)
        .filter(|b| b.count_ones() % 2 == 1)
        .map(|b| cut_size(g, &mask_of(n, b)))
        .min()
        .unwrap()
}

pub fn connected_without(g: &Multigraph, skip_edge: Option<usize>) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for e in g.edges() {
            if Some(e.id) == skip_edge || !e.has_endpoint(v) {
                continue;
            }
            let w = e.other(v);
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// A connected graph has a bridge iff deleting some edge disconnects it.
pub fn brute_has_bridge(g: &Multigraph) -> bool {
    (0..g.edge_count()).any(|e| !connected_without(g, Some(e)))
}

/// Deleting any vertex of `part` leaves a perfect matching of the rest of
/// `part`.
pub fn brute_factor_critical(g: &Multigraph, part: &[usize]) -> bool {
    let n = g.vertex_count();
    part.iter().all(|&x| {
        let alive: Vec<bool> = (0..n).map(|v| v != x && part.contains(&v)).collect();
        brute_has_pm(g, &alive)
    })
}

/// Every perfect matching, as sorted edge-id lists, by subset recursion.
pub fn brute_perfect_matchings(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    fn go(g: &Multigraph, next: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if used.iter().all(|&u| u) {
            out.push(cur.clone());
            return;
        }
        for id in next..g.edge_count() {
            let e = g.edges()[id];
            if !used[e.u] && !used[e.v] {
                used[e.u] = true;
                used[e.v] = true;
                cur.push(id);
                go(g, id + 1, used, cur, out);
                cur.pop();
                used[e.u] = false;
                used[e.v] = false;
            }
        }
    }
    go(g, 0, &mut used, &mut Vec::new(), &mut out);
    out
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/cubic")
}

/// All connected cubic graphs on at most 10 vertices, with their file names.
pub fn cubic_corpus() -> Vec<(String, Multigraph)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        for (i, g) in parse_all(&std::fs::read_to_string(&f).unwrap())
            .unwrap()
            .into_iter()
            .enumerate()
        {
            out.push((format!("{name}[{i}]"), g));
        }
    }
    out
}
