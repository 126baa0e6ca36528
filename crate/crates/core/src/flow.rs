//! Dinic max-flow on the undirected capacity network of a multigraph, where
//! the capacity of a vertex pair is its edge multiplicity.

use std::collections::{BTreeMap, VecDeque};

use crate::multigraph::Multigraph;

pub(crate) struct FlowNetwork {
    n: usize,
    // arc i and i ^ 1 are the two directions of one undirected pair
    to: Vec<usize>,
    cap: Vec<u64>,
    original: Vec<u64>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl FlowNetwork {
    pub(crate) fn from_graph(g: &Multigraph) -> Self {
        let mut pairs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for e in g.edges() {
            *pairs.entry(e.normalized()).or_default() += 1;
        }
        let n = g.vertex_count();
        let mut net = FlowNetwork {
            n,
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            out: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        };
        for ((u, v), c) in pairs {
            net.out[u].push(net.to.len());
            net.to.push(v);
            net.original.push(c);
            net.out[v].push(net.to.len());
            net.to.push(u);
            net.original.push(c);
        }
        net.cap = net.original.clone();
        net
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && self.level[w] == usize::MAX {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u64) -> u64 {
        if v == t {
            return pushed;
        }
        while self.next[v] < self.out[v].len() {
            let a = self.out[v][self.next[v]];
            let w = self.to[a];
            if self.cap[a] > 0 && self.level[w] == self.level[v] + 1 {
                let got = self.dfs(w, t, pushed.min(self.cap[a]));
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            self.next[v] += 1;
        }
        0
    }

    /// Minimum `s`-`t` cut value and the source side (vertices reachable from
    /// `s` in the final residual network).
    pub(crate) fn min_cut(&mut self, s: usize, t: usize) -> (u64, Vec<bool>) {
        self.cap.copy_from_slice(&self.original);
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        let mut side = vec![false; self.n];
        side[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out[v] {
                let w = self.to[a];
                if self.cap[a] > 0 && !side[w] {
                    side[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (flow, side)
    }
}
