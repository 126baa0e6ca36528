#!/usr/bin/env python3
"""Enumerate connected cubic simple graphs on n vertices, up to isomorphism.

Writes one graph6 line per graph. Vertices are introduced in BFS order so
every generated graph is connected; duplicates are removed with networkx
isomorphism tests bucketed by WL hash.

Usage: gen_cubic_corpus.py N > cubic_connected_nNN.g6 (zero-padded, e.g. n06)
"""
import sys

import networkx as nx


def generate(n):
    deg = [0] * n
    adj = [set() for _ in range(n)]
    out = []

    def rec(next_new):
        v = next((i for i in range(n) if deg[i] < 3), None)
        if v is None:
            if next_new == n:
                out.append([(a, b) for a in range(n) for b in adj[a] if a < b])
            return
        if v >= next_new:
            return
        cands = [w for w in range(v + 1, next_new) if deg[w] < 3 and w not in adj[v]]
        if next_new < n:
            cands.append(next_new)
        for w in cands:
            adj[v].add(w); adj[w].add(v); deg[v] += 1; deg[w] += 1
            rec(next_new + 1 if w == next_new else next_new)
            adj[v].discard(w); adj[w].discard(v); deg[v] -= 1; deg[w] -= 1

    rec(1)
    return out


def main():
    n = int(sys.argv[1])
    buckets = {}
    reps = []
    for edges in generate(n):
        g = nx.Graph(edges)
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        reps.append(g)
    lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in reps)
    for line in lines:
        print(line)


if __name__ == "__main__":
    main()
