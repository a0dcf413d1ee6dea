#!/usr/bin/env python3
"""Generate all connected cubic graphs on 4..12 vertices, graph6 output.

Level-wise edge addition: always complete the lowest-indexed vertex of
degree < 3, dedup each level up to isomorphism (WL-hash buckets + VF2).
Known counts (OEIS A002851): n=4:1, 6:2, 8:5, 10:19, 12:85.
"""
import sys
import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


def dedup(graphs):
    buckets = {}
    for g in graphs:
        h = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
        buckets.setdefault(h, []).append(g)
    out = []
    for bucket in buckets.values():
        reps = []
        for g in bucket:
            if not any(GraphMatcher(g, r).is_isomorphic() for r in reps):
                reps.append(g)
        out.extend(reps)
    return out


def cubic_connected(n):
    g0 = nx.empty_graph(n)
    frontier = [g0]
    target_edges = 3 * n // 2
    for _level in range(target_edges):
        nxt = []
        for g in frontier:
            v = next(u for u in range(n) if g.degree(u) < 3)
            for w in range(n):
                if w != v and g.degree(w) < 3 and not g.has_edge(v, w):
                    h = g.copy()
                    h.add_edge(v, w)
                    nxt.append(h)
        frontier = dedup(nxt)
        sys.stderr.write(f"n={n} edges={_level+1} frontier={len(frontier)}\n")
    done = [g for g in frontier
            if all(d == 3 for _, d in g.degree()) and nx.is_connected(g)]
    return dedup(done)


def main():
    lines = []
    for n in (4, 6, 8, 10, 12):
        gs = cubic_connected(n)
        print(f"n={n}: {len(gs)} connected cubic graphs", file=sys.stderr)
        for g in gs:
            lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    lines.sort(key=lambda s: (len(s), s))
    with open(sys.argv[1], "w") as f:
        for l in lines:
            f.write(l + "\n")


if __name__ == "__main__":
    main()
