"""Shared test utilities: brute-force oracles and small-graph enumeration.

The oracles here are deliberately independent of the library's own
algorithms (exhaustive cut/cycle/orientation enumeration, isomorphism by
backtracking) so they can act as ground truth.
"""

from __future__ import annotations

import itertools
from collections import Counter

from homtrees.multigraph import MultiGraph

INF = float("inf")


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def brute_min_cut(G: MultiGraph) -> int:
    """Minimum edge cut by enumerating all vertex bipartitions."""
    vs = sorted(G.vertices)
    if len(vs) < 2:
        return 0
    best = INF
    rest = vs[1:]
    for r in range(len(rest) + 1):
        for side in itertools.combinations(rest, r):
            S = {vs[0], *side}
            if len(S) == len(vs):
                continue
            crossing = sum(1 for eid in G.edge_ids
                           if (G.endpoints(eid)[0] in S) != (G.endpoints(eid)[1] in S))
            best = min(best, crossing)
    return int(best)


def brute_girth(G: MultiGraph):
    """Shortest cycle by enumerating edge subsets (only for small e)."""
    eids = list(G.edge_ids)
    best = INF
    for r in range(2, len(eids) + 1):
        if r >= best:
            break
        for sub in itertools.combinations(eids, r):
            deg = Counter()
            verts = set()
            for eid in sub:
                u, v = G.endpoints(eid)
                deg[u] += 1
                deg[v] += 1
                verts.add(u)
                verts.add(v)
            if any(d != 2 for d in deg.values()):
                continue
            # connected 2-regular = a single cycle
            start = next(iter(verts))
            seen = {start}
            stack = [start]
            sub_set = set(sub)
            while stack:
                x = stack.pop()
                for eid, y in G.adjacency(x):
                    if eid in sub_set and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen == verts:
                best = min(best, r)
    return best


def brute_orientation_vectors(G: MultiGraph, k: int) -> set:
    """All achievable outdegree-residue vectors over the 2^e orientations."""
    verts = sorted(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    ends = [G.endpoints(eid) for eid in G.edge_ids]
    out = set()
    for mask in range(1 << len(ends)):
        deg = [0] * len(verts)
        for i, (u, v) in enumerate(ends):
            deg[idx[u if mask >> i & 1 else v]] += 1
        out.add(tuple(d % k for d in deg))
    return out


# ---------------------------------------------------------------------------
# multigraph isomorphism (exact, small n)
# ---------------------------------------------------------------------------

def _wl_colors(G: MultiGraph, rounds: int = 3) -> dict:
    color = {v: G.degree(v) for v in G.vertices}
    for _ in range(rounds):
        sig = {}
        for v in G.vertices:
            nbr = tuple(sorted(color[G.other_end(e, v)] for e in G.incident(v)))
            sig[v] = (color[v], nbr)
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        color = {v: palette[sig[v]] for v in G.vertices}
    return color


def mg_key(G: MultiGraph) -> tuple:
    """Isomorphism-invariant bucket key (not a complete invariant)."""
    col = _wl_colors(G)
    hist = tuple(sorted(Counter(col.values()).items()))
    pair_sig = sorted(tuple(sorted((col[u], col[v])))
                      for u, v in (G.endpoints(e) for e in G.edge_ids))
    return (G.n, G.e, hist, tuple(map(tuple, pair_sig)))


def mg_isomorphic(G: MultiGraph, H: MultiGraph) -> bool:
    if (G.n, G.e) != (H.n, H.e):
        return False
    if mg_key(G) != mg_key(H):
        return False
    gmult = G.pair_multiplicities()
    hmult = H.pair_multiplicities()
    col_g = _wl_colors(G)
    col_h = _wl_colors(H)
    gv = sorted(G.vertices, key=lambda v: (col_g[v], v))
    hv = sorted(H.vertices)

    def mult(m, a, b):
        return m.get((a, b) if a <= b else (b, a), 0)

    def rec(i, mapping, used):
        if i == len(gv):
            return True
        v = gv[i]
        for w in hv:
            if w in used or col_h[w] != col_g[v]:
                continue
            if any(mult(gmult, v, u) != mult(hmult, w, mapping[u]) for u in mapping):
                continue
            mapping[v] = w
            used.add(w)
            if rec(i + 1, mapping, used):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return rec(0, {}, set())


# ---------------------------------------------------------------------------
# enumeration of connected multigraphs up to isomorphism
# ---------------------------------------------------------------------------

def connected_multigraphs(max_edges: int) -> list:
    """All connected loopless multigraphs with 1..max_edges edges, up to iso.

    Grown one edge at a time (between existing vertices or out to a fresh
    vertex), de-duplicated per level.
    """
    levels = [[MultiGraph.from_pairs([(0, 1)])]]
    for _ in range(max_edges - 1):
        buckets = {}
        for g in levels[-1]:
            vs = sorted(g.vertices)
            pairs = [g.endpoints(eid) for eid in g.edge_ids]
            candidates = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
            candidates += [(v, len(vs)) for v in vs]
            for u, v in candidates:
                cand = MultiGraph.from_pairs(pairs + [(u, v)])
                key = mg_key(cand)
                bucket = buckets.setdefault(key, [])
                if not any(mg_isomorphic(cand, other) for other in bucket):
                    bucket.append(cand)
        levels.append([g for key in sorted(buckets) for g in buckets[key]])
    return [g for level in levels for g in level]


def check_forest(G: MultiGraph, edge_ids) -> bool:
    """True iff the given edges are acyclic in G."""
    parent = {v: v for v in G.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in edge_ids:
        u, v = G.endpoints(eid)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def check_spanning_tree(G: MultiGraph, edge_ids) -> bool:
    return (len(set(edge_ids)) == G.n - 1 and check_forest(G, edge_ids)
            and _covers_all(G, edge_ids))


def _covers_all(G, edge_ids):
    if G.n <= 1:
        return True
    adj = {v: [] for v in G.vertices}
    for eid in edge_ids:
        u, v = G.endpoints(eid)
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(G.vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == G.n
