"""Connectivity primitives: cuts, girth, bipartitions, tree packings.

The tree packing is exact (matroid-union augmentation), because its
failure is used as a mathematical statement, not a heuristic one.
"""

from __future__ import annotations

import math
import random
from collections import deque
from fractions import Fraction

from .errors import BoundNotMet, NoPacking
from .multigraph import Bipartition, MultiGraph

INFINITY = math.inf


# ---------------------------------------------------------------------------
# edge connectivity via max-flow
# ---------------------------------------------------------------------------

def _capacities(G: MultiGraph) -> dict:
    cap = {}
    for eid in G.edge_ids:
        u, v = G.endpoints(eid)
        cap[(u, v)] = cap.get((u, v), 0) + 1
        cap[(v, u)] = cap.get((v, u), 0) + 1
    return cap


def _max_flow_value(cap_base: dict, neighbors: dict, s, t, limit=None) -> int:
    """Edmonds-Karp; stops early once `limit` is reached."""
    cap = dict(cap_base)
    flow = 0
    while limit is None or flow < limit:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v in neighbors[u]:
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        # bottleneck along s..t
        bottleneck = None
        v = t
        while parent[v] is not None:
            u = parent[v]
            c = cap[(u, v)]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            v = u
        v = t
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= bottleneck
            cap[(v, u)] = cap.get((v, u), 0) + bottleneck
            v = u
        flow += bottleneck
    return flow


def local_edge_connectivity(G: MultiGraph, s, t, limit=None) -> int:
    """Maximum number of edge-disjoint s-t paths (= s-t min cut)."""
    cap = _capacities(G)
    neighbors = {v: sorted(G.neighbors(v)) for v in G.vertices}
    return _max_flow_value(cap, neighbors, s, t, limit)


def edge_connectivity(G: MultiGraph) -> int:
    """Global minimum edge cut; 0 if disconnected or fewer than 2 vertices."""
    if G.n < 2:
        return 0
    if not G.is_connected():
        return 0
    vs = sorted(G.vertices)
    cap = _capacities(G)
    neighbors = {v: sorted(G.neighbors(v)) for v in G.vertices}
    s = vs[0]
    best = None
    for t in vs[1:]:
        limit = best
        val = _max_flow_value(cap, neighbors, s, t, limit)
        if best is None or val < best:
            best = val
        if best == 0:
            break
    return best


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def girth(G: MultiGraph):
    """Length of a shortest cycle; a parallel pair counts as a 2-cycle.

    Returns math.inf for forests.
    """
    if G.e == 0:
        return INFINITY
    if any(mult >= 2 for mult in G.pair_multiplicities().values()):
        return 2
    # simple graph from here on; BFS from every vertex is exact
    adj = {v: sorted(G.neighbors(v)) for v in G.vertices}
    best = INFINITY
    for s in sorted(G.vertices):
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                continue
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# ---------------------------------------------------------------------------
# bipartition
# ---------------------------------------------------------------------------

def bipartition(G: MultiGraph):
    """2-coloring honoring side tags, or None on odd cycles/tag conflicts."""
    color = {}
    for comp in G.components():
        start = comp[0]
        color[start] = G.side_of(start) or "A"
        queue = deque([start])
        while queue:
            u = queue.popleft()
            nxt = "B" if color[u] == "A" else "A"
            for w in G.neighbors(u):
                if w not in color:
                    color[w] = nxt
                    queue.append(w)
                elif color[w] != nxt:
                    return None
        # the BFS start may have guessed the wrong side for untagged components
        tags = [(v, G.side_of(v)) for v in comp if G.side_of(v)]
        if any(t != color[v] for v, t in tags):
            for v in comp:
                color[v] = "B" if color[v] == "A" else "A"
            if any(t != color[v] for v, t in tags):
                return None
    class_a = frozenset(v for v, c in color.items() if c == "A")
    return Bipartition(class_a, frozenset(G.vertices - class_a))


# ---------------------------------------------------------------------------
# spanning tree packing (matroid union augmentation)
# ---------------------------------------------------------------------------

class _Forest:
    """Mutable forest over a fixed vertex set, with cycle queries."""

    def __init__(self, vertices):
        self.adj = {v: [] for v in vertices}
        self.size = 0

    def connected(self, u, v):
        return self._path(u, v) is not None

    def _path(self, u, v):
        """Edge-id path u..v inside the forest, or None."""
        if u == v:
            return []
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for eid, y in self.adj[x]:
                if y not in prev:
                    prev[y] = (x, eid)
                    if y == v:
                        path = []
                        cur = v
                        while prev[cur] is not None:
                            px, peid = prev[cur]
                            path.append(peid)
                            cur = px
                        return path
                    queue.append(y)
        return None

    def cycle_edges(self, u, v):
        """Edges of the path closed by a new u-v edge (the fundamental cycle)."""
        path = self._path(u, v)
        if path is None:
            raise AssertionError("no cycle: endpoints are in different components")
        return path

    def add(self, eid, u, v):
        assert not self.connected(u, v), "forest add would create a cycle"
        self.adj[u].append((eid, v))
        self.adj[v].append((eid, u))
        self.size += 1

    def remove(self, eid, u, v):
        self.adj[u] = [p for p in self.adj[u] if p[0] != eid]
        self.adj[v] = [p for p in self.adj[v] if p[0] != eid]
        self.size -= 1

    def edges(self):
        out = set()
        for v, lst in self.adj.items():
            for eid, _ in lst:
                out.add(eid)
        return out


def _try_insert(G, forests, owner, e0):
    """Edmonds-style augmentation: try to place e0 into the forest union.

    BFS labelling: examining edge f against forest i either finds a free
    insertion (f joins two components of F_i) or labels the edges of f's
    fundamental cycle in F_i. First-come labels give shortest chains, which
    keeps the cascaded swaps independent.
    """
    k = len(forests)
    pred = {e0: None}
    queue = deque([e0])
    found = None
    while queue and found is None:
        f = queue.popleft()
        fu, fv = G.endpoints(f)
        for i in range(k):
            if not forests[i].connected(fu, fv):
                found = (f, i)
                break
            for x in forests[i].cycle_edges(fu, fv):
                if x not in pred:
                    pred[x] = (f, i)
                    queue.append(x)
    if found is None:
        return False
    # cascade: walk the label chain back to e0, shifting each edge one forest up
    f, i = found
    while True:
        fu, fv = G.endpoints(f)
        forests[i].add(f, fu, fv)
        prev = pred[f]
        if prev is None:
            owner[f] = i
            break
        g, j = prev
        # f sat on g's fundamental cycle in forest j; free that slot for g
        forests[j].remove(f, fu, fv)
        owner[f] = i
        f, i = g, j
    return True


def spanning_tree_packing(G: MultiGraph, k: int, seed: int = 0) -> list:
    """k pairwise edge-disjoint spanning trees as edge-id frozensets.

    Exact: raises NoPacking iff no packing of size k exists.
    """
    if k <= 0:
        return []
    if G.n <= 1:
        return [frozenset() for _ in range(k)]
    if not G.is_connected():
        raise NoPacking("graph is disconnected")
    rng = random.Random(seed)
    order = list(G.edge_ids)
    rng.shuffle(order)
    forests = [_Forest(G.vertices) for _ in range(k)]
    owner = {}
    need = k * (G.n - 1)
    placed = 0
    for e0 in order:
        if placed == need:
            break
        if _try_insert(G, forests, owner, e0):
            placed += 1
    if placed < need:
        raise NoPacking(f"only {placed} of {need} tree edges packable")
    trees = [frozenset(f.edges()) for f in forests]
    assert all(len(t) == G.n - 1 for t in trees)
    return trees


def max_spanning_tree_packing(G: MultiGraph, cap: int, seed: int = 0) -> list:
    """Largest packing of at most `cap` edge-disjoint spanning trees."""
    if cap <= 0 or G.n <= 1 or not G.is_connected():
        return []
    lam = edge_connectivity(G)
    hi = min(cap, lam, G.e // max(1, G.n - 1))
    if hi <= 0:
        return []
    # packing(k) succeeds exactly for k up to the packing number: binary search
    lo = 1
    best = []
    while lo <= hi:
        mid = (lo + hi) // 2
        try:
            packed = spanning_tree_packing(G, mid, seed)
        except NoPacking:
            hi = mid - 1
        else:
            best = packed
            lo = mid + 1
    return best


# ---------------------------------------------------------------------------
# low-degree spanning trees (local search) and connected low-degree subgraphs
# ---------------------------------------------------------------------------

def _seeded_spanning_tree(G: MultiGraph, rng) -> set:
    verts = sorted(G.vertices)
    root = rng.choice(verts)
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        adj = list(G.adjacency(v))
        rng.shuffle(adj)
        for eid, w in adj:
            if w not in seen:
                seen.add(w)
                tree.add(eid)
                queue.append(w)
    if len(seen) != G.n:
        raise NoPacking("graph is disconnected")
    return tree


def _allowed_degree(eps: Fraction, d: int) -> int:
    """Largest integer strictly below eps * d."""
    return (eps.numerator * d - 1) // eps.denominator


def low_degree_spanning_tree(G: MultiGraph, eps, seed: int = 0) -> frozenset:
    """Spanning tree with d(v,T) < eps * d(v,G) everywhere, by local search.

    Swaps a tree edge at an overloaded vertex for a reconnecting non-tree
    edge whenever that strictly lowers the total degree excess. Raises
    BoundNotMet when no improving swap remains.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if G.n <= 1:
        return frozenset()
    rng = random.Random(seed)
    allowed = {v: _allowed_degree(eps, G.degree(v)) for v in G.vertices}
    if any(a < 1 for a in allowed.values()):
        raise BoundNotMet("some vertex cannot even host one tree edge")
    tree = _seeded_spanning_tree(G, rng)

    def tree_degrees():
        deg = {v: 0 for v in G.vertices}
        for eid in tree:
            u, v = G.endpoints(eid)
            deg[u] += 1
            deg[v] += 1
        return deg

    def excess(deg, v, delta=0):
        return max(0, deg[v] + delta - allowed[v])

    max_iter = G.n ** 3
    for _ in range(max_iter):
        deg = tree_degrees()
        violators = sorted((v for v in G.vertices if deg[v] > allowed[v]),
                           key=lambda v: (-(deg[v] - allowed[v]), v))
        if not violators:
            return frozenset(tree)
        improved = False
        for v in violators:
            cand_tree_edges = sorted(e for e in G.incident(v) if e in tree)
            rng.shuffle(cand_tree_edges)
            for e in cand_tree_edges:
                u, w = G.endpoints(e)
                # component of u after cutting e
                side = {u}
                stack = [u]
                while stack:
                    x = stack.pop()
                    for eid2, y in G.adjacency(x):
                        if eid2 in tree and eid2 != e and y not in side:
                            side.add(y)
                            stack.append(y)
                repl = [f for f in G.edge_ids
                        if f not in tree and f != e
                        and (G.endpoints(f)[0] in side) != (G.endpoints(f)[1] in side)]
                rng.shuffle(repl)
                for f in repl:
                    x, y = G.endpoints(f)
                    # net change of the total excess; endpoints may coincide
                    delta = {}
                    for z in (u, w):
                        delta[z] = delta.get(z, 0) - 1
                    for z in (x, y):
                        delta[z] = delta.get(z, 0) + 1
                    change = sum(excess(deg, z, dz) - excess(deg, z) for z, dz in delta.items())
                    if change < 0:
                        tree.remove(e)
                        tree.add(f)
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            raise BoundNotMet("local search stalled above the degree bound")
    raise BoundNotMet("iteration cap reached")


def low_degree_connected_union(G: MultiGraph, eps, q: int, seed: int = 0,
                               strictness: str = "attempt", trees=None) -> frozenset:
    """Union of q spanning trees, each low-degree within its own group.

    Groups of ceil(4/eps) packed trees per output tree give the guarantee
    d(v, result) < eps * d(v, G). In attempt mode fewer trees per group are
    tolerated and an uncertified tree is used when the local search stalls.
    """
    eps = Fraction(eps)
    if q <= 0:
        return frozenset()
    group = -((-4 * eps.denominator) // eps.numerator)  # ceil(4 / eps)
    need = group * q
    if trees is None:
        cap = need if strictness == "strict" else min(need, G.e // max(1, G.n - 1))
        trees = max_spanning_tree_packing(G, cap, seed)
    if strictness == "strict" and len(trees) < need:
        raise NoPacking(f"need {need} spanning trees, found {len(trees)}")
    if len(trees) < q:
        raise NoPacking(f"need at least {q} spanning trees, found {len(trees)}")
    group_eff = min(group, len(trees) // q)
    result = set()
    rng = random.Random(seed)
    for i in range(q):
        bundle = trees[i * group_eff:(i + 1) * group_eff]
        union = set().union(*bundle)
        Gi = G.subgraph(union)
        try:
            t = low_degree_spanning_tree(Gi, eps, rng.randrange(1 << 30))
        except BoundNotMet:
            if strictness == "strict":
                raise
            t = bundle[0]  # uncertified fallback; callers re-verify degrees
        result |= set(t)
    return frozenset(result)


def connected_low_degree_subgraph(G: MultiGraph, k: int, q: int, seed: int = 0,
                                  strictness: str = "attempt") -> MultiGraph:
    """Spanning q-edge-connected subgraph with d(v,H) < d(v,G)/k."""
    eids = low_degree_connected_union(G, Fraction(1, k), q, seed, strictness)
    return G.subgraph(eids)
