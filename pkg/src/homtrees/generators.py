"""Seeded instance generators and small fixtures."""

from __future__ import annotations

import random

from .connectivity import edge_connectivity
from .errors import Unsatisfiable
from .multigraph import MultiGraph


# ---------------------------------------------------------------------------
# fixed fixtures
# ---------------------------------------------------------------------------

def nk2(n: int) -> MultiGraph:
    """Two vertices joined by n parallel edges."""
    return MultiGraph([(i, 0, 1) for i in range(n)], sides={0: "A", 1: "B"})


def cycle_graph(n: int) -> MultiGraph:
    sides = {i: ("A" if i % 2 else "B") for i in range(n)} if n % 2 == 0 else None
    return MultiGraph.from_pairs([(i, (i + 1) % n) for i in range(n)], sides=sides)


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph.from_pairs([(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    sides = {i: "A" for i in range(a)}
    sides.update({a + j: "B" for j in range(b)})
    return MultiGraph.from_pairs(
        [(i, a + j) for i in range(a) for j in range(b)], sides=sides)


def path_tree(edges: int) -> MultiGraph:
    return MultiGraph.from_pairs([(i, i + 1) for i in range(edges)])


def star_tree(edges: int) -> MultiGraph:
    return MultiGraph.from_pairs([(0, i + 1) for i in range(edges)])


def bistar_tree(k: int, l: int) -> MultiGraph:
    """Two adjacent centers of degrees k and l; all other vertices leaves.

    Vertex 0 is the degree-k center, vertex 1 the degree-l center.
    """
    pairs = [(0, 1)]
    nxt = 2
    for _ in range(k - 1):
        pairs.append((0, nxt))
        nxt += 1
    for _ in range(l - 1):
        pairs.append((1, nxt))
        nxt += 1
    return MultiGraph.from_pairs(pairs)


def spider_tree(*leg_lengths: int) -> MultiGraph:
    """Paths of the given lengths glued at a common center (vertex 0)."""
    pairs = []
    nxt = 1
    for leg in leg_lengths:
        prev = 0
        for _ in range(leg):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
    return MultiGraph.from_pairs(pairs)


_FIXTURES = {
    "c4": lambda: cycle_graph(4),
    "c8": lambda: cycle_graph(8),
    "k4": lambda: complete_graph(4),
    "k33": lambda: complete_bipartite(3, 3),
    "k44": lambda: complete_bipartite(4, 4),
}


# ---------------------------------------------------------------------------
# tree enumeration (AHU canonical codes)
# ---------------------------------------------------------------------------

def _rooted_code(adj, root, parent):
    children = sorted(_rooted_code(adj, w, root) for w in adj[root] if w != parent)
    return "(" + "".join(children) + ")"


def _tree_code(T: MultiGraph) -> str:
    """Canonical code of a free tree: AHU rooted at the center."""
    adj = {v: sorted(T.neighbors(v)) for v in T.vertices}
    if T.n == 1:
        return "()"
    # peel leaves to find the 1- or 2-vertex center
    degree = {v: len(adj[v]) for v in T.vertices}
    remaining = set(T.vertices)
    layer = [v for v in remaining if degree[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in adj[v]:
                if w in remaining:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = sorted(remaining)
    if len(centers) == 1:
        return _rooted_code(adj, centers[0], None)
    c1, c2 = centers
    return "".join(sorted([_rooted_code(adj, c1, c2), _rooted_code(adj, c2, c1)]))


def nonisomorphic_trees(m_edges: int) -> list:
    """All trees with exactly m_edges edges, up to isomorphism."""
    if m_edges < 1:
        raise ValueError("need at least one edge")
    trees = [MultiGraph.from_pairs([(0, 1)])]
    for _ in range(m_edges - 1):
        seen = {}
        for t in trees:
            n = t.n
            pairs = [t.endpoints(eid) for eid in t.edge_ids]
            for v in sorted(t.vertices):
                cand = MultiGraph.from_pairs(pairs + [(v, n)])
                seen.setdefault(_tree_code(cand), cand)
        trees = [seen[k] for k in sorted(seen)]
    return trees


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------

def _random_bipartite_spanning_tree(rng, side_a, side_b):
    """Spanning tree of the complete bipartite graph on the given sides."""
    b_set = set(side_b)
    pairs = []
    placed_a = [side_a[0]]
    placed_b = []
    todo = side_a[1:] + side_b
    rng.shuffle(todo)
    # the first attachment must be a B vertex: only class A is placed so far
    first_b = next(i for i, v in enumerate(todo) if v in b_set)
    todo.insert(0, todo.pop(first_b))
    for v in todo:
        if v in b_set:
            partner = rng.choice(placed_a)
            placed_b.append(v)
            pairs.append((partner, v))
        else:
            partner = rng.choice(placed_b)
            placed_a.append(v)
            pairs.append((v, partner))
    return pairs


def bipartite_multigraph(side_a: int, side_b: int, connectivity: int,
                         extra: int = 0, degree_multiple: int = 1,
                         seed: int = 0) -> MultiGraph:
    """Bipartite multigraph with edge connectivity >= `connectivity`.

    Built as a union of `connectivity` random bipartite spanning trees (a
    union of t edge-disjoint spanning trees is t-edge-connected), plus
    noise, plus parallel padding so every class-A degree is divisible by
    degree_multiple.
    """
    if side_a < 1 or side_b < 1:
        raise Unsatisfiable("both sides need at least one vertex")
    rng = random.Random(seed)
    A = list(range(side_a))
    B = list(range(side_a, side_a + side_b))
    pairs = []
    for _ in range(max(connectivity, 1)):
        pairs.extend(_random_bipartite_spanning_tree(rng, A, B))
    for _ in range(extra):
        pairs.append((rng.choice(A), rng.choice(B)))
    if degree_multiple > 1:
        deg = {a: 0 for a in A}
        for u, v in pairs:
            deg[u] += 1
        for a in A:
            short = (-deg[a]) % degree_multiple
            for _ in range(short):
                pairs.append((a, rng.choice(B)))
    sides = {a: "A" for a in A}
    sides.update({b: "B" for b in B})
    return MultiGraph.from_pairs(pairs, sides=sides)


def random_multigraph(vertices: int, connectivity: int, extra: int = 0,
                      seed: int = 0) -> MultiGraph:
    """General multigraph with edge connectivity >= `connectivity`."""
    if vertices < 2:
        raise Unsatisfiable("need at least two vertices")
    rng = random.Random(seed)
    vs = list(range(vertices))
    pairs = []
    for _ in range(max(connectivity, 1)):
        order = vs[:]
        rng.shuffle(order)
        for i, v in enumerate(order[1:], 1):
            pairs.append((rng.choice(order[:i]), v))
    for _ in range(extra):
        u, v = rng.sample(vs, 2)
        pairs.append((u, v))
    return MultiGraph.from_pairs(pairs)


def regular_bipartite(side: int, degree: int, seed: int = 0,
                      max_tries: int = 200) -> MultiGraph:
    """Simple `degree`-regular bipartite graph on side + side vertices."""
    if degree > side:
        raise Unsatisfiable(f"degree {degree} exceeds side size {side}")
    rng = random.Random(seed)
    A = list(range(side))
    B = list(range(side, 2 * side))
    for _ in range(max_tries):
        used = set()
        ok = True
        for _ in range(degree):
            # random perfect matching avoiding already placed edges
            placed = None
            for _ in range(50):
                perm = B[:]
                rng.shuffle(perm)
                m = list(zip(A, perm))
                if all((u, v) not in used for u, v in m):
                    placed = m
                    break
            if placed is None:
                ok = False
                break
            used.update(placed)
        if ok:
            sides = {a: "A" for a in A}
            sides.update({b: "B" for b in B})
            return MultiGraph.from_pairs(sorted(used), sides=sides)
    raise Unsatisfiable("could not assemble disjoint matchings")


def even_bipartite_simple(side_a: int, side_b: int, degrees=(4, 6),
                          seed: int = 0, max_tries: int = 300) -> MultiGraph:
    """Simple bipartite graph, class-A degrees even (drawn from `degrees`),
    size divisible by 4, 2-edge-connected."""
    if max(degrees) > side_b:
        raise Unsatisfiable("class-A degree cannot exceed the other side")
    if any(d % 2 for d in degrees):
        raise ValueError("degrees must be even")
    rng = random.Random(seed)
    A = list(range(side_a))
    B = list(range(side_a, side_a + side_b))
    for _ in range(max_tries):
        chosen = {a: rng.choice(degrees) for a in A}
        total = sum(chosen.values())
        if total % 4:
            fixed = False
            for a0 in rng.sample(A, len(A)):
                for d in degrees:
                    if d != chosen[a0] and (total - chosen[a0] + d) % 4 == 0:
                        chosen[a0] = d
                        fixed = True
                        break
                if fixed:
                    break
            if not fixed:
                continue
        pairs = []
        for a in A:
            for b in rng.sample(B, chosen[a]):
                pairs.append((a, b))
        sides = {a: "A" for a in A}
        sides.update({b: "B" for b in B})
        G = MultiGraph.from_pairs(pairs, sides=sides)
        if edge_connectivity(G) >= 2:
            return G
    raise Unsatisfiable("no 2-edge-connected instance found")


def generate(kind: str, seed: int = 0, **params) -> MultiGraph:
    """Dispatch by generator kind; see the individual builders."""
    kind = kind.lower()
    if kind == "nk2":
        return nk2(int(params["n"]))
    if kind == "fixture":
        name = params["name"].lower()
        if name not in _FIXTURES:
            raise Unsatisfiable(f"unknown fixture {name!r}; have {sorted(_FIXTURES)}")
        return _FIXTURES[name]()
    if kind == "bipartite_multigraph":
        return bipartite_multigraph(
            int(params["side_a"]), int(params["side_b"]),
            int(params.get("connectivity", 1)), int(params.get("extra", 0)),
            int(params.get("degree_multiple", 1)), seed)
    if kind == "random_multigraph":
        return random_multigraph(int(params["vertices"]),
                                 int(params.get("connectivity", 1)),
                                 int(params.get("extra", 0)), seed)
    if kind == "regular_bipartite":
        return regular_bipartite(int(params["side"]), int(params["degree"]), seed)
    if kind == "even_bipartite_simple":
        degrees = params.get("degrees", (4, 6))
        if isinstance(degrees, str):
            degrees = tuple(int(x) for x in degrees.split("+"))
        return even_bipartite_simple(int(params["side_a"]), int(params["side_b"]),
                                     degrees, seed)
    raise Unsatisfiable(f"unknown generator kind {kind!r}")
