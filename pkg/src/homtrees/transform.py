"""Graph surgeries: liftings, vertex splittings, vertex identifications.

Every operation returns an explicit back-map so downstream results
(orientations, subgraph selections) can be pulled back to the original
graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .connectivity import edge_connectivity, local_edge_connectivity
from .errors import (CutEdgeAtVertex, InvalidPartition, LoopCreated,
                     NoGoodPairing, OddDegree)
from .multigraph import Bipartition, MultiGraph


@dataclass(frozen=True)
class LiftBackMap:
    """For each lifted edge: the lifted vertex and the two replaced edges.

    pairs[L] = (v, e_first, e_second) where e_first joins v to the first
    endpoint of L as stored in the lifted graph and e_second to the second.
    """
    original: MultiGraph
    lifted_vertices: tuple
    pairs: Mapping


@dataclass(frozen=True)
class SplitBackMap:
    vertex_origin: Mapping  # new vertex -> original vertex


def bridges(G: MultiGraph) -> set:
    """Edge ids of all cut-edges (iterative lowpoint DFS, parallel-aware)."""
    out = set()
    visited = set()
    disc = {}
    low = {}
    counter = [0]
    for root in sorted(G.vertices):
        if root in visited:
            continue
        stack = [(root, None, iter(G.adjacency(root)))]
        visited.add(root)
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        while stack:
            v, in_edge, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid == in_edge:
                    continue
                if w not in visited:
                    visited.add(w)
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append((w, eid, iter(G.adjacency(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        out.add(in_edge)
    return out


def _pairs_ok(H: MultiGraph, skip, target: int) -> bool:
    """All local connectivities among vertices other than `skip` reach target.

    Uses the triangle property of local edge-connectivity: checking one
    fixed anchor against everything else suffices. target <= 2 is answered
    by a single bridge computation.
    """
    if target <= 0:
        return True
    others = sorted(H.vertices - {skip})
    if len(others) <= 1:
        return True
    if target <= 2:
        comp_of = {}
        for idx, comp in enumerate(H.components()):
            for v in comp:
                comp_of[v] = idx
        if len({comp_of[v] for v in others}) > 1:
            return False
        if target == 1:
            return True
        for b in bridges(H):
            u, w = H.endpoints(b)
            comp_u = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for eid, y in H.adjacency(x):
                    if eid != b and y not in comp_u:
                        comp_u.add(y)
                        stack.append(y)
            comp_w = {x for x in H.vertices
                      if comp_of[x] == comp_of[w] and x not in comp_u}
            if (comp_u - {skip}) and (comp_w - {skip}):
                return False
        return True
    anchor = others[0]
    for t in others[1:]:
        if local_edge_connectivity(H, anchor, t, limit=target) < target:
            return False
    return True


def lift_vertex(G: MultiGraph, v, seed: int = 0, min_connectivity=None):
    """Delete v and pair its incident edges into lifted edges (Mader/Frank).

    Requires even degree and no incident cut-edge; searches pairings with
    backtracking, keeping local connectivity among the surviving vertices
    at min_connectivity (default: the edge connectivity of G).
    """
    if v not in G.vertices:
        raise KeyError(v)
    if G.degree(v) % 2:
        raise OddDegree(f"vertex {v} has odd degree {G.degree(v)}")
    # suppression (degree 2) is always safe, even on cut-edges
    if G.degree(v) > 2 and any(v in G.endpoints(b) for b in bridges(G)):
        raise CutEdgeAtVertex(f"vertex {v} is incident with a cut-edge")
    target = edge_connectivity(G) if min_connectivity is None else min_connectivity
    rng = random.Random(seed)

    def rec(H: MultiGraph, next_id: int, acc: dict):
        remaining = sorted(H.incident(v))
        if not remaining:
            final = MultiGraph([(e, *H.endpoints(e)) for e in H.edge_ids],
                               H.vertices - {v}, H.sides)
            return final, acc
        e1 = remaining[0]
        a = H.other_end(e1, v)
        candidates = remaining[1:]
        rng.shuffle(candidates)
        for e2 in candidates:
            b = H.other_end(e2, v)
            if a == b:
                continue  # would create a loop
            edges = [(e, *H.endpoints(e)) for e in H.edge_ids if e not in (e1, e2)]
            edges.append((next_id, a, b))
            H2 = MultiGraph(edges, H.vertices, H.sides)
            if not _pairs_ok(H2, v, target):
                continue
            acc2 = dict(acc)
            acc2[next_id] = (v, e1, e2)
            result = rec(H2, next_id + 1, acc2)
            if result is not None:
                return result
        return None

    result = rec(G, G.next_edge_id(), {})
    if result is None:
        raise NoGoodPairing(f"no connectivity-preserving pairing at {v}")
    lifted, pairs = result
    return lifted, LiftBackMap(G, (v,), pairs)


def lift_side(G: MultiGraph, bip: Bipartition, seed: int = 0,
              min_connectivity: int = 2):
    """Lift every vertex of class A in turn; result lives on class B.

    Each class-A vertex must have even degree; every intermediate lift
    preserves at least min_connectivity among the surviving vertices.
    """
    odd = [v for v in sorted(bip.class_a) if G.degree(v) % 2]
    if odd:
        raise OddDegree(f"class-A vertices with odd degree: {odd}")
    rng = random.Random(seed)
    current = G
    pairs = {}
    for v in sorted(bip.class_a):
        current, back = lift_vertex(current, v, rng.randrange(1 << 30),
                                    min_connectivity=min_connectivity)
        for lifted_eid, (lv, e1, e2) in back.pairs.items():
            assert e1 in G.edge_ids and e2 in G.edge_ids, \
                "lift_side must only pair original edges"
            pairs[lifted_eid] = (lv, e1, e2)
    return current, LiftBackMap(G, tuple(sorted(bip.class_a)), pairs)


def split_vertex(G: MultiGraph, v, groups):
    """Replace v by one fresh vertex per group of its incident edges."""
    if v not in G.vertices:
        raise KeyError(v)
    groups = [tuple(g) for g in groups]
    flat = [e for g in groups for e in g]
    if sorted(flat) != sorted(G.incident(v)) or any(not g for g in groups):
        raise InvalidPartition(f"groups do not partition the edges at {v}")
    base = G.next_vertex_id()
    origin = {}
    assign = {}
    for i, g in enumerate(groups):
        nv = base + i
        origin[nv] = v
        for e in g:
            assign[e] = nv
    edges = []
    for eid in G.edge_ids:
        u, w = G.endpoints(eid)
        if u == v:
            u = assign[eid]
        elif w == v:
            w = assign[eid]
        edges.append((eid, u, w))
    sides = G.sides
    side_v = sides.pop(v, None)
    vertices = (G.vertices - {v}) | set(origin)
    if side_v:
        for nv in origin:
            sides[nv] = side_v
    return MultiGraph(edges, vertices, sides), SplitBackMap(origin)


def identify_vertices(G: MultiGraph, classes):
    """Merge each class to a single vertex (min id), keeping all edges."""
    classes = [frozenset(c) for c in classes]
    flat = [v for c in classes for v in c]
    if len(flat) != len(set(flat)) or set(flat) != set(G.vertices):
        raise InvalidPartition("classes do not partition the vertex set")
    image = {}
    for c in classes:
        rep = min(c)
        for v in c:
            image[v] = rep
    edges = []
    for eid in G.edge_ids:
        u, w = G.endpoints(eid)
        if image[u] == image[w]:
            raise LoopCreated(f"vertices {u} and {w} are adjacent")
        edges.append((eid, image[u], image[w]))
    return MultiGraph(edges, set(image.values()))


def homomorphic_image(T: MultiGraph, classes) -> MultiGraph:
    """Image of T under identifying each class; edge count is preserved."""
    return identify_vertices(T, classes)
