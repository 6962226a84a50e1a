"""Orientations with prescribed outdegrees modulo k.

Exactness strategy per connected component:
  * k = 1: anything goes.
  * k = 2: spanning-tree parity fix, total whenever the component sum
    condition holds (which is also necessary).
  * k >= 3, small components: a cached table of achievable residue
    vectors over all 2^e orientations, consulted first so small-instance
    behaviour is exact.
  * k >= 3, large components: randomized path-reversal routing with
    restarts; honest OrientationNotFound when the search exhausts.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import MapMismatch, OrientationNotFound, SumConditionViolated
from .multigraph import MultiGraph
from .transform import LiftBackMap

_TABLE_EDGE_LIMIT = 14
_table_cache: dict = {}


@dataclass(frozen=True)
class Orientation:
    graph: MultiGraph
    tail: Mapping  # edge id -> tail vertex

    def head(self, eid):
        return self.graph.other_end(eid, self.tail[eid])

    def outdegree(self, v) -> int:
        return sum(1 for eid in self.graph.incident(v) if self.tail[eid] == v)

    def indegree(self, v) -> int:
        return self.graph.degree(v) - self.outdegree(v)

    def outdegrees(self) -> dict:
        out = {v: 0 for v in self.graph.vertices}
        for eid, t in self.tail.items():
            out[t] += 1
        return out


@dataclass(frozen=True)
class ResidueTarget:
    modulus: int
    targets: Mapping  # vertex -> residue; missing vertices mean 0

    def residue(self, v) -> int:
        return self.targets.get(v, 0) % self.modulus

    def check_sum(self, G: MultiGraph):
        total = sum(self.residue(v) for v in G.vertices)
        if total % self.modulus != G.e % self.modulus:
            raise SumConditionViolated(
                f"targets sum to {total % self.modulus}, edges are "
                f"{G.e % self.modulus} (mod {self.modulus})")


def _component_graph(G, comp):
    comp = set(comp)
    eids = [eid for eid in G.edge_ids if G.endpoints(eid)[0] in comp]
    return G.subgraph(eids, spanning=False) if eids else MultiGraph([], comp)


def _orient_parity(G: MultiGraph, res: dict, rng) -> dict:
    """k = 2 on a connected graph: fix tree-edge tails leaves-first."""
    root = min(G.vertices)
    parent_edge = {root: None}
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for eid, w in G.adjacency(v):
            if w not in seen:
                seen.add(w)
                parent_edge[w] = eid
                order.append(w)
                queue.append(w)
    tree_edges = {parent_edge[v] for v in order[1:]}
    tail = {}
    for eid in G.edge_ids:
        if eid not in tree_edges:
            tail[eid] = G.endpoints(eid)[rng.randrange(2)]
    for v in reversed(order[1:]):
        eid = parent_edge[v]
        fixed_out = sum(1 for e2 in G.incident(v) if e2 in tail and tail[e2] == v)
        if fixed_out % 2 == res[v] % 2:
            tail[eid] = G.other_end(eid, v)
        else:
            tail[eid] = v
    out_root = sum(1 for e2 in G.incident(root) if tail[e2] == root)
    assert out_root % 2 == res[root] % 2, "root parity must follow from the sum condition"
    return tail


def _achievable_table(G: MultiGraph, k: int) -> dict:
    """residue vector (sorted-vertex order) -> one witness mask."""
    key = (tuple((eid, *G.endpoints(eid)) for eid in G.edge_ids), k)
    if key in _table_cache:
        return _table_cache[key]
    verts = sorted(G.vertices)
    index = {v: i for i, v in enumerate(verts)}
    eids = list(G.edge_ids)
    ends = [G.endpoints(eid) for eid in eids]
    table = {}
    for mask in range(1 << len(eids)):
        out = [0] * len(verts)
        for i, (u, v) in enumerate(ends):
            out[index[u if mask >> i & 1 else v]] += 1
        vec = tuple(d % k for d in out)
        if vec not in table:
            table[vec] = mask
    _table_cache[key] = table
    return table


def _orient_by_table(G: MultiGraph, k: int, res: dict):
    table = _achievable_table(G, k)
    verts = sorted(G.vertices)
    vec = tuple(res[v] % k for v in verts)
    mask = table.get(vec)
    if mask is None:
        return None
    eids = list(G.edge_ids)
    return {eid: (G.endpoints(eid)[0] if mask >> i & 1 else G.endpoints(eid)[1])
            for i, eid in enumerate(eids)}


def _reverse_path(tail, path_edges, G):
    for eid in path_edges:
        tail[eid] = G.other_end(eid, tail[eid])


def _directed_path(G, tail, src, dst):
    """Edge ids of a directed src -> dst path under `tail`, or None."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while prev[v] is not None:
                pv, eid = prev[v]
                path.append(eid)
                v = pv
            return list(reversed(path))
        for eid, w in G.adjacency(v):
            if tail[eid] == v and w not in prev:
                prev[w] = (v, eid)
                queue.append(w)
    return None


def _orient_by_routing(G: MultiGraph, k: int, res: dict, rng, restarts=8):
    """Path-reversal search: move outdegree units between deficient vertices."""
    verts = sorted(G.vertices)
    for _ in range(restarts):
        tail = {eid: G.endpoints(eid)[rng.randrange(2)] for eid in G.edge_ids}
        out = {v: 0 for v in verts}
        for eid, t in tail.items():
            out[t] += 1
        need = {v: (res[v] - out[v]) % k for v in verts}
        stuck = False
        while not stuck:
            nonzero = [v for v in verts if need[v]]
            if not nonzero:
                return tail
            receiver = nonzero[0]
            progressed = False
            for donor in nonzero[1:]:
                # reversing a donor -> receiver path adds one outdegree at
                # the receiver and removes one at the donor
                transfers = need[receiver]
                ok = True
                for _ in range(transfers):
                    path = _directed_path(G, tail, donor, receiver)
                    if path is None:
                        ok = False
                        break
                    _reverse_path(tail, path, G)
                    need[receiver] = (need[receiver] - 1) % k
                    need[donor] = (need[donor] + 1) % k
                if ok and need[receiver] == 0:
                    progressed = True
                    break
                if not ok:
                    # try the opposite direction: push the receiver up to 0 mod k
                    transfers = (k - need[receiver]) % k
                    ok2 = True
                    for _ in range(transfers):
                        path = _directed_path(G, tail, receiver, donor)
                        if path is None:
                            ok2 = False
                            break
                        _reverse_path(tail, path, G)
                        need[receiver] = (need[receiver] + 1) % k
                        need[donor] = (need[donor] - 1) % k
                    if ok2 and need[receiver] == 0:
                        progressed = True
                        break
            if not progressed:
                stuck = True
    return None


def orient_mod(G: MultiGraph, target: ResidueTarget, seed: int = 0) -> Orientation:
    """Orientation with d+(v) = p(v) (mod k) at every vertex."""
    k = target.modulus
    if k < 1:
        raise ValueError("modulus must be >= 1")
    target.check_sum(G)
    rng = random.Random(seed)
    if k == 1:
        tail = {eid: G.endpoints(eid)[rng.randrange(2)] for eid in G.edge_ids}
        return Orientation(G, tail)
    tail = {}
    for comp in G.components():
        Gc = _component_graph(G, comp)
        res = {v: target.residue(v) for v in comp}
        total = sum(res.values()) % k
        if total != Gc.e % k:
            raise OrientationNotFound(
                f"component {comp[0]}..: residues sum to {total}, edges are "
                f"{Gc.e % k} (mod {k}); no orientation exists")
        if Gc.e == 0:
            continue
        if k == 2:
            tail.update(_orient_parity(Gc, res, rng))
            continue
        if Gc.e <= _TABLE_EDGE_LIMIT:
            part = _orient_by_table(Gc, k, res)
            if part is None:
                raise OrientationNotFound(
                    "exhaustive enumeration found no orientation")
            tail.update(part)
            continue
        part = _orient_by_routing(Gc, k, res, rng)
        if part is None:
            raise OrientationNotFound("path-reversal search exhausted")
        tail.update(part)
    orient = Orientation(G, tail)
    assert all(orient.outdegree(v) % k == target.residue(v) for v in G.vertices)
    return orient


def orient_even_outdegrees(G: MultiGraph, seed: int = 0) -> Orientation:
    """All outdegrees even; exists for every connected graph of even size."""
    return orient_mod(G, ResidueTarget(2, {}), seed)


def pull_back(orient: Orientation, back: LiftBackMap) -> Orientation:
    """Realize each lifted edge's direction as a directed 2-path."""
    lifted = orient.graph
    original = back.original
    lifted_ids = set(lifted.edge_ids)
    original_ids = set(original.edge_ids)
    for L in back.pairs:
        if L not in lifted_ids:
            raise MapMismatch(f"lifted edge {L} missing from the orientation")
    tail = {}
    for eid in lifted.edge_ids:
        if eid in back.pairs:
            continue
        if eid not in original_ids:
            raise MapMismatch(f"edge {eid} is neither lifted nor original")
        tail[eid] = orient.tail[eid]
    for L, (v, e_first, e_second) in back.pairs.items():
        a, b = lifted.endpoints(L)
        if orient.tail[L] == a:
            tail[e_first] = a       # a -> v
            tail[e_second] = v      # v -> b
        else:
            tail[e_second] = b      # b -> v
            tail[e_first] = v       # v -> a
    if set(tail) != original_ids:
        raise MapMismatch("pulled-back orientation does not cover the original edges")
    return Orientation(original, tail)
