"""Loopless multigraph with stable edge identities, plus bipartitions.

Edge ids are arbitrary non-negative integers and survive subgraph
extraction unchanged, so certificates can reference edges of the
original graph no matter how many splitting steps produced them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional


@dataclass(frozen=True)
class Bipartition:
    class_a: frozenset
    class_b: frozenset

    def side_of(self, v) -> str:
        if v in self.class_a:
            return "A"
        if v in self.class_b:
            return "B"
        raise KeyError(v)

    def flipped(self) -> "Bipartition":
        return Bipartition(self.class_b, self.class_a)


class MultiGraph:
    """Finite loopless multigraph. Immutable after construction."""

    __slots__ = ("_edges", "_vertices", "_sides", "_adj", "_order")

    def __init__(self, edges: Iterable[tuple] = (), vertices: Iterable = (),
                 sides: Optional[Mapping] = None):
        edge_map = {}
        vs = set(vertices)
        for eid, u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} (edge {eid}) not allowed")
            if eid in edge_map:
                raise ValueError(f"duplicate edge id {eid}")
            edge_map[eid] = (u, v)
            vs.add(u)
            vs.add(v)
        self._edges = edge_map
        self._vertices = frozenset(vs)
        side_map = {}
        if sides:
            for v, s in sides.items():
                if v not in vs:
                    continue
                if s not in ("A", "B"):
                    raise ValueError(f"side tag of {v} must be 'A' or 'B', got {s!r}")
                side_map[v] = s
        self._sides = side_map
        adj = {v: [] for v in vs}
        for eid in sorted(edge_map):
            u, v = edge_map[eid]
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        self._adj = {v: tuple(lst) for v, lst in adj.items()}
        self._order = tuple(sorted(edge_map))

    @classmethod
    def from_pairs(cls, pairs, vertices=(), sides=None) -> "MultiGraph":
        """Build from (u, v) pairs, assigning edge ids 0, 1, ..."""
        return cls([(i, u, v) for i, (u, v) in enumerate(pairs)], vertices, sides)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edge_ids(self) -> tuple:
        return self._order

    @property
    def e(self) -> int:
        return len(self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def sides(self) -> dict:
        return dict(self._sides)

    def side_of(self, v):
        return self._sides.get(v)

    def endpoints(self, eid) -> tuple:
        return self._edges[eid]

    def other_end(self, eid, v):
        u, w = self._edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise KeyError(f"vertex {v} is not an endpoint of edge {eid}")

    def incident(self, v) -> tuple:
        return tuple(eid for eid, _ in self._adj[v])

    def adjacency(self, v) -> tuple:
        """(edge id, neighbour) pairs at v, ascending edge id."""
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def neighbors(self, v) -> set:
        return {w for _, w in self._adj[v]}

    def pair_multiplicities(self) -> dict:
        """Multiplicity per unordered vertex pair."""
        out = {}
        for u, v in self._edges.values():
            key = (u, v) if u <= v else (v, u)
            out[key] = out.get(key, 0) + 1
        return out

    def next_edge_id(self) -> int:
        return max(self._edges, default=-1) + 1

    def next_vertex_id(self) -> int:
        return max((v for v in self._vertices if isinstance(v, int)), default=-1) + 1

    # -- derived graphs --------------------------------------------------

    def subgraph(self, edge_ids, spanning: bool = True) -> "MultiGraph":
        """Subgraph on the given edge ids; keeps all vertices when spanning."""
        eids = set(edge_ids)
        missing = eids - set(self._edges)
        if missing:
            raise KeyError(f"unknown edge ids {sorted(missing)}")
        edges = [(eid, *self._edges[eid]) for eid in sorted(eids)]
        verts = self._vertices if spanning else ()
        return MultiGraph(edges, verts, self._sides)

    def without(self, edge_ids) -> "MultiGraph":
        drop = set(edge_ids)
        return self.subgraph([e for e in self._order if e not in drop])

    def with_sides(self, sides: Mapping) -> "MultiGraph":
        edges = [(eid, *self._edges[eid]) for eid in self._order]
        return MultiGraph(edges, self._vertices, sides)

    # -- traversal helpers -----------------------------------------------

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        start = next(iter(self._vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for _, w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list:
        """Vertex sets of connected components, each sorted."""
        seen = set()
        comps = []
        for start in sorted(self._vertices):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for _, w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    def __repr__(self):
        return f"MultiGraph(n={self.n}, e={self.e})"

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (self._edges == other._edges and self._vertices == other._vertices
                and self._sides == other._sides)

    def __hash__(self):
        return hash((self._vertices, tuple(sorted(self._edges.items()))))
