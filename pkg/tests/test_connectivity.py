import math
from fractions import Fraction

import pytest

from homtrees.connectivity import (bipartition, connected_low_degree_subgraph,
                                   edge_connectivity, girth,
                                   low_degree_spanning_tree,
                                   max_spanning_tree_packing,
                                   spanning_tree_packing)
from homtrees.errors import BoundNotMet, NoPacking
from homtrees.generators import (bipartite_multigraph, complete_graph,
                                 cycle_graph, nk2, path_tree,
                                 random_multigraph, regular_bipartite,
                                 star_tree)
from homtrees.multigraph import MultiGraph

from helpers import (brute_girth, brute_min_cut, check_forest,
                     check_spanning_tree, connected_multigraphs)


# ---------------------------------------------------------------------------
# edge connectivity
# ---------------------------------------------------------------------------

def test_edge_connectivity_nk2():
    assert edge_connectivity(nk2(5)) == 5


def test_edge_connectivity_tree_is_one():
    assert edge_connectivity(path_tree(4)) == 1
    assert edge_connectivity(star_tree(6)) == 1


def test_edge_connectivity_c4():
    assert edge_connectivity(cycle_graph(4)) == 2


def test_edge_connectivity_degenerate():
    assert edge_connectivity(MultiGraph([], vertices=[0])) == 0
    assert edge_connectivity(MultiGraph([(0, 1, 2)], vertices=[5])) == 0


@pytest.mark.parametrize("seed", range(12))
def test_edge_connectivity_matches_exhaustive_cuts(seed):
    G = random_multigraph(vertices=3 + seed % 5, connectivity=1 + seed % 3,
                          extra=seed % 4, seed=seed)
    assert edge_connectivity(G) == brute_min_cut(G)


def test_edge_connectivity_matches_cuts_on_enumerated_graphs():
    for G in connected_multigraphs(5):
        assert edge_connectivity(G) == brute_min_cut(G), G


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def test_girth_examples():
    assert girth(cycle_graph(4)) == 4
    assert girth(path_tree(5)) == math.inf
    assert girth(nk2(2)) == 2
    assert girth(complete_graph(4)) == 3


def test_girth_matches_brute_force_small():
    for G in connected_multigraphs(6):
        assert girth(G) == brute_girth(G), G


# ---------------------------------------------------------------------------
# bipartition
# ---------------------------------------------------------------------------

def test_bipartition_c4():
    bip = bipartition(cycle_graph(4))
    assert bip is not None
    assert {len(bip.class_a), len(bip.class_b)} == {2}


def test_bipartition_triangle_none():
    assert bipartition(complete_graph(3)) is None


def test_bipartition_conflicting_tags_none():
    g = MultiGraph([(0, 1, 2)], sides={1: "A", 2: "A"})
    assert bipartition(g) is None


def test_bipartition_honors_tags():
    g = MultiGraph([(0, 1, 2), (1, 2, 3)], sides={2: "A"})
    bip = bipartition(g)
    assert 2 in bip.class_a and 1 in bip.class_b and 3 in bip.class_b


def test_bipartition_disconnected_with_tags():
    g = MultiGraph([(0, 1, 2), (1, 3, 4)], sides={2: "B", 3: "B"})
    bip = bipartition(g)
    assert bip.side_of(2) == "B" and bip.side_of(3) == "B"


# ---------------------------------------------------------------------------
# spanning tree packing
# ---------------------------------------------------------------------------

def test_packing_parallel_edges():
    k = 3
    trees = spanning_tree_packing(nk2(2 * k), k)
    assert len(trees) == k
    assert all(len(t) == 1 for t in trees)
    assert len(set().union(*trees)) == k


def test_packing_k4_two_trees():
    G = complete_graph(4)
    trees = spanning_tree_packing(G, 2)
    assert len(trees) == 2
    assert trees[0].isdisjoint(trees[1])
    for t in trees:
        assert check_spanning_tree(G, t)


def test_packing_c4_fails():
    with pytest.raises(NoPacking):
        spanning_tree_packing(cycle_graph(4), 2)


def test_packing_disconnected_fails():
    with pytest.raises(NoPacking):
        spanning_tree_packing(MultiGraph([(0, 1, 2)], vertices=[9]), 1)


@pytest.mark.parametrize("seed", range(20))
def test_packing_from_connectivity(seed):
    # Tutte/Nash-Williams: 2k-edge-connected implies k edge-disjoint trees
    k = 1 + seed % 4
    G = random_multigraph(vertices=4 + seed % 9, connectivity=2 * k,
                          extra=seed % 5, seed=100 + seed)
    assert edge_connectivity(G) >= 2 * k
    trees = spanning_tree_packing(G, k, seed=seed)
    seen = set()
    for t in trees:
        assert check_spanning_tree(G, t)
        assert seen.isdisjoint(t)
        seen |= t


def test_packing_exactness_on_enumerated_graphs():
    # packing succeeds iff the Tutte/Nash-Williams partition bound allows it;
    # cross-check success against the brute-force partition bound for k=2
    import itertools
    for G in connected_multigraphs(6):
        vs = sorted(G.vertices)
        # brute-force: max k with e_G(P) >= k(|P|-1) for every partition P
        def partitions(items):
            if not items:
                yield []
                return
            first, rest = items[0], items[1:]
            for part in partitions(rest):
                for i in range(len(part)):
                    yield part[:i] + [[first] + part[i]] + part[i + 1:]
                yield [[first]] + part
        bound = None
        for part in partitions(vs):
            if len(part) < 2:
                continue
            crossing = 0
            cls = {v: i for i, blk in enumerate(part) for v in blk}
            for eid in G.edge_ids:
                u, v = G.endpoints(eid)
                if cls[u] != cls[v]:
                    crossing += 1
            val = crossing // (len(part) - 1)
            bound = val if bound is None else min(bound, val)
        for k in (1, 2, 3):
            try:
                spanning_tree_packing(G, k)
                ok = True
            except NoPacking:
                ok = False
            assert ok == (k <= bound), (G, k, bound)


# ---------------------------------------------------------------------------
# low-degree spanning trees
# ---------------------------------------------------------------------------

def test_low_degree_tree_parallel():
    k = 3
    G = nk2(4 * k)
    t = low_degree_spanning_tree(G, Fraction(1, k))
    assert len(t) == 1


def test_low_degree_tree_tripled_star():
    # star K_{1,6} with every edge tripled: any spanning tree has center
    # degree 6, so eps=1/3 must fail and eps=1/2 succeed
    pairs = [(0, i) for i in range(1, 7) for _ in range(3)]
    G = MultiGraph.from_pairs(pairs)
    with pytest.raises(BoundNotMet):
        low_degree_spanning_tree(G, Fraction(1, 3))
    t = low_degree_spanning_tree(G, Fraction(1, 2))
    assert check_spanning_tree(G, t)
    deg0 = sum(1 for e in t if 0 in G.endpoints(e))
    assert deg0 == 6 and deg0 < 18 / 2


def test_low_degree_tree_cycle_high_eps():
    # doubled C4: degrees 4, a spanning path has degrees <= 2 < 4 * (3/4)
    pairs = [(i, (i + 1) % 4) for i in range(4) for _ in range(2)]
    G = MultiGraph.from_pairs(pairs)
    t = low_degree_spanning_tree(G, Fraction(3, 4))
    assert check_spanning_tree(G, t)
    for v in G.vertices:
        assert sum(1 for e in t if v in G.endpoints(e)) < 3


def test_low_degree_tree_impossible_eps():
    # eps * d(v) <= 1 leaves no room for any tree edge at v
    G = cycle_graph(4)
    with pytest.raises(BoundNotMet):
        low_degree_spanning_tree(G, Fraction(1, 2))


@pytest.mark.parametrize("seed", range(6))
def test_low_degree_tree_on_tree_unions(seed):
    # the regime the splitting pipeline uses: a union of 4k packed trees
    k = 2
    G = random_multigraph(vertices=6, connectivity=8 * k, seed=seed)
    trees = spanning_tree_packing(G, 4 * k, seed=seed)
    union = G.subgraph(set().union(*trees))
    t = low_degree_spanning_tree(union, Fraction(1, k), seed=seed)
    assert check_spanning_tree(union, t)
    for v in union.vertices:
        dt = sum(1 for e in t if v in union.endpoints(e))
        assert dt < union.degree(v) / k


# ---------------------------------------------------------------------------
# connected low-degree subgraphs (Lemma: union of one tree per group)
# ---------------------------------------------------------------------------

def test_connected_low_degree_parallel():
    k, q = 2, 3
    G = nk2(4 * k * q)
    H = connected_low_degree_subgraph(G, k, q, strictness="strict")
    assert H.e == q
    assert H.e < 4 * k * q / k


@pytest.mark.parametrize("seed,q", [(0, 1), (1, 2), (2, 2)])
def test_connected_low_degree_regular_bipartite(seed, q):
    k = 2
    G = bipartite_multigraph(4, 4, connectivity=8 * q * k, seed=seed)
    H = connected_low_degree_subgraph(G, k, q, seed=seed)
    assert edge_connectivity(H) >= q
    for v in G.vertices:
        assert H.degree(v) < G.degree(v) / k


def test_connected_low_degree_k1_q1():
    G = random_multigraph(vertices=5, connectivity=4, seed=3)
    trees = spanning_tree_packing(G, 4)
    assert len(trees) == 4
    H = connected_low_degree_subgraph(G, 1, 1)
    assert check_spanning_tree(G, H.edge_ids)
    for v in G.vertices:
        assert H.degree(v) < G.degree(v)


def test_max_packing_matches_exact():
    G = cycle_graph(4)
    assert len(max_spanning_tree_packing(G, 3)) == 1
    assert len(max_spanning_tree_packing(nk2(7), 99)) == 7
