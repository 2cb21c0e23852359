"""Graphs, strong products and powers, and the exact independence solver."""

from __future__ import annotations

import numpy as np
import pytest

from zecap import (
    Graph,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    independence_number,
    strong_power,
    strong_product,
)
from zecap.errors import DimensionMismatchError, SizeLimitError

from invariants import check_alpha_supermultiplicative
from oracles import brute_alpha, pruned_alpha, random_graph, strong_product_edges

# Petersen graph: outer 5-cycle, inner pentagram, spokes.
PETERSEN_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    + [(i, 5 + i) for i in range(5)]
)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def test_graph_normalizes_and_validates_edges():
    g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
    assert g.edges == frozenset({(0, 2), (1, 2)})
    with pytest.raises(DimensionMismatchError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(DimensionMismatchError):
        Graph(vertex_count=3, edges=frozenset({(0, 3)}))
    with pytest.raises(DimensionMismatchError):
        Graph(vertex_count=0, edges=frozenset())


def test_standard_families():
    assert len(complete_graph(4).edges) == 6
    assert edgeless_graph(5).edges == frozenset()
    c5 = cycle_graph(5)
    assert all(c5.degree(v) == 2 for v in range(5))
    assert c5.has_edge(4, 0)


def test_complement_splits_all_pairs():
    c5 = cycle_graph(5)
    comp = c5.complement()
    assert len(c5.edges | comp.edges) == 10
    assert not (c5.edges & comp.edges)
    assert comp.edges == frozenset({(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)})


def test_adjacency_matrix_matches_masks():
    g = Graph.from_edges(4, [(0, 1), (2, 3), (1, 3)])
    a = g.adjacency_matrix()
    assert np.array_equal(a, a.T)
    masks = g.adjacency_masks()
    for v in range(4):
        assert [u for u in range(4) if (masks[v] >> u) & 1] == list(np.flatnonzero(a[v]))


# ---------------------------------------------------------------------------
# Strong products and powers
# ---------------------------------------------------------------------------


def test_strong_product_matches_definition_on_fixed_pairs():
    cases = [
        (cycle_graph(5), cycle_graph(5)),
        (complete_graph(2), complete_graph(3)),
        (edgeless_graph(3), cycle_graph(4)),
        (Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), complete_graph(2)),
    ]
    for g, h in cases:
        got = strong_product(g, h)
        count, want = strong_product_edges(g.vertex_count, g.edges, h.vertex_count, h.edges)
        assert got.vertex_count == count
        assert got.edges == want


def test_strong_product_matches_definition_on_random_pairs():
    rng = np.random.default_rng(12)
    for _ in range(25):
        vg, vh = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        g = Graph.from_edges(vg, random_graph(vg, rng.uniform(0, 1), rng))
        h = Graph.from_edges(vh, random_graph(vh, rng.uniform(0, 1), rng))
        got = strong_product(g, h)
        _, want = strong_product_edges(vg, g.edges, vh, h.edges)
        assert got.edges == want


def test_single_vertex_is_the_product_identity():
    g = Graph.from_edges(4, [(0, 3), (1, 2)])
    assert strong_product(complete_graph(1), g).edges == g.edges
    assert strong_product(g, complete_graph(1)).edges == g.edges


def test_pentagon_squared_is_eight_regular():
    sq = strong_product(cycle_graph(5), cycle_graph(5))
    assert sq.vertex_count == 25
    assert all(sq.degree(v) == 8 for v in range(25))


def test_strong_power_basics():
    c5 = cycle_graph(5)
    assert strong_power(c5, 1).edges == c5.edges
    cube = strong_power(complete_graph(2), 3)
    assert cube.vertex_count == 8 and len(cube.edges) == 28
    assert strong_power(edgeless_graph(2), 3).edges == frozenset()


def test_strong_power_respects_size_cap():
    with pytest.raises(SizeLimitError) as exc:
        strong_power(cycle_graph(5), 3)
    assert exc.value.size == 125
    with pytest.raises(DimensionMismatchError):
        strong_power(cycle_graph(5), 0)


# ---------------------------------------------------------------------------
# independence_number
# ---------------------------------------------------------------------------


def test_alpha_of_standard_families():
    assert independence_number(complete_graph(6)) == (1, (0,))
    assert independence_number(edgeless_graph(5)) == (5, (0, 1, 2, 3, 4))
    assert independence_number(cycle_graph(5)) == (2, (0, 2))
    assert independence_number(cycle_graph(7)) == (3, (0, 2, 4))


def test_alpha_of_petersen_graph():
    g = Graph.from_edges(10, PETERSEN_EDGES)
    alpha, witness = independence_number(g)
    assert (alpha, witness) == brute_alpha(10, PETERSEN_EDGES)
    assert alpha == 4


def test_pentagon_power_alpha_is_five():
    sq = strong_power(cycle_graph(5), 2)
    alpha, witness = independence_number(sq)
    assert alpha == 5
    assert witness == (0, 7, 14, 16, 23)
    want_alpha, want_witness = pruned_alpha(25, sq.edges)
    assert (alpha, witness) == (want_alpha, want_witness)


def test_witness_is_independent_and_canonical_on_random_graphs():
    rng = np.random.default_rng(77)
    for _ in range(200):
        v = int(rng.integers(1, 9))
        edges = random_graph(v, rng.uniform(0.1, 0.9), rng)
        g = Graph.from_edges(v, edges)
        alpha, witness = independence_number(g)
        assert (alpha, witness) == brute_alpha(v, edges)
        assert len(witness) == alpha
        assert not any(g.has_edge(a, b) for i, a in enumerate(witness) for b in witness[i + 1:])


def test_alpha_invariant_under_relabeling():
    rng = np.random.default_rng(31)
    for _ in range(20):
        v = int(rng.integers(2, 9))
        edges = random_graph(v, 0.5, rng)
        g = Graph.from_edges(v, edges)
        perm = rng.permutation(v)
        h = Graph.from_edges(v, [(perm[a], perm[b]) for a, b in edges])
        ag, wg = independence_number(g)
        ah, wh = independence_number(h)
        assert ag == ah
        assert not any(h.has_edge(a, b) for i, a in enumerate(wh) for b in wh[i + 1:])


def test_independence_number_respects_size_cap():
    with pytest.raises(SizeLimitError):
        independence_number(edgeless_graph(65))


# ---------------------------------------------------------------------------
# Property suite
# ---------------------------------------------------------------------------


def test_alpha_supermultiplicative_on_strong_products():
    check_alpha_supermultiplicative(200)


def test_pentagon_beats_the_product_bound_strictly():
    # alpha(C5)^2 = 4 < 5 = alpha(C5 x C5): the strict gap block codes exploit.
    c5 = cycle_graph(5)
    alpha, _ = independence_number(strong_product(c5, c5))
    assert alpha == 5 > independence_number(c5)[0] ** 2
