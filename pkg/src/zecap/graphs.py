"""Simple graphs, strong products, and an exact independence-number solver.

The zero-error size of an n-block code is the independence number of the
n-th strong power of the confusability graph, so this module is the
combinatorial engine of the package.  Graphs are small by design (exact
computation is capped at ``MAX_VERTICES`` vertices); adjacency is kept as
per-vertex bitmasks (Python ints), which makes the branch-and-bound loop a
handful of integer ops per node.

Edge semantics follow the package convention: an edge means confusable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, SizeLimitError

__all__ = [
    "MAX_VERTICES",
    "Graph",
    "complete_graph",
    "edgeless_graph",
    "cycle_graph",
    "strong_product",
    "strong_power",
    "independence_number",
]

# Cap for exact independence-number computation and for product construction.
MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices 0..vertex_count-1.

    Edges are stored as a frozenset of (a, b) pairs with a < b; build
    through :meth:`from_edges` to normalize arbitrary pair iterables.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise DimensionMismatchError("a graph needs at least one vertex")
        for a, b in self.edges:
            if not (0 <= a < b < self.vertex_count):
                raise DimensionMismatchError(
                    f"edge ({a}, {b}) invalid for {self.vertex_count} vertices"
                )

    @staticmethod
    def from_edges(vertex_count: int, pairs) -> "Graph":
        norm = set()
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                raise DimensionMismatchError(f"self-loop at vertex {a}")
            norm.add((min(a, b), max(a, b)))
        return Graph(vertex_count=vertex_count, edges=frozenset(norm))

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks (bit b of masks[a] set iff a~b)."""
        masks = [0] * self.vertex_count
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (float64, symmetric, zero diagonal)."""
        m = np.zeros((self.vertex_count, self.vertex_count))
        for a, b in self.edges:
            m[a, b] = m[b, a] = 1.0
        return m

    def complement(self) -> "Graph":
        n = self.vertex_count
        comp = frozenset(
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if (a, b) not in self.edges
        )
        return Graph(vertex_count=n, edges=comp)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((a, b) for a in range(n) for b in range(a + 1, n)))


def edgeless_graph(n: int) -> Graph:
    return Graph(vertex_count=n, edges=frozenset())


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DimensionMismatchError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def strong_product(g: Graph, h: Graph, max_vertices: int = MAX_VERTICES) -> Graph:
    """Strong graph product.

    Vertex (u, v) maps to index ``u * h.vertex_count + v`` (lexicographic).
    Distinct vertices are adjacent iff each coordinate is equal or adjacent,
    which is exactly the per-use confusability of two-letter words.

    Raises
    ------
    SizeLimitError
        If the product would exceed ``max_vertices`` vertices.
    """
    n = g.vertex_count * h.vertex_count
    if n > max_vertices:
        raise SizeLimitError(n, max_vertices)
    # (A_g + I) kron (A_h + I) has a positive entry exactly where the two
    # coordinates are each equal-or-adjacent; drop the diagonal.
    ag = g.adjacency_matrix() + np.eye(g.vertex_count)
    ah = h.adjacency_matrix() + np.eye(h.vertex_count)
    prod = np.kron(ag, ah)
    np.fill_diagonal(prod, 0.0)
    rows, cols = np.nonzero(prod)
    return Graph.from_edges(n, ((int(a), int(b)) for a, b in zip(rows, cols) if a < b))


def strong_power(g: Graph, n: int, max_vertices: int = MAX_VERTICES) -> Graph:
    """n-th strong power of ``g``; vertex indices are base-V digit strings.

    ``strong_power(g, 1)`` is ``g`` itself.  The compound index of the word
    (c_0, ..., c_{n-1}) is ``sum c_t * V^(n-1-t)``, so sorted vertex order
    is lexicographic word order.
    """
    if n < 1:
        raise DimensionMismatchError("strong power needs n >= 1")
    if g.vertex_count**n > max_vertices:
        raise SizeLimitError(g.vertex_count**n, max_vertices)
    out = g
    for _ in range(n - 1):
        out = strong_product(out, g, max_vertices)
    return out


# ---------------------------------------------------------------------------
# Exact maximum independent set
# ---------------------------------------------------------------------------
#
# alpha(G) is computed as a maximum clique of the complement with the classic
# greedy-coloring bound: candidates are colored greedily, and a partial
# clique R can only reach |R| + (number of colors), so branches are cut as
# soon as that bound falls to the incumbent.  Vertices enter the coloring in
# a fixed (degree-sorted) order, making the search fully deterministic.


def _color_order(cand: int, adj: tuple[int, ...], order_hint: tuple[int, ...]):
    """Greedy coloring of the candidate set; returns (vertices, bounds).

    Vertices come back grouped by color class, bounds[i] = color index of
    vertices[i] (1-based).  A k-colored candidate set holds no clique larger
    than k.
    """
    vertices: list[int] = []
    bounds: list[int] = []
    color = 0
    remaining = cand
    while remaining:
        color += 1
        avail = remaining
        while avail:
            v = 0
            for u in order_hint:  # first available vertex in the fixed order
                if (avail >> u) & 1:
                    v = u
                    break
            vertices.append(v)
            bounds.append(color)
            remaining &= ~(1 << v)
            avail &= ~(1 << v)
            avail &= ~adj[v]
    return vertices, bounds


def _max_clique(adj: tuple[int, ...], order_hint: tuple[int, ...]) -> list[int]:
    best: list[int] = []

    def expand(r: list[int], cand: int):
        nonlocal best
        vertices, bounds = _color_order(cand, adj, order_hint)
        for i in range(len(vertices) - 1, -1, -1):
            if len(r) + bounds[i] <= len(best):
                return  # color bound: no strictly larger clique down here
            v = vertices[i]
            r.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(r, nxt)
            elif len(r) > len(best):
                best = r.copy()
            r.pop()
            cand &= ~(1 << v)

    expand([], (1 << len(adj)) - 1 if adj else 0)
    return best


def _has_clique(adj: tuple[int, ...], cand: int, k: int, order_hint: tuple[int, ...]) -> bool:
    """Decision form: does the candidate set contain a clique of size k?"""
    if k <= 0:
        return True
    if bin(cand).count("1") < k:
        return False
    vertices, bounds = _color_order(cand, adj, order_hint)
    if bounds[-1] < k:
        return False
    for i in range(len(vertices) - 1, -1, -1):
        if bounds[i] < k:
            return False
        v = vertices[i]
        if _has_clique(adj, cand & adj[v], k - 1, order_hint):
            return True
        cand &= ~(1 << v)
    return False


def independence_number(
    g: Graph, max_vertices: int = MAX_VERTICES
) -> tuple[int, tuple[int, ...]]:
    """Exact independence number with a canonical witness.

    Parameters
    ----------
    g : Graph
    max_vertices : int, optional
        Refuse graphs larger than this (exact search only).

    Returns
    -------
    (alpha, witness)
        ``alpha`` is the maximum size of a pairwise non-adjacent vertex set;
        ``witness`` is THE lexicographically smallest such set, as a sorted
        tuple.  Canonical, so results never depend on search scheduling.

    Raises
    ------
    SizeLimitError
        If ``g`` has more than ``max_vertices`` vertices.

    Notes
    -----
    Branch and bound on the complement (maximum clique) with a greedy-coloring
    upper bound and degree-sorted vertex order.  Once alpha is known, the
    witness is rebuilt greedily: keep vertex v iff the remainder still admits
    an independent set completing to alpha, each query answered by the
    decision form of the same search.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise SizeLimitError(n, max_vertices)
    comp = g.complement()
    adj = comp.adjacency_masks()
    # High-degree-first hint tightens the coloring; index order breaks ties.
    order_hint = tuple(
        sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    )
    alpha = len(_max_clique(adj, order_hint))

    witness: list[int] = []
    cand = (1 << n) - 1
    need = alpha
    for v in range(n):
        if not (cand >> v) & 1:
            continue
        # Vertices below v are already decided, so restricting to
        # complement-neighbors of v is all that choosing v costs.
        rest = cand & adj[v]
        if _has_clique(adj, rest, need - 1, order_hint):
            witness.append(v)
            cand = rest
            need -= 1
            if need == 0:
                break
        else:
            cand &= ~(1 << v)
    return alpha, tuple(witness)
