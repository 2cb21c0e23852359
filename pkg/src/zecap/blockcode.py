"""Zero-error block codes: codeword selection, decoding tables, certificates.

An n-use zero-error code is an independent set of the n-th strong power of
the confusability graph: codewords are n-tuples of state indices, and any
two codewords differ at some position whose two states are one-shot
distinguishable.  Because inputs and measurements are per-use products, the
set of output words a codeword can produce is the Cartesian product of the
per-position support sets, so decoding is a finite table: every reachable
word belongs to exactly one codeword.

``verify_zero_error`` re-derives the supports through a second, independent
path (Kronecker products of the actual post-channel states measured with the
product POVM) and checks it against the Cartesian one, certifying the
product-measurement model rather than assuming it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .confusability import ConfusabilityGraph, StateSet, support_set
from .errors import (
    AmbiguousSupportsError,
    DimensionMismatchError,
    SizeLimitError,
)
from .graphs import MAX_VERTICES, independence_number, strong_power
from .quantum import (
    DEFAULT_TOLERANCES,
    Povm,
    QuantumChannel,
    Tolerances,
    apply_channel,
    outcome_probabilities,
)

__all__ = [
    "ENUMERATION_CAP",
    "QuantumBlockCode",
    "DecoderTable",
    "ZeroErrorReport",
    "build_code",
    "reachable_supports",
    "build_decoder",
    "verify_zero_error",
]

# Per-codeword cap on enumerated output words.
ENUMERATION_CAP = 10**6

# Joint-space dimension cap for the Kronecker verification path.
TENSOR_DIM_CAP = 4096


@dataclass(frozen=True)
class QuantumBlockCode:
    """K codewords of length n over the state alphabet of ``source``.

    ``codewords[i]`` is the tuple of state indices encoding message i;
    codewords are kept in lexicographic order, so message numbering is
    deterministic.  The constructor checks shape, not zero-error-ness:
    ``build_code`` produces certified codes, while ``verify_zero_error``
    and ``build_decoder`` diagnose arbitrary ones (including bad ones,
    on purpose).
    """

    block_length: int
    codewords: tuple[tuple[int, ...], ...]
    source: StateSet
    povm: Povm

    def __post_init__(self):
        if self.block_length < 1:
            raise DimensionMismatchError("block length must be >= 1")
        if len(self.codewords) < 1:
            raise DimensionMismatchError("a code needs at least one codeword")
        m = len(self.source.states)
        seen = set()
        for cw in self.codewords:
            if len(cw) != self.block_length:
                raise DimensionMismatchError(
                    f"codeword {cw} has length {len(cw)}, expected {self.block_length}"
                )
            if any(not 0 <= c < m for c in cw):
                raise DimensionMismatchError(f"codeword {cw} indexes outside 0..{m - 1}")
            if cw in seen:
                raise DimensionMismatchError(f"duplicate codeword {cw}")
            seen.add(cw)

    @property
    def message_count(self) -> int:
        return len(self.codewords)

    @property
    def rate(self) -> float:
        """Bits per channel use: log2(K)/n."""
        return math.log2(self.message_count) / self.block_length


@dataclass(frozen=True)
class DecoderTable:
    """Total decoding map from output words to messages.

    ``decode`` returns the message index for a reachable word and ``None``
    (the designated unreachable marker) for a word no codeword can produce.
    """

    block_length: int
    outcome_count: int
    message_count: int
    mapping: dict[tuple[int, ...], int] = field(repr=False)

    def decode(self, word: tuple[int, ...]) -> int | None:
        word = tuple(int(w) for w in word)
        if len(word) != self.block_length:
            raise DimensionMismatchError(
                f"word length {len(word)}, expected {self.block_length}"
            )
        if any(not 0 <= w < self.outcome_count for w in word):
            raise DimensionMismatchError(
                f"word {word} has outcomes outside 0..{self.outcome_count - 1}"
            )
        return self.mapping.get(word)


@dataclass(frozen=True)
class ZeroErrorReport:
    """Outcome of certifying a code against its channel.

    ``passed`` requires pairwise-disjoint reachable supports and, when the
    Kronecker path ran, exact agreement between the two support
    computations.  ``max_overlap_mass`` is the largest confusable
    probability mass over codeword pairs, zero for a passing code: for each
    shared word the mass counted is min of the two production probabilities.
    """

    passed: bool
    eps: float
    pairwise_disjoint: bool
    overlap_pair: tuple[int, int] | None
    max_overlap_mass: float
    support_sizes: tuple[int, ...]
    total_reachable: int
    word_space_size: int
    tensor_path_checked: bool
    paths_agree: bool | None


def _per_position_supports(
    code: QuantumBlockCode,
    channel: QuantumChannel,
    eps: float,
    tol: Tolerances,
) -> tuple[list[frozenset[int]], list[np.ndarray]]:
    tables = [
        outcome_probabilities(channel, s, code.povm, tol) for s in code.source.states
    ]
    return [support_set(p, eps) for p in tables], tables


def build_code(
    graph: ConfusabilityGraph,
    states: StateSet,
    povm: Povm,
    n: int,
    max_vertices: int = MAX_VERTICES,
) -> QuantumBlockCode:
    """Best zero-error code of block length ``n`` for the given ensemble.

    Parameters
    ----------
    graph : ConfusabilityGraph
        Must be the confusability graph of ``(states, povm)``; it is the
        caller's handle on eps and the adjacency actually used.
    states : StateSet
    povm : Povm
    n : int
        Block length.
    max_vertices : int, optional
        Cap on the strong-power size handed to the exact solver.

    Returns
    -------
    QuantumBlockCode
        K = alpha(G^boxtimes n) codewords, the lexicographically smallest
        maximum independent set, decoded from power-graph vertex indices to
        index tuples (vertex = sum of digits base M).

    Raises
    ------
    SizeLimitError
        If M^n exceeds ``max_vertices``.
    """
    if graph.vertex_count != len(states.states):
        raise DimensionMismatchError(
            f"graph has {graph.vertex_count} vertices for {len(states.states)} states"
        )
    power = strong_power(graph.to_graph(), n, max_vertices)
    _, witness = independence_number(power, max_vertices)
    m = graph.vertex_count
    codewords = []
    for vertex in witness:
        digits = []
        v = vertex
        for _ in range(n):
            digits.append(v % m)
            v //= m
        codewords.append(tuple(reversed(digits)))
    return QuantumBlockCode(
        block_length=n,
        codewords=tuple(sorted(codewords)),
        source=states,
        povm=povm,
    )


def reachable_supports(
    code: QuantumBlockCode,
    channel: QuantumChannel,
    eps: float,
    enumeration_cap: int = ENUMERATION_CAP,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[frozenset[tuple[int, ...]], ...]:
    """Output words each codeword can produce, as Cartesian support products.

    Word w = (w_0, ..., w_{n-1}) is reachable from codeword c iff every
    position's probability p(w_t | c_t) exceeds ``eps``.

    Raises
    ------
    SizeLimitError
        If some codeword's support product exceeds ``enumeration_cap`` words.
    """
    supports, _ = _per_position_supports(code, channel, eps, tol)
    out = []
    for cw in code.codewords:
        size = math.prod(len(supports[c]) for c in cw)
        if size > enumeration_cap:
            raise SizeLimitError(size, enumeration_cap, what="output words")
        out.append(
            frozenset(itertools.product(*(sorted(supports[c]) for c in cw)))
        )
    return tuple(out)


def build_decoder(
    code: QuantumBlockCode,
    channel: QuantumChannel,
    eps: float,
    enumeration_cap: int = ENUMERATION_CAP,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DecoderTable:
    """Zero-error decoding table, or proof that none exists.

    Maps every reachable word to its unique producing message; all other
    words decode to the unreachable marker (``None``).

    Raises
    ------
    AmbiguousSupportsError
        If two codewords share a reachable word.  The error carries the
        offending message pair and word.
    """
    supports = reachable_supports(code, channel, eps, enumeration_cap, tol)
    mapping: dict[tuple[int, ...], int] = {}
    for i, words in enumerate(supports):
        for w in sorted(words):
            prev = mapping.get(w)
            if prev is not None:
                raise AmbiguousSupportsError(pair=(prev, i), word=w)
            mapping[w] = i
    return DecoderTable(
        block_length=code.block_length,
        outcome_count=len(code.povm),
        message_count=code.message_count,
        mapping=mapping,
    )


def verify_zero_error(
    code: QuantumBlockCode,
    channel: QuantumChannel,
    eps: float,
    enumeration_cap: int = ENUMERATION_CAP,
    tensor_dim_cap: int = TENSOR_DIM_CAP,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ZeroErrorReport:
    """Certify (or refute) that ``code`` is zero-error for ``channel``.

    Two support computations are compared:

    * product path: Cartesian products of per-position support sets;
    * Kronecker path (when the joint dimension fits ``tensor_dim_cap``):
      the codeword's post-channel states are tensored into one joint state,
      measured against every product-POVM element, and thresholded at the
      same ``eps``.

    ``passed`` means the supports are pairwise disjoint and the two paths
    agreed exactly.  Probabilities within roundoff of ``eps`` can make the
    paths differ legitimately; the confusability graph's fragility counter
    flags those instances.
    """
    supports, tables = _per_position_supports(code, channel, eps, tol)
    word_sets = []
    for cw in code.codewords:
        size = math.prod(len(supports[c]) for c in cw)
        if size > enumeration_cap:
            raise SizeLimitError(size, enumeration_cap, what="output words")
        word_sets.append(
            frozenset(itertools.product(*(sorted(supports[c]) for c in cw)))
        )

    # Pairwise disjointness plus the worst confusable mass.
    disjoint = True
    overlap_pair = None
    max_mass = 0.0
    k = len(word_sets)
    for a in range(k):
        for b in range(a + 1, k):
            common = word_sets[a] & word_sets[b]
            if not common:
                continue
            disjoint = False
            mass = 0.0
            for w in common:
                pa = math.prod(tables[code.codewords[a][t]][w[t]] for t in range(len(w)))
                pb = math.prod(tables[code.codewords[b][t]][w[t]] for t in range(len(w)))
                mass += min(pa, pb)
            if mass > max_mass or overlap_pair is None:
                max_mass = mass
                overlap_pair = (a, b)

    n = code.block_length
    n_outcomes = len(code.povm)
    joint_dim = channel.dim**n
    word_count = n_outcomes**n
    tensor_checked = joint_dim <= tensor_dim_cap and word_count <= enumeration_cap
    paths_agree: bool | None = None
    if tensor_checked:
        paths_agree = _tensor_path_agrees(code, channel, eps, word_sets, tol)

    passed = disjoint and (paths_agree is not False)
    return ZeroErrorReport(
        passed=passed,
        eps=eps,
        pairwise_disjoint=disjoint,
        overlap_pair=overlap_pair,
        max_overlap_mass=max_mass,
        support_sizes=tuple(len(ws) for ws in word_sets),
        total_reachable=sum(len(ws) for ws in word_sets),
        word_space_size=word_count,
        tensor_path_checked=tensor_checked,
        paths_agree=paths_agree,
    )


def _tensor_path_agrees(
    code: QuantumBlockCode,
    channel: QuantumChannel,
    eps: float,
    word_sets: list[frozenset[tuple[int, ...]]],
    tol: Tolerances,
) -> bool:
    """Recompute supports on the joint space and compare set-for-set."""
    n = code.block_length
    outs = [apply_channel(channel, s, tol).matrix for s in code.source.states]
    elements = code.povm.elements
    n_outcomes = len(elements)
    for i, cw in enumerate(code.codewords):
        joint = outs[cw[0]]
        for t in range(1, n):
            joint = np.kron(joint, outs[cw[t]])
        found = set()
        for w in itertools.product(range(n_outcomes), repeat=n):
            e = elements[w[0]]
            for t in range(1, n):
                e = np.kron(e, elements[w[t]])
            if float(np.trace(joint @ e).real) > eps:
                found.add(w)
        if found != set(word_sets[i]):
            return False
    return True
