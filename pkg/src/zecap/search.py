"""Simulated-annealing search for state/POVM pairs with many distinguishable pairs.

The one-shot structure of a channel depends on which states are sent and
which POVM reads them out.  An *optimum* pair maximizes the number of
one-shot-distinguishable (non-adjacent) state pairs; only an optimum pair
realizes the channel's full zero-error capacity, so the search below is the
bridge from "a channel" to "its confusability graph".

The objective is integer-valued and flat almost everywhere: for an identity
or classical channel the good configurations are exact alignments of states
with measurement directions, a measure-zero target blind annealing cannot
hit.  Each restart therefore anneals from the best of three seeds - the
computational-basis-aligned pair, a Haar-aligned pair (random basis used for
both states and POVM), and a fully random pair - and the result can only
improve on them.  Restarts are independent (seed + restart_index) and the
best is aggregated deterministically, so runs are reproducible bit for bit
and may be executed in parallel.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .confusability import (
    DEFAULT_EPS,
    ConfusabilityGraph,
    StateSet,
    confusability_graph,
    non_adjacent_pair_count,
)
from .errors import DimensionMismatchError
from .graphs import Graph, independence_number
from .quantum import Povm, QuantumChannel, haar_unitary, pure_state, validate_povm

__all__ = [
    "SearchConfig",
    "SearchResult",
    "random_pure_state_set",
    "random_projective_povm",
    "random_general_povm",
    "optimize_pair",
]

_COOLING = 0.995          # geometric temperature decay per iteration
_INIT_ACCEPT = 0.6        # target acceptance rate of worsening probe moves
_CALIBRATION_PROBES = 20


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`optimize_pair`.

    Attributes
    ----------
    num_states : int
        States to place (M).  Must satisfy 2 <= M <= dim unless
        ``allow_overcomplete``.
    restarts, iterations : int
        Independent annealing restarts and proposals per restart.
    seed : int
        Restart r uses the generator seeded with ``seed + r``.
    step_size : float
        Magnitude of the random unitary proposal rotations (radians-ish).
    eps_support : float
        Support cutoff used when scoring candidate pairs.
    objective : str
        ``"pair_count"`` or ``"pair_count_then_alpha"``; the latter breaks
        pair-count ties toward a larger independence number.
    general_povm : bool
        Search over arbitrary POVMs (isometry-parameterized) instead of
        projective rank-one measurements.
    povm_outcomes : int or None
        Outcome count N for general POVMs, in [M, dim^2]; defaults to dim^2.
    allow_overcomplete : bool
        Permit M > dim state sets.
    """

    num_states: int
    restarts: int = 32
    iterations: int = 2000
    seed: int = 7
    step_size: float = 0.15
    eps_support: float = DEFAULT_EPS
    objective: str = "pair_count"
    general_povm: bool = False
    povm_outcomes: int | None = None
    allow_overcomplete: bool = False

    def __post_init__(self):
        if self.num_states < 2:
            raise ValueError("num_states must be >= 2: pairs need two states")
        if self.restarts < 1 or self.iterations < 0:
            raise ValueError("restarts must be >= 1 and iterations >= 0")
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.objective not in ("pair_count", "pair_count_then_alpha"):
            raise ValueError(f"unknown objective {self.objective!r}")


@dataclass(frozen=True)
class SearchResult:
    """Best pair found, its graph, and per-restart objective traces."""

    best_states: StateSet
    best_povm: Povm
    graph: ConfusabilityGraph
    pair_count: int
    alpha_1: int
    best_restart: int
    history: tuple[tuple[float, ...], ...]
    config: SearchConfig


def random_pure_state_set(dim: int, count: int, seed: int) -> StateSet:
    """``count`` Haar-random pure states (Gaussian vectors, normalized)."""
    rng = np.random.default_rng(seed)
    vecs = _random_state_vectors(dim, count, rng)
    return StateSet(
        dim=dim,
        states=tuple(pure_state(v) for v in vecs),
        allow_overcomplete=count > dim,
    )


def random_projective_povm(dim: int, seed: int) -> Povm:
    """Rank-one projective POVM from the columns of a Haar unitary."""
    u = haar_unitary(dim, np.random.default_rng(seed))
    return validate_povm([np.outer(u[:, j], u[:, j].conj()) for j in range(dim)])


def random_general_povm(dim: int, outcomes: int, seed: int) -> Povm:
    """General POVM with ``outcomes`` elements from a random isometry.

    Stacks an (outcomes*dim) x dim Haar-style isometry V and sets
    E_j = V_j^dagger V_j for the j-th dim x dim block, so completeness is
    V^dagger V = I by construction.
    """
    iso = _random_isometry(outcomes * dim, dim, np.random.default_rng(seed))
    return validate_povm(_povm_from_isometry(iso, dim, outcomes))


# ---------------------------------------------------------------------------
# Internals
# ---------------------------------------------------------------------------


def _random_state_vectors(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _povm_from_isometry(iso: np.ndarray, dim: int, outcomes: int) -> list[np.ndarray]:
    blocks = iso.reshape(outcomes, dim, dim)
    return [b.conj().T @ b for b in blocks]


def _small_rotation(dim: int, step: float, rng: np.random.Generator) -> np.ndarray:
    # exp(i*step*H) with H Gaussian Hermitian scaled to unit typical eigenvalue.
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (a + a.conj().T) / 2.0
    h /= np.linalg.norm(h) / math.sqrt(dim)
    return expm(1j * step * h)


class _Candidate:
    """Mutable (state vectors, measurement parameter) point in search space."""

    __slots__ = ("vecs", "meas")

    def __init__(self, vecs: np.ndarray, meas: np.ndarray):
        self.vecs = vecs  # (M, dim) unit rows
        self.meas = meas  # unitary (projective) or stacked isometry (general)

    def copy(self) -> "_Candidate":
        return _Candidate(self.vecs.copy(), self.meas.copy())


def _prob_table(
    kraus: tuple[np.ndarray, ...],
    cand: _Candidate,
    general: bool,
    outcomes: int,
) -> np.ndarray:
    """p[k, j] = tr(E(|v_k><v_k|) E_j), computed without object wrappers."""
    v = cand.vecs.T  # (dim, M)
    if general:
        dim = v.shape[0]
        p = np.zeros((outcomes, v.shape[1]))
        for k in kraus:
            w = cand.meas @ (k @ v)  # (outcomes*dim, M)
            p += (np.abs(w.reshape(outcomes, dim, -1)) ** 2).sum(axis=1)
        return p.T
    uh = cand.meas.conj().T
    p = np.zeros((cand.meas.shape[0], v.shape[1]))
    for k in kraus:
        amp = uh @ (k @ v)  # (N, M)
        p += np.abs(amp) ** 2
    return p.T


def _pair_count(p: np.ndarray, eps: float) -> int:
    s = p > eps
    shared = s @ s.T  # pairwise shared-outcome counts
    m = p.shape[0]
    iu = np.triu_indices(m, 1)
    return int(np.count_nonzero(shared[iu] == 0))


def _graph_from_table(p: np.ndarray, eps: float) -> Graph:
    s = p > eps
    shared = s @ s.T
    m = p.shape[0]
    edges = ((a, b) for a in range(m) for b in range(a + 1, m) if shared[a, b])
    return Graph.from_edges(m, edges)


def _score(p: np.ndarray, eps: float, objective: str) -> float:
    pc = _pair_count(p, eps)
    if objective == "pair_count":
        return float(pc)
    alpha, _ = independence_number(_graph_from_table(p, eps))
    # alpha <= M < M+1, so the tie-break can never outweigh one pair.
    return pc + alpha / (p.shape[0] + 1)


def _initial_candidates(
    dim: int, m: int, general: bool, outcomes: int, rng: np.random.Generator
) -> list[_Candidate]:
    cands: list[_Candidate] = []
    # Basis indices tile cyclically when m > dim; exact repeats are the best
    # an overcomplete aligned start can do.
    tile = np.arange(m) % dim
    # Computational alignment: recovers classical structure exactly.
    eye = np.eye(dim, dtype=np.complex128)
    cands.append(_Candidate(eye[tile].copy(), _aligned_meas(eye, dim, general, outcomes)))
    # Haar alignment: same basis for states and measurement.
    u = haar_unitary(dim, rng)
    cands.append(_Candidate(u.T[tile].copy(), _aligned_meas(u, dim, general, outcomes)))
    # Fully random pair.
    vecs = _random_state_vectors(dim, m, rng)
    if general:
        meas = _random_isometry(outcomes * dim, dim, rng)
    else:
        meas = haar_unitary(dim, rng)
    cands.append(_Candidate(vecs, meas))
    return cands


def _aligned_meas(u: np.ndarray, dim: int, general: bool, outcomes: int) -> np.ndarray:
    if not general:
        return u.copy()
    # Isometry whose first dim blocks are the rank-one projectors |u_j><u_j|
    # and the rest zero: sums to identity, mirrors the projective alignment.
    iso = np.zeros((outcomes * dim, dim), dtype=np.complex128)
    for jj in range(dim):
        col = u[:, jj]
        iso[jj * dim : (jj + 1) * dim, :] = np.outer(col, col.conj())
    return iso


def _propose(
    cand: _Candidate,
    step: float,
    general: bool,
    rng: np.random.Generator,
) -> _Candidate:
    m, dim = cand.vecs.shape
    out = cand.copy()
    target = int(rng.integers(0, m + 1))
    if target < m:
        rot = _small_rotation(dim, step, rng)
        out.vecs[target] = rot @ out.vecs[target]
    elif general:
        rot = _small_rotation(cand.meas.shape[0], step, rng)
        out.meas = rot @ out.meas
    else:
        rot = _small_rotation(dim, step, rng)
        out.meas = rot @ out.meas
    return out


def _run_restart(
    kraus: tuple[np.ndarray, ...],
    dim: int,
    cfg: SearchConfig,
    restart_index: int,
    outcomes: int,
) -> tuple[float, _Candidate, list[float]]:
    rng = np.random.default_rng(cfg.seed + restart_index)
    general = cfg.general_povm
    m = cfg.num_states

    current = None
    cur_score = -1.0
    for cand in _initial_candidates(dim, m, general, outcomes, rng):
        sc = _score(_prob_table(kraus, cand, general, outcomes), cfg.eps_support, cfg.objective)
        if sc > cur_score:
            current, cur_score = cand, sc
    best, best_score = current.copy(), cur_score

    # Temperature calibration: accept a mean-magnitude worsening probe
    # with probability ~_INIT_ACCEPT at T0.
    drops = []
    for _ in range(_CALIBRATION_PROBES):
        probe = _propose(current, cfg.step_size, general, rng)
        sc = _score(_prob_table(kraus, probe, general, outcomes), cfg.eps_support, cfg.objective)
        if sc < cur_score:
            drops.append(cur_score - sc)
    t0 = (sum(drops) / len(drops)) / math.log(1.0 / _INIT_ACCEPT) if drops else 1.0

    history: list[float] = []
    temp = t0
    for _ in range(cfg.iterations):
        proposal = _propose(current, cfg.step_size, general, rng)
        sc = _score(_prob_table(kraus, proposal, general, outcomes), cfg.eps_support, cfg.objective)
        delta = sc - cur_score
        if delta >= 0 or rng.random() < math.exp(delta / max(temp, 1e-300)):
            current, cur_score = proposal, sc
            if cur_score > best_score:
                best, best_score = current.copy(), cur_score
        history.append(best_score)
        temp *= _COOLING
    return best_score, best, history


def optimize_pair(
    channel: QuantumChannel,
    cfg: SearchConfig,
    threads: int = 1,
) -> SearchResult:
    """Search for a (states, POVM) pair maximizing non-adjacent pairs.

    Parameters
    ----------
    channel : QuantumChannel
    cfg : SearchConfig
    threads : int, optional
        Restarts run in a thread pool of this size; aggregation is by
        restart index, so the result is identical for any thread count.

    Returns
    -------
    SearchResult
        ``pair_count`` is recomputed from the returned (states, POVM) with
        the public graph constructor, so the reported graph and count are
        exactly reproducible from the result's own fields.

    Raises
    ------
    DimensionMismatchError
        If ``cfg.num_states`` exceeds the channel dimension without
        ``allow_overcomplete``, or ``povm_outcomes`` is out of range.
    """
    dim = channel.dim
    m = cfg.num_states
    if m > dim and not cfg.allow_overcomplete:
        raise DimensionMismatchError(
            f"{m} states exceed dimension {dim}; set allow_overcomplete to permit"
        )
    outcomes = dim
    if cfg.general_povm:
        outcomes = cfg.povm_outcomes if cfg.povm_outcomes is not None else dim * dim
        if not (m <= outcomes <= dim * dim):
            raise DimensionMismatchError(
                f"povm_outcomes must lie in [{m}, {dim * dim}], got {outcomes}"
            )

    kraus = channel.kraus
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(
                pool.map(
                    lambda r: _run_restart(kraus, dim, cfg, r, outcomes),
                    range(cfg.restarts),
                )
            )
    else:
        runs = [_run_restart(kraus, dim, cfg, r, outcomes) for r in range(cfg.restarts)]

    best_restart = 0
    for r in range(1, cfg.restarts):
        if runs[r][0] > runs[best_restart][0]:
            best_restart = r
    best_score, best_cand, _ = runs[best_restart]

    states = StateSet(
        dim=dim,
        states=tuple(pure_state(v) for v in best_cand.vecs),
        allow_overcomplete=cfg.allow_overcomplete,
    )
    if cfg.general_povm:
        povm = validate_povm(_povm_from_isometry(best_cand.meas, dim, outcomes))
    else:
        povm = validate_povm(
            [np.outer(best_cand.meas[:, j], best_cand.meas[:, j].conj()) for j in range(dim)]
        )
    graph = confusability_graph(channel, states, povm, eps=cfg.eps_support)
    alpha_1, _ = independence_number(graph.to_graph())
    return SearchResult(
        best_states=states,
        best_povm=povm,
        graph=graph,
        pair_count=non_adjacent_pair_count(graph),
        alpha_1=alpha_1,
        best_restart=best_restart,
        history=tuple(tuple(h) for h in (run[2] for run in runs)),
        config=cfg,
    )
