"""Per-block-length rate bounds bracketing the zero-error capacity.

For a confusability graph G, K(n) = alpha(G^boxtimes n) messages can be sent
in n uses with zero error, giving the achievable rate log2(K(n))/n.  The
supremum over n is the capacity; this module computes the finite-n lower
bounds exactly and the Lovász-theta upper bound log2(theta(G)) that no n can
beat.  Logs are base 2: rates are bits per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotConvergedError, SizeLimitError
from .graphs import MAX_VERTICES, Graph, independence_number, strong_power
from .theta import ThetaResult, lovasz_theta

__all__ = ["RateEntry", "CapacityBounds", "capacity_bounds"]


@dataclass(frozen=True)
class RateEntry:
    """alpha and achievable rate at one block length, or why it was skipped."""

    n: int
    alpha: int | None
    rate: float | None
    witness: tuple[int, ...] | None = None
    skipped: bool = False
    reason: str | None = None


@dataclass(frozen=True)
class CapacityBounds:
    """Bracket on the zero-error capacity of one confusability graph.

    ``best_lower`` is the largest computed finite-n rate (0.0 when every
    K(n) found is 1); ``theta_upper`` is log2 of the certified theta value.
    ``best_lower <= theta_upper`` up to solver tolerance, always.
    """

    per_n: tuple[RateEntry, ...]
    best_lower: float
    theta: ThetaResult | None
    theta_upper: float | None
    theta_failure: str | None = None
    eps_support: float | None = None


def capacity_bounds(
    g: Graph,
    n_max: int,
    tol: float = 1e-6,
    max_vertices: int = MAX_VERTICES,
    eps_support: float | None = None,
) -> CapacityBounds:
    """Compute rate lower bounds for n = 1..n_max and the theta upper bound.

    Parameters
    ----------
    g : Graph
        Confusability graph (edge = confusable).
    n_max : int
        Largest block length to attempt.  Block lengths whose strong power
        would exceed ``max_vertices`` vertices are recorded as skipped
        entries, not errors.
    tol : float, optional
        Tolerance handed to the theta solver.
    max_vertices : int, optional
    eps_support : float, optional
        Support cutoff the graph was built with; carried through for
        reporting only.

    Returns
    -------
    CapacityBounds

    Notes
    -----
    A theta solver failure (size cap or non-convergence) is likewise
    recorded on the result instead of raised: the finite-n lower bounds
    remain valid and useful without the upper bound.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    entries: list[RateEntry] = []
    best_lower = 0.0
    for n in range(1, n_max + 1):
        size = g.vertex_count**n
        if size > max_vertices:
            entries.append(
                RateEntry(
                    n=n,
                    alpha=None,
                    rate=None,
                    skipped=True,
                    reason=f"{size} vertices exceeds the limit of {max_vertices}",
                )
            )
            continue
        power = strong_power(g, n, max_vertices)
        alpha, witness = independence_number(power, max_vertices)
        rate = math.log2(alpha) / n
        best_lower = max(best_lower, rate)
        entries.append(RateEntry(n=n, alpha=alpha, rate=rate, witness=witness))

    theta_res: ThetaResult | None = None
    theta_upper: float | None = None
    theta_failure: str | None = None
    try:
        theta_res = lovasz_theta(g, tol=tol)
        theta_upper = math.log2(theta_res.value)
    except (SizeLimitError, NotConvergedError) as exc:
        theta_failure = str(exc)

    return CapacityBounds(
        per_n=tuple(entries),
        best_lower=best_lower,
        theta=theta_res,
        theta_upper=theta_upper,
        theta_failure=theta_failure,
        eps_support=eps_support,
    )
