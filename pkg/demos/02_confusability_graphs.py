"""Confusability graphs: which inputs can the receiver never mix up?

Two input states are non-adjacent when their outcome supports are disjoint,
meaning no measurement result is ever consistent with both.  A channel can
carry information with zero error exactly when some pair of inputs is
non-adjacent, i.e. when the confusability graph is not complete.
"""

import numpy as np

from zecap import (
    StateSet,
    basis_state,
    confusability_graph,
    dephasing_channel,
    depolarizing_channel,
    embed_classical,
    has_positive_zero_error_capacity,
    non_adjacent_pair_count,
    pentagon_matrix,
    validate_povm,
)


def computational_povm(dim):
    eye = np.eye(dim, dtype=np.complex128)
    return validate_povm([np.outer(eye[:, j], eye[:, j]) for j in range(dim)])


def describe(name, graph):
    verdict = "positive" if has_positive_zero_error_capacity(graph) else "zero"
    print(f"{name}:")
    print(f"  supports   {[sorted(s) for s in graph.supports]}")
    print(f"  edges      {sorted(graph.edges)}")
    print(f"  free pairs {non_adjacent_pair_count(graph)}  ->  {verdict} zero-error capacity")
    print()


def main():
    basis2 = StateSet(dim=2, states=(basis_state(2, 0), basis_state(2, 1)))
    povm2 = computational_povm(2)

    print("Sweep the depolarizing noise and watch the edge appear")
    print("------------------------------------------------------")
    for p in (0.0, 0.5, 1.0):
        g = confusability_graph(depolarizing_channel(p), basis2, povm2)
        describe(f"depolarizing p={p}", g)

    # Dephasing never touches the populations, so the basis states stay
    # perfectly distinguishable at any strength.
    g = confusability_graph(dephasing_channel(0.9), basis2, povm2)
    describe("dephasing p=0.9", g)

    print("A classical channel embeds exactly")
    print("----------------------------------")
    channel, states, povm = embed_classical(pentagon_matrix())
    g = confusability_graph(channel, states, povm)
    describe("pentagon", g)

    print("The support cutoff is a modelling choice, and it is reported")
    print("------------------------------------------------------------")
    w = np.array([[1.0 - 5e-9, 5e-9], [0.0, 1.0]])
    channel, states, povm = embed_classical(w)
    for eps in (1e-9, 1e-7):
        g = confusability_graph(channel, states, povm, eps=eps)
        print(
            f"eps={eps:g}: edges {sorted(g.edges)}, "
            f"probabilities within a decade of the cutoff: {g.fragile_count}"
        )


if __name__ == "__main__":
    main()
