"""A first walk through states, channels, and measurement statistics.

Everything later in the library reduces to one number: the probability of
seeing outcome j after pushing state i through a noisy channel and measuring.
This script builds those three ingredients by hand and watches the numbers.
"""

import numpy as np

from zecap import (
    apply_channel,
    basis_state,
    dephasing_channel,
    depolarizing_channel,
    outcome_probabilities,
    pure_state,
    validate_povm,
)


def computational_povm(dim):
    eye = np.eye(dim, dtype=np.complex128)
    return validate_povm([np.outer(eye[:, j], eye[:, j]) for j in range(dim)])


def main():
    zero = basis_state(2, 0)
    plus = pure_state(np.array([1.0, 1.0]))
    povm = computational_povm(2)

    print("Outcome distributions under the computational measurement")
    print("---------------------------------------------------------")
    for p in (0.0, 0.5, 1.0):
        channel = depolarizing_channel(p)
        probs = outcome_probabilities(channel, zero, povm)
        print(f"depolarizing p={p:3.1f}, input |0>:  p(j) = {np.round(probs, 6)}")
    print()

    print("Dephasing kills coherence but not populations")
    print("---------------------------------------------")
    for p in (0.0, 0.25, 0.5):
        out = apply_channel(dephasing_channel(p), plus)
        print(f"p={p:4.2f}  rho_out =\n{np.round(out.matrix.real, 4)}")
    print()

    # At p = 1/2 the |+> state becomes maximally mixed: measuring in the
    # +/- basis returns a coin flip, so |+> and |-> are fully confusable.
    pm = validate_povm(
        [np.full((2, 2), 0.5), np.array([[0.5, -0.5], [-0.5, 0.5]])]
    )
    probs = outcome_probabilities(dephasing_channel(0.5), plus, pm)
    print(f"half dephasing, input |+>, +/- measurement: p = {np.round(probs, 6)}")
    print("The channel has erased the bit carried in the phase.")


if __name__ == "__main__":
    main()
