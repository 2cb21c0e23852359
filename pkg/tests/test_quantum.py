"""Validators, channel application, and measurement statistics."""

from __future__ import annotations

import numpy as np
import pytest

from zecap import (
    DensityMatrix,
    apply_channel,
    basis_state,
    haar_unitary,
    maximally_mixed,
    outcome_probabilities,
    pure_state,
    random_channel,
    random_density_matrix,
    tensor,
    validate_channel,
    validate_povm,
    validate_state,
)
from zecap.errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotPsdError,
    NotTracePreservingError,
    PovmIncompleteError,
    TraceNotOneError,
    ValidationError,
)

from invariants import check_probability_normalization, check_trace_preservation

PLUS = np.array([1.0, 1.0]) / np.sqrt(2.0)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def computational_povm(dim: int):
    eye = np.eye(dim, dtype=np.complex128)
    return validate_povm([np.outer(eye[:, j], eye[:, j]) for j in range(dim)])


# ---------------------------------------------------------------------------
# validate_state
# ---------------------------------------------------------------------------


def test_validate_state_accepts_mixed_and_pure():
    assert validate_state(np.eye(2) / 2).dim == 2
    assert validate_state(np.array([[1.0, 0.0], [0.0, 0.0]])).dim == 2


def test_validate_state_rejects_negative_eigenvalue():
    with pytest.raises(NotPsdError) as exc:
        validate_state(np.diag([1.001, -0.001]))
    assert exc.value.min_eigenvalue < 0


def test_validate_state_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        validate_state(np.array([[0.6, 0.3], [0.2, 0.4]]))


def test_validate_state_rejects_bad_trace():
    with pytest.raises(TraceNotOneError) as exc:
        validate_state(np.diag([0.6, 0.6]))
    assert exc.value.actual == pytest.approx(1.2)


def test_validate_state_rejects_non_square_and_non_finite():
    with pytest.raises(ValidationError):
        validate_state(np.zeros((3, 2)))
    bad = np.eye(2, dtype=complex)
    bad[0, 0] = np.nan
    with pytest.raises(ValidationError):
        validate_state(bad)


def test_validated_arrays_are_frozen():
    rho = validate_state(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 9.0


# ---------------------------------------------------------------------------
# validate_channel / validate_povm
# ---------------------------------------------------------------------------


def test_validate_channel_identity_and_depolarizing_kraus():
    assert validate_channel([np.eye(3, dtype=complex)]).dim == 3
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    ops = [0.5 * np.eye(2, dtype=complex), 0.5 * x, 0.5 * y, 0.5 * Z]
    assert len(validate_channel(ops).kraus) == 4


def test_validate_channel_rejects_non_tp():
    with pytest.raises(NotTracePreservingError) as exc:
        validate_channel([2.0 * np.eye(2, dtype=complex)])
    assert exc.value.deviation > 1.0


def test_validate_channel_rejects_mixed_dims_and_empty():
    with pytest.raises(DimensionMismatchError):
        validate_channel([np.eye(2, dtype=complex), np.eye(3, dtype=complex)])
    with pytest.raises(ValidationError):
        validate_channel([])


def test_validate_povm_accepts_plus_minus_basis():
    plus = np.outer(PLUS, PLUS)
    minus = np.eye(2) - plus
    povm = validate_povm([plus, minus])
    assert povm.dim == 2 and len(povm) == 2


def test_validate_povm_rejects_incomplete_and_negative():
    with pytest.raises(PovmIncompleteError):
        validate_povm([np.diag([1.0, 0.5])])
    with pytest.raises(NotPsdError):
        validate_povm([np.diag([1.0, -0.1]), np.diag([0.0, 1.1])])
    with pytest.raises(DimensionMismatchError):
        validate_povm([np.eye(2, dtype=complex), np.eye(3, dtype=complex)])


# ---------------------------------------------------------------------------
# apply_channel / outcome_probabilities
# ---------------------------------------------------------------------------


def test_identity_channel_is_a_fixed_point():
    rng = np.random.default_rng(5)
    channel = validate_channel([np.eye(3, dtype=complex)])
    rho = random_density_matrix(3, rng)
    out = apply_channel(channel, rho)
    assert np.allclose(out.matrix, rho.matrix, atol=1e-12)


def test_full_depolarizing_sends_everything_to_mixed():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    ops = [0.5 * np.eye(2, dtype=complex), 0.5 * x, 0.5 * y, 0.5 * Z]
    channel = validate_channel(ops)
    out = apply_channel(channel, basis_state(2, 0))
    assert np.allclose(out.matrix, np.eye(2) / 2, atol=1e-12)


def test_half_dephasing_kills_plus_state_coherence():
    channel = validate_channel([np.sqrt(0.5) * np.eye(2, dtype=complex), np.sqrt(0.5) * Z])
    out = apply_channel(channel, pure_state(PLUS))
    assert np.allclose(out.matrix, [[0.5, 0.0], [0.0, 0.5]], atol=1e-12)


def test_outcome_probabilities_computational_cases():
    channel = validate_channel([np.eye(2, dtype=complex)])
    p = outcome_probabilities(channel, basis_state(2, 0), computational_povm(2))
    assert p.dtype == np.float64
    assert np.allclose(p, [1.0, 0.0], atol=1e-12)


def test_outcome_probabilities_dephased_plus_under_pm_basis():
    channel = validate_channel([np.sqrt(0.5) * np.eye(2, dtype=complex), np.sqrt(0.5) * Z])
    plus = np.outer(PLUS, PLUS)
    povm = validate_povm([plus, np.eye(2) - plus])
    p = outcome_probabilities(channel, pure_state(PLUS), povm)
    assert np.allclose(p, [0.5, 0.5], atol=1e-12)


def test_outcome_probabilities_rejects_dimension_mixups():
    channel = validate_channel([np.eye(2, dtype=complex)])
    with pytest.raises(DimensionMismatchError):
        outcome_probabilities(channel, basis_state(3, 0), computational_povm(2))
    with pytest.raises(DimensionMismatchError):
        outcome_probabilities(channel, basis_state(2, 0), computational_povm(3))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def test_tensor_of_basis_states_and_dims():
    joint = tensor(basis_state(2, 0), basis_state(2, 1))
    assert joint.dim == 4
    assert np.allclose(joint.matrix, basis_state(4, 1).matrix)
    assert np.allclose(tensor(maximally_mixed(2), maximally_mixed(2)).matrix, np.eye(4) / 4)


def test_pure_state_normalizes_and_rejects_zero():
    rho = pure_state(np.array([3.0, 4.0]))
    assert np.trace(rho.matrix).real == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        pure_state(np.zeros(2))


def test_basis_state_bounds():
    with pytest.raises(ValidationError):
        basis_state(2, 2)


def test_haar_unitary_is_unitary_and_seeded():
    u = haar_unitary(4, np.random.default_rng(9))
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
    v = haar_unitary(4, np.random.default_rng(9))
    assert np.array_equal(u, v)


def test_random_channel_and_state_are_valid_and_seeded():
    a = random_channel(3, 2, np.random.default_rng(3))
    b = random_channel(3, 2, np.random.default_rng(3))
    assert all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))
    s = random_density_matrix(3, np.random.default_rng(4))
    assert isinstance(s, DensityMatrix)


# ---------------------------------------------------------------------------
# Property suites
# ---------------------------------------------------------------------------


def test_channels_preserve_trace_and_positivity():
    check_trace_preservation(200)


def test_outcome_distributions_normalize():
    check_probability_normalization(200)
