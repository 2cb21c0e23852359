"""States, channels, measurements, and the statistics connecting them.

Everything downstream (confusability graphs, capacity bounds, block codes)
consumes exactly one quantity computed here: the outcome distribution
``p(j|i) = tr(E(rho_i) E_j)`` of state ``i`` pushed through the channel and
measured with POVM element ``j``.  This module owns the linear algebra and
the validation policy: inputs that fail a contract are rejected with the
measured deviation, never repaired.

Matrices are plain ``numpy.ndarray`` of complex128.  Wrapper dataclasses
(:class:`DensityMatrix`, :class:`QuantumChannel`, :class:`Povm`) certify that
their contents passed validation; their arrays are frozen (non-writeable).
All indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidProbabilitiesError,
    NotHermitianError,
    NotPsdError,
    NotTracePreservingError,
    PovmIncompleteError,
    TraceNotOneError,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "DensityMatrix",
    "QuantumChannel",
    "Povm",
    "validate_state",
    "validate_channel",
    "validate_povm",
    "apply_channel",
    "outcome_probabilities",
    "tensor",
    "pure_state",
    "basis_state",
    "maximally_mixed",
    "haar_unitary",
    "random_pure_state",
    "random_density_matrix",
    "random_channel",
]


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used by the validation layer.

    All default to 1e-9.  Hermiticity is checked in max-abs norm, trace
    preservation and POVM completeness in Frobenius norm, positivity by the
    smallest eigenvalue of the Hermitian part.
    """

    hermitian: float = 1e-9
    psd: float = 1e-9
    trace: float = 1e-9
    trace_preserving: float = 1e-9
    povm_completeness: float = 1e-9
    probability: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, order="C")
    out.setflags(write=False)
    return out


def _require_square(m: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionMismatchError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatchError(f"{name} contains non-finite entries")
    return m


def _hermitian_part(m: np.ndarray) -> np.ndarray:
    # Eigenvalue checks run on (M + M^dagger)/2 so roundoff in the
    # anti-Hermitian part cannot poison eigh.
    return (m + m.conj().T) / 2.0


@dataclass(frozen=True)
class DensityMatrix:
    """A validated d x d density matrix (Hermitian, PSD, unit trace)."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _freeze(self.matrix))

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


@dataclass(frozen=True)
class QuantumChannel:
    """A validated trace-preserving channel given by Kraus operators.

    ``apply_channel`` computes ``sum_m K_m rho K_m^dagger``.  Input and
    output dimensions are equal by construction.
    """

    dim: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "kraus", tuple(_freeze(k) for k in self.kraus))

    def __eq__(self, other):
        if not isinstance(other, QuantumChannel):
            return NotImplemented
        return (
            self.dim == other.dim
            and len(self.kraus) == len(other.kraus)
            and all(np.array_equal(a, b) for a, b in zip(self.kraus, other.kraus))
        )

    __hash__ = None


@dataclass(frozen=True)
class Povm:
    """A validated POVM: Hermitian PSD elements summing to the identity."""

    dim: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(_freeze(e) for e in self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Povm):
            return NotImplemented
        return (
            self.dim == other.dim
            and len(self.elements) == len(other.elements)
            and all(np.array_equal(a, b) for a, b in zip(self.elements, other.elements))
        )

    __hash__ = None


def validate_state(matrix: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Check that ``matrix`` is a density matrix and wrap it.

    Parameters
    ----------
    matrix : array_like of complex, shape (d, d)
        Candidate state.
    tol : Tolerances, optional
        Absolute tolerances for the Hermiticity, positivity, and trace checks.

    Returns
    -------
    DensityMatrix

    Raises
    ------
    NotHermitianError
        If ``max |M - M^dagger|`` exceeds ``tol.hermitian``.
    NotPsdError
        If the smallest eigenvalue of the Hermitian part is below ``-tol.psd``.
    TraceNotOneError
        If ``|tr(M) - 1|`` exceeds ``tol.trace``.
    DimensionMismatchError
        If the input is not square or has non-finite entries.

    Notes
    -----
    Inputs are rejected, never projected back onto the valid set; a state
    that is 1e-6 away from PSD is a bug in the caller, not noise to hide.
    """
    m = _require_square(matrix, "state")
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > tol.hermitian:
        raise NotHermitianError(herm_dev, tol.hermitian)
    eigs = np.linalg.eigvalsh(_hermitian_part(m))
    if eigs[0] < -tol.psd:
        raise NotPsdError(float(eigs[0]), tol.psd)
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > tol.trace:
        raise TraceNotOneError(tr.real, tol.trace)
    return DensityMatrix(dim=m.shape[0], matrix=m)


def validate_channel(
    kraus: "list[np.ndarray] | tuple[np.ndarray, ...]",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> QuantumChannel:
    """Check that ``kraus`` defines a trace-preserving channel and wrap it.

    Parameters
    ----------
    kraus : sequence of array_like, each shape (d, d)
        Kraus operators.  At least one; all the same square dimension.
    tol : Tolerances, optional

    Returns
    -------
    QuantumChannel

    Raises
    ------
    NotTracePreservingError
        If ``||sum_m K_m^dagger K_m - I||_F`` exceeds ``tol.trace_preserving``.
    DimensionMismatchError
        For an empty list, non-square operators, or mixed dimensions.
    """
    if len(kraus) == 0:
        raise DimensionMismatchError("a channel needs at least one Kraus operator")
    ops = [_require_square(k, "Kraus operator") for k in kraus]
    d = ops[0].shape[0]
    for k in ops[1:]:
        if k.shape[0] != d:
            raise DimensionMismatchError(
                f"Kraus operators of mixed dimensions: {d} and {k.shape[0]}"
            )
    s = sum(k.conj().T @ k for k in ops)
    dev = float(np.linalg.norm(s - np.eye(d)))
    if dev > tol.trace_preserving:
        raise NotTracePreservingError(dev, tol.trace_preserving)
    return QuantumChannel(dim=d, kraus=tuple(ops))


def validate_povm(
    elements: "list[np.ndarray] | tuple[np.ndarray, ...]",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Povm:
    """Check that ``elements`` form a POVM and wrap them.

    Each element must be Hermitian and PSD within tolerance, and the elements
    must sum to the identity within ``tol.povm_completeness`` (Frobenius).
    """
    if len(elements) == 0:
        raise DimensionMismatchError("a POVM needs at least one element")
    ops = [_require_square(e, "POVM element") for e in elements]
    d = ops[0].shape[0]
    for e in ops[1:]:
        if e.shape[0] != d:
            raise DimensionMismatchError(
                f"POVM elements of mixed dimensions: {d} and {e.shape[0]}"
            )
    for e in ops:
        herm_dev = float(np.max(np.abs(e - e.conj().T)))
        if herm_dev > tol.hermitian:
            raise NotHermitianError(herm_dev, tol.hermitian)
        eigs = np.linalg.eigvalsh(_hermitian_part(e))
        if eigs[0] < -tol.psd:
            raise NotPsdError(float(eigs[0]), tol.psd)
    dev = float(np.linalg.norm(sum(ops) - np.eye(d)))
    if dev > tol.povm_completeness:
        raise PovmIncompleteError(dev, tol.povm_completeness)
    return Povm(dim=d, elements=tuple(ops))


def _apply_kraus(kraus: tuple[np.ndarray, ...], m: np.ndarray) -> np.ndarray:
    out = np.zeros_like(m)
    for k in kraus:
        out += k @ m @ k.conj().T
    return out


def apply_channel(
    channel: QuantumChannel,
    state: DensityMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Push ``state`` through ``channel``: ``sum_m K_m rho K_m^dagger``.

    The output is re-validated (it must satisfy the density-matrix contract
    for valid inputs; failure indicates numerical breakdown upstream).

    Raises
    ------
    DimensionMismatchError
        If the channel and state dimensions differ.
    """
    if channel.dim != state.dim:
        raise DimensionMismatchError(
            f"channel dim {channel.dim} != state dim {state.dim}"
        )
    return validate_state(_apply_kraus(channel.kraus, state.matrix), tol)


def outcome_probabilities(
    channel: QuantumChannel,
    state: DensityMatrix,
    povm: Povm,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Distribution over measurement outcomes for ``state`` sent through ``channel``.

    Computes ``p(j) = tr(E(rho) E_j)`` for each POVM element ``E_j``.

    Parameters
    ----------
    channel : QuantumChannel
    state : DensityMatrix
    povm : Povm
        All three must share one dimension.
    tol : Tolerances, optional

    Returns
    -------
    numpy.ndarray of float64, shape (len(povm),)
        Entries clamped to [0, 1]; sums to 1 within ``tol.probability``.

    Raises
    ------
    InvalidProbabilitiesError
        If any trace has imaginary part or out-of-range real part beyond
        ``tol.probability``, or the vector does not sum to 1 within it.
        Cannot happen for validated inputs; it guards the internal math.
    DimensionMismatchError
        On any dimension disagreement.
    """
    if not (channel.dim == state.dim == povm.dim):
        raise DimensionMismatchError(
            f"dimensions disagree: channel {channel.dim}, state {state.dim}, POVM {povm.dim}"
        )
    sigma = _apply_kraus(channel.kraus, state.matrix)
    raw = np.array([np.trace(sigma @ e) for e in povm.elements])
    if float(np.max(np.abs(raw.imag))) > tol.probability:
        raise InvalidProbabilitiesError(
            f"outcome trace has imaginary part up to {np.max(np.abs(raw.imag)):.3e}"
        )
    p = raw.real.astype(np.float64)
    if float(p.min()) < -tol.probability or float(p.max()) > 1.0 + tol.probability:
        raise InvalidProbabilitiesError(
            f"outcome probability outside [0,1]: min {p.min():.3e}, max {p.max():.3e}"
        )
    s = float(p.sum())
    if abs(s - 1.0) > tol.probability:
        raise InvalidProbabilitiesError(f"probabilities sum to {s!r}, expected 1")
    return np.clip(p, 0.0, 1.0)


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product of two states, a state on the joint space."""
    # PSD and unit trace are preserved exactly by the Kronecker product,
    # so no re-validation beyond construction.
    return DensityMatrix(dim=a.dim * b.dim, matrix=np.kron(a.matrix, b.matrix))


# ---------------------------------------------------------------------------
# Constructors and random ensembles
# ---------------------------------------------------------------------------


def pure_state(vector: np.ndarray) -> DensityMatrix:
    """Rank-one projector |v><v| from a (normalized) state vector."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    n = np.linalg.norm(v)
    if n == 0:
        raise DimensionMismatchError("cannot build a state from the zero vector")
    v = v / n
    return DensityMatrix(dim=v.size, matrix=np.outer(v, v.conj()))


def basis_state(dim: int, k: int) -> DensityMatrix:
    """Computational basis projector |k><k| in dimension ``dim``."""
    if not 0 <= k < dim:
        raise DimensionMismatchError(f"basis index {k} out of range for dim {dim}")
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[k, k] = 1.0
    return DensityMatrix(dim=dim, matrix=m)


def maximally_mixed(dim: int) -> DensityMatrix:
    """The state I/d."""
    return DensityMatrix(dim=dim, matrix=np.eye(dim, dtype=np.complex128) / dim)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a Haar-distributed unitary.

    QR of a complex Ginibre matrix with the R-diagonal phases divided out,
    which corrects the QR gauge so the distribution is exactly Haar.
    """
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_state(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Haar-random pure state: complex Gaussian vector, normalized."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return pure_state(v)


def random_density_matrix(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random mixed state ``G G^dagger / tr`` for a Ginibre G."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(dim=dim, matrix=m / np.trace(m).real)


def random_channel(dim: int, kraus_count: int, rng: np.random.Generator) -> QuantumChannel:
    """Random channel from a Haar-style isometry.

    Orthonormalizes a (kraus_count*dim) x dim Gaussian block matrix and slices
    it into Kraus operators, so sum K^dagger K = I holds to machine precision.
    """
    if kraus_count < 1:
        raise DimensionMismatchError("kraus_count must be >= 1")
    z = rng.standard_normal((kraus_count * dim, dim)) + 1j * rng.standard_normal(
        (kraus_count * dim, dim)
    )
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    ops = [q[m * dim : (m + 1) * dim, :] for m in range(kraus_count)]
    return QuantumChannel(dim=dim, kraus=tuple(ops))
