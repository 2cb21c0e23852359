"""Zero-error capacity toolkit for quantum channels.

Computes what a channel can transmit with literally zero probability of
error: confusability graphs of state/measurement ensembles, independence
numbers of their strong powers, Lovász theta upper bounds, annealed searches
for good state/POVM pairs, and explicit zero-error block codes with decoders.
"""

__version__ = "0.1.0"

from .capacity import CapacityBounds, RateEntry, capacity_bounds
from .blockcode import (
    DecoderTable,
    QuantumBlockCode,
    ZeroErrorReport,
    build_code,
    build_decoder,
    reachable_supports,
    verify_zero_error,
)
from .channels import (
    bitflip_channel,
    builtin_spec,
    dephasing_channel,
    depolarizing_channel,
    embed_classical,
    identity_channel,
    pentagon_matrix,
)
from .confusability import (
    DEFAULT_EPS,
    ConfusabilityGraph,
    StateSet,
    confusability_graph,
    has_positive_zero_error_capacity,
    non_adjacent,
    non_adjacent_pair_count,
    support_set,
)
from .errors import (
    AmbiguousSupportsError,
    DimensionMismatchError,
    EmptySupportError,
    InvalidProbabilitiesError,
    NotConvergedError,
    NotHermitianError,
    NotPsdError,
    NotStochasticError,
    NotTracePreservingError,
    PovmIncompleteError,
    SizeLimitError,
    TraceNotOneError,
    ValidationError,
    ZecapError,
)
from .graphs import (
    MAX_VERTICES,
    Graph,
    complete_graph,
    cycle_graph,
    edgeless_graph,
    independence_number,
    strong_power,
    strong_product,
)
from .quantum import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Povm,
    QuantumChannel,
    Tolerances,
    apply_channel,
    basis_state,
    haar_unitary,
    maximally_mixed,
    outcome_probabilities,
    pure_state,
    random_channel,
    random_density_matrix,
    random_pure_state,
    tensor,
    validate_channel,
    validate_povm,
    validate_state,
)
from .search import (
    SearchConfig,
    SearchResult,
    optimize_pair,
    random_general_povm,
    random_projective_povm,
    random_pure_state_set,
)
from .theta import MAX_SDP_VERTICES, ThetaResult, lovasz_theta
