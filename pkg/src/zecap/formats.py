"""File formats: channel specs, analysis reports, graph JSON, DOT export.

All documents are plain JSON.  Complex numbers are encoded as two-element
[re, im] arrays, a complex matrix as a row-major nested list of those pairs.
Serialization is canonical (sorted keys, two-space indent, trailing newline,
no timestamps), so identical analyses produce byte-identical files; writes
go through a temp file and rename, so a crashed run never leaves a torn
document behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import __version__
from .blockcode import DecoderTable, QuantumBlockCode, ZeroErrorReport
from .capacity import CapacityBounds
from .confusability import ConfusabilityGraph, StateSet
from .errors import ValidationError
from .graphs import Graph
from .quantum import (
    DensityMatrix,
    Povm,
    QuantumChannel,
    validate_channel,
    validate_povm,
    validate_state,
)
from .search import SearchResult
from .theta import ThetaResult

__all__ = [
    "ParsedChannelSpec",
    "complex_matrix_to_json",
    "complex_matrix_from_json",
    "channel_spec_document",
    "parse_channel_spec",
    "graph_to_json",
    "graph_from_json",
    "graph_to_dot",
    "search_result_document",
    "code_document",
    "report_document",
    "dumps_canonical",
    "write_json_atomic",
    "write_text_atomic",
]


def complex_matrix_to_json(m: np.ndarray) -> list:
    """Row-major nested list of [re, im] pairs."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def complex_matrix_from_json(rows, what: str = "matrix") -> np.ndarray:
    """Inverse of :func:`complex_matrix_to_json`, with shape checking."""
    if not isinstance(rows, list) or not rows:
        raise ValidationError(f"{what}: expected a non-empty list of rows")
    width = None
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise ValidationError(f"{what}: row {r} is not a non-empty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(f"{what}: ragged rows ({len(row)} != {width})")
        vals = []
        for c, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) for x in cell)
            ):
                raise ValidationError(
                    f"{what}: entry ({r}, {c}) is not an [re, im] pair"
                )
            vals.append(complex(cell[0], cell[1]))
        out.append(vals)
    return np.array(out, dtype=np.complex128)


def _real_matrix_from_json(rows, what: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ValidationError(f"{what}: expected a non-empty list of rows")
    try:
        m = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError):
        raise ValidationError(f"{what}: entries must be real numbers") from None
    if m.ndim != 2:
        raise ValidationError(f"{what}: expected a 2-D array, got shape {m.shape}")
    return m


# ---------------------------------------------------------------------------
# Channel specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParsedChannelSpec:
    """A channel spec after validation.

    ``source`` is "kraus" or "classical_matrix".  ``states``/``povm`` are
    present when the spec carried them explicitly or when the classical
    embedding supplies its canonical ensemble.
    """

    name: str
    channel: QuantumChannel
    source: str
    states: StateSet | None
    povm: Povm | None
    classical_matrix: np.ndarray | None


def channel_spec_document(
    name: str,
    channel: QuantumChannel | None = None,
    classical_matrix: np.ndarray | None = None,
    states: StateSet | None = None,
    povm: Povm | None = None,
) -> dict:
    """Assemble a spec document from validated objects."""
    if (channel is None) == (classical_matrix is None):
        raise ValidationError("exactly one of channel / classical_matrix is required")
    doc: dict = {"name": str(name)}
    if channel is not None:
        doc["dim"] = channel.dim
        doc["kraus"] = [complex_matrix_to_json(k) for k in channel.kraus]
    else:
        w = np.asarray(classical_matrix, dtype=np.float64)
        doc["classical_matrix"] = [[float(x) for x in row] for row in w]
    if states is not None:
        doc["states"] = [complex_matrix_to_json(s.matrix) for s in states.states]
    if povm is not None:
        doc["povm"] = [complex_matrix_to_json(e) for e in povm.elements]
    return doc


def parse_channel_spec(doc, allow_overcomplete: bool = False) -> ParsedChannelSpec:
    """Validate a channel-spec document into live objects.

    Exactly one of ``kraus`` / ``classical_matrix`` must be present.
    Classical specs carry their canonical embedding (basis states and
    computational POVM) and may not override it; Kraus specs may bundle
    explicit ``states`` and ``povm`` (both or neither).

    Raises
    ------
    ValidationError
        (or a subclass) for every way the document can be malformed or
        mathematically invalid.
    """
    from .channels import embed_classical  # channels imports this module too

    if not isinstance(doc, dict):
        raise ValidationError("spec must be a JSON object")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError('spec needs a non-empty string "name"')
    has_kraus = "kraus" in doc
    has_classical = "classical_matrix" in doc
    if has_kraus == has_classical:
        raise ValidationError(
            'spec needs exactly one of "kraus" or "classical_matrix"'
        )

    if has_classical:
        if "states" in doc or "povm" in doc:
            raise ValidationError(
                "classical specs use their canonical embedding; drop states/povm"
            )
        w = _real_matrix_from_json(doc["classical_matrix"], "classical_matrix")
        channel, states, povm = embed_classical(w)
        return ParsedChannelSpec(
            name=name,
            channel=channel,
            source="classical_matrix",
            states=states,
            povm=povm,
            classical_matrix=w,
        )

    kraus_json = doc["kraus"]
    if not isinstance(kraus_json, list) or not kraus_json:
        raise ValidationError('"kraus" must be a non-empty list of matrices')
    kraus = [
        complex_matrix_from_json(k, f"kraus[{i}]") for i, k in enumerate(kraus_json)
    ]
    channel = validate_channel(kraus)
    if "dim" in doc and int(doc["dim"]) != channel.dim:
        raise ValidationError(
            f'spec "dim" = {doc["dim"]} but Kraus operators are {channel.dim}-dimensional'
        )

    states = povm = None
    if ("states" in doc) != ("povm" in doc):
        raise ValidationError("states and povm must be given together")
    if "states" in doc:
        sj = doc["states"]
        if not isinstance(sj, list) or not sj:
            raise ValidationError('"states" must be a non-empty list of matrices')
        dms = [
            validate_state(complex_matrix_from_json(s, f"states[{i}]"))
            for i, s in enumerate(sj)
        ]
        states = StateSet(
            dim=channel.dim, states=tuple(dms), allow_overcomplete=allow_overcomplete
        )
        pj = doc["povm"]
        if not isinstance(pj, list) or not pj:
            raise ValidationError('"povm" must be a non-empty list of matrices')
        povm = validate_povm(
            [complex_matrix_from_json(e, f"povm[{i}]") for i, e in enumerate(pj)]
        )
        if povm.dim != channel.dim:
            raise ValidationError(
                f"POVM dimension {povm.dim} != channel dimension {channel.dim}"
            )
    return ParsedChannelSpec(
        name=name,
        channel=channel,
        source="kraus",
        states=states,
        povm=povm,
        classical_matrix=None,
    )


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    """Adjacency-list document: {"vertex_count": V, "adjacency": [[...], ...]}."""
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for a, b in sorted(g.edges):
        adj[a].append(b)
        adj[b].append(a)
    return {"vertex_count": g.vertex_count, "adjacency": [sorted(n) for n in adj]}


def graph_from_json(doc) -> Graph:
    if not isinstance(doc, dict):
        raise ValidationError("graph must be a JSON object")
    v = doc.get("vertex_count")
    adj = doc.get("adjacency")
    if not isinstance(v, int) or v < 1:
        raise ValidationError('"vertex_count" must be a positive integer')
    if not isinstance(adj, list) or len(adj) != v:
        raise ValidationError('"adjacency" must list neighbors for every vertex')
    edges = set()
    for a, nbrs in enumerate(adj):
        if not isinstance(nbrs, list):
            raise ValidationError(f"adjacency[{a}] is not a list")
        for b in nbrs:
            if not isinstance(b, int) or not 0 <= b < v or b == a:
                raise ValidationError(f"adjacency[{a}] has invalid neighbor {b!r}")
            edges.add((min(a, b), max(a, b)))
    for a, b in edges:
        if a not in adj[b] or b not in adj[a]:
            raise ValidationError(f"edge ({a}, {b}) is not listed symmetrically")
    return Graph(vertex_count=v, edges=frozenset(edges))


def graph_to_dot(g: ConfusabilityGraph | Graph, name: str = "confusability") -> str:
    """Graphviz DOT text; vertices are state indices, edges mean confusable."""
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        lines.append(f"  {v};")
    for a, b in sorted(g.edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Result documents
# ---------------------------------------------------------------------------


def _states_json(states: StateSet) -> list:
    return [complex_matrix_to_json(s.matrix) for s in states.states]


def _povm_json(povm: Povm) -> list:
    return [complex_matrix_to_json(e) for e in povm.elements]


def _theta_json(res: ThetaResult | None) -> dict | None:
    if res is None:
        return None
    return {
        "value": res.value,
        "lower": res.lower,
        "upper": res.upper,
        "gap": res.gap,
        "iterations": res.iterations,
        "converged": res.converged,
    }


def _bounds_json(bounds: CapacityBounds) -> dict:
    return {
        "per_n": [
            {
                "n": e.n,
                "alpha": e.alpha,
                "rate": e.rate,
                "witness": list(e.witness) if e.witness is not None else None,
                "skipped": e.skipped,
                "reason": e.reason,
            }
            for e in bounds.per_n
        ],
        "best_lower": bounds.best_lower,
        "theta": _theta_json(bounds.theta),
        "theta_upper": bounds.theta_upper,
        "theta_failure": bounds.theta_failure,
    }


def _certificate_json(rep: ZeroErrorReport) -> dict:
    return {
        "passed": rep.passed,
        "eps": rep.eps,
        "pairwise_disjoint": rep.pairwise_disjoint,
        "overlap_pair": list(rep.overlap_pair) if rep.overlap_pair else None,
        "max_overlap_mass": rep.max_overlap_mass,
        "support_sizes": list(rep.support_sizes),
        "total_reachable": rep.total_reachable,
        "word_space_size": rep.word_space_size,
        "tensor_path_checked": rep.tensor_path_checked,
        "paths_agree": rep.paths_agree,
    }


_DECODER_JSON_CAP = 10_000


def code_document(
    code: QuantumBlockCode,
    decoder: DecoderTable | None,
    certificate: ZeroErrorReport | None,
    decoder_failure: str | None = None,
) -> dict:
    """JSON view of a block code, its decoder, and its certificate."""
    doc: dict = {
        "n": code.block_length,
        "message_count": code.message_count,
        "rate": code.rate,
        "codewords": [list(cw) for cw in code.codewords],
        "decoder": None,
        "decoder_failure": decoder_failure,
        "certificate": _certificate_json(certificate) if certificate else None,
    }
    if decoder is not None:
        word_space = decoder.outcome_count**decoder.block_length
        dd: dict = {
            "outcome_count": decoder.outcome_count,
            "mapped_words": len(decoder.mapping),
            "unreachable_words": word_space - len(decoder.mapping),
        }
        if len(decoder.mapping) <= _DECODER_JSON_CAP:
            dd["table"] = [
                {"word": list(w), "message": msg}
                for w, msg in sorted(decoder.mapping.items())
            ]
        else:
            dd["table"] = None
        doc["decoder"] = dd
    return doc


def search_result_document(res: SearchResult) -> dict:
    """JSON view of a search outcome (full per-restart traces omitted)."""
    return {
        "pair_count": res.pair_count,
        "alpha_1": res.alpha_1,
        "best_restart": res.best_restart,
        "restarts": res.config.restarts,
        "iterations": res.config.iterations,
        "seed": res.config.seed,
        "objective": res.config.objective,
        "general_povm": res.config.general_povm,
        "final_objective_per_restart": [
            (trace[-1] if trace else None) for trace in res.history
        ],
        "states": _states_json(res.best_states),
        "povm": _povm_json(res.best_povm),
        "graph": graph_to_json(res.graph.to_graph()),
    }


def report_document(
    *,
    spec: ParsedChannelSpec,
    provenance: str,
    states: StateSet,
    povm: Povm,
    graph: ConfusabilityGraph,
    bounds: CapacityBounds,
    eps: float,
    n_max: int,
    seed: int | None,
    threads: int,
    code: dict | None,
    code_failure: str | None,
    search: dict | None,
) -> dict:
    """Assemble the full analysis report.

    The report embeds the channel, states, and POVM it analyzed, so rerunning
    the tool on the report's own inputs reproduces its outputs.
    """
    channel_doc: dict = {
        "name": spec.name,
        "dim": spec.channel.dim,
        "source": spec.source,
        "kraus_count": len(spec.channel.kraus),
        "kraus": [complex_matrix_to_json(k) for k in spec.channel.kraus],
        "classical_matrix": (
            [[float(x) for x in row] for row in spec.classical_matrix]
            if spec.classical_matrix is not None
            else None
        ),
    }
    from .confusability import non_adjacent_pair_count

    return {
        "tool": "zecap",
        "version": __version__,
        "seed": seed,
        "threads": threads,
        "eps_support": eps,
        "n_max": n_max,
        "channel": channel_doc,
        "ensemble": {
            "provenance": provenance,
            "state_count": len(states.states),
            "povm_outcomes": len(povm.elements),
            "states": _states_json(states),
            "povm": _povm_json(povm),
        },
        "supports": [sorted(s) for s in graph.supports],
        "fragile_probability_count": graph.fragile_count,
        "graph": graph_to_json(graph.to_graph()),
        "non_adjacent_pairs": non_adjacent_pair_count(graph),
        "positive_zero_error_capacity": non_adjacent_pair_count(graph) > 0,
        "bounds": _bounds_json(bounds),
        "code": code,
        "code_failure": code_failure,
        "search": search,
    }


# ---------------------------------------------------------------------------
# Canonical serialization and atomic writes
# ---------------------------------------------------------------------------


def dumps_canonical(doc) -> str:
    """Deterministic JSON text: sorted keys, 2-space indent, newline-terminated."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write via temp file + rename so readers never see a torn file."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".zecap-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json_atomic(path: str, doc) -> None:
    write_text_atomic(path, dumps_canonical(doc))
