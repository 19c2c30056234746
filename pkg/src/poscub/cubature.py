"""The :class:`Cubature` value type and its JSON / CSV forms."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "Cubature",
    "SchemaError",
    "InvariantError",
    "evaluate",
    "exactness_residual",
    "to_document",
    "from_document",
    "dumps",
    "loads",
    "save",
    "load",
    "to_csv",
]


class SchemaError(ValueError):
    """A rule document is malformed."""


class InvariantError(ValueError):
    """A rule violates positivity, node distinctness or shape constraints."""


@dataclass(frozen=True, eq=False)
class Cubature:
    """``C_N[f] = sum_n w_n f(x_n)`` with positive weights and distinct nodes.

    ``metadata`` carries the space descriptor, moment provenance, the
    exactness residual and anything else worth keeping (construction
    traces, domain and weight descriptions).
    """

    nodes: np.ndarray
    weights: np.ndarray
    metadata: dict = field(default_factory=dict)
    distinct_tol: float = 1e-12

    def __post_init__(self):
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=float))
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(weights) < 1 or len(nodes) != len(weights):
            raise InvariantError(f"{len(nodes)} nodes but {len(weights)} weights")
        if not np.all(np.isfinite(nodes)) or not np.all(np.isfinite(weights)):
            raise InvariantError("nodes and weights must be finite")
        if not np.all(weights > 0):
            raise InvariantError(f"weights must be positive, smallest is {weights.min()}")
        if len(nodes) > 1:
            scale = max(float(np.linalg.norm(np.ptp(nodes, axis=0))), 1.0)
            dist, _ = cKDTree(nodes).query(nodes, k=2)
            if dist[:, 1].min() <= self.distinct_tol * scale:
                raise InvariantError("nodes must be pairwise distinct")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def dimension(self) -> int:
        return self.nodes.shape[1]

    @property
    def N(self) -> int:
        return len(self.weights)

    def __len__(self):
        return self.N

    def __call__(self, f):
        return evaluate(self, f)


def evaluate(cf: Cubature, f: Callable) -> float:
    """Weighted sum of ``f`` over the nodes.

    ``f`` receives the ``(N, d)`` node array and returns ``N`` values.
    """
    vals = np.broadcast_to(np.asarray(f(cf.nodes), dtype=float), (cf.N,))
    if not np.all(np.isfinite(vals)):
        n = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise ValueError(f"integrand is not finite at node {n} ({cf.nodes[n]})")
    return float(cf.weights @ vals)


def exactness_residual(cf: Cubature, space, m) -> float:
    """``max_k |C_N[phi_k] - m_k|``."""
    m = np.asarray(m, dtype=float)
    if space.dimension != cf.dimension:
        raise ValueError("space and rule dimensions differ")
    if len(m) != space.K:
        raise ValueError("moment vector length differs from the space dimension")
    return float(np.max(np.abs(space.evaluate(cf.nodes) @ cf.weights - m)))


# ---------------------------------------------------------------- JSON

def to_document(cf: Cubature) -> dict:
    doc = {
        "dimension": cf.dimension,
        "nodes": cf.nodes.tolist(),
        "weights": cf.weights.tolist(),
    }
    for key, value in cf.metadata.items():
        doc.setdefault(key, value)
    return doc


def from_document(doc) -> Cubature:
    """Parse a rule document, raising :class:`SchemaError` / :class:`InvariantError`."""
    if not isinstance(doc, dict):
        raise SchemaError("rule document must be a JSON object")
    for key in ("dimension", "nodes", "weights"):
        if key not in doc:
            raise SchemaError(f"rule document is missing {key!r}")
    try:
        d = int(doc["dimension"])
        nodes = np.array(doc["nodes"], dtype=float)
        weights = np.array(doc["weights"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed nodes or weights: {exc}") from exc
    if nodes.ndim != 2 or nodes.shape[1] != d:
        raise SchemaError(f"nodes must be a list of {d}-vectors")
    if weights.ndim != 1:
        raise SchemaError("weights must be a flat list")
    meta = {k: v for k, v in doc.items() if k not in ("dimension", "nodes", "weights")}
    return Cubature(nodes=nodes, weights=weights, metadata=meta)


def dumps(cf: Cubature, indent: int | None = 1) -> str:
    # json writes floats with repr, the shortest string that round-trips exactly.
    return json.dumps(to_document(cf), indent=indent)


def loads(text: str) -> Cubature:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def save(cf: Cubature, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(cf))
        fh.write("\n")


def load(path) -> Cubature:
    with open(path) as fh:
        return loads(fh.read())


def to_csv(cf: Cubature) -> str:
    """One row ``x_1, ..., x_d, w`` per node, with a header line."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x_{j + 1}" for j in range(cf.dimension)] + ["w"])
    for x, w in zip(cf.nodes, cf.weights):
        writer.writerow([repr(float(v)) for v in x] + [repr(float(w))])
    return buf.getvalue()
