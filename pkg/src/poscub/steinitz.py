"""Reduction of a positive exact rule to at most K nodes (Steinitz' method).

Each step picks a vector ``a`` with ``Phi a = 0`` and at least one positive
entry, sets ``sigma = max_n a_n / w_n`` and replaces ``w`` by
``(sigma w - a) / sigma``.  Exactness is kept because ``Phi a = 0``, all
new weights are nonnegative and at least one is zero, so the node count
drops every step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "ReductionConfig",
    "ReductionTrace",
    "ResidualDriftError",
    "null_vector",
    "steinitz_step",
    "reduce_rule",
]

log = logging.getLogger(__name__)


class ResidualDriftError(RuntimeError):
    """The exactness residual grew beyond the allowed budget during reduction."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


@dataclass
class ReductionConfig:
    """Tolerances of the reduction.

    ``zero_tol`` is relative to the largest weight.  ``max_residual_drift``
    bounds the exactness residual relative to ``1 + ||m||_inf``.
    ``block`` selects how many columns the null vector is drawn from: the
    first ``K + 1`` active columns (default) or, with ``block=False``, the
    whole matrix.
    """

    zero_tol: float = 1e-14
    refine_final: bool = True
    max_residual_drift: float = 1e-8
    block: bool = True


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    pruned_zero: int = 0
    refinement: Optional[dict] = None


def null_vector(Phi, tol: float = 1e-10) -> np.ndarray:
    """Unit vector ``a`` with ``Phi a = 0`` and ``max(a) > 0``.

    Taken as the right singular vector of the smallest singular direction;
    the sign makes the first clearly nonzero entry positive.
    """
    Phi = np.asarray(Phi, dtype=float)
    K, N = Phi.shape
    if N <= K:
        raise ValueError(f"a nontrivial null vector needs more columns than rows (K={K}, N={N})")
    _, _, Vt = np.linalg.svd(Phi, full_matrices=True)
    a = Vt[-1].copy()
    scale = max(np.linalg.norm(Phi, 2), 1.0)
    if np.max(np.abs(Phi @ a)) > tol * scale * np.linalg.norm(a):
        raise np.linalg.LinAlgError("could not find a numerical null vector")
    first = np.flatnonzero(np.abs(a) > 1e-12 * np.max(np.abs(a)))[0]
    if a[first] < 0:
        a = -a
    if not np.max(a) > 0:  # cannot happen after the sign convention, kept as a guard
        a = -a
    return a


def steinitz_step(nodes, weights, Phi, a=None, zero_tol: float = 1e-14, weight_scale=None):
    """One elimination step.

    Returns ``(nodes, weights, Phi, info)`` restricted to the surviving
    nodes.  The index attaining ``sigma`` is set to exactly zero, and any
    other weight at or below ``zero_tol * weight_scale`` (default: the
    largest weight) is dropped as well.
    """
    nodes = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    if not np.all(w > 0):
        raise ValueError("Steinitz steps need strictly positive weights")
    if a is None:
        a = null_vector(Phi)
    a = np.asarray(a, dtype=float)
    ratios = a / w
    n_star = int(np.argmax(ratios))
    sigma = float(ratios[n_star])
    if not sigma > 0:
        raise RuntimeError(f"sigma = {sigma} is not positive; the null vector has no positive entry")
    w_new = w - a / sigma
    w_new[n_star] = 0.0
    scale = float(np.max(w)) if weight_scale is None else float(weight_scale)
    keep = w_new > zero_tol * scale
    info = {"N_before": len(w), "removed": np.flatnonzero(~keep).tolist(), "n_star": n_star, "sigma": sigma}
    return nodes[keep], w_new[keep], Phi[:, keep], info


def _residual(Phi, w, m):
    return float(np.max(np.abs(Phi @ w - m)))


def reduce_rule(nodes, weights, Phi, m, config: Optional[ReductionConfig] = None):
    """Reduce a nonnegative exact rule to at most ``K`` positive nodes.

    Parameters
    ----------
    nodes : (N, d) array
    weights : (N,) array of nonnegative weights
    Phi : (K, N) array, basis values at the nodes
    m : (K,) moments the rule is exact for

    Returns
    -------
    nodes, weights, trace
        The surviving nodes (a subset of the input) and their positive
        weights, plus a :class:`ReductionTrace`.  Indices in the trace
        refer to the input arrays.
    """
    config = config or ReductionConfig()
    nodes = np.asarray(nodes, dtype=float)
    w = np.array(weights, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    m = np.asarray(m, dtype=float)
    K, N = Phi.shape
    if np.any(w < 0):
        raise ValueError("input weights must be nonnegative")
    budget = config.max_residual_drift * (1.0 + float(np.max(np.abs(m))))
    trace = ReductionTrace()

    w_scale = float(np.max(w, initial=0.0))
    # Weights that are zero up to rounding count as zero.
    alive = w > config.zero_tol * w_scale
    trace.pruned_zero = int(np.count_nonzero(~alive))
    w[~alive] = 0.0
    res = Phi[:, alive] @ w[alive] - m
    allowed = max(budget, 10 * float(np.max(np.abs(res))))

    if config.block:
        # Null vectors are drawn from K + 1 live columns; the block is
        # refilled from the remaining ones in input order.
        pool = iter(np.flatnonzero(alive).tolist())
        blk = [i for _, i in zip(range(K + 1), pool)]
    else:
        blk = np.flatnonzero(alive).tolist()
    n_alive = int(np.count_nonzero(alive))
    while n_alive > K:
        idx = np.array(blk)
        Pb = Phi[:, idx]
        a = null_vector(Pb)
        _, _, _, info = steinitz_step(nodes[idx], w[idx], Pb, a=a, zero_tol=config.zero_tol, weight_scale=w_scale)
        info["N_before"] = n_alive
        sigma = info["sigma"]
        w_new = w[idx] - a / sigma
        removed = idx[info["removed"]]
        w_new[info["removed"]] = 0.0
        res += Pb @ (w_new - w[idx])
        w[idx] = w_new
        alive[removed] = False
        n_alive -= len(removed)
        info["removed"] = removed.tolist()
        info["n_star"] = int(idx[info["n_star"]])
        info["residual"] = float(np.max(np.abs(res)))
        trace.steps.append(info)
        if info["residual"] > allowed:
            raise ResidualDriftError(
                f"residual {info['residual']:.3e} exceeds budget {allowed:.3e} after {len(trace.steps)} steps",
                trace,
            )
        blk = [i for i in blk if alive[i]]
        if config.block:
            blk += [i for _, i in zip(range(K + 1 - len(blk)), pool)]

    keep = np.flatnonzero(alive)
    nodes, w, Phi = nodes[keep], w[keep], Phi[:, keep]
    final = _residual(Phi, w, m)
    if final > allowed:
        raise ResidualDriftError(f"residual {final:.3e} exceeds budget {allowed:.3e}", trace)

    if config.refine_final and len(w) > 0:
        w_ref = np.linalg.lstsq(Phi, m, rcond=None)[0]
        after = _residual(Phi, w_ref, m)
        accepted = bool(np.all(w_ref > 0) and after < final)
        trace.refinement = {"before": final, "after": after, "accepted": accepted}
        if accepted:
            w = w_ref
    log.info("Steinitz reduction: %d steps, %d nodes left", len(trace.steps), len(w))
    return nodes, w, trace
