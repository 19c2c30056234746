"""End-to-end construction of positive interpolatory cubature rules.

Step one builds a nonnegative exact LS rule on an equidistributed
sequence; step two removes nodes by Steinitz elimination until at most
``K`` remain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cubature import Cubature, exactness_residual
from .function_space import FunctionSpace
from .geometry import Domain, WeightFunction
from .ls_cubature import LsConfig, LsResult, construct_nonnegative_ls_cf
from .moments import DEFAULT_QMC_SAMPLES, MomentVector, compute_moments, estimate_volume
from .sequences import DEFAULT_REJECTION_CAP, PointSequence
from .steinitz import ReductionConfig, ReductionTrace, reduce_rule

__all__ = ["Construction", "construct_positive_cf"]


@dataclass
class Construction:
    """Everything produced along the way to a positive interpolatory rule."""

    rule: Cubature
    moments: MomentVector
    ls: LsResult
    reduction: ReductionTrace
    volume: float


def construct_positive_cf(
    domain: Domain,
    weight: WeightFunction,
    space: FunctionSpace,
    *,
    sequence: Optional[str] = None,
    moments: Optional[MomentVector] = None,
    moment_method: str = "auto",
    qmc_samples: int = DEFAULT_QMC_SAMPLES,
    ls_config: Optional[LsConfig] = None,
    reduction_config: Optional[ReductionConfig] = None,
    rejection_cap: int = DEFAULT_REJECTION_CAP,
) -> Construction:
    """Build a positive ``space``-exact rule with at most ``K`` nodes in ``domain``.

    Moments are taken from ``moments`` if given, else computed with
    ``moment_method`` (closed form when available for ``"auto"``).
    """
    if space.dimension != domain.dimension:
        raise ValueError("space and domain dimensions differ")
    if moments is None:
        moments = compute_moments(space, domain, weight, moment_method, qmc_samples)
    volume = domain.volume if domain.volume is not None else estimate_volume(domain, qmc_samples)
    seq = PointSequence(domain, sequence, rejection_cap=rejection_cap)
    ls = construct_nonnegative_ls_cf(domain, weight, space, seq, moments, ls_config, volume=volume)
    nodes, w, trace = reduce_rule(ls.nodes, ls.weights, ls.Phi, moments.values, reduction_config)

    meta = {
        "space": space.descriptor(),
        "moment_provenance": moments.provenance,
        "sequence": seq.kind,
        "ls_nodes": int(len(ls.nodes)),
        "ls_history": ls.history,
        "steinitz_steps": len(trace.steps),
    }
    if moments.provenance == "qmc":
        meta["qmc_samples"] = int(moments.samples)
        meta["qmc_error"] = moments.error_estimate
    try:
        meta["domain"] = domain.to_config()
    except ValueError:
        pass
    try:
        meta["weight"] = weight.to_config()
    except ValueError:
        pass
    rule = Cubature(nodes=nodes, weights=w, metadata=meta)
    meta["residual"] = exactness_residual(rule, space, moments.values)
    return Construction(rule=rule, moments=moments, ls=ls, reduction=trace, volume=float(volume))


def moment_tolerance(moments: MomentVector) -> float:
    """Residual allowed for a rule exact with respect to ``moments``."""
    return 1e-8 * (1.0 + float(np.max(np.abs(moments.values))))
