"""Nonnegative least-squares cubature formulas.

For nodes ``x_1..x_N`` and discrete weights ``r_n = |Omega| omega(x_n) / N``
the LS weights are the solution of ``Phi w = m`` that minimizes
``||R^{-1/2} w||_2``.  They are computed through the basis that is
orthonormal under ``[u, v]_N = sum_n r_n u(x_n) v(x_n)``:

    w_n = r_n * sum_k pi_k(x_n) * I[pi_k]

:func:`construct_nonnegative_ls_cf` doubles ``N`` along an equidistributed
sequence until the node set is unisolvent and all LS weights are
nonnegative.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .function_space import FunctionSpace, vandermonde
from .geometry import Domain, WeightFunction
from .moments import MomentVector, estimate_volume
from .sequences import PointSequence

__all__ = [
    "DobFactorization",
    "LsConfig",
    "LsResult",
    "NodeCapExceeded",
    "DobBreakdown",
    "discrete_weights",
    "discrete_inner_product",
    "gram_schmidt_dob",
    "ls_weights",
    "construct_nonnegative_ls_cf",
]

log = logging.getLogger(__name__)


class NodeCapExceeded(RuntimeError):
    """The doubling loop reached its node cap without a nonnegative LS rule."""


class DobBreakdown(ValueError):
    """LS weights were requested from a rank-deficient factorization."""


def discrete_weights(nodes, weight: WeightFunction, volume: float) -> np.ndarray:
    """``r_n = volume * omega(x_n) / N``."""
    if not volume > 0:
        raise ValueError("volume must be positive")
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    return volume * weight(nodes) / len(nodes)


def discrete_inner_product(u, v, r) -> float:
    """``[u, v]_N = sum_n r_n u_n v_n`` for value vectors ``u, v``."""
    u, v, r = (np.asarray(a, dtype=float) for a in (u, v, r))
    if not (u.shape == v.shape == r.shape):
        raise ValueError(f"length mismatch: {u.shape}, {v.shape}, {r.shape}")
    return float(np.sum(r * u * v))


@dataclass
class DobFactorization:
    """Discrete orthonormal basis ``pi_k = sum_{l<=k} C[k, l] phi_l``.

    ``norms[k]`` is the discrete norm of the k-th residual before
    normalization.  On breakdown, ``breakdown_index`` is the first basis
    index whose residual vanished and the rows from there on are zero.
    """

    C: np.ndarray
    norms: np.ndarray
    breakdown: bool = False
    breakdown_index: Optional[int] = None
    reorthogonalized: int = 0

    @property
    def rank(self) -> int:
        return len(self.C) if not self.breakdown else int(self.breakdown_index)


def gram_schmidt_dob(Phi, r, tol: float = 1e-10) -> DobFactorization:
    """Modified Gram-Schmidt on the rows of ``Phi`` in the ``r``-weighted inner product.

    A second orthogonalization pass is applied to a basis function whenever
    its projections onto the earlier ones exceed ``1e-10`` after the first
    pass.  Breakdown is declared when ``||pi~_k||_N <= tol * ||phi_k||_N``.
    """
    Phi = np.asarray(Phi, dtype=float)
    r = np.asarray(r, dtype=float)
    K, N = Phi.shape
    if r.shape != (N,):
        raise ValueError("r must have one entry per node")
    if not np.sum(r) > 0:
        raise ValueError("discrete weights must have a positive sum")
    C = np.zeros((K, K))
    Q = np.zeros((K, N))
    norms = np.zeros(K)
    extra = 0
    for k in range(K):
        v = Phi[k].copy()
        c = np.zeros(K)
        c[k] = 1.0
        phi_norm = np.sqrt(np.sum(r * v * v))
        for sweep in range(2):
            for l in range(k):
                coef = np.sum(r * v * Q[l])
                v -= coef * Q[l]
                c -= coef * C[l]
            nrm = np.sqrt(np.sum(r * v * v))
            if k == 0 or nrm == 0:
                break
            defect = np.max(np.abs(Q[:k] @ (r * v))) / nrm
            if defect <= 1e-10:
                break
            extra += 1
        norms[k] = nrm
        if not nrm > tol * phi_norm:
            return DobFactorization(C=C, norms=norms, breakdown=True, breakdown_index=k, reorthogonalized=extra)
        Q[k] = v / nrm
        C[k] = c / nrm
    return DobFactorization(C=C, norms=norms, reorthogonalized=extra)


def ls_weights(dob: DobFactorization, Phi, r, m) -> np.ndarray:
    """LS cubature weights ``w_n = r_n sum_k pi_k(x_n) (C m)_k``.

    Entries with ``r_n == 0`` come out as exact zeros.
    """
    if dob.breakdown:
        raise DobBreakdown(f"Gram-Schmidt broke down at basis function {dob.breakdown_index}")
    Phi = np.asarray(Phi, dtype=float)
    r = np.asarray(r, dtype=float)
    m = np.asarray(m, dtype=float)
    dob_values = dob.C @ Phi
    dob_moments = dob.C @ m
    return r * (dob_values.T @ dob_moments)


@dataclass
class LsConfig:
    """Tolerances of the doubling loop.

    ``neg_weight_tol`` is relative to the largest weight; ``n_cap`` defaults
    to ``2**20 * K``.  ``check_rank_svd`` cross-checks every Gram-Schmidt
    rank decision against an SVD rank (debugging aid).
    """

    rank_tol: float = 1e-10
    neg_weight_tol: float = 1e-12
    n_cap: Optional[int] = None
    growth_factor: int = 2
    check_rank_svd: bool = False


@dataclass
class LsResult:
    nodes: np.ndarray
    weights: np.ndarray
    r: np.ndarray
    dob: DobFactorization
    Phi: np.ndarray
    residual: float
    history: list = field(default_factory=list)


def construct_nonnegative_ls_cf(
    domain: Domain,
    weight: WeightFunction,
    space: FunctionSpace,
    seq: PointSequence,
    moments: MomentVector,
    config: Optional[LsConfig] = None,
    volume: Optional[float] = None,
) -> LsResult:
    """Grow ``N`` from ``K`` by the growth factor until the LS rule is nonnegative.

    ``history`` records one dict per attempted ``N`` with the rank found
    and the smallest LS weight.  Weights in ``[-neg_weight_tol * max w, 0)``
    are clamped to zero.
    """
    config = config or LsConfig()
    K = space.K
    m = np.asarray(moments, dtype=float)
    if len(m) != K:
        raise ValueError(f"{len(m)} moments for a space of dimension {K}")
    if volume is None:
        volume = domain.volume if domain.volume is not None else estimate_volume(domain)
    n_cap = config.n_cap if config.n_cap is not None else 2**20 * K
    history = []
    N = K
    w_min = None
    while N <= n_cap:
        nodes = seq.first(N)
        Phi = vandermonde(space, nodes)
        r = discrete_weights(nodes, weight, volume)
        dob = gram_schmidt_dob(Phi, r, config.rank_tol)
        entry = {"N": N, "rank": dob.rank, "w_min": None}
        if config.check_rank_svd:
            entry["svd_rank"] = int(np.linalg.matrix_rank(Phi[:, r > 0]))
            if (entry["svd_rank"] == K) != (not dob.breakdown):
                log.warning("rank decisions disagree at N=%d: GS %d, SVD %d", N, dob.rank, entry["svd_rank"])
        if not dob.breakdown:
            w = ls_weights(dob, Phi, r, m)
            w_min = float(w.min())
            entry["w_min"] = w_min
            tol = config.neg_weight_tol * float(w.max())
            if w_min >= -tol:
                w = np.where(w < 0, 0.0, w)
                residual = float(np.max(np.abs(Phi @ w - m)))
                entry["residual"] = residual
                history.append(entry)
                log.info("LS rule: N=%d rank=%d w_min=%.3e residual=%.3e", N, dob.rank, w_min, residual)
                return LsResult(nodes=nodes, weights=w, r=r, dob=dob, Phi=Phi, residual=residual, history=history)
        history.append(entry)
        log.info("LS rule: N=%d rank=%d w_min=%s -> grow", N, dob.rank, entry["w_min"])
        N *= config.growth_factor
    raise NodeCapExceeded(
        f"no nonnegative LS rule with N <= {n_cap}; last smallest weight {w_min}"
        " (check that the domain, weight and space satisfy the construction's restrictions)"
    )
