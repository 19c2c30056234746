"""Moments ``m_k = I[phi_k]`` of a function space.

Closed forms are provided for

* boxes and cubes with ``omega == 1`` and monomial or trigonometric bases,
* balls with ``omega(x) = ||x||_2 ** p`` (centered at the origin) or
  ``omega == 1`` (any center) and monomial bases,
* disjoint unions of supported parts.

Everything else goes through a quasi-Monte Carlo estimate on Halton points
in the bounding box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from .function_space import FunctionSpace
from .geometry import Domain, WeightFunction, constant_weight
from .sequences import halton_points

__all__ = [
    "MomentVector",
    "DegenerateDomainError",
    "analytic_moments",
    "qmc_moments",
    "compute_moments",
    "estimate_volume",
    "DEFAULT_QMC_SAMPLES",
]

DEFAULT_QMC_SAMPLES = 2**20
_CHUNK = 2**15


class DegenerateDomainError(RuntimeError):
    """No sample point fell inside the domain, or ``I[1]`` is not positive."""


@dataclass(frozen=True)
class MomentVector:
    """Moment values with their provenance.

    ``errors`` holds per-moment QMC error estimates (``None`` for analytic
    moments); ``samples`` the QMC sample count.
    """

    values: np.ndarray
    provenance: str
    samples: Optional[int] = None
    errors: Optional[np.ndarray] = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        object.__setattr__(self, "values", vals)
        if not vals[0] > 0:
            raise DegenerateDomainError(
                f"I[1] = {vals[0]} is not positive; the integral is not positive definite"
            )

    def __len__(self):
        return len(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    @property
    def error_estimate(self) -> float:
        """Largest per-moment error estimate (0 for analytic moments)."""
        if self.errors is None:
            return 0.0
        return float(np.max(self.errors))


# ---------------------------------------------------------------- analytic


def _box_monomial(lo, hi, exps):
    a = exps + 1
    return np.prod((hi**a - lo**a) / a, axis=1)


def _box_trig(lo, hi, freqs, is_sine):
    # int_lo^hi exp(2 pi i a x) dx per axis, multiplied over axes.
    total = np.ones(len(freqs), dtype=complex)
    for j in range(freqs.shape[1]):
        a = freqs[:, j].astype(float)
        width = hi[j] - lo[j]
        nz = a != 0
        fac = np.full(len(a), width, dtype=complex)
        an = a[nz]
        fac[nz] = (np.exp(2j * np.pi * an * hi[j]) - np.exp(2j * np.pi * an * lo[j])) / (2j * np.pi * an)
        total *= fac
    out = np.where(is_sine, total.imag, total.real)
    # Integer frequencies over whole periods cancel exactly; drop rounding noise.
    scale = np.prod(hi - lo)
    out[np.abs(out) < 1e-15 * scale] = 0.0
    return out


def _sphere_monomial(beta: np.ndarray) -> np.ndarray:
    """Surface integral of ``u^beta`` over the unit sphere S^{d-1}."""
    out = np.zeros(len(beta))
    even = np.all(beta % 2 == 0, axis=1)
    b = (beta[even] + 1) / 2.0
    out[even] = 2.0 * np.exp(np.sum(gammaln(b), axis=1) - gammaln(np.sum(b, axis=1)))
    return out


def _centered_ball_monomial(d, radius, exps, p):
    deg = exps.sum(axis=1)
    e = p + deg + d
    return radius**e / e * _sphere_monomial(exps)


def _ball_monomial(center, radius, exps, p):
    if np.all(center == 0):
        return _centered_ball_monomial(len(center), radius, exps, p)
    if p != 0:
        return None
    # (c + y)^alpha expanded binomially; only even sub-indices survive.
    out = np.zeros(len(exps))
    for i, alpha in enumerate(exps):
        subs = np.array(np.meshgrid(*[np.arange(a + 1) for a in alpha], indexing="ij")).reshape(len(alpha), -1).T
        coef = np.prod(
            [[math.comb(int(a), int(b)) for a, b in zip(alpha, beta)] for beta in subs], axis=1
        ) * np.prod(center ** (alpha - subs), axis=1)
        out[i] = np.sum(coef * _centered_ball_monomial(len(center), radius, subs, 0.0))
    return out


def _analytic_values(space: FunctionSpace, domain: Domain, weight: WeightFunction):
    p = weight.radial_power
    if p is None or space.kind == "custom":
        return None
    if domain.kind in ("cube", "box"):
        if p != 0:
            return None
        if space.kind == "algebraic":
            return _box_monomial(domain.lo, domain.hi, space.exponents)
        return _box_trig(domain.lo, domain.hi, space.frequencies, space.is_sine)
    if domain.kind == "ball":
        if space.kind != "algebraic" or p <= -domain.dimension:
            return None
        return _ball_monomial(domain.params["center"], domain.params["radius"], space.exponents, p)
    if domain.kind == "union" and domain.params.get("disjoint"):
        parts = [_analytic_values(space, part, weight) for part in domain.parts]
        if any(v is None for v in parts):
            return None
        return sum(parts)
    return None


def analytic_moments(space: FunctionSpace, domain: Domain, weight: WeightFunction) -> Optional[MomentVector]:
    """Closed-form moments, or ``None`` if the triple is not supported."""
    vals = _analytic_values(space, domain, weight)
    if vals is None:
        return None
    return MomentVector(values=vals, provenance="analytic")


# ---------------------------------------------------------------- QMC


def qmc_moments(
    space: FunctionSpace,
    domain: Domain,
    weight: WeightFunction,
    M: int = DEFAULT_QMC_SAMPLES,
) -> MomentVector:
    """Estimate ``I[phi_k]`` from the first ``M`` Halton points of the bounding box.

    The error estimate of each moment is the largest difference between
    the ``M``-point estimate and the estimates from the prefixes of
    ``M/2``, ``M/4`` and ``M/8`` points.  The single halving alone can
    understate the error badly when the two estimates agree by accident.
    """
    if M < 10**4:
        raise ValueError("use at least 10**4 QMC samples")
    d = domain.dimension
    checkpoints = {M // 2**j: None for j in (1, 2, 3)}
    sums = np.zeros(space.K)
    hits = 0
    start = 1
    while start <= M:
        nxt = min([c + 1 for c in checkpoints if c >= start] + [M + 1])
        stop = min(start + _CHUNK, nxt)
        u = halton_points(d, start, stop - start)
        x = domain.lo + (domain.hi - domain.lo) * u
        inside = domain.contains(x)
        if np.any(inside):
            xi = x[inside]
            hits += len(xi)
            sums += space.evaluate(xi) @ weight(xi)
        start = stop
        if start - 1 in checkpoints:
            checkpoints[start - 1] = sums.copy()
    if hits == 0:
        raise DegenerateDomainError(f"none of {M} QMC samples fell inside the domain")
    vol = domain.box_volume
    values = vol * sums / M
    errors = np.max([np.abs(values - vol * s / n) for n, s in checkpoints.items()], axis=0)
    return MomentVector(values=values, provenance="qmc", samples=M, errors=errors)


def estimate_volume(domain: Domain, M: int = DEFAULT_QMC_SAMPLES) -> float:
    """QMC estimate of the domain volume."""
    from .function_space import algebraic_space

    return float(qmc_moments(algebraic_space(domain.dimension, 0), domain, constant_weight(), M).values[0])


def compute_moments(
    space: FunctionSpace,
    domain: Domain,
    weight: WeightFunction,
    method: str = "auto",
    M: int = DEFAULT_QMC_SAMPLES,
) -> MomentVector:
    """Moments by ``method`` in ``{"auto", "analytic", "qmc"}``.

    ``"auto"`` prefers closed forms and falls back to QMC.
    """
    if method not in ("auto", "analytic", "qmc"):
        raise ValueError(f"unknown moment method {method!r}")
    if method in ("auto", "analytic"):
        mv = analytic_moments(space, domain, weight)
        if mv is not None:
            return mv
        if method == "analytic":
            raise ValueError("no analytic moments available for this domain/weight/space")
    return qmc_moments(space, domain, weight, M)
