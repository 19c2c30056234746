"""Compact integration domains and nonnegative weight functions.

Domains are described by an axis-aligned bounding box, a vectorized
membership indicator and (when known) an analytic volume.  All shapes are
closed sets: points on the boundary count as inside.

The boundary of every domain is assumed to have measure zero, and the zero
set of every weight function is assumed to be nowhere dense.  Neither
property can be checked from an indicator oracle, so both are documented
preconditions rather than runtime checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Domain",
    "WeightFunction",
    "make_box",
    "make_cube",
    "make_ball",
    "union",
    "intersection",
    "difference",
    "unit_ball_volume",
    "constant_weight",
    "radial_power_weight",
]


def _as_points(x, dimension: int) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    if pts.shape[-1] != dimension:
        raise ValueError(f"expected points of dimension {dimension}, got shape {pts.shape}")
    return pts


@dataclass(frozen=True, eq=False)
class Domain:
    """A compact region of R^d.

    Parameters
    ----------
    dimension : int
        Ambient dimension d.
    lo, hi : ndarray
        Corners of the bounding box; every point of the domain lies in
        ``[lo, hi]``.
    indicator : callable
        Maps an ``(M, d)`` array to a boolean array of length ``M``.
    volume : float or None
        Analytic volume, or ``None`` if it has to be estimated by QMC.
    kind : str
        ``"cube"``, ``"ball"``, ``"box"``, ``"union"``, ``"intersection"``,
        ``"difference"`` or ``"custom"``.
    params : dict
        Shape parameters (center, radius, ...) used by analytic moment
        providers and by :meth:`to_config`.
    parts : tuple of Domain
        Constituents of a composite domain.
    """

    dimension: int
    lo: np.ndarray
    hi: np.ndarray
    indicator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    volume: Optional[float] = None
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    parts: tuple = ()

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float).reshape(-1)
        hi = np.asarray(self.hi, dtype=float).reshape(-1)
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if lo.shape != (self.dimension,) or hi.shape != (self.dimension,):
            raise ValueError("bounding box corners must have length equal to the dimension")
        if not np.all(lo < hi):
            raise ValueError(f"degenerate bounding box: lo={lo}, hi={hi}")
        if self.volume is not None and not self.volume > 0:
            raise ValueError(f"volume must be positive, got {self.volume}")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, x) -> np.ndarray:
        """Boolean membership of the points ``x`` (shape ``(M, d)`` or ``(d,)``).

        Points outside the bounding box are always rejected, whatever the
        underlying indicator says.
        """
        pts = _as_points(x, self.dimension)
        inside = np.all((pts >= self.lo) & (pts <= self.hi), axis=1)
        if np.any(inside):
            hit = np.asarray(self.indicator(pts[inside]), dtype=bool)
            inside[inside] = hit
        if np.ndim(x) == 1:
            return bool(inside[0])
        return inside

    def __call__(self, x):
        return self.contains(x)

    @property
    def box_volume(self) -> float:
        return float(np.prod(self.hi - self.lo))

    @property
    def diameter(self) -> float:
        """Diameter of the bounding box, an upper bound for the domain's."""
        return float(np.linalg.norm(self.hi - self.lo))

    def to_config(self) -> dict:
        """JSON-compatible description; inverse of :func:`poscub.config.domain_from_config`."""
        if self.kind in ("cube", "ball"):
            return {
                "type": self.kind,
                "center": [float(c) for c in self.params["center"]],
                "radius": float(self.params["radius"]),
            }
        if self.kind == "box":
            return {"type": "box", "lo": self.lo.tolist(), "hi": self.hi.tolist()}
        if self.kind in ("union", "intersection", "difference"):
            doc = {"type": self.kind, "parts": [p.to_config() for p in self.parts]}
            if self.kind == "union":
                doc["disjoint"] = bool(self.params.get("disjoint", False))
            return doc
        raise ValueError("custom domains have no configuration form")


def make_box(lo, hi) -> Domain:
    """Axis-parallel box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""
    lo = np.asarray(lo, dtype=float).reshape(-1)
    hi = np.asarray(hi, dtype=float).reshape(-1)
    if lo.shape != hi.shape:
        raise ValueError("lo and hi must have the same length")
    return Domain(
        dimension=lo.size,
        lo=lo,
        hi=hi,
        indicator=lambda x: np.ones(len(x), dtype=bool),
        volume=float(np.prod(hi - lo)),
        kind="box",
        params={"lo": lo.copy(), "hi": hi.copy()},
    )


def make_cube(center, radius: float) -> Domain:
    """Closed max-norm ball ``{x : ||x - center||_inf <= radius}``."""
    center = np.asarray(center, dtype=float).reshape(-1)
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    d = center.size
    # The box test done by Domain.contains is already the full membership test.
    return Domain(
        dimension=d,
        lo=center - radius,
        hi=center + radius,
        indicator=lambda x: np.ones(len(x), dtype=bool),
        volume=(2.0 * radius) ** d,
        kind="cube",
        params={"center": center.copy(), "radius": float(radius)},
    )


def unit_ball_volume(d: int) -> float:
    """Volume of the Euclidean unit ball in R^d."""
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def make_ball(center, radius: float) -> Domain:
    """Closed Euclidean ball ``{x : ||x - center||_2 <= radius}``."""
    center = np.asarray(center, dtype=float).reshape(-1)
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    d = center.size
    r2 = float(radius) ** 2

    def indicator(x):
        return np.sum((x - center) ** 2, axis=1) <= r2

    return Domain(
        dimension=d,
        lo=center - radius,
        hi=center + radius,
        indicator=indicator,
        volume=unit_ball_volume(d) * radius**d,
        kind="ball",
        params={"center": center.copy(), "radius": float(radius)},
    )


def _check_same_dimension(a: Domain, b: Domain):
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")


def union(a: Domain, b: Domain, disjoint: bool = False) -> Domain:
    """Union of two domains.

    The volume is the sum of the parts only when the caller asserts
    ``disjoint=True`` (overlap of measure zero); otherwise it is left for
    QMC estimation.
    """
    _check_same_dimension(a, b)
    volume = None
    if disjoint and a.volume is not None and b.volume is not None:
        volume = a.volume + b.volume
    return Domain(
        dimension=a.dimension,
        lo=np.minimum(a.lo, b.lo),
        hi=np.maximum(a.hi, b.hi),
        indicator=lambda x: a.contains(x) | b.contains(x),
        volume=volume,
        kind="union",
        params={"disjoint": bool(disjoint)},
        parts=(a, b),
    )


def intersection(a: Domain, b: Domain) -> Domain:
    """Intersection of two domains; the volume is always estimated."""
    _check_same_dimension(a, b)
    lo = np.maximum(a.lo, b.lo)
    hi = np.minimum(a.hi, b.hi)
    if not np.all(lo < hi):
        raise ValueError("bounding boxes of the operands do not overlap")
    return Domain(
        dimension=a.dimension,
        lo=lo,
        hi=hi,
        indicator=lambda x: a.contains(x) & b.contains(x),
        kind="intersection",
        parts=(a, b),
    )


def difference(a: Domain, b: Domain) -> Domain:
    """Points of ``a`` that are not in ``b``; the volume is always estimated.

    The boundary of ``b`` is kept so that the result stays closed.
    """
    _check_same_dimension(a, b)
    if b.kind == "ball":
        c, r = b.params["center"], b.params["radius"]

        def outside_b(x):
            return np.sum((x - c) ** 2, axis=1) >= r**2

    elif b.kind in ("cube", "box"):

        def outside_b(x):
            return np.any((x <= b.lo) | (x >= b.hi), axis=1)

    else:

        def outside_b(x):
            return ~b.contains(x)

    return Domain(
        dimension=a.dimension,
        lo=a.lo,
        hi=a.hi,
        indicator=lambda x: a.contains(x) & outside_b(x),
        kind="difference",
        parts=(a, b),
    )


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Nonnegative weight function of the integral.

    ``radial_power`` marks the family ``||x||_2 ** p`` (``p = 0`` is the
    constant weight) so that analytic moment providers can recognize it.
    ``zero_set_nowhere_dense`` is asserted by the caller and only recorded.
    """

    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    zero_set_nowhere_dense: bool = True
    radial_power: Optional[float] = None
    name: str = "custom"

    def __call__(self, x) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        vals = np.broadcast_to(np.asarray(self.evaluator(pts), dtype=float), (len(pts),)).copy()
        bad = ~(vals >= 0)
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise ValueError(f"weight function is negative or undefined at {pts[i]}: {vals[i]}")
        return vals

    @property
    def is_constant_one(self) -> bool:
        return self.radial_power == 0

    def to_config(self) -> dict:
        if self.radial_power is None:
            raise ValueError("custom weight functions have no configuration form")
        if self.radial_power == 0:
            return {"type": "one"}
        return {"type": "radial_power", "power": float(self.radial_power)}


def constant_weight() -> WeightFunction:
    """The weight function identically equal to one."""
    return WeightFunction(lambda x: np.ones(len(x)), radial_power=0.0, name="one")


def radial_power_weight(p: float) -> WeightFunction:
    """``omega(x) = ||x||_2 ** p``; ``p = 0.5`` is the square-root weight."""
    if p == 0:
        return constant_weight()
    if p < 0:
        # Singular at the origin; the value there is irrelevant for
        # integration but must stay finite and nonnegative.
        def ev(x):
            rho = np.linalg.norm(x, axis=1)
            out = np.zeros_like(rho)
            nz = rho > 0
            out[nz] = rho[nz] ** p
            return out

    else:

        def ev(x):
            return np.linalg.norm(x, axis=1) ** p

    return WeightFunction(ev, radial_power=float(p), name=f"norm^{p:g}")
