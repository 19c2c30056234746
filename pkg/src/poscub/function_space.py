"""Finite-dimensional function spaces containing the constants.

A :class:`FunctionSpace` is an ordered basis ``phi_1, ..., phi_K`` with
``phi_1 == 1``.  Evaluating it at ``N`` nodes gives the ``K x N`` matrix of
the exactness system ``Phi w = m`` (see :func:`vandermonde`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "FunctionSpace",
    "total_degree_exponents",
    "algebraic_space",
    "trigonometric_frequencies",
    "trigonometric_space",
    "custom_space",
    "vandermonde",
    "space_from_descriptor",
]


@dataclass(frozen=True, eq=False)
class FunctionSpace:
    """Ordered basis of a K-dimensional space of functions on R^d.

    ``kind`` is ``"algebraic"``, ``"trigonometric"`` or ``"custom"``.  For
    algebraic spaces ``exponents`` holds the multi-indices (one row per
    basis function).  For trigonometric spaces ``frequencies`` holds one
    row per basis function and ``is_sine`` tells sine from cosine; the
    constant is the all-zero cosine.
    """

    dimension: int
    kind: str
    degree: Optional[int] = None
    exponents: Optional[np.ndarray] = None
    frequencies: Optional[np.ndarray] = None
    is_sine: Optional[np.ndarray] = None
    evaluators: tuple = field(default=(), repr=False)

    @property
    def K(self) -> int:
        if self.kind == "algebraic":
            return len(self.exponents)
        if self.kind == "trigonometric":
            return len(self.frequencies)
        return len(self.evaluators)

    def __len__(self):
        return self.K

    def evaluate(self, points) -> np.ndarray:
        """Basis values at ``points`` (shape ``(N, d)``) as a ``(K, N)`` array."""
        x = np.atleast_2d(np.asarray(points, dtype=float))
        if x.shape[1] != self.dimension:
            raise ValueError(f"expected points of dimension {self.dimension}, got {x.shape[1]}")
        if self.kind == "algebraic":
            return _monomials(x, self.exponents)
        if self.kind == "trigonometric":
            phase = 2.0 * np.pi * (self.frequencies @ x.T)
            return np.where(self.is_sine[:, None], np.sin(phase), np.cos(phase))
        rows = [np.broadcast_to(np.asarray(f(x), dtype=float), (len(x),)) for f in self.evaluators]
        return np.array(rows)

    def descriptor(self) -> dict:
        if self.kind == "custom":
            return {"kind": "custom", "dimension": self.dimension, "K": self.K}
        return {"kind": self.kind, "dimension": self.dimension, "degree": self.degree, "K": self.K}


def _monomials(x: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    # Powers are built per axis once and then multiplied together.
    max_deg = int(exponents.max(initial=0))
    out = np.ones((len(exponents), len(x)))
    for j in range(x.shape[1]):
        powers = np.ones((max_deg + 1, len(x)))
        for p in range(1, max_deg + 1):
            powers[p] = powers[p - 1] * x[:, j]
        out *= powers[exponents[:, j]]
    return out


def total_degree_exponents(d: int, m: int) -> np.ndarray:
    """Multi-indices with ``|alpha| <= m`` in graded lexicographic order.

    Inside each total degree, indices are sorted in decreasing
    lexicographic order (``x`` before ``y``), so for ``d = 2, m = 2`` the
    basis is ``1, x, y, x^2, xy, y^2``.
    """
    if d < 1 or m < 0:
        raise ValueError("need d >= 1 and m >= 0")
    rows = []
    for k in range(m + 1):
        block = [a for a in itertools.product(range(k + 1), repeat=d) if sum(a) == k]
        block.sort(reverse=True)
        rows.extend(block)
    return np.array(rows, dtype=int).reshape(-1, d)


def algebraic_space(d: int, m: int) -> FunctionSpace:
    """Polynomials of total degree at most ``m`` in ``d`` variables (monomial basis)."""
    exps = total_degree_exponents(d, m)
    assert len(exps) == math.comb(m + d, d)
    return FunctionSpace(dimension=d, kind="algebraic", degree=m, exponents=exps)


def trigonometric_frequencies(d: int, m: int) -> np.ndarray:
    """One representative of each pair ``+-alpha`` with ``0 < |alpha|_1 <= m``.

    The representative is the one whose first nonzero entry is positive.
    Ordered by total degree, then decreasing lexicographically.
    """
    if d < 1 or m < 0:
        raise ValueError("need d >= 1 and m >= 0")
    reps = []
    for k in range(1, m + 1):
        block = []
        for a in itertools.product(range(-k, k + 1), repeat=d):
            if sum(abs(v) for v in a) != k:
                continue
            first = next(v for v in a if v != 0)
            if first > 0:
                block.append(a)
        block.sort(reverse=True)
        reps.extend(block)
    return np.array(reps, dtype=int).reshape(-1, d)


def trigonometric_space(d: int, m: int) -> FunctionSpace:
    """Real trigonometric polynomials of total degree at most ``m``.

    Basis: ``1`` followed by ``cos(2 pi alpha.x), sin(2 pi alpha.x)`` for
    each representative frequency; period one in every coordinate.
    """
    reps = trigonometric_frequencies(d, m)
    freqs = np.zeros((1 + 2 * len(reps), d), dtype=int)
    is_sine = np.zeros(1 + 2 * len(reps), dtype=bool)
    freqs[1::2] = reps
    freqs[2::2] = reps
    is_sine[2::2] = True
    return FunctionSpace(dimension=d, kind="trigonometric", degree=m, frequencies=freqs, is_sine=is_sine)


def custom_space(evaluators: Sequence[Callable], dimension: int, domain=None, rng=None) -> FunctionSpace:
    """Wrap user-supplied basis functions.

    Each evaluator maps an ``(N, d)`` array to ``N`` values (a scalar is
    broadcast).  The first evaluator must be the constant one; this is
    spot-checked at 8 random points of ``domain`` (or of ``[-1, 1]^d``).
    """
    evaluators = tuple(evaluators)
    if not evaluators:
        raise ValueError("a function space needs at least one basis function")
    rng = np.random.default_rng(rng if rng is not None else 0)
    if domain is not None:
        pts = np.empty((0, dimension))
        for _ in range(1000):
            cand = domain.lo + (domain.hi - domain.lo) * rng.random((64, dimension))
            pts = np.concatenate([pts, cand[domain.contains(cand)]])
            if len(pts) >= 8:
                break
        pts = pts[:8]
    else:
        pts = rng.uniform(-1.0, 1.0, size=(8, dimension))
    first = np.broadcast_to(np.asarray(evaluators[0](pts), dtype=float), (len(pts),))
    if not np.allclose(first, 1.0, rtol=0, atol=1e-14):
        raise ValueError("the first basis function must be the constant 1")
    return FunctionSpace(dimension=dimension, kind="custom", evaluators=evaluators)


def vandermonde(space: FunctionSpace, nodes) -> np.ndarray:
    """The ``K x N`` matrix with entries ``phi_k(x_n)``.

    Raises ``ValueError`` naming the first node at which some basis
    function is not finite.
    """
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    if len(nodes) < 1:
        raise ValueError("need at least one node")
    V = space.evaluate(nodes)
    bad = ~np.isfinite(V)
    if np.any(bad):
        k, n = np.argwhere(bad)[0]
        raise ValueError(f"basis function {k} is not finite at node {n} ({nodes[n]})")
    return V


def space_from_descriptor(desc: dict) -> FunctionSpace:
    """Rebuild an algebraic or trigonometric space from :meth:`FunctionSpace.descriptor`."""
    kind = desc.get("kind")
    if kind == "algebraic":
        return algebraic_space(int(desc["dimension"]), int(desc["degree"]))
    if kind == "trigonometric":
        return trigonometric_space(int(desc["dimension"]), int(desc["degree"]))
    raise ValueError(f"cannot rebuild a function space of kind {kind!r}")
