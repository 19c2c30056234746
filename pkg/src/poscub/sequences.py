"""Equidistributed point sequences restricted to a domain.

Two ambient generators are available:

* the bisection grid: in 1-D the endpoints ``-R, R`` followed, level by
  level, by the midpoints of all neighbouring pairs; in d dimensions the
  tensor grid of that sequence, emitted one refinement level at a time
  (lexicographic order inside a level);
* Halton points (radical inverses in the first d prime bases).

Points falling outside the domain are discarded, which keeps the sequence
equidistributed in the domain as long as its boundary has measure zero.
"""

from __future__ import annotations

import numpy as np

from .geometry import Domain

__all__ = [
    "PRIMES",
    "RejectionBudgetExceeded",
    "bisection_1d",
    "bisection_level",
    "bisection_grid",
    "radical_inverse",
    "halton",
    "halton_points",
    "PointSequence",
    "first_n_in_domain",
    "default_kind",
]

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)

DEFAULT_REJECTION_CAP = 10**7


class RejectionBudgetExceeded(RuntimeError):
    """Too few in-domain points among the allowed number of ambient draws."""


def bisection_1d(R: float, n: int) -> float:
    """n-th element (1-based) of the bisection sequence on ``[-R, R]``.

    >>> [bisection_1d(1.0, n) for n in range(1, 6)]
    [-1.0, 1.0, 0.0, -0.5, 0.5]
    """
    if not R > 0:
        raise ValueError("R must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        return -R if n == 1 else R
    # Level L >= 1 holds 2**(L-1) points and starts at index 2**(L-1) + 2.
    j = n - 3
    level = (j + 1).bit_length()
    offset = j - (2 ** (level - 1) - 1)
    h = 2.0 * R / 2**level
    return -R + (2 * offset + 1) * h


def bisection_level(lo, hi, level: int) -> np.ndarray:
    """All tensor-grid points that first appear at refinement ``level``.

    Level 0 is the ``2**d`` corners; level L >= 1 is every point of the
    grid with ``2**L + 1`` nodes per axis that is not on the level L-1
    grid.  Rows are in lexicographic order.
    """
    lo = np.asarray(lo, dtype=float).reshape(-1)
    hi = np.asarray(hi, dtype=float).reshape(-1)
    d = lo.size
    n_axis = 2**level + 1
    t = np.linspace(0.0, 1.0, n_axis)
    idx = np.stack(np.meshgrid(*([np.arange(n_axis)] * d), indexing="ij"), axis=-1).reshape(-1, d)
    if level == 0:
        keep = np.ones(len(idx), dtype=bool)
    else:
        # Points of the previous level have all indices even.
        keep = np.any(idx % 2 == 1, axis=1)
    return lo + (hi - lo) * t[idx[keep]]


def bisection_grid(R, d: int, n: int) -> np.ndarray:
    """n-th point (1-based) of the d-dimensional bisection grid on ``[-R, R]^d``.

    ``R`` may be a scalar or a per-axis array of half-widths.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    R = np.broadcast_to(np.asarray(R, dtype=float), (d,))
    if np.any(R <= 0):
        raise ValueError("R must be positive")
    level, start = 0, 0
    while True:
        count = (2**level + 1) ** d - ((2 ** (level - 1) + 1) ** d if level > 0 else 0)
        if n <= start + count:
            return bisection_level(-R, R, level)[n - 1 - start]
        start += count
        level += 1


def radical_inverse(n, base: int) -> np.ndarray:
    """Van der Corput radical inverse of the integers ``n`` in ``base``."""
    n = np.asarray(n, dtype=np.int64).copy()
    result = np.zeros(n.shape, dtype=float)
    f = 1.0 / base
    while np.any(n > 0):
        result += f * (n % base)
        n //= base
        f /= base
    return result


def halton(d: int, n: int) -> np.ndarray:
    """n-th Halton point (1-based) in the unit cube; coordinates lie in (0, 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return halton_points(d, n, 1)[0]


def halton_points(d: int, start: int, count: int) -> np.ndarray:
    """Halton points with 1-based indices ``start, ..., start + count - 1``."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > len(PRIMES):
        raise ValueError(f"Halton points are available for d <= {len(PRIMES)}, got {d}")
    idx = np.arange(start, start + count, dtype=np.int64)
    return np.stack([radical_inverse(idx, p) for p in PRIMES[:d]], axis=1)


def default_kind(d: int) -> str:
    """Bisection grid in one and two dimensions, Halton points otherwise."""
    return "bisection" if d <= 2 else "halton"


class PointSequence:
    """Deterministic cursor over the in-domain points of an ambient sequence.

    The ambient sequence lives in the domain's bounding box.  Accepted
    points are cached, so asking for more points extends earlier answers
    (prefix stability).  A cursor is meant to be used by one thread.
    """

    def __init__(self, domain: Domain, kind: str | None = None, rejection_cap: int = DEFAULT_REJECTION_CAP):
        kind = kind or default_kind(domain.dimension)
        if kind not in ("bisection", "halton"):
            raise ValueError(f"unknown sequence kind {kind!r}")
        self.domain = domain
        self.kind = kind
        self.rejection_cap = int(rejection_cap)
        self._accepted = np.empty((0, domain.dimension))
        self._drawn = 0
        self._level = 0

    @property
    def ambient_draws(self) -> int:
        return self._drawn

    def _next_block(self) -> np.ndarray:
        d = self.domain.dimension
        if self.kind == "bisection":
            block = bisection_level(self.domain.lo, self.domain.hi, self._level)
            self._level += 1
        else:
            size = max(1024, self._drawn)
            u = halton_points(d, self._drawn + 1, size)
            block = self.domain.lo + (self.domain.hi - self.domain.lo) * u
        return block

    def first(self, N: int) -> np.ndarray:
        """The first ``N`` in-domain points, as an ``(N, d)`` array."""
        if N < 1:
            raise ValueError("N must be >= 1")
        while len(self._accepted) < N:
            if self._drawn >= self.rejection_cap:
                raise RejectionBudgetExceeded(
                    f"only {len(self._accepted)} of {N} requested points found in the domain "
                    f"after {self._drawn} ambient draws"
                )
            block = self._next_block()
            room = self.rejection_cap - self._drawn
            if len(block) > room:
                block = block[:room]
            self._drawn += len(block)
            keep = self.domain.contains(block)
            self._accepted = np.concatenate([self._accepted, block[keep]])
        return self._accepted[:N].copy()


def first_n_in_domain(seq: PointSequence, N: int) -> np.ndarray:
    """The first ``N`` sequence elements that lie in the sequence's domain."""
    return seq.first(N)
