"""Gauss-Legendre type reference rules and the accuracy benchmark.

On boxes the reference is the tensor Gauss-Legendre rule.  On balls it is
a product rule in polar (d = 2) or spherical (d = 3) coordinates:
Gauss-Legendre in the radius with the ``rho^(d-1)`` Jacobian (and the
radial weight folded in), the trapezoidal rule in the azimuth and
Gauss-Legendre in ``cos(theta)``.  The mapped rule is not exact for
polynomials, and it is only checked for self-consistency.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from .cubature import Cubature, evaluate
from .function_space import algebraic_space
from .geometry import Domain, WeightFunction
from .moments import qmc_moments
from .pipeline import construct_positive_cf

__all__ = [
    "gauss_legendre_reference",
    "gauss_legendre_budget",
    "TEST_FUNCTIONS",
    "reference_integral",
    "BenchmarkRow",
    "BenchmarkReport",
    "run_benchmark",
]

log = logging.getLogger(__name__)


def gauss_legendre_reference(domain: Domain, n: int, weight: Optional[WeightFunction] = None) -> Cubature:
    """Product Gauss-Legendre rule with ``n`` points per axis.

    ``weight`` is folded into the weights; on boxes only ``omega == 1`` is
    supported, on balls any radial power centred at the ball's centre.
    """
    if n < 1:
        raise ValueError("need at least one point per axis")
    p = 0.0 if weight is None else weight.radial_power
    t, tw = leggauss(n)
    if domain.kind in ("cube", "box"):
        if p != 0:
            raise ValueError("box reference rules support only the constant weight")
        half = (domain.hi - domain.lo) / 2
        mid = (domain.hi + domain.lo) / 2
        d = domain.dimension
        grids = np.meshgrid(*[mid[j] + half[j] * t for j in range(d)], indexing="ij")
        wgrids = np.meshgrid(*[half[j] * tw for j in range(d)], indexing="ij")
        nodes = np.stack([g.reshape(-1) for g in grids], axis=1)
        weights = np.prod([g.reshape(-1) for g in wgrids], axis=0)
        return Cubature(nodes, weights, metadata={"reference": "gauss-legendre", "per_axis": n})
    if domain.kind != "ball":
        raise ValueError(f"no Gauss-Legendre reference for domain kind {domain.kind!r}")
    if p is None:
        raise ValueError("ball reference rules need a radial weight")
    d = domain.dimension
    R = domain.params["radius"]
    c = domain.params["center"]
    if p != 0 and np.any(c != 0):
        raise ValueError("radial weights need a ball centred at the origin")
    rho = R * (t + 1) / 2
    rw = R / 2 * tw * rho ** (d - 1 + p)
    if d == 2:
        n_phi = 2 * n
        phi = 2 * np.pi * np.arange(n_phi) / n_phi
        pw = np.full(n_phi, 2 * np.pi / n_phi)
        Rg, Pg = np.meshgrid(rho, phi, indexing="ij")
        W = np.outer(rw, pw)
        nodes = np.stack([Rg * np.cos(Pg), Rg * np.sin(Pg)], axis=-1).reshape(-1, 2)
    elif d == 3:
        n_phi = 2 * n
        phi = 2 * np.pi * np.arange(n_phi) / n_phi
        pw = np.full(n_phi, 2 * np.pi / n_phi)
        ct, cw = t, tw  # Gauss-Legendre in cos(theta)
        st = np.sqrt(1 - ct**2)
        Rg, Cg, Pg = np.meshgrid(rho, np.arange(n), phi, indexing="ij")
        cos_t, sin_t = ct[Cg], st[Cg]
        nodes = np.stack(
            [Rg * sin_t * np.cos(Pg), Rg * sin_t * np.sin(Pg), Rg * cos_t], axis=-1
        ).reshape(-1, 3)
        W = rw[:, None, None] * cw[None, :, None] * pw[None, None, :]
    else:
        raise ValueError("ball reference rules are implemented for d = 2 and d = 3")
    return Cubature(nodes + c, W.reshape(-1), metadata={"reference": "gauss-legendre-polar", "per_axis": n})


def gauss_legendre_budget(domain: Domain, N: int) -> int:
    """Points per axis whose reference rule uses about ``N`` nodes (at least one)."""
    d = domain.dimension
    if domain.kind == "ball":
        # 2 n^2 nodes in 2-D, 2 n^3 in 3-D
        return max(1, round((N / 2) ** (1 / d)))
    return max(1, round(N ** (1 / d)))


def _product(x):
    return np.prod(1.0 / (1.0 + x**2), axis=1)


def _radial_sin(x):
    return 1.0 / (1.0 + np.sum(x**2, axis=1)) + np.sin(x[:, 0])


TEST_FUNCTIONS: dict[str, Callable] = {"product": _product, "radial_sin": _radial_sin}


def reference_integral(name: str, domain: Domain, weight: WeightFunction, qmc_samples: int = 2**22):
    """Reference value of the test integral and how it was obtained.

    Closed forms: the product function on a box with ``omega == 1``
    (product of arctangent differences), and the radial function on a
    centred ball with a radial weight (one-dimensional adaptive quadrature;
    the odd ``sin(x_1)`` part vanishes).  Anything else falls back to QMC.
    """
    p = weight.radial_power
    if name == "product" and domain.kind in ("cube", "box") and p == 0:
        return float(np.prod(np.arctan(domain.hi) - np.arctan(domain.lo))), "analytic"
    if name == "radial_sin" and domain.kind == "ball" and p is not None and np.all(domain.params["center"] == 0):
        d, R = domain.dimension, domain.params["radius"]
        sphere = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
        val, _ = quad(lambda s: s ** (d - 1 + p) / (1 + s * s), 0.0, R, epsabs=1e-14, epsrel=1e-13)
        return sphere * val, "radial-quadrature"
    f = TEST_FUNCTIONS[name]
    from .function_space import custom_space

    space = custom_space([lambda x: np.ones(len(x)), f], domain.dimension, domain)
    mv = qmc_moments(space, domain, weight, qmc_samples)
    return float(mv.values[1]), f"qmc(M={qmc_samples}, err~{mv.errors[1]:.1e})"


@dataclass
class BenchmarkRow:
    m: int
    K: int
    N: Optional[int]
    error: Optional[float]
    gl_nodes: Optional[int]
    gl_error: Optional[float]
    status: str = "ok"


@dataclass
class BenchmarkReport:
    function: str
    reference: float
    reference_provenance: str
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["m,K,N,error,gl_nodes,gl_error,status"]
        for r in self.rows:
            cells = [r.m, r.K, r.N, r.error, r.gl_nodes, r.gl_error, r.status]
            lines.append(",".join("" if c is None else (repr(c) if isinstance(c, float) else str(c)) for c in cells))
        return "\n".join(lines) + "\n"


def run_benchmark(
    domain: Domain,
    weight: WeightFunction,
    degrees,
    function: Optional[str] = None,
    sequence: Optional[str] = None,
    moment_method: str = "auto",
    qmc_samples: int = 2**20,
    reference_samples: int = 2**22,
) -> BenchmarkReport:
    """Errors of the constructed rules and of matched-size reference rules.

    ``function`` defaults to ``"product"`` on boxes and ``"radial_sin"``
    elsewhere.  A failed construction marks its row and the run continues.
    """
    if function is None:
        function = "product" if domain.kind in ("cube", "box") else "radial_sin"
    f = TEST_FUNCTIONS[function]
    ref, prov = reference_integral(function, domain, weight, reference_samples)
    report = BenchmarkReport(function=function, reference=ref, reference_provenance=prov)
    for m in degrees:
        space = algebraic_space(domain.dimension, m)
        try:
            c = construct_positive_cf(
                domain, weight, space, sequence=sequence, moment_method=moment_method, qmc_samples=qmc_samples
            )
        except Exception as exc:  # noqa: BLE001 - row is marked and the run goes on
            log.warning("construction failed for m=%d: %s", m, exc)
            report.rows.append(BenchmarkRow(m, space.K, None, None, None, None, status=f"failed: {type(exc).__name__}"))
            continue
        err = abs(evaluate(c.rule, f) - ref)
        gl_nodes = gl_err = None
        try:
            gl = gauss_legendre_reference(domain, gauss_legendre_budget(domain, c.rule.N), weight)
            gl_nodes, gl_err = gl.N, abs(evaluate(gl, f) - ref)
        except ValueError:
            pass
        report.rows.append(BenchmarkRow(m, space.K, c.rule.N, err, gl_nodes, gl_err))
    return report
