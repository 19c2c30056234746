"""JSON descriptions of domains, weights and spaces.

Domain documents::

    {"type": "cube" | "ball", "center": [...], "radius": r}
    {"type": "box", "lo": [...], "hi": [...]}
    {"type": "union", "parts": [...], "disjoint": true}
    {"type": "intersection" | "difference", "parts": [a, b]}

Weight documents: ``{"type": "one"}`` or
``{"type": "radial_power", "power": p}`` (``"sqrt_norm"`` is a shorthand
for ``p = 0.5``).
"""

from __future__ import annotations

from functools import reduce

from .function_space import algebraic_space, trigonometric_space
from .geometry import (
    Domain,
    WeightFunction,
    constant_weight,
    difference,
    intersection,
    make_ball,
    make_box,
    make_cube,
    radial_power_weight,
    union,
)

__all__ = ["ConfigError", "domain_from_config", "weight_from_config", "space_from_config"]


class ConfigError(ValueError):
    """An invalid configuration document."""


def domain_from_config(doc: dict) -> Domain:
    try:
        kind = doc["type"]
        if kind == "cube":
            return make_cube(doc["center"], float(doc["radius"]))
        if kind == "ball":
            return make_ball(doc["center"], float(doc["radius"]))
        if kind == "box":
            return make_box(doc["lo"], doc["hi"])
        if kind in ("union", "intersection", "difference"):
            parts = [domain_from_config(p) for p in doc["parts"]]
            if len(parts) < 2:
                raise ConfigError(f"{kind} needs at least two parts")
            if kind == "union":
                disjoint = bool(doc.get("disjoint", False))
                return reduce(lambda a, b: union(a, b, disjoint=disjoint), parts)
            if len(parts) != 2:
                raise ConfigError(f"{kind} takes exactly two parts")
            op = intersection if kind == "intersection" else difference
            return op(*parts)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid domain description {doc!r}: {exc}") from exc
    raise ConfigError(f"unknown domain type {doc.get('type')!r}")


def weight_from_config(doc) -> WeightFunction:
    if doc is None:
        return constant_weight()
    if isinstance(doc, str):
        doc = {"type": doc}
    kind = doc.get("type")
    if kind == "one":
        return constant_weight()
    if kind == "sqrt_norm":
        return radial_power_weight(0.5)
    if kind == "radial_power":
        try:
            return radial_power_weight(float(doc["power"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid weight description {doc!r}") from exc
    raise ConfigError(f"unknown weight type {kind!r}")


def space_from_config(kind: str, d: int, m: int):
    if m < 0:
        raise ConfigError("degree must be nonnegative")
    if kind == "algebraic":
        return algebraic_space(d, m)
    if kind == "trigonometric":
        return trigonometric_space(d, m)
    raise ConfigError(f"unknown space {kind!r}")
