"""Command line front end: ``poscub construct | verify | benchmark``.

Exit codes: 0 success, 1 verification failure, 2 construction failure,
3 configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import cubature as cub
from .config import ConfigError, domain_from_config, space_from_config, weight_from_config
from .ls_cubature import LsConfig, NodeCapExceeded
from .moments import DEFAULT_QMC_SAMPLES, DegenerateDomainError, compute_moments
from .pipeline import construct_positive_cf
from .reference import TEST_FUNCTIONS, run_benchmark
from .sequences import DEFAULT_REJECTION_CAP, RejectionBudgetExceeded
from .steinitz import ReductionConfig, ResidualDriftError

EXIT_OK, EXIT_VERIFY, EXIT_CONSTRUCT, EXIT_CONFIG = 0, 1, 2, 3

_DEFAULTS = {
    "space": "algebraic",
    "degree": 2,
    "weight": None,
    "sequence": None,
    "moments": "auto",
    "qmc_samples": DEFAULT_QMC_SAMPLES,
    "rejection_cap": DEFAULT_REJECTION_CAP,
}


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def _merge_config(args, base=None) -> dict:
    """Defaults < rule metadata < --config file < --domain-config < flags."""
    cfg = dict(_DEFAULTS)
    if base:
        cfg.update(base)
    if getattr(args, "config", None):
        cfg.update(_load_json(args.config))
    if getattr(args, "domain_config", None):
        doc = _load_json(args.domain_config)
        if "domain" in doc:
            cfg.update(doc)
        else:
            cfg["domain"] = doc
    for key in ("space", "degree", "sequence", "moments", "qmc_samples", "rejection_cap", "n_cap"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "weight", None) is not None:
        cfg["weight"] = {"type": args.weight}
    if getattr(args, "weight_power", None) is not None:
        cfg["weight"] = {"type": "radial_power", "power": args.weight_power}
    if getattr(args, "no_refine", False):
        cfg["refine_final"] = False
    if "domain" not in cfg:
        raise ConfigError("no domain given (use --domain-config or a 'domain' entry in --config)")
    return cfg


def _objects(cfg):
    domain = domain_from_config(cfg["domain"])
    weight = weight_from_config(cfg.get("weight"))
    degree = cfg["degree"]
    space = space_from_config(cfg["space"], domain.dimension, int(degree)) if not isinstance(degree, str) else None
    return domain, weight, space


def _add_common(p, with_degree=True):
    p.add_argument("--config", metavar="FILE", help="JSON configuration document")
    p.add_argument("--domain-config", metavar="FILE", help="JSON domain description")
    p.add_argument("--space", choices=["algebraic", "trigonometric"])
    if with_degree:
        p.add_argument("--degree", type=int)
    p.add_argument("--weight", choices=["one", "sqrt_norm"])
    p.add_argument("--weight-power", type=float, help="use omega(x) = ||x||_2 ** P")
    p.add_argument("--sequence", choices=["bisection", "halton"])
    p.add_argument("--moments", choices=["auto", "analytic", "qmc"])
    p.add_argument("--qmc-samples", type=int)
    p.add_argument(
        "--seed-cap", dest="rejection_cap", type=int, help="cap on ambient sequence draws when filtering to the domain"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poscub", description="Positive interpolatory cubature rules.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log the construction trace")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="construct a rule")
    _add_common(p)
    p.add_argument("--n-cap", type=int, help="largest N tried by the LS doubling loop")
    p.add_argument("--no-refine", action="store_true", help="skip the final least-squares refit")
    p.add_argument("--out", metavar="FILE", help="write the rule as JSON")
    p.add_argument("--csv", metavar="FILE", help="write the rule as CSV")

    p = sub.add_parser("verify", help="check a rule file")
    p.add_argument("rule", help="rule JSON file")
    _add_common(p)

    p = sub.add_parser("benchmark", help="accuracy versus degree, against Gauss-Legendre references")
    _add_common(p, with_degree=False)
    p.add_argument("--degree", type=str, default="0:8", help="degree range lo:hi (inclusive) or a single degree")
    p.add_argument("--function", choices=sorted(TEST_FUNCTIONS))
    p.add_argument("--csv", metavar="FILE", help="write the report as CSV (default: stdout)")
    return parser


def cmd_construct(args) -> int:
    cfg = _merge_config(args)
    domain, weight, space = _objects(cfg)
    ls_config = LsConfig(
        rank_tol=float(cfg.get("rank_tol", 1e-10)),
        neg_weight_tol=float(cfg.get("neg_weight_tol", 1e-12)),
        n_cap=cfg.get("n_cap"),
        growth_factor=int(cfg.get("growth_factor", 2)),
    )
    red_config = ReductionConfig(
        zero_tol=float(cfg.get("zero_tol", 1e-14)),
        refine_final=bool(cfg.get("refine_final", True)),
        max_residual_drift=float(cfg.get("max_residual_drift", 1e-8)),
    )
    try:
        c = construct_positive_cf(
            domain,
            weight,
            space,
            sequence=cfg.get("sequence"),
            moment_method=cfg["moments"],
            qmc_samples=int(cfg["qmc_samples"]),
            ls_config=ls_config,
            reduction_config=red_config,
            rejection_cap=int(cfg["rejection_cap"]),
        )
    except (NodeCapExceeded, ResidualDriftError, RejectionBudgetExceeded, DegenerateDomainError) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT
    except ValueError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT

    rule = c.rule
    print(f"space: {space.kind} degree {space.degree}, K = {space.K}")
    print(f"moments: {c.moments.provenance}")
    for h in c.ls.history:
        wmin = "n/a (rank deficient)" if h["w_min"] is None else f"{h['w_min']:.3e}"
        print(f"  LS  N = {h['N']:>7d}  rank = {h['rank']:>4d}  min weight = {wmin}")
    print(f"  Steinitz: {len(c.reduction.steps)} steps, {c.reduction.pruned_zero} zero weights pruned")
    print(f"result: N = {rule.N}, residual = {rule.metadata['residual']:.3e}")
    for x, w in zip(rule.nodes, rule.weights):
        print("  " + "  ".join(f"{v: .6f}" for v in x) + f"   w = {w:.6e}")
    if args.out:
        cub.save(rule, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(cub.to_csv(rule))
    report = verify_rule(cub.to_document(rule), domain, weight, space, c.moments)
    return EXIT_OK if all(ok for _, ok, _ in report) else EXIT_VERIFY


def verify_rule(doc: dict, domain, weight, space, moments) -> list:
    """Check a rule document; returns ``(property, passed, detail)`` triples.

    Weights are read without the :class:`~poscub.cubature.Cubature`
    invariants so that a bad rule yields FAIL lines instead of an exception.
    """
    if "weights" not in doc or "nodes" not in doc:
        raise cub.SchemaError("rule document needs 'nodes' and 'weights'")
    try:
        nodes = np.atleast_2d(np.array(doc["nodes"], dtype=float))
        weights = np.array(doc["weights"], dtype=float).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise cub.SchemaError(f"malformed nodes or weights: {exc}") from exc
    if nodes.shape != (len(weights), domain.dimension):
        raise cub.SchemaError(f"expected {len(weights)} nodes of dimension {domain.dimension}, got {nodes.shape}")
    out = []
    out.append(("positivity", bool(np.all(weights > 0)), f"min weight {weights.min():.3e}"))
    inside = domain.contains(nodes)
    out.append(("interiority", bool(np.all(inside)), f"{int(np.count_nonzero(~inside))} nodes outside"))
    out.append(("interpolatory", len(weights) <= space.K, f"N = {len(weights)}, K = {space.K}"))
    try:
        cub.Cubature(nodes=nodes, weights=np.abs(weights) + (weights == 0))
        distinct = True
    except cub.InvariantError:
        distinct = False
    out.append(("distinct nodes", distinct, ""))
    m = moments.values
    residual = float(np.max(np.abs(space.evaluate(nodes) @ weights - m)))
    tol = 1e-8 * (1 + float(np.max(np.abs(m)))) + 3 * moments.error_estimate
    out.append(("exactness", residual <= tol, f"residual {residual:.3e}, tolerance {tol:.3e}"))
    return out


def cmd_verify(args) -> int:
    try:
        doc = _load_json(args.rule)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(doc, dict):
        print("schema error: rule document must be a JSON object", file=sys.stderr)
        return EXIT_CONFIG
    base = {}
    if "domain" in doc:
        base["domain"] = doc["domain"]
    if "weight" in doc:
        base["weight"] = doc["weight"]
    if isinstance(doc.get("space"), dict):
        base["space"] = doc["space"].get("kind", "algebraic")
        base["degree"] = doc["space"].get("degree", 0)
    if doc.get("moment_provenance") == "qmc":
        base["moments"] = "qmc"
        base["qmc_samples"] = doc.get("qmc_samples", DEFAULT_QMC_SAMPLES)
    cfg = _merge_config(args, base)
    domain, weight, space = _objects(cfg)
    moments = compute_moments(space, domain, weight, cfg["moments"], int(cfg["qmc_samples"]))
    try:
        report = verify_rule(doc, domain, weight, space, moments)
    except cub.SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for name, ok, detail in report:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
    return EXIT_OK if all(ok for _, ok, _ in report) else EXIT_VERIFY


def _degrees(text: str):
    if ":" in text:
        lo, hi = text.split(":")
        return range(int(lo), int(hi) + 1)
    return [int(text)]


def cmd_benchmark(args) -> int:
    cfg = _merge_config(args, {"degree": 0})
    domain = domain_from_config(cfg["domain"])
    weight = weight_from_config(cfg.get("weight"))
    try:
        degrees = _degrees(args.degree)
    except ValueError as exc:
        raise ConfigError(f"bad degree range {args.degree!r}") from exc
    report = run_benchmark(
        domain,
        weight,
        degrees,
        function=args.function,
        sequence=cfg.get("sequence"),
        moment_method=cfg["moments"],
        qmc_samples=int(cfg["qmc_samples"]),
    )
    text = report.to_csv()
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"# reference {report.reference!r} ({report.reference_provenance}), function {report.function}", file=sys.stderr)
    return EXIT_OK if all(r.status == "ok" for r in report.rows) else EXIT_CONSTRUCT


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    handler = {"construct": cmd_construct, "verify": cmd_verify, "benchmark": cmd_benchmark}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
