"""Batch front-end: parse an experiment config, dispatch, emit reports.

One process, batch-only. Every run validates its config against a JSON
schema before touching any numerics, embeds the config hash and package
version in the report, and writes canonical JSON (sorted keys, fixed float
digits) so identical configs replay byte for byte at any thread count.
Monte Carlo commands refuse configs without an explicit seed.

Exit codes: 0 success, 2 config or schema error, 3 accuracy failure with a
partial report written, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import __version__, carleson, geometry, holo, norms, quadrature, \
    reporting, volterra, weights
from .errors import AccuracyError, BergmanLabError, ConfigError, DomainError

_WEIGHT = {"type": "object"}
_FUNCTION = {"type": "object"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_SEED = {"type": "integer", "minimum": 0}

SCHEMAS = {
    "weight-info": {
        "type": "object",
        "properties": {"weight": _WEIGHT,
                       "n": {"type": "integer", "minimum": 1}},
        "required": ["weight"],
        "additionalProperties": False,
    },
    "norm": {
        "type": "object",
        "properties": {
            "function": _FUNCTION, "weight": _WEIGHT, "p": _POSITIVE,
            "formula": {"enum": list(norms.FORMULA_IDS)},
            "radius": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
            "aperture": {"type": "number", "exclusiveMinimum": 2},
            "seed": _SEED,
        },
        "required": ["function", "weight", "p", "seed"],
        "additionalProperties": False,
    },
    "equivalence-report": {
        "type": "object",
        "properties": {
            "weight": _WEIGHT, "n": {"type": "integer", "minimum": 1},
            "p": {"type": "number", "minimum": 2},
            "count": {"type": "integer", "minimum": 1, "maximum": 200},
            "max_degree": {"type": "integer", "minimum": 1, "maximum": 12},
            "seed": _SEED,
        },
        "required": ["weight", "n", "p", "seed"],
        "additionalProperties": False,
    },
    "carleson": {
        "type": "object",
        "properties": {
            "measure": {"type": "object"}, "weight": _WEIGHT,
            "p": _POSITIVE, "q": _POSITIVE,
            "sampling": {
                "type": "object",
                "properties": {
                    "levels": {"type": "integer", "minimum": 1, "maximum": 30},
                    "directions": {"type": "integer", "minimum": 1},
                    "seed": _SEED,
                },
                "required": ["seed"],
                "additionalProperties": False,
            },
            "embedding": {"type": "boolean"},
        },
        "required": ["measure", "weight", "p", "q", "sampling"],
        "additionalProperties": False,
    },
    "volterra-verdict": {
        "type": "object",
        "properties": {
            "symbol": _FUNCTION, "weight": _WEIGHT,
            "p": _POSITIVE, "q": _POSITIVE,
            "levels": {"type": "integer", "minimum": 2, "maximum": 20},
            "probe_levels": {"type": "integer", "minimum": 2, "maximum": 12},
            "seed": _SEED,
        },
        "required": ["symbol", "weight", "p", "q", "seed"],
        "additionalProperties": False,
    },
    "geometry-check": {
        "type": "object",
        "properties": {
            "n": {"type": "integer", "minimum": 1, "maximum": 8},
            "samples": {"type": "integer", "minimum": 100},
            "cases": {"type": "integer", "minimum": 10},
            "seed": _SEED,
        },
        "required": ["n", "samples", "seed"],
        "additionalProperties": False,
    },
}


# ---------------------------------------------------------------------------
# command implementations; each returns (report dict, csv or None)

def _run_weight_info(cfg, threads):
    w = weights.RadialWeight.from_json(cfg["weight"])
    n = cfg.get("n", 1)
    cls = weights.classify(w)
    grid = [float(1 - 2.0 ** -k) for k in range(0, 16, 3)]
    report = {
        "weight": w.to_json(),
        "classification": {
            "doubling_constant_estimate": cls.doubling_constant,
            "is_doubling": cls.is_doubling,
            "in_regular": cls.in_regular,
            "in_rapidly_increasing": cls.in_rapidly_increasing,
            "tail_exponent": cls.tail_exponent,
        },
        "omega_hat": [{"r": r, "value": float(weights.omega_hat(w, r))}
                      for r in grid],
        "ball_mass": float(weights.weighted_ball_volume(w, n)),
        "n": n,
    }
    return report, None


def _run_norm(cfg, threads):
    f = holo.function_from_json(cfg["function"])
    w = weights.RadialWeight.from_json(cfg["weight"])
    p = float(cfg["p"])
    formula = cfg.get("formula", "bergman_p")
    spec = quadrature.DEFAULT_SPEC.with_seed(int(cfg["seed"]))
    if formula == "bergman_p":
        rep = norms.bergman_norm_p(f, w, p, spec)
    elif formula == "hardy_p":
        r = float(cfg.get("radius", 0.5))
        val = norms.hardy_means(f, p, r, spec)
        rep = norms.NormReport(val, "hardy_p", 0.0, reporting.config_hash(cfg))
    elif formula == "lp_identity":
        rep = norms.lp_identity_rhs(f, w, p, spec)
    elif formula in ("lp_equiv_star", "lp_equiv_hat"):
        variant = "star" if formula.endswith("star") else "hat"
        rep = norms.lp_equiv(f, w, p, variant, spec)
    elif formula == "area_p":
        rep = norms.area_norm(f, w, p, float(cfg.get("aperture", 4.0)), spec)
    elif formula == "maxfun_p":
        rep = norms.maxfun_norm(f, w, p, float(cfg.get("aperture", 4.0)), spec)
    else:
        raise ConfigError(f"unknown formula {formula!r}")
    return {"norm": rep.to_json(), "p": p, "formula": formula}, None


def _equivalence_row(args):
    f, w, p, spec = args
    lhs = norms.bergman_norm_p(
        norms.subtract_value_at_zero(f), w, p, spec).value
    rhs = norms.lp_identity_rhs(f, w, p, spec).value
    return {"lhs": lhs, "rhs": rhs,
            "ratio": rhs / lhs if lhs > 0 else float("inf"),
            "degree": f.degree}


def _run_equivalence(cfg, threads):
    w = weights.RadialWeight.from_json(cfg["weight"])
    n, p = int(cfg["n"]), float(cfg["p"])
    count = int(cfg.get("count", 10))
    max_deg = int(cfg.get("max_degree", 6))
    seed = int(cfg["seed"])
    spec = quadrature.DEFAULT_SPEC.with_seed(seed)
    rng = np.random.default_rng(seed)
    funs = [holo.random_polynomial(n, max_deg, rng) for _ in range(count)]
    tasks = [(f, w, p, spec) for f in funs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(_equivalence_row, tasks))
    worst = max(abs(r["ratio"] - 1) for r in rows)
    report = {"rows": rows, "worst_rel_err": worst, "count": count,
              "p": p, "n": n, "weight": w.to_json()}
    csv = ("equivalence.csv", ["index", "degree", "lhs", "rhs", "ratio"],
           [[i, r["degree"], r["lhs"], r["rhs"], r["ratio"]]
            for i, r in enumerate(rows)])
    return report, csv


def _run_carleson(cfg, threads):
    mu = carleson.Measure.from_json(cfg["measure"])
    w = weights.RadialWeight.from_json(cfg["weight"])
    samp = cfg["sampling"]
    rep = carleson.carleson_quotient(
        mu, w, float(cfg["p"]), float(cfg["q"]),
        levels=int(samp.get("levels", 14)),
        directions=samp.get("directions"),
        seed=int(samp["seed"]),
        embedding=bool(cfg.get("embedding", False)))
    csv = ("carleson-profile.csv", ["level", "radius", "max_quotient"],
           [[row["level"], row["radius"], row["max_quotient"]]
            for row in rep.radial_profile])
    return rep.to_json(), csv


def _run_volterra(cfg, threads):
    g = holo.function_from_json(cfg["symbol"])
    w = weights.RadialWeight.from_json(cfg["weight"])
    rep = volterra.tg_verdict(
        g, w, float(cfg["p"]), float(cfg["q"]),
        levels=int(cfg.get("levels", 10)),
        probe_levels=int(cfg.get("probe_levels", 6)),
        seed=int(cfg["seed"]))
    csv = ("volterra-profile.csv", ["r", "m_infty", "bound", "ratio"],
           [[row["r"], row["m_infty"], row["bound"], row["ratio"]]
            for row in rep.m_infty_profile])
    return rep.to_json(), csv


def _run_geometry(cfg, threads):
    n, samples, seed = int(cfg["n"]), int(cfg["samples"]), int(cfg["seed"])
    cases = int(cfg.get("cases", max(10, samples // 100)))
    jobs = [
        ("tube_block", lambda: geometry.tube_block_comparison_check(
            n, cases=cases, samples=samples // cases, seed=seed)),
        ("admissible_equivariance",
         lambda: geometry.admissible_equivariance_check(
             n, samples=samples, seed=seed)),
        ("tent_in_block", lambda: geometry.tent_in_block_check(
            n, cases=cases, samples=samples // cases, seed=seed)),
    ]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [(name, pool.submit(job)) for name, job in jobs]
        results = {name: fut.result() for name, fut in futures}
    tb = results["tube_block"]
    total_bad = (int(results["admissible_equivariance"]["counterexamples"])
                 + int(not tb["tube_in_block_ok"])
                 + int(not tb["block_in_tube_ok"])
                 + int(not results["tent_in_block"]["ok"]))
    return {"checks": results, "total_violations": total_bad, "n": n}, None


_RUNNERS = {
    "weight-info": _run_weight_info,
    "norm": _run_norm,
    "equivalence-report": _run_equivalence,
    "carleson": _run_carleson,
    "volterra-verdict": _run_volterra,
    "geometry-check": _run_geometry,
}


# ---------------------------------------------------------------------------
# driver

def _emit(out_dir, command, payload, csv):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{command}.json")
    with open(path, "w", newline="") as fh:
        fh.write(reporting.canonical_json(payload))
    written = [path]
    if csv is not None:
        name, header, rows = csv
        cpath = os.path.join(out_dir, name)
        reporting.write_csv(cpath, header, rows)
        written.append(cpath)
    return written


def run(command: str, config: dict, out_dir: str = ".",
        threads: int = 1) -> int:
    """Validate, dispatch, and write reports; returns the exit status."""
    try:
        jsonschema.validate(config, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        print(f"config error: {exc.message}", file=sys.stderr)
        return 2

    envelope = {"command": command, "config_hash": reporting.config_hash(config),
                "version": __version__, "status": "ok"}
    try:
        report, csv = _RUNNERS[command](config, threads)
    except AccuracyError as exc:
        envelope["status"] = "accuracy-error"
        envelope["detail"] = str(exc)
        envelope["report"] = {"estimate": exc.estimate,
                              "achieved_tol": exc.achieved_tol}
        _emit(out_dir, command, envelope, None)
        print(f"accuracy failure: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BergmanLabError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1

    envelope["report"] = report
    written = _emit(out_dir, command, envelope, csv)
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bergman-lab",
        description="weighted Bergman space numerical laboratory")
    parser.add_argument("command", choices=sorted(_RUNNERS))
    parser.add_argument("--config", required=True,
                        help="experiment config JSON file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: "
                             "$BERGMAN_LAB_THREADS or 1)")
    args = parser.parse_args(argv)

    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("BERGMAN_LAB_THREADS", "1") or "1")
    threads = max(1, threads)

    try:
        with open(args.config) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if not isinstance(config, dict):
        print("config error: top level must be an object", file=sys.stderr)
        return 2
    return run(args.command, config, args.out, threads)


if __name__ == "__main__":
    sys.exit(main())
