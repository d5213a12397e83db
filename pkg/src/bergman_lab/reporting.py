"""Deterministic report serialization and trend diagnostics.

Reports must replay byte for byte: the JSON writer sorts keys, renders
every float at a fixed 17 significant digits (enough to round-trip an IEEE
double), and refuses anything it does not know how to make canonical.
CSV output uses '.' as the decimal mark regardless of locale. The trend
helpers (log-slope fits against -log(1-r) and two-sided bracket checks)
are shared by the acceptance suite and the CLI so every module grades
profiles in the same coordinates.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .errors import DomainError


def format_float(x: float) -> str:
    """Fixed 17-significant-digit rendering; total order, no locale."""
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return f"{x:.17g}"


def _canonical(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{format_float(obj.real)},{format_float(obj.imag)}]"
    if isinstance(obj, str):
        import json
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        for k in obj:
            if not isinstance(k, str):
                raise DomainError(f"non-string report key {k!r}")
        items = sorted(obj.items())
        body = ",".join(f"{_canonical(k)}:{_canonical(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        return "[" + ",".join(_canonical(v) for v in seq) + "]"
    if hasattr(obj, "to_json"):
        return _canonical(obj.to_json())
    raise DomainError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Canonical JSON text: sorted keys, 17g floats, '\\n' terminated."""
    return _canonical(obj) + "\n"


def config_hash(config) -> str:
    """Stable 16-hex digest of a config object for report provenance."""
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()[:16]


def write_csv(path, header, rows) -> None:
    """CSV with '.' decimal mark and fixed float formatting."""
    def cell(v):
        if isinstance(v, (float, np.floating)):
            return format_float(float(v)).strip('"')
        return str(v)

    lines = [",".join(header)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# trend diagnostics

def fit_log_slope(radii, values) -> float:
    """Least-squares slope of log(values) against -log(1 - r): zero means
    no boundary trend, positive means growth toward the boundary."""
    r = np.asarray(radii, dtype=float)
    v = np.asarray(values, dtype=float)
    keep = (v > 0) & (r < 1) & np.isfinite(v)
    if keep.sum() < 2:
        return 0.0
    return float(np.polyfit(-np.log(1 - r[keep]), np.log(v[keep]), 1)[0])


def bracket_check(radii, values, max_ratio: float,
                  slope_bound: float) -> dict:
    """Two-sided comparability grade for a positive profile: the max/min
    ratio must stay within max_ratio and the fitted log-slope within
    +-slope_bound."""
    v = np.asarray(values, dtype=float)
    if np.any(~np.isfinite(v)) or np.any(v <= 0):
        return {"passed": False, "reason": "nonpositive or non-finite entry",
                "max_min_ratio": float("inf"), "slope": float("nan")}
    ratio = float(v.max() / v.min())
    slope = fit_log_slope(radii, v)
    passed = ratio <= max_ratio and abs(slope) <= slope_bound
    return {"passed": bool(passed), "max_min_ratio": ratio, "slope": slope,
            "max_ratio_allowed": max_ratio, "slope_bound": slope_bound}
