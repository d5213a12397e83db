"""Radial weights on the unit ball and their derived quantities.

A weight here is a positive integrable radial function omega on [0, 1).
Three families are supported:

* power:    omega(r) = c (1 - r^2)^alpha, alpha > -1, with optional
            normalization c chosen so the weighted volume of the ball in
            C^n is 1 (c = Gamma(n+alpha+1) / (Gamma(n+1) Gamma(alpha+1))).
* logpower: omega(r) = [ (1 - r) (log(e/(1-r)))^alpha ]^(-1), alpha > 1.
            Integrable but with essentially all of its mass invisible to
            pointwise rules: the tail beyond the largest float64 radius
            still holds ~1e-3 of the total. All tail integrals therefore
            go through the closed form
            Int_r^1 omega = L^(1-alpha) / (alpha - 1), L = 1 - log(1-r).
* tabulated: monotone (PCHIP) interpolation of sampled values on a grid
            that must start at 0; the weight is taken to vanish beyond the
            last node, so tail integrals truncate there. No extrapolation.

Derived quantities:

* tail mass omega_hat(r) = Int_r^1 omega(t) dt, exact per family (power
  uses the regularized incomplete beta function).
* the log-kernel transform omega_nstar(r) = Int_r^1 t^(2n-1) log(t/r)
  omega(t) dt, defined on (0, 1] (it diverges at r = 0); n = 1 recovers
  the classical star weight.
* block mass: the weighted volume of a Carleson block splits exactly into
  a radial factor times the cap measure, since blocks are product sets in
  polar coordinates.
* classify: dyadic-grid diagnostics for the doubling property, the regular
  and rapidly-increasing subclasses, and a tail exponent fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import betainc, beta as beta_fn, gammaln

from . import geometry
from .errors import DomainError
from .quadrature import RadialRule, integrate_radial, radial_weighted

FAMILIES = ("power", "logpower", "tabulated")

# largest float64 below 1; weight evaluations clamp here so that panel
# nodes mapped into [a, 1) can never round onto the excluded endpoint
ONE_MINUS = float(np.nextafter(1.0, 0.0))


class RadialWeight:
    """A radial weight with exact tail mass per family. Instances are
    immutable by convention; value caches are internal."""

    def __init__(self, family: str, params: dict, scale: float = 1.0,
                 label: str | None = None):
        if family not in FAMILIES:
            raise DomainError(f"unknown weight family {family!r}")
        self.family = family
        self.params = dict(params)
        self.scale = float(scale)
        if self.scale <= 0:
            raise DomainError("weight scale must be positive")
        self._label = label
        self._moments: dict[int, float] = {}
        self._pchip = None
        self._pchip_anti = None
        self._validate()

    # -- constructors -------------------------------------------------------

    @classmethod
    def power(cls, alpha: float, normalized: bool = False,
              n: int | None = None) -> "RadialWeight":
        """(1 - r^2)^alpha, alpha > -1. normalized scales total weighted
        volume of the ball of C^n to 1 and requires n."""
        alpha = float(alpha)
        if alpha <= -1:
            raise DomainError(f"power exponent must exceed -1: {alpha}")
        scale = 1.0
        if normalized:
            if n is None:
                raise DomainError("normalized power weight needs the dimension n")
            scale = math.exp(gammaln(n + alpha + 1) - gammaln(n + 1)
                             - gammaln(alpha + 1))
        return cls("power", {"alpha": alpha, "normalized": bool(normalized),
                             "n": n}, scale)

    @classmethod
    def logpower(cls, alpha: float) -> "RadialWeight":
        """1 / ((1 - r) (log(e/(1-r)))^alpha), alpha > 1 for integrability."""
        alpha = float(alpha)
        if alpha <= 1:
            raise DomainError(f"logpower exponent must exceed 1: {alpha}")
        return cls("logpower", {"alpha": alpha})

    @classmethod
    def tabulated(cls, radii, values, label: str | None = None) -> "RadialWeight":
        """Monotone interpolant of (radii, values); radii must start at 0,
        be strictly increasing, end below 1; values must be positive. The
        weight vanishes beyond the last node."""
        r = np.asarray(radii, dtype=float)
        v = np.asarray(values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or r.size < 4:
            raise DomainError("tabulated weight needs matching 1-d arrays, >= 4 nodes")
        if r[0] != 0.0:
            raise DomainError("tabulated grid must start at r = 0")
        if not np.all(np.diff(r) > 0):
            raise DomainError("tabulated grid must be strictly increasing")
        if r[-1] >= 1.0:
            raise DomainError("tabulated grid must end below r = 1")
        if not np.all(v > 0):
            raise DomainError("tabulated values must be positive")
        return cls("tabulated", {"radii": r.tolist(), "values": v.tolist()},
                   label=label)

    def _validate(self):
        if self.family == "power":
            if self.params["alpha"] <= -1:
                raise DomainError("power exponent must exceed -1")
        elif self.family == "logpower":
            if self.params["alpha"] <= 1:
                raise DomainError("logpower exponent must exceed 1")
        elif self.family == "tabulated":
            r = np.asarray(self.params["radii"], dtype=float)
            v = np.asarray(self.params["values"], dtype=float)
            self._pchip = PchipInterpolator(r, v, extrapolate=False)
            self._pchip_anti = self._pchip.antiderivative()
            self._last = float(r[-1])
            self._total_mass = float(self._pchip_anti(self._last))

    # -- basic protocol -----------------------------------------------------

    @property
    def label(self) -> str:
        if self._label:
            return self._label
        if self.family == "power":
            base = f"power(alpha={self.params['alpha']:g})"
            return base + (", normalized" if self.params.get("normalized") else "")
        if self.family == "logpower":
            return f"logpower(alpha={self.params['alpha']:g})"
        return f"tabulated({len(self.params['radii'])} nodes)"

    def __repr__(self) -> str:
        return f"RadialWeight[{self.label}]"

    def evaluate(self, r) -> np.ndarray:
        """omega(r) vectorized; domain [0, 1). Tabulated weights return 0
        beyond their last node (truncation, not extrapolation)."""
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        if np.any(r < 0) or np.any(r >= 1):
            raise DomainError("weight arguments must lie in [0, 1)")
        if self.family == "power":
            out = self.scale * (1 - r ** 2) ** self.params["alpha"]
        elif self.family == "logpower":
            L = 1 - np.log1p(-r)
            out = self.scale / ((1 - r) * L ** self.params["alpha"])
        else:
            out = np.where(r <= self._last, self._pchip(np.minimum(r, self._last)),
                           0.0) * self.scale
            out = np.maximum(out, 0.0)
        return float(out[0]) if scalar else out

    __call__ = evaluate

    def tail_mass(self, r: float) -> float:
        """Int_r^1 omega(t) dt, exact per family."""
        if not 0 <= r <= 1:
            raise DomainError(f"tail mass argument out of [0, 1]: {r}")
        if r == 1:
            return 0.0
        if self.family == "power":
            a = self.params["alpha"] + 1
            full = 2.0 ** (2 * a - 1) * beta_fn(a, a)
            return self.scale * full * float(betainc(a, a, (1 - r) / 2))
        if self.family == "logpower":
            a = self.params["alpha"]
            L = 1 - math.log1p(-r)
            return self.scale * L ** (1 - a) / (a - 1)
        if r >= self._last:
            return 0.0
        return self.scale * (self._total_mass - float(self._pchip_anti(r)))

    def moment(self, k: int, rule: RadialRule | None = None) -> float:
        """Int_0^1 t^k omega(t) dt (cached)."""
        k = int(k)
        if k < 0:
            raise DomainError("moment order must be nonnegative")
        if k not in self._moments:
            phi = None if k == 0 else (lambda t, k=k: t ** k)
            self._moments[k] = radial_weighted(self, phi, 0.0, rule)
        return self._moments[k]

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {"family": self.family, "scale": self.scale}
        if self.family == "power":
            out["alpha"] = self.params["alpha"]
            out["normalized"] = bool(self.params.get("normalized", False))
            if self.params.get("n") is not None:
                out["n"] = int(self.params["n"])
        elif self.family == "logpower":
            out["alpha"] = self.params["alpha"]
        else:
            out["radii"] = list(self.params["radii"])
            out["values"] = list(self.params["values"])
            if self._label:
                out["label"] = self._label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RadialWeight":
        if not isinstance(data, dict) or "family" not in data:
            raise DomainError("weight JSON must be an object with a family")
        fam = data["family"]
        scale = float(data.get("scale", 1.0))
        if fam == "power":
            w = cls.power(data["alpha"], data.get("normalized", False),
                          data.get("n"))
            if not data.get("normalized", False):
                w = cls("power", w.params, scale)
            return w
        if fam == "logpower":
            w = cls.logpower(data["alpha"])
            return cls("logpower", w.params, scale)
        if fam == "tabulated":
            w = cls.tabulated(data["radii"], data["values"], data.get("label"))
            if scale != 1.0:
                w.scale = scale
            return w
        raise DomainError(f"unknown weight family {fam!r}")


def omega_hat(w: RadialWeight, r) -> float | np.ndarray:
    """Tail mass Int_r^1 omega; vectorized over r."""
    r = np.asarray(r, dtype=float)
    if r.ndim == 0:
        return w.tail_mass(float(r))
    return np.array([w.tail_mass(float(x)) for x in r])


def omega_nstar(w: RadialWeight, r, n: int = 1,
                rule: RadialRule | None = None) -> float | np.ndarray:
    """Int_r^1 t^(2n-1) log(t/r) omega(t) dt on (0, 1]; diverges at r = 0.

    Vectorized over r with a shared dyadic panel template: for each radius
    the inner nodes are t = r + (1-r) u_j, so a whole batch is one matrix
    evaluation of the weight plus the per-radius exact tail anchor.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1: {n}")
    rule = rule or RadialRule()
    rr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(rr <= 0) or np.any(rr > 1):
        raise DomainError("omega_nstar is defined on (0, 1] (it diverges at 0)")
    nodes, weights, anchor_u = rule.template()
    span = (1 - rr)[:, None]
    T = rr[:, None] + span * nodes[None, :]          # (m, M)
    vals = w.evaluate(np.minimum(T.ravel(), ONE_MINUS)).reshape(T.shape)
    phi = T ** (2 * n - 1) * np.log(T / rr[:, None])
    body = (span[:, 0]) * ((vals * phi) @ weights)
    t_a = np.minimum(rr + (1 - rr) * anchor_u, ONE_MINUS)
    tails = np.array([w.tail_mass(float(t)) for t in t_a])
    phi_a = t_a ** (2 * n - 1) * np.log(t_a / rr)
    out = body + phi_a * tails
    out = np.maximum(out, 0.0)
    return float(out[0]) if np.asarray(r).ndim == 0 else out


def omega_star(w: RadialWeight, r, rule: RadialRule | None = None):
    """The classical star transform, the n = 1 case of omega_nstar."""
    return omega_nstar(w, r, 1, rule)


def nstar_moment(w: RadialWeight, k: int, n: int = 1,
                 rule: RadialRule | None = None) -> float:
    """Int_0^1 t^k omega_nstar(t) dt, integrating the transform itself
    (no Fubini shortcut); the log blowup at 0 is handled by the dyadic
    refinement toward 0."""
    if k < 1:
        raise DomainError("nstar moments need k >= 1 near the log singularity")

    def f(t):
        return t ** k * omega_nstar(w, t, n, rule)

    return integrate_radial(f, 0.0, 1.0, rule)


def block_mass(w: RadialWeight, block, rule: RadialRule | None = None) -> float:
    """Weighted volume of a Carleson block: exact polar product of the
    radial tail moment and the cap measure."""
    if not isinstance(block, geometry.Block):
        raise DomainError("block_mass expects a Block region")
    n = block.dim
    am = float(np.linalg.norm(block.a))
    if am == 0:
        return 2 * n * w.moment(2 * n - 1, rule)
    radial = radial_weighted(w, lambda t: 2 * n * t ** (2 * n - 1), am, rule)
    cap_r = math.sqrt(min((1 + block.alpha) * (1 - am), 2.0))
    return radial * geometry.cap_measure(cap_r, n)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class WeightClassification:
    doubling_constant: float
    is_doubling: bool
    in_regular: bool
    in_rapidly_increasing: bool
    tail_exponent: float
    grid_radii: list
    hat_values: list
    regularity_ratios: list

    def to_json(self) -> dict:
        return {
            "doubling_constant": self.doubling_constant,
            "is_doubling": self.is_doubling,
            "in_regular": self.in_regular,
            "in_rapidly_increasing": self.in_rapidly_increasing,
            "tail_exponent": self.tail_exponent,
            "grid_radii": list(self.grid_radii),
            "hat_values": list(self.hat_values),
            "regularity_ratios": list(self.regularity_ratios),
        }


def classify(w: RadialWeight, max_level: int = 28) -> WeightClassification:
    """Dyadic-grid diagnostics on r_k = 1 - 2^(-k), k = 0..max_level.

    * doubling constant: max over k of omega_hat(r_k) / omega_hat(r_{k+1})
      (the midpoint (1+r_k)/2 is exactly the next grid radius), flagged
      doubling when every ratio is finite and the upper tail of ratios has
      stabilized.
    * regular: omega_hat(r) / ((1-r) omega(r)) stays within [1/50, 50] with
      max/min spread at most 20.
    * rapidly increasing: the same ratio at the deepest radius exceeds 5x
      its value at r = 0.9.
    * tail exponent: least squares slope of log omega_hat against
      log(1 - r) over the five deepest usable radii.
    """
    radii = 1 - 2.0 ** -np.arange(0, max_level + 2)
    hats = np.array([w.tail_mass(float(r)) for r in radii])
    usable = hats > 1e-300
    if usable.sum() < 8:
        raise DomainError("weight tail vanishes too early to classify "
                          "(tabulated grid too short?)")
    last = int(np.max(np.nonzero(usable)))
    if w.family == "tabulated" and last >= 12:
        # the missing tail beyond the table distorts ratios at the deepest
        # levels; drop the last few so the diagnostics see clean dyadics
        last -= 4
    radii, hats = radii[:last + 1], hats[:last + 1]

    ratios = hats[:-1] / hats[1:]
    doubling_constant = float(np.max(ratios))
    tail_ratios = ratios[-6:]
    stabilized = float(np.max(tail_ratios) / np.min(tail_ratios)) < 4.0
    is_doubling = bool(np.all(np.isfinite(ratios)) and doubling_constant < 1e6
                       and stabilized)

    vals = w.evaluate(np.minimum(radii, ONE_MINUS))
    with np.errstate(divide="ignore", invalid="ignore"):
        reg = hats / ((1 - radii) * vals)
    reg_ok = np.isfinite(reg) & (reg > 0)
    in_regular = bool(
        np.all(reg_ok)
        and np.min(reg) > 1 / 50 and np.max(reg) < 50
        and np.max(reg) / np.min(reg) <= 20
    )
    anchor_idx = int(np.argmin(np.abs(radii - 0.9)))
    in_rapid = bool(reg_ok[-1] and reg_ok[anchor_idx]
                    and reg[-1] >= 5 * reg[anchor_idx])

    k = min(5, len(radii) - 1)
    x = np.log(1 - radii[-k:])
    y = np.log(hats[-k:])
    slope = float(np.polyfit(x, y, 1)[0])

    return WeightClassification(
        doubling_constant=doubling_constant,
        is_doubling=is_doubling,
        in_regular=in_regular,
        in_rapidly_increasing=in_rapid,
        tail_exponent=slope,
        grid_radii=[float(r) for r in radii],
        hat_values=[float(h) for h in hats],
        regularity_ratios=[float(v) if np.isfinite(v) else None for v in reg],
    )


def weighted_ball_volume(w: RadialWeight, n: int,
                         rule: RadialRule | None = None) -> float:
    """Int_B omega(|z|) dV = 2n Int_0^1 r^(2n-1) omega(r) dr."""
    return 2 * n * w.moment(2 * n - 1, rule)


__all__ = [
    "RadialWeight", "WeightClassification", "classify", "omega_hat",
    "omega_star", "omega_nstar", "nstar_moment", "block_mass",
    "weighted_ball_volume",
]
