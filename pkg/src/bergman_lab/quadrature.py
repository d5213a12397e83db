"""Quadrature on the unit ball of C^n.

Everything reduces to the slice formula

    Int_B f dV = 2n Int_0^1 r^(2n-1) [ Int_S f(r xi) dsigma(xi) ] dr

with the normalized volume and surface measures. Three building blocks:

* Radial rule: Gauss-Legendre panels on a fixed dyadic template refined
  toward both endpoints (geometric subdivision 1 - 2^(-k)(1-a) toward 1, and
  the mirror image toward a, default order 16). Doubling weights concentrate
  mass so close to 1 that no pointwise rule can see all of it in float64
  (for the rapidly increasing family the mass beyond machine-representable
  radii is ~1e-3), so weighted integrals anchor the last panel with the
  weight family's exact tail mass: Int_{t_K}^1 phi w dt = phi(t_K) W(t_K) up
  to phi's oscillation over an interval of length 2^(-K)(1-a), which is
  negligible for the smooth slice factors integrated here.
* Exact sphere pairing: Int_S zeta^beta conj(zeta^beta') dsigma vanishes for
  beta != beta' and equals (n-1)! beta! / (n-1+|beta|)! on the diagonal,
  which makes every polynomial second moment on the sphere exact.
* Region Monte Carlo: importance sampling in polar form, radius density
  proportional to (1-r)^(-bias) on the region's radial shadow and directions
  drawn uniformly from an analytic cap superset of the region's angular
  shadow, reweighted by the exact cap measure and filtered by the exact
  membership predicate. Estimates come back with a standard error, the
  sample spec digest, and the seed; identical spec and seed give bit
  identical values regardless of how work is sharded.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator
from scipy.stats import norm as _norm_dist
from scipy.stats import qmc

from . import geometry
from .errors import AccuracyError, ConfigError, DegenerateRegionError, DomainError

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_TEMPLATE_CACHE: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray, float]] = {}


def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = leggauss(order)
    return _GL_CACHE[order]


def _dyadic_template(order: int, depth_zero: int, depth_one: int):
    """Nodes/weights on (0, 1) for panels refined dyadically toward both
    endpoints; integrates up to the anchor point 1 - 2^(-depth_one)."""
    key = (order, depth_zero, depth_one)
    if key in _TEMPLATE_CACHE:
        return _TEMPLATE_CACHE[key]
    bps = [0.0] + [2.0 ** -k for k in range(depth_zero, 0, -1)]
    bps += [1 - 2.0 ** -k for k in range(2, depth_one + 1)]
    bps = np.array(bps)
    xg, wg = gauss_legendre(order)
    lo, hi = bps[:-1], bps[1:]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    anchor = float(bps[-1])
    _TEMPLATE_CACHE[key] = (nodes, weights, anchor)
    return _TEMPLATE_CACHE[key]


@dataclass(frozen=True)
class RadialRule:
    """Gauss-Legendre dyadic panel rule for integrals on [a, 1)."""

    order: int = 16
    depth_zero: int = 40
    depth_one: int = 40
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (2 <= self.order <= 64):
            raise ConfigError(f"radial order out of range: {self.order}")
        if not (4 <= self.depth_one <= 52 and 4 <= self.depth_zero <= 52):
            raise ConfigError("radial depths must lie in [4, 52]")
        if self.rel_tol <= 0:
            raise ConfigError("rel_tol must be positive")

    def template(self):
        return _dyadic_template(self.order, self.depth_zero, self.depth_one)

    def to_json(self) -> dict:
        return {"order": self.order, "depth_zero": self.depth_zero,
                "depth_one": self.depth_one, "rel_tol": self.rel_tol}

    @classmethod
    def from_json(cls, data: dict) -> "RadialRule":
        return cls(**{k: data[k] for k in
                      ("order", "depth_zero", "depth_one", "rel_tol") if k in data})


@dataclass(frozen=True)
class SphericalRule:
    """Spherical factor: exact monomial pairing or seeded Monte Carlo."""

    mode: str = "monte_carlo"
    samples: int = 2048
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("monte_carlo", "exact_monomial"):
            raise ConfigError(f"unknown spherical mode {self.mode!r}")
        if self.mode == "monte_carlo" and self.samples < 8:
            raise ConfigError("spherical MC needs at least 8 samples")

    def to_json(self) -> dict:
        return {"mode": self.mode, "samples": self.samples, "seed": self.seed}

    @classmethod
    def from_json(cls, data: dict) -> "SphericalRule":
        return cls(**{k: data[k] for k in ("mode", "samples", "seed") if k in data})


@dataclass(frozen=True)
class RegionRule:
    """Region Monte Carlo: sample count, seed, boundary bias exponent."""

    samples: int = 16384
    seed: int = 0
    boundary_bias: float = 0.5

    def __post_init__(self):
        if self.samples < 1000:
            raise ConfigError("region MC needs at least 1000 samples")
        if not 0 <= self.boundary_bias < 1:
            raise ConfigError("boundary bias must lie in [0, 1)")

    def to_json(self) -> dict:
        return {"samples": self.samples, "seed": self.seed,
                "boundary_bias": self.boundary_bias}

    @classmethod
    def from_json(cls, data: dict) -> "RegionRule":
        return cls(**{k: data[k] for k in ("samples", "seed", "boundary_bias")
                      if k in data})


@dataclass(frozen=True)
class QuadratureSpec:
    radial: RadialRule = field(default_factory=RadialRule)
    spherical: SphericalRule = field(default_factory=SphericalRule)
    region: RegionRule = field(default_factory=RegionRule)

    def to_json(self) -> dict:
        return {"radial": self.radial.to_json(),
                "spherical": self.spherical.to_json(),
                "region": self.region.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "QuadratureSpec":
        if not isinstance(data, dict):
            raise ConfigError("quadrature spec must be an object")
        return cls(
            radial=RadialRule.from_json(data.get("radial", {})),
            spherical=SphericalRule.from_json(data.get("spherical", {})),
            region=RegionRule.from_json(data.get("region", {})),
        )

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def with_seed(self, seed: int) -> "QuadratureSpec":
        return QuadratureSpec(
            radial=self.radial,
            spherical=replace(self.spherical, seed=seed),
            region=replace(self.region, seed=seed),
        )


DEFAULT_SPEC = QuadratureSpec()

# coarse variant for Monte Carlo backed paths where spherical noise dominates
FAST_RADIAL = RadialRule(order=8, depth_zero=12, depth_one=30, rel_tol=1e-8)


# ---------------------------------------------------------------------------
# radial integrals

def radial_weighted(w, phi, a: float = 0.0, rule: RadialRule | None = None,
                    with_error: bool = False):
    """Int_a^1 phi(t) w(t) dt for a radial weight.

    phi is a vectorized callable (or None for phi = 1). The dyadic panel sum
    covers [a, t_K] and the last sliver [t_K, 1) is anchored by the weight's
    exact tail mass; the anchor's mean-value error is O(2^-depth) relative.
    """
    rule = rule or RadialRule()
    if not 0 <= a <= 1:
        raise DomainError(f"lower endpoint out of [0, 1]: {a}")
    if a == 1:
        return (0.0, 0.0) if with_error else 0.0

    one_minus = float(np.nextafter(1.0, 0.0))

    def run(order):
        nodes, weights, anchor_u = _dyadic_template(order, rule.depth_zero,
                                                    rule.depth_one)
        # mapped nodes can round onto 1.0 when a is deep; clamp just below
        t = np.minimum(a + (1 - a) * nodes, one_minus)
        vals = w.evaluate(t)
        if phi is not None:
            vals = vals * phi(t)
        body = (1 - a) * float(weights @ vals)
        t_anchor = min(a + (1 - a) * anchor_u, one_minus)
        tail = w.tail_mass(t_anchor)
        phi_anchor = 1.0 if phi is None else float(phi(np.array([t_anchor]))[0])
        return body + phi_anchor * tail

    value = run(rule.order)
    if not with_error:
        return value
    coarse = run(max(4, rule.order // 2))
    err = abs(value - coarse)
    scale = max(abs(value), 1e-300)
    if err / scale > max(rule.rel_tol * 1e3, 1e-6):
        raise AccuracyError(
            f"radial quadrature disagreement {err / scale:.3e}",
            estimate=value, achieved_tol=err / scale)
    return value, err


def integrate_radial(f, a: float = 0.0, b: float = 1.0,
                     rule: RadialRule | None = None) -> float:
    """Plain Int_a^b f(t) dt on the dyadic template (no weight, no anchor).
    Suited to bounded integrands with endpoint log-type behavior."""
    rule = rule or RadialRule()
    if not a < b:
        return 0.0
    nodes, weights, anchor_u = _dyadic_template(rule.order, rule.depth_zero,
                                                rule.depth_one)
    t = a + (b - a) * nodes
    vals = np.asarray(f(t), dtype=float)
    body = (b - a) * float(weights @ vals)
    # close the last sliver with its midpoint value; integrand is bounded
    t_anchor = a + (b - a) * anchor_u
    sliver = (b - a) * (1 - anchor_u)
    tail = float(f(np.array([0.5 * (t_anchor + b)]))[0]) * sliver
    return body + tail


# ---------------------------------------------------------------------------
# sphere

def sphere_monomial_pairing(beta, beta_prime, n: int) -> float:
    """Int_S zeta^beta conj(zeta^beta') dsigma; exact."""
    beta = tuple(int(b) for b in beta)
    beta_prime = tuple(int(b) for b in beta_prime)
    if len(beta) != n or len(beta_prime) != n:
        raise DomainError("multi-index length must equal n")
    if any(b < 0 for b in beta + beta_prime):
        raise DomainError("multi-indices must be nonnegative")
    if beta != beta_prime:
        return 0.0
    tot = sum(beta)
    num = math.factorial(n - 1)
    for b in beta:
        num *= math.factorial(b)
    return num / math.factorial(n - 1 + tot)


def seeded_directions(n: int, m: int, seed: int,
                      low_discrepancy: bool = False) -> np.ndarray:
    """m deterministic directions on the sphere of C^n."""
    if low_discrepancy:
        pow2 = 1 << max(3, (m - 1).bit_length())
        eng = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
        u = eng.random(pow2)[:m]
        g = _norm_dist.ppf(np.clip(u, 1e-12, 1 - 1e-12))
        z = np.ascontiguousarray(g).view(np.complex128)
        return z / np.linalg.norm(z, axis=1)[:, None]
    rng = np.random.default_rng(seed)
    return geometry.sphere_points(n, m, rng)


# ---------------------------------------------------------------------------
# ball integrals

@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    error: float
    spec_digest: str
    seed: int | None = None

    def to_json(self) -> dict:
        return {"value": self.value, "error": self.error,
                "spec_digest": self.spec_digest, "seed": self.seed}


def integrate_ball(F, w=None, spec: QuadratureSpec | None = None,
                   n: int | None = None) -> IntegralEstimate:
    """Int_B F(z) w(|z|) dV(z) by the slice formula.

    F is either a vectorized callable on (m, n) point arrays (spherical
    Monte Carlo mode) or, in exact_monomial mode, an object exposing
    sphere_mean_abs2(t) (the exact spherical mean of |f(t xi)|^2, as the
    holomorphic polynomial nodes do), in which case the integral computed
    is Int |f|^2 w dV.
    """
    spec = spec or DEFAULT_SPEC
    sph = spec.spherical

    if sph.mode == "exact_monomial":
        if not hasattr(F, "sphere_mean_abs2"):
            raise ConfigError("exact_monomial mode needs an object with "
                              "sphere_mean_abs2; got a bare callable")
        if n is None:
            n = F.dim
        rule = spec.radial
        nodes, weights, anchor_u = rule.template()
        t = nodes
        mean = np.asarray(F.sphere_mean_abs2(t), dtype=float)
        radial_part = 2 * n * t ** (2 * n - 1) * mean
        if w is not None:
            radial_part = radial_part * w.evaluate(t)
        body = float(weights @ radial_part)
        t_anchor = anchor_u
        mean_anchor = float(np.asarray(F.sphere_mean_abs2(np.array([t_anchor])))[0])
        if w is not None:
            tail = 2 * n * t_anchor ** (2 * n - 1) * mean_anchor * w.tail_mass(t_anchor)
        else:
            tail = mean_anchor * (1 - t_anchor ** (2 * n))
        return IntegralEstimate(body + tail, 0.0, spec.digest(), None)

    if n is None:
        raise ConfigError("Monte Carlo ball integration needs the dimension n")
    dirs = seeded_directions(n, sph.samples, sph.seed)
    rule = spec.radial
    nodes, weights, anchor_u = rule.template()

    # per-direction radial integrals, then average; gives a direction-wise
    # standard error for the spherical Monte Carlo factor
    per_dir = np.empty(dirs.shape[0])
    radial_factor = 2 * n * nodes ** (2 * n - 1)
    wvals = w.evaluate(nodes) if w is not None else np.ones_like(nodes)
    anchor_t = anchor_u
    if w is not None:
        tail_w = w.tail_mass(anchor_t) * 2 * n * anchor_t ** (2 * n - 1)
    else:
        tail_w = 1 - anchor_t ** (2 * n)
    chunk = max(1, int(5e5 // max(len(nodes), 1)))
    for start in range(0, dirs.shape[0], chunk):
        d = dirs[start:start + chunk]
        pts = nodes[None, :, None] * d[:, None, :]
        vals = np.asarray(F(pts.reshape(-1, n)), dtype=float).reshape(len(d), len(nodes))
        per = (vals * (weights * radial_factor * wvals)[None, :]).sum(axis=1)
        anchor_vals = np.asarray(F(anchor_t * d), dtype=float)
        per_dir[start:start + chunk] = per + anchor_vals * tail_w
    value = float(np.mean(per_dir))
    stderr = float(np.std(per_dir, ddof=1) / math.sqrt(len(per_dir))) if len(per_dir) > 1 else 0.0
    return IntegralEstimate(value, stderr, spec.digest(), sph.seed)


# ---------------------------------------------------------------------------
# region integrals

_CAP_FAST: dict[int, PchipInterpolator] = {}


def cap_measure_fast(n: int, r2: np.ndarray) -> np.ndarray:
    """Vectorized sigma(Q) as a function of r^2; exact for n = 1, dense
    monotone interpolant of the exact values for n >= 2 (error ~1e-9,
    used only inside Monte Carlo reweighting)."""
    r2 = np.clip(np.asarray(r2, dtype=float), 0.0, 2.0)
    if n == 1:
        return (2 / math.pi) * np.arcsin(r2 / 2)
    if n not in _CAP_FAST:
        grid = np.unique(np.concatenate([
            np.linspace(0, 2, 401) ** 2 / 2,  # denser near 0
            np.linspace(0, 2, 201),
        ]))
        vals = np.array([geometry._cap_measure_cached(n, float(g)) for g in grid])
        _CAP_FAST[n] = PchipInterpolator(grid, vals)
    return np.maximum(_CAP_FAST[n](r2), 0.0)


def _region_angular_proposal(region, t: np.ndarray):
    """Cap superset (center direction, squared radius per radius t) of the
    region's angular shadow at radius t."""
    if isinstance(region, geometry.Block):
        am = np.linalg.norm(region.a)
        u = region.a / am
        r2 = np.full_like(t, min((region.alpha + 1) * (1 - am), 2.0))
        return u, r2
    if isinstance(region, geometry.Tube):
        # |1-<eta,xi>| <= |1-<z,xi>| + (1-|z|) < 2r on the shadow
        return region.xi, np.full_like(t, min(2 * region.radius, 2.0))
    if isinstance(region, geometry.Tent):
        zm = np.linalg.norm(region.z)
        u = region.z / zm
        r2 = (region.aperture / 2) * (1 - zm ** 2) + (1 - zm)
        return u, np.full_like(t, min(r2, 2.0))
    if isinstance(region, geometry.Admissible):
        zm = np.linalg.norm(region.zeta)
        u = region.zeta / zm
        s = t / zm
        r2 = (region.aperture / 2) * (1 - s ** 2) + (1 - s)
        return u, np.minimum(r2, 2.0)
    raise DomainError(f"no angular proposal for {region!r}")


def _region_radial_shadow(region) -> tuple[float, float]:
    if isinstance(region, geometry.Block):
        return float(np.linalg.norm(region.a)), 1.0
    if isinstance(region, geometry.Tube):
        return max(0.0, 1 - region.radius), 1.0
    if isinstance(region, geometry.Tent):
        return float(np.linalg.norm(region.z)), 1.0
    if isinstance(region, geometry.Admissible):
        zm = float(np.linalg.norm(region.zeta))
        if zm == 0:
            raise DegenerateRegionError("Gamma_0 = {0} has zero volume")
        return 0.0, zm
    if isinstance(region, geometry.Cap):
        raise DegenerateRegionError("caps have zero volume in the ball")
    raise DomainError(f"unknown region {region!r}")


def integrate_region(F, region, w=None, spec: QuadratureSpec | None = None) -> IntegralEstimate:
    """Int_region F(z) w(|z|) dV(z) by importance-sampled Monte Carlo.

    Radii follow (1-r)^(-bias) on the radial shadow; directions are uniform
    on an exact-superset cap and reweighted by its measure; the exact
    membership predicate zeroes the misses. Identical spec and seed give bit
    identical output; shards are merged by index.
    """
    spec = spec or DEFAULT_SPEC
    reg = spec.region
    n = region.dim
    r0, r1 = _region_radial_shadow(region)
    if r1 - r0 < 1e-15:
        raise DegenerateRegionError("empty radial shadow")

    shard_size = 4096
    shards = int(math.ceil(reg.samples / shard_size))
    sums = np.zeros(shards)
    sq_sums = np.zeros(shards)
    hits = 0
    total = 0
    for k in range(shards):
        m = min(shard_size, reg.samples - k * shard_size)
        rng = np.random.default_rng([reg.seed, k])
        r, dens = geometry.biased_radii(r0, r1, m, rng, reg.boundary_bias)
        u, r2cap = _region_angular_proposal(region, r)
        # a single proposal cap radius per shard keeps the sampler simple;
        # use the widest cap needed by any sampled radius
        cap_r2 = float(np.max(r2cap))
        eta = geometry.cap_directions(u, math.sqrt(cap_r2), m, rng)
        pts = eta * r[:, None]
        inside = geometry.contains_many(region, pts)
        vals = np.zeros(m)
        if np.any(inside):
            f = np.asarray(F(pts[inside]), dtype=float)
            wgt = np.ones(int(inside.sum()))
            if w is not None:
                wgt = w.evaluate(r[inside])
            sigma_cap = cap_measure_fast(n, np.array([cap_r2]))[0]
            vals[inside] = (f * wgt * 2 * n * r[inside] ** (2 * n - 1)
                            * sigma_cap / dens[inside])
        sums[k] = vals.sum()
        sq_sums[k] = (vals ** 2).sum()
        hits += int(inside.sum())
        total += m
    if hits == 0:
        raise DegenerateRegionError("region sampler recorded zero hits")
    value = float(sums.sum() / total)
    var = max(sq_sums.sum() / total - value ** 2, 0.0)
    stderr = math.sqrt(var / total)
    return IntegralEstimate(value, stderr, spec.digest(), reg.seed)


# ---------------------------------------------------------------------------
# reusable weighted sample sets (admissible regions and tubes around e1)

def admissible_sample_set(n: int, aperture: float, samples: int, seed: int,
                          bias: float = 0.5):
    """Weighted points for Int over Gamma_{e1}: returns (points, weights)
    with Int_{Gamma_{e1}} G dV ~= sum_j weights_j G(points_j). By the exact
    dilation equivariance, Gamma_u for u = s e1 is s * Gamma_{e1}."""
    region = geometry.Admissible(np.eye(n, dtype=complex)[0], aperture)
    rng = np.random.default_rng([seed, 0x61646d])
    r, dens = geometry.biased_radii(0.0, 1.0, samples, rng, bias)
    u_dir, r2cap = _region_angular_proposal(region, r)
    cap_r2 = float(np.max(r2cap))
    eta = geometry.cap_directions(u_dir, math.sqrt(cap_r2), samples, rng)
    pts = eta * r[:, None]
    inside = geometry.contains_many(region, pts)
    if not np.any(inside):
        raise DegenerateRegionError("admissible sampler recorded zero hits")
    sigma_cap = cap_measure_fast(n, np.array([cap_r2]))[0]
    wgt = (2 * n * r ** (2 * n - 1) * sigma_cap / dens / samples)[inside]
    return pts[inside], wgt


def tube_sample_set(n: int, radius: float, samples: int, seed: int,
                    bias: float = 0.5):
    """Weighted points for Int over S*(e1, radius)."""
    region = geometry.Tube(np.eye(n, dtype=complex)[0], radius)
    rng = np.random.default_rng([seed, 0x747562])
    r0, r1 = _region_radial_shadow(region)
    r, dens = geometry.biased_radii(r0, r1, samples, rng, bias)
    u_dir, r2cap = _region_angular_proposal(region, r)
    cap_r2 = float(np.max(r2cap))
    eta = geometry.cap_directions(u_dir, math.sqrt(cap_r2), samples, rng)
    pts = eta * r[:, None]
    inside = geometry.contains_many(region, pts)
    if not np.any(inside):
        raise DegenerateRegionError("tube sampler recorded zero hits")
    sigma_cap = cap_measure_fast(n, np.array([cap_r2]))[0]
    wgt = (2 * n * r ** (2 * n - 1) * sigma_cap / dens / samples)[inside]
    return pts[inside], wgt
