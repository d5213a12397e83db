"""Carleson-measure quotients and embedding probes on block lattices.

A positive measure mu embeds A_omega^p into L_mu^q (q >= p) exactly when

    sup_a  mu(S_a) / omega(S_a)^(q/p)

is finite, with the supremum over Carleson blocks. This module evaluates
that quotient on a deterministic lattice a = (1 - 2^-k) xi_d, reports the
lattice max (an explicit lower bound for the true supremum), a per-level
radial profile for vanishing diagnostics, and the test-function embedding
panel that probes the converse direction of the same criterion.

Measures come in three shapes. Point masses sum exactly. A "weighted
volume" measure rho(z) dV = factor(|z|) omega0(|z|) dV is separable, and
its block measure uses the very same radial-panel x cap-measure product as
the weight's own block mass; when the measure IS omega dV and p = q this
makes every lattice quotient equal to 1 bit for bit, so the sanity anchor
is exact by construction rather than to Monte Carlo tolerance. Generic
densities fall back to region Monte Carlo with per-sample degeneracy flags
(never silent omission).

Lattice refinement is monotone by construction: direction lists are
prefix-stable (coordinate axes first, then a scrambled low-discrepancy
stream; roots of unity on the disk), so enlarging the budget can only grow
the reported supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry, holo, quadrature, weights
from .errors import DomainError
from .quadrature import QuadratureSpec, RegionRule, integrate_ball, integrate_region
from .weights import RadialWeight, block_mass, radial_weighted


# ---------------------------------------------------------------------------
# measures

def _radial_factor_from_json(data):
    if data is None:
        return None, None
    if data.get("form") != "power_of_one_minus_r":
        raise DomainError(f"unknown radial factor form {data!r}")
    e = float(data.get("exponent", 1.0))
    s = float(data.get("scale", 1.0))
    return (lambda t, e=e, s=s: s * (1 - t) ** e), {"form": "power_of_one_minus_r",
                                                    "exponent": e, "scale": s}


@dataclass(frozen=True, eq=False)
class Measure:
    """Positive measure on the ball: point masses, separable weighted
    volume, or a generic density with Monte Carlo block measures."""

    kind: str  # "point_masses" | "weighted_volume" | "density"
    dim: int
    points: np.ndarray | None = None
    masses: np.ndarray | None = None
    base_weight: RadialWeight | None = None
    radial_factor: object = None          # callable on radii, or None
    factor_json: dict | None = None
    rho: object = None                    # generic density callable
    spec: QuadratureSpec = field(default_factory=lambda: quadrature.DEFAULT_SPEC)

    @classmethod
    def point_masses(cls, points, masses) -> "Measure":
        P = np.atleast_2d(np.asarray(points, dtype=complex))
        m = np.asarray(masses, dtype=float).reshape(-1)
        if P.shape[0] != m.shape[0]:
            raise DomainError("points and masses must align")
        if np.any(m <= 0):
            raise DomainError("masses must be positive")
        if np.any(np.linalg.norm(P, axis=1) >= 1):
            raise DomainError("point masses must sit inside the open ball")
        return cls("point_masses", P.shape[1], points=P, masses=m)

    @classmethod
    def weighted_volume(cls, w: RadialWeight, n: int, radial_factor=None,
                        factor_json: dict | None = None) -> "Measure":
        """d mu = factor(|z|) w(|z|) dV; factor None means mu = w dV."""
        if radial_factor is None and factor_json is not None:
            radial_factor, factor_json = _radial_factor_from_json(factor_json)
        return cls("weighted_volume", n, base_weight=w,
                   radial_factor=radial_factor, factor_json=factor_json)

    @classmethod
    def density(cls, rho, n: int, spec: QuadratureSpec | None = None) -> "Measure":
        """Generic nonnegative density; total mass is checked finite."""
        spec = spec or quadrature.DEFAULT_SPEC
        mu = cls("density", n, rho=rho, spec=spec)
        total = mu.total_mass()
        if not math.isfinite(total):
            raise DomainError("density has non-finite total mass")
        return mu

    def total_mass(self) -> float:
        if self.kind == "point_masses":
            return float(self.masses.sum())
        if self.kind == "weighted_volume":
            n = self.dim
            fac = self.radial_factor
            phi = (lambda t: 2 * n * t ** (2 * n - 1)) if fac is None else \
                  (lambda t: 2 * n * t ** (2 * n - 1) * fac(t))
            return radial_weighted(self.base_weight, phi, 0.0)
        est = integrate_ball(lambda Z: np.abs(np.atleast_1d(self.rho(Z))),
                             None, self.spec, n=self.dim)
        return est.value

    def block_measure(self, block: geometry.Block) -> tuple[float, float, bool]:
        """mu(S_a) -> (value, stderr, degenerate flag)."""
        if self.kind == "point_masses":
            inside = geometry.contains_many(block, self.points)
            return float(self.masses[inside].sum()), 0.0, False
        if self.kind == "weighted_volume":
            n = block.dim
            am = float(np.linalg.norm(block.a))
            fac = self.radial_factor
            if fac is None:
                return block_mass(self.base_weight, block), 0.0, False
            phi = lambda t: 2 * n * t ** (2 * n - 1) * fac(t)
            radial = radial_weighted(self.base_weight, phi, am)
            if am == 0:
                return radial, 0.0, False
            cap_r = math.sqrt(min((1 + block.alpha) * (1 - am), 2.0))
            return radial * geometry.cap_measure(cap_r, n), 0.0, False
        if float(np.linalg.norm(block.a)) == 0:
            est = integrate_ball(lambda Z: np.abs(np.atleast_1d(self.rho(Z))),
                                 None, self.spec, n=block.dim)
            return est.value, est.error, False
        try:
            est = integrate_region(
                lambda Z: np.abs(np.atleast_1d(self.rho(Z))), block, None,
                self.spec)
            return est.value, est.error, False
        except quadrature.DegenerateRegionError:
            return float("nan"), float("nan"), True

    def integrate(self, G) -> float:
        """Int G d mu for a vectorized |G|-style callable."""
        if self.kind == "point_masses":
            return float(np.sum(self.masses
                                * np.abs(np.atleast_1d(G(self.points)))))
        if self.kind == "weighted_volume":
            n = self.dim
            fac = self.radial_factor

            def F(Z):
                vals = np.abs(np.atleast_1d(G(Z)))
                if fac is not None:
                    vals = vals * fac(np.linalg.norm(np.atleast_2d(Z), axis=1))
                return vals

            est = integrate_ball(F, self.base_weight, self.spec, n=n)
            return est.value
        est = integrate_ball(
            lambda Z: np.abs(np.atleast_1d(G(Z)))
            * np.abs(np.atleast_1d(self.rho(Z))),
            None, self.spec, n=self.dim)
        return est.value

    def scaled(self, c: float) -> "Measure":
        if c <= 0:
            raise DomainError("measure scale must be positive")
        if self.kind == "point_masses":
            return Measure.point_masses(self.points, self.masses * c)
        if self.kind == "weighted_volume":
            old = self.radial_factor
            fac = (lambda t, c=c: c * np.ones_like(np.asarray(t, dtype=float))) \
                if old is None else (lambda t, c=c, old=old: c * old(t))
            fj = None
            if self.factor_json is not None:
                fj = dict(self.factor_json)
                fj["scale"] = fj.get("scale", 1.0) * c
            elif old is None:
                fj = {"form": "power_of_one_minus_r", "exponent": 0.0, "scale": c}
            return Measure.weighted_volume(self.base_weight, self.dim, fac, fj)
        return Measure.density(lambda Z, c=c: c * np.abs(np.atleast_1d(self.rho(Z))),
                               self.dim, self.spec)

    def to_json(self) -> dict:
        if self.kind == "point_masses":
            return {"kind": "point_masses",
                    "points": [[[z.real, z.imag] for z in row]
                               for row in self.points],
                    "masses": list(map(float, self.masses))}
        if self.kind == "weighted_volume":
            return {"kind": "weighted_volume", "n": self.dim,
                    "weight": self.base_weight.to_json(),
                    "radial_factor": self.factor_json}
        raise DomainError("generic density measures are not serializable")

    @classmethod
    def from_json(cls, data: dict) -> "Measure":
        if not isinstance(data, dict) or "kind" not in data:
            raise DomainError("measure JSON must be an object with a kind")
        if data["kind"] == "point_masses":
            pts = np.array([[complex(re, im) for re, im in row]
                            for row in data["points"]])
            return cls.point_masses(pts, data["masses"])
        if data["kind"] == "weighted_volume":
            w = RadialWeight.from_json(data["weight"])
            fac, fj = _radial_factor_from_json(data.get("radial_factor"))
            return cls.weighted_volume(w, int(data["n"]), fac, fj)
        raise DomainError(f"unknown measure kind {data['kind']!r}")


# ---------------------------------------------------------------------------
# lattices

def lattice_directions(n: int, count: int, seed: int = 0) -> np.ndarray:
    """Prefix-stable direction family: on the disk +-1 then roots of unity;
    in higher dimension the coordinate axes then a scrambled
    low-discrepancy stream. Enlarging count extends the same list."""
    if n == 1:
        angles = [0.0, math.pi]
        m = 4
        while len(angles) < count:
            angles += [2 * math.pi * j / m for j in range(1, m, 2)]
            m *= 2
        arr = np.exp(1j * np.array(angles[:count]))[:, None]
        return arr
    axes = np.eye(n, dtype=complex)
    if count <= n:
        return axes[:count]
    extra = quadrature.seeded_directions(n, count - n, seed,
                                         low_discrepancy=True)
    return np.concatenate([axes, extra], axis=0)


def block_lattice(n: int, levels: int, directions: int,
                  seed: int = 0) -> list[geometry.Block]:
    """Blocks over a = (1-2^-k) xi_d, k = 1..levels, plus the whole ball."""
    if levels < 1:
        raise DomainError("lattice needs at least one level")
    dirs = lattice_directions(n, directions, seed)
    blocks = [geometry.Block(np.zeros(n, dtype=complex), 0.0)]
    for k in range(1, levels + 1):
        r = 1 - 2.0 ** -k
        for d in dirs:
            blocks.append(geometry.Block(r * d, 0.0))
    return blocks


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class CarlesonReport:
    p: float
    q: float
    sup_estimate: float
    quotient_samples: list      # dicts: a, level, mu, omega, quotient, flags
    radial_profile: list        # dicts: level, radius, max_quotient
    embedding_lower: float | None
    meta: dict

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "sup_estimate": self.sup_estimate,
                "quotient_samples": self.quotient_samples,
                "radial_profile": self.radial_profile,
                "embedding_lower": self.embedding_lower, "meta": self.meta}

    def profile_arrays(self):
        rs = np.array([row["radius"] for row in self.radial_profile])
        vs = np.array([row["max_quotient"] for row in self.radial_profile])
        return rs, vs


def carleson_quotient(mu: Measure, w: RadialWeight, p: float, q: float,
                      levels: int = 14, directions: int | None = None,
                      seed: int = 0,
                      embedding: bool = False) -> CarlesonReport:
    """Lattice quotients mu(S_a)/omega(S_a)^(q/p); the reported supremum is
    the lattice max, an explicit lower bound of the true supremum."""
    if not 0 < p <= q:
        raise DomainError(f"need 0 < p <= q: p={p}, q={q}")
    n = mu.dim
    if directions is None:
        directions = 16 if n == 1 else 64 + n
    blocks = block_lattice(n, levels, directions, seed)

    samples = []
    sup = 0.0
    prof: dict[int, float] = {}
    for blk in blocks:
        am = float(np.linalg.norm(blk.a))
        level = 0 if am == 0 else int(round(-math.log2(1 - am)))
        num, err, degenerate = mu.block_measure(blk)
        num, err = float(num), float(err)
        den = float(block_mass(w, blk))
        row = {"a": geometry.BallPoint(blk.a).to_json(), "level": level,
               "mu": None if degenerate else num, "omega": den,
               "mu_stderr": None if degenerate else err,
               "degenerate": bool(degenerate)}
        if not degenerate and den > 0:
            quot = float(num / den ** (q / p))
            row["quotient"] = quot
            sup = max(sup, quot)
            prof[level] = max(prof.get(level, 0.0), quot)
        else:
            row["quotient"] = None
        samples.append(row)

    profile = [{"level": k, "radius": 0.0 if k == 0 else 1 - 2.0 ** -k,
                "max_quotient": v} for k, v in sorted(prof.items())]
    lower = None
    if embedding:
        lower = embedding_lower_bound(mu, w, p, q, levels, directions, seed)
    meta = {"levels": levels, "directions": directions, "seed": seed,
            "weight": w.to_json(), "n": n, "measure_kind": mu.kind}
    return CarlesonReport(p, q, sup, samples, profile, lower, meta)


def embedding_lower_bound(mu: Measure, w: RadialWeight, p: float, q: float,
                          levels: int = 14, directions: int | None = None,
                          seed: int = 0) -> float:
    """max over the lattice of Int |F_{a,p}/omega(S_a)^(1/p)|^q d mu, a
    certified lower bound for the embedding norm up to the test-function
    normalization; exact summation for point masses, exact spherical means
    for separable densities."""
    if not 0 < p <= q:
        raise DomainError(f"need 0 < p <= q: p={p}, q={q}")
    n = mu.dim
    if directions is None:
        directions = 16 if n == 1 else 64 + n
    blocks = block_lattice(n, levels, directions, seed)

    best = 0.0
    for blk in blocks:
        F = holo.test_function(blk.a, p, w)
        den = block_mass(w, blk) ** (1 / p)
        if den == 0:
            continue
        if mu.kind == "weighted_volume":
            fac = mu.radial_factor
            meanq = lambda t: F.sphere_mean_abs_pow(t, q)
            phi = (lambda t: 2 * n * t ** (2 * n - 1) * meanq(t)) if fac is None \
                else (lambda t: 2 * n * t ** (2 * n - 1) * fac(t) * meanq(t))
            val = radial_weighted(mu.base_weight, phi, 0.0)
        else:
            val = mu.integrate(lambda Z: np.abs(np.atleast_1d(F.evaluate(Z))) ** q)
        best = max(best, val / den ** q)
    return best


def maximal_embedding_probe(probes, mu: Measure, w: RadialWeight, p: float,
                            q: float, alpha: float,
                            nodes: int = 48, seed: int = 0,
                            block_candidates: int = 24,
                            samples_per_block: int = 2048) -> dict:
    """Ratio panel for the maximal-operator embedding: for each probe phi,

        ||[M_omega(|phi|^(1/alpha))]^alpha||_{L_mu^q}  vs  ||phi||_{L_omega^p}.

    Needs p alpha > 1. The maximal function is evaluated on a seeded node
    set for density measures and exactly on the atoms for point masses.
    """
    from . import norms

    if p * alpha <= 1:
        raise DomainError(f"need p*alpha > 1: p={p}, alpha={alpha}")
    n = mu.dim

    if mu.kind == "point_masses":
        eval_nodes = mu.points
        node_masses = mu.masses
        mode = "atoms"
    else:
        rng = np.random.default_rng([seed, 0x70726f62])
        eval_nodes = geometry.ball_points(n, nodes, rng)
        keep = np.linalg.norm(eval_nodes, axis=1) > 1e-6
        eval_nodes = eval_nodes[keep]
        if mu.kind == "weighted_volume":
            dens = mu.base_weight.evaluate(np.linalg.norm(eval_nodes, axis=1))
            if mu.radial_factor is not None:
                dens = dens * mu.radial_factor(np.linalg.norm(eval_nodes, axis=1))
        else:
            dens = np.abs(np.atleast_1d(mu.rho(eval_nodes)))
        node_masses = dens / eval_nodes.shape[0]
        mode = "monte_carlo_nodes"

    panel = []
    for label, phi in probes:
        phi_abs = (lambda Z, f=phi: np.abs(np.atleast_1d(f.evaluate(Z)))) \
            if hasattr(phi, "evaluate") else \
            (lambda Z, f=phi: np.abs(np.atleast_1d(f(Z))))
        mvals = np.array([
            norms.maximal_function(
                lambda Z: phi_abs(Z) ** (1 / alpha), w, z,
                candidates=block_candidates, seed=seed,
                samples_per_block=samples_per_block) ** alpha
            for z in eval_nodes])
        num = float(np.sum(node_masses * mvals ** q)) ** (1 / q)
        den_est = integrate_ball(lambda Z: phi_abs(Z) ** p, w,
                                 quadrature.DEFAULT_SPEC, n=n)
        den = den_est.value ** (1 / p)
        panel.append({"probe": label, "maximal_Lq": num, "phi_Lp": den,
                      "ratio": num / den if den > 0 else float("inf")})
    return {"alpha": alpha, "p": p, "q": q, "node_mode": mode,
            "panel": panel}
