"""Nonisotropic geometry of the unit ball of C^n.

The distance d(xi, tau) = |1 - <xi, tau>|^(1/2) is a metric on the closed
ball. Its balls on the sphere are the caps

    Q(xi, r) = { eta in S : |1 - <eta, xi>| <= r^2 },

and the solid regions built from them drive every estimate downstream:

* Carleson block  S_{a,alpha} = { z : |a| < |z| < 1,
      |1 - <z/|z|, a/|a|>| <= (alpha+1)(1-|a|) },  S_0 = B;
  the plain block S_a is alpha = 0.
* tube            S*(xi, r) = { z in B : |1 - <z, xi>| < r };
* admissible region  Gamma_{zeta,alpha}
      = { z in B : |1 - <z, zeta/|zeta|^2>| < (alpha/2)(1 - |z|^2/|zeta|^2) }
  for aperture alpha > 2 and zeta != 0, with Gamma_0 = {0};
* tent            T(z, alpha) = { zeta in B : z in Gamma_{zeta,alpha} }.

Membership predicates keep the mixed strict/non-strict inequalities exactly
as written above. Checks that compare two regions allow an absolute slack of
1e-12 so knife-edge floating point ties are not reported as counterexamples.

The normalized surface measure of a cap reduces to a planar integral of the
distribution of w = <eta, xi>: on the circle it is the exact arc length
(2/pi) arcsin(min(r^2, 2)/2), and for n >= 2 the density of w on the unit
disk is ((n-1)/pi)(1-|w|^2)^(n-2), integrated here in polar coordinates
around w = 1 with the angular kink split off analytically.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import beta as beta_fn

from .errors import AccuracyError, DegenerateRegionError, DomainError

EPS_COMPARE = 1e-12  # slack for region comparison checks, not for predicates


# ---------------------------------------------------------------------------
# points

def as_coords(z, n: int | None = None) -> np.ndarray:
    """Coerce a point-like object to a 1-D complex coordinate array."""
    if isinstance(z, BallPoint):
        c = z.coords
    else:
        c = np.asarray(z, dtype=complex).reshape(-1)
    if n is not None and c.shape[0] != n:
        raise DomainError(f"expected a point of C^{n}, got dimension {c.shape[0]}")
    return c


@dataclass(frozen=True, eq=False)
class BallPoint:
    """Point of the closed unit ball of C^n."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=complex).reshape(-1)
        object.__setattr__(self, "coords", c)
        if not np.all(np.isfinite(c.view(float))):
            raise DomainError("point coordinates must be finite")
        if np.linalg.norm(c) > 1 + 1e-12:
            raise DomainError(f"point lies outside the closed ball: |z| = {np.linalg.norm(c)}")

    @property
    def abs(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def dim(self) -> int:
        return int(self.coords.shape[0])

    def to_json(self) -> list:
        return [[float(c.real), float(c.imag)] for c in self.coords]

    @classmethod
    def from_json(cls, data) -> "BallPoint":
        try:
            c = np.array([complex(re, im) for re, im in data])
        except (TypeError, ValueError) as exc:
            raise DomainError(f"malformed point: {data!r}") from exc
        return cls(c)


def point_from_json(data) -> BallPoint:
    return BallPoint.from_json(data)


def hermitian_inner(z, w) -> complex:
    """<z, w> = sum z_j conj(w_j)."""
    zc, wc = as_coords(z), as_coords(w)
    if zc.shape != wc.shape:
        raise DomainError("points of different dimension")
    return complex(np.sum(zc * np.conj(wc)))


def noniso_dist(xi, tau) -> float:
    """d(xi, tau) = |1 - <xi, tau>|^(1/2) on the closed ball."""
    return math.sqrt(abs(1 - hermitian_inner(xi, tau)))


# ---------------------------------------------------------------------------
# regions

@dataclass(frozen=True, eq=False)
class Cap:
    """Boundary cap Q(xi, r), a d-ball on the sphere. Radius in (0, sqrt(2)]."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_coords(self.center)
        m = np.linalg.norm(c)
        if m < 1e-14:
            raise DomainError("cap center must be a nonzero direction")
        object.__setattr__(self, "center", c / m)
        if not 0 < self.radius <= math.sqrt(2) + 1e-12:
            raise DomainError(f"cap radius must lie in (0, sqrt(2)]: {self.radius}")

    @property
    def dim(self) -> int:
        return int(self.center.shape[0])


@dataclass(frozen=True, eq=False)
class Block:
    """Carleson block S_{a,alpha}; alpha = 0 is the standard block S_a."""

    a: np.ndarray
    alpha: float = 0.0

    def __post_init__(self):
        c = as_coords(self.a)
        object.__setattr__(self, "a", c)
        if np.linalg.norm(c) >= 1:
            raise DomainError("block vertex must lie inside the open ball")
        if self.alpha <= -1:
            raise DomainError(f"block aperture must exceed -1: {self.alpha}")

    @property
    def dim(self) -> int:
        return int(self.a.shape[0])


@dataclass(frozen=True, eq=False)
class Tube:
    """Tube S*(xi, r) around a boundary point, 0 < r < 1 typical."""

    xi: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_coords(self.xi)
        m = np.linalg.norm(c)
        if abs(m - 1) > 1e-9:
            raise DomainError("tube vertex must lie on the unit sphere")
        object.__setattr__(self, "xi", c / m)
        if self.radius <= 0:
            raise DomainError("tube radius must be positive")

    @property
    def dim(self) -> int:
        return int(self.xi.shape[0])


@dataclass(frozen=True, eq=False)
class Admissible:
    """Admissible approach region Gamma_{zeta,alpha}, aperture alpha > 2."""

    zeta: np.ndarray
    aperture: float = 4.0

    def __post_init__(self):
        c = as_coords(self.zeta)
        object.__setattr__(self, "zeta", c)
        if np.linalg.norm(c) > 1 + 1e-12:
            raise DomainError("vertex must lie in the closed ball")
        if self.aperture <= 2:
            raise DomainError(f"aperture must exceed 2: {self.aperture}")

    @property
    def dim(self) -> int:
        return int(self.zeta.shape[0])


@dataclass(frozen=True, eq=False)
class Tent:
    """Tent T(z, alpha) = { zeta in B : z in Gamma_{zeta,alpha} }."""

    z: np.ndarray
    aperture: float = 4.0

    def __post_init__(self):
        c = as_coords(self.z)
        object.__setattr__(self, "z", c)
        if np.linalg.norm(c) >= 1:
            raise DomainError("tent vertex must lie inside the open ball")
        if self.aperture <= 2:
            raise DomainError(f"aperture must exceed 2: {self.aperture}")

    @property
    def dim(self) -> int:
        return int(self.z.shape[0])


Region = Cap | Block | Tube | Admissible | Tent


def region_to_json(region: Region) -> dict:
    if isinstance(region, Cap):
        return {"kind": "cap", "center": BallPoint(region.center).to_json(),
                "radius": region.radius}
    if isinstance(region, Block):
        return {"kind": "block", "a": BallPoint(region.a).to_json(),
                "alpha": region.alpha}
    if isinstance(region, Tube):
        return {"kind": "tube", "xi": BallPoint(region.xi).to_json(),
                "radius": region.radius}
    if isinstance(region, Admissible):
        return {"kind": "admissible", "zeta": BallPoint(region.zeta).to_json(),
                "aperture": region.aperture}
    if isinstance(region, Tent):
        return {"kind": "tent", "z": BallPoint(region.z).to_json(),
                "aperture": region.aperture}
    raise DomainError(f"unknown region {region!r}")


def region_from_json(data: dict) -> Region:
    try:
        kind = data["kind"]
    except (TypeError, KeyError) as exc:
        raise DomainError("region JSON needs a 'kind' field") from exc
    if kind == "cap":
        return Cap(BallPoint.from_json(data["center"]).coords, float(data["radius"]))
    if kind == "block":
        return Block(BallPoint.from_json(data["a"]).coords, float(data.get("alpha", 0.0)))
    if kind == "tube":
        return Tube(BallPoint.from_json(data["xi"]).coords, float(data["radius"]))
    if kind == "admissible":
        return Admissible(BallPoint.from_json(data["zeta"]).coords,
                          float(data.get("aperture", 4.0)))
    if kind == "tent":
        return Tent(BallPoint.from_json(data["z"]).coords,
                    float(data.get("aperture", 4.0)))
    raise DomainError(f"unknown region kind {kind!r}")


# ---------------------------------------------------------------------------
# membership

def _as_rows(Z, n: int) -> np.ndarray:
    A = np.asarray(Z, dtype=complex)
    if A.ndim == 1:
        A = A[None, :]
    if A.shape[1] != n:
        raise DomainError(f"points have dimension {A.shape[1]}, region lives in C^{n}")
    return A


def contains_many(region: Region, Z) -> np.ndarray:
    """Vectorized membership test. Rows of Z are points of C^n."""
    A = _as_rows(Z, region.dim)
    r = np.linalg.norm(A, axis=1)

    if isinstance(region, Cap):
        ip = A @ np.conj(region.center)
        return np.abs(1 - ip) <= region.radius ** 2

    if isinstance(region, Block):
        if np.linalg.norm(region.a) == 0:
            return r < 1
        am = np.linalg.norm(region.a)
        u = region.a / am
        mask = (r > am) & (r < 1)
        out = np.zeros(A.shape[0], dtype=bool)
        if np.any(mask):
            ip = (A[mask] / r[mask, None]) @ np.conj(u)
            out[mask] = np.abs(1 - ip) <= (region.alpha + 1) * (1 - am)
        return out

    if isinstance(region, Tube):
        ip = A @ np.conj(region.xi)
        return (np.abs(1 - ip) < region.radius) & (r < 1)

    if isinstance(region, Admissible):
        zm = np.linalg.norm(region.zeta)
        if zm == 0:
            return r == 0
        ip = A @ np.conj(region.zeta) / zm ** 2
        rhs = (region.aperture / 2) * (1 - (r / zm) ** 2)
        return (np.abs(1 - ip) < rhs) & (r < 1)

    if isinstance(region, Tent):
        zm = np.linalg.norm(region.z)
        out = np.zeros(A.shape[0], dtype=bool)
        nz = r > 0
        if np.any(nz):
            ip = A[nz] @ np.conj(region.z) / r[nz] ** 2
            rhs = (region.aperture / 2) * (1 - (zm / r[nz]) ** 2)
            out[nz] = (np.abs(1 - ip) < rhs) & (r[nz] < 1)
        if zm == 0:
            out[~nz] = True  # 0 lies in Gamma_0 = {0}
        return out

    raise DomainError(f"unknown region {region!r}")


def contains(region: Region, z) -> bool:
    return bool(contains_many(region, as_coords(z, region.dim))[0])


# ---------------------------------------------------------------------------
# cap measure

@lru_cache(maxsize=4096)
def _cap_measure_cached(n: int, r2: float) -> float:
    if r2 <= 0:
        return 0.0
    r2 = min(r2, 2.0)
    if n == 1:
        return (2 / math.pi) * math.asin(r2 / 2)

    # sigma(Q) = ((n-1)/pi) * Int over {|1-w| <= r2, |w| < 1} of
    # (1-|w|^2)^(n-2) dA(w). Polar around w = 1: w = 1 - rho e^{i phi},
    # 1-|w|^2 = rho (2 cos phi - rho), rho < min(r2, 2 cos phi).
    xg, wg = leggauss(48)

    def inner_exact(c: np.ndarray, upper: np.ndarray) -> np.ndarray:
        # Int_0^upper rho^(n-1) (2c - rho)^(n-2) drho; polynomial integrand,
        # GL48 is exact for n <= 24.
        rho = 0.5 * upper[:, None] * (xg[None, :] + 1)
        vals = rho ** (n - 1) * (2 * c[:, None] - rho) ** (n - 2)
        return 0.5 * upper * (vals @ wg)

    pieces = 0.0
    phi_star = math.acos(min(r2 / 2, 1.0))
    if phi_star > 0:
        # rho-limit is r2 here
        phi = 0.5 * phi_star * (xg + 1)
        c = np.cos(phi)
        vals = inner_exact(c, np.full_like(c, r2))
        pieces += 0.5 * phi_star * float(vals @ wg)
    if phi_star < math.pi / 2:
        # rho-limit is 2 cos phi; inner integral is (2c)^(2n-2) B(n, n-1)
        half = math.pi / 2 - phi_star
        phi = phi_star + 0.5 * half * (xg + 1)
        vals = (2 * np.cos(phi)) ** (2 * n - 2) * beta_fn(n, n - 1)
        pieces += 0.5 * half * float(vals @ wg)

    sigma = (n - 1) / math.pi * 2 * pieces  # factor 2: even in phi
    return min(max(sigma, 0.0), 1.0)


def cap_measure(cap_or_radius, n: int | None = None) -> float:
    """Normalized surface measure sigma(Q(xi, r)); rotation invariant."""
    if isinstance(cap_or_radius, Cap):
        radius = cap_or_radius.radius
        n = cap_or_radius.dim
    else:
        radius = float(cap_or_radius)
        if n is None:
            raise DomainError("cap_measure needs the dimension n")
    if radius < 0:
        raise DomainError(f"cap radius must be nonnegative: {radius}")
    if n < 1:
        raise DomainError(f"dimension must be >= 1: {n}")
    return _cap_measure_cached(int(n), float(radius) ** 2)


# ---------------------------------------------------------------------------
# samplers

def sphere_points(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """m points uniform on the unit sphere of C^n, shape (m, n)."""
    z = rng.standard_normal((m, 2 * n)).view(np.complex128)
    return z / np.linalg.norm(z, axis=1)[:, None]


def ball_points(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """m points uniform w.r.t. volume in the unit ball of C^n."""
    xi = sphere_points(n, m, rng)
    r = rng.random(m) ** (1 / (2 * n))
    return xi * r[:, None]


def unitary_from_first_axis(eta: np.ndarray) -> np.ndarray:
    """Unitary matrix whose first column is the unit vector eta."""
    eta = as_coords(eta)
    n = eta.shape[0]
    if n == 1:
        return eta.reshape(1, 1)
    M = np.eye(n, dtype=complex)
    drop = int(np.argmax(np.abs(eta)))  # drop the axis most parallel to eta
    cols = [eta] + [M[:, j] for j in range(n) if j != drop]
    Q, R = np.linalg.qr(np.stack(cols, axis=1))
    # fix column phases so Q[:, 0] equals eta exactly up to rounding
    d = np.diag(R)
    Q = Q * (d / np.abs(d)).conj()[None, :]
    Q[:, 0] = eta
    return Q


def cap_directions(center: np.ndarray, radius: float, m: int,
                   rng: np.random.Generator, max_tries: int = 200) -> np.ndarray:
    """m directions distributed as sigma restricted to Q(center, radius),
    normalized; i.e. density 1/sigma(Q) w.r.t. sigma."""
    center = as_coords(center)
    n = center.shape[0]
    cm = np.linalg.norm(center)
    if cm < 1e-14:
        raise DomainError("cap center must be nonzero")
    u = center / cm
    r2 = min(float(radius) ** 2, 2.0)
    if r2 <= 0:
        raise DomainError("cap radius must be positive")

    if n == 1:
        theta_r = 2 * math.asin(min(r2 / 2, 1.0))
        th = rng.uniform(-theta_r, theta_r, size=m)
        return (np.exp(1j * th) * u[0])[:, None]

    # rejection in the w-plane against the density (1-|w|^2)^(n-2)
    if r2 <= 1:
        dens_max = (1 - (1 - r2) ** 2) ** (n - 2)
    else:
        dens_max = 1.0
    ws = np.empty(0, dtype=complex)
    for _ in range(max_tries):
        need = m - ws.shape[0]
        if need <= 0:
            break
        batch = max(4 * need, 256)
        re = rng.uniform(1 - r2, 1.0, size=batch)
        im = rng.uniform(-r2, r2, size=batch)
        w = re + 1j * im
        ok = (np.abs(1 - w) <= r2) & (np.abs(w) < 1)
        if n > 2:
            dens = np.zeros(batch)
            dens[ok] = (1 - np.abs(w[ok]) ** 2) ** (n - 2)
            ok &= rng.random(batch) * dens_max < dens
        ws = np.concatenate([ws, w[ok]])
    if ws.shape[0] < m:
        raise DegenerateRegionError("cap sampler starved; radius too small?")
    ws = ws[:m]

    # fiber: eta = w u + sqrt(1-|w|^2) v with v unit in the orthocomplement
    g = rng.standard_normal((m, 2 * n)).view(np.complex128)
    g -= (g @ np.conj(u))[:, None] * u[None, :]
    g /= np.linalg.norm(g, axis=1)[:, None]
    eta = ws[:, None] * u[None, :] + np.sqrt(1 - np.abs(ws) ** 2)[:, None] * g
    return eta


def biased_radii(r0: float, r1: float, m: int, rng: np.random.Generator,
                 bias: float = 0.5) -> tuple[np.ndarray, np.ndarray]:
    """Radii on [r0, r1) with density proportional to (1-r)^(-bias);
    returns (radii, density values). Requires bias < 1 and r1 <= 1."""
    if not 0 <= r0 < r1 <= 1:
        raise DomainError(f"bad radial shadow [{r0}, {r1})")
    if bias >= 1:
        raise DomainError("boundary bias must be < 1")
    p = 1 - bias
    a_, b_ = (1 - r0) ** p, (1 - r1) ** p
    u = rng.random(m)
    one_minus = (a_ - u * (a_ - b_)) ** (1 / p)
    r = 1 - one_minus
    dens = p * one_minus ** (-bias) / (a_ - b_)
    return r, dens


# ---------------------------------------------------------------------------
# covering families

def _seed_from(*parts) -> int:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
    return int.from_bytes(h.digest()[:8], "big")


def covering_blocks(a, alpha: float) -> list[BallPoint]:
    """Deterministic family a_1..a_k with |a_i| = |a| whose standard blocks
    cover the enlarged block S_{a,alpha}. Greedy farthest-point packing of
    cap centers inside Q(a/|a|, sqrt((1+alpha)(1-|a|))), coverage radius
    0.95 sqrt(1-|a|) for n = 1 (dense angular grid) and 0.85 sqrt(1-|a|)
    for n >= 2 (seeded dense candidates)."""
    av = as_coords(a)
    am = float(np.linalg.norm(av))
    if am >= 1:
        raise DomainError("block vertex must lie inside the ball")
    if alpha <= -1:
        raise DomainError("alpha must exceed -1")
    n = av.shape[0]
    if am == 0:
        return [BallPoint(np.zeros(n, dtype=complex))]

    u = av / am
    t = math.sqrt(1 - am)
    r_cover = math.sqrt(min((1 + alpha) * (1 - am), 2.0))

    if n == 1:
        theta_star = 2 * math.asin(min((1 + alpha) * (1 - am) / 2, 1.0))
        cand = (np.exp(1j * np.linspace(-theta_star, theta_star, 4001)) * u[0])[:, None]
        threshold = 0.95 * t
    else:
        rng = np.random.default_rng(_seed_from("covering", np.round(av, 14).tobytes(), alpha))
        cand = cap_directions(u, r_cover, 60000, rng)
        threshold = 0.85 * t

    # greedy farthest-point: start at the vertex direction, add the candidate
    # farthest from the chosen set until everything is within the threshold
    chosen = [u]
    dmin = np.sqrt(np.abs(1 - cand @ np.conj(u)))
    for _ in range(4000):
        i = int(np.argmax(dmin))
        if dmin[i] <= threshold:
            break
        nxt = cand[i]
        chosen.append(nxt)
        dmin = np.minimum(dmin, np.sqrt(np.abs(1 - cand @ np.conj(nxt))))
    else:
        raise AccuracyError("covering did not terminate within 4000 blocks")

    return [BallPoint(am * xi) for xi in chosen]


# ---------------------------------------------------------------------------
# sampled region comparisons (all comparisons use the EPS_COMPARE slack)

def _sample_tube(tube: Tube, m: int, rng: np.random.Generator) -> np.ndarray:
    """Points of S*(xi, r): planar part x with |1-x| < r, fiber y in the
    remaining ball of C^(n-1)."""
    n, r = tube.dim, tube.radius
    xs = np.empty(0, dtype=complex)
    while xs.shape[0] < m:
        batch = 4 * (m - xs.shape[0]) + 64
        x = rng.uniform(1 - r, 1, size=batch) + 1j * rng.uniform(-r, r, size=batch)
        keep = (np.abs(1 - x) < r) & (np.abs(x) < 1)
        xs = np.concatenate([xs, x[keep]])
    xs = xs[:m]
    U = unitary_from_first_axis(tube.xi)
    pts = np.zeros((m, n), dtype=complex)
    pts[:, 0] = xs
    if n > 1:
        rad = np.sqrt(1 - np.abs(xs) ** 2)
        y = ball_points(n - 1, m, rng)
        pts[:, 1:] = y * rad[:, None]
    return pts @ U.T


def _sample_block(block: Block, m: int, rng: np.random.Generator) -> np.ndarray:
    am = float(np.linalg.norm(block.a))
    if am == 0:
        return ball_points(block.dim, m, rng)
    u = block.a / am
    radius = math.sqrt(min((block.alpha + 1) * (1 - am), 2.0))
    eta = cap_directions(u, radius, m, rng)
    r = rng.uniform(am, 1.0, size=m)
    keep_angular = np.abs(1 - eta @ np.conj(u)) <= (block.alpha + 1) * (1 - am)
    return (eta * r[:, None])[keep_angular]


def _sample_tent(tent: Tent, m: int, rng: np.random.Generator) -> np.ndarray:
    """Rejection sampling of T(z, alpha) from a cap superset of directions."""
    zm = float(np.linalg.norm(tent.z))
    n, alpha = tent.dim, tent.aperture
    if zm == 0:
        raise DegenerateRegionError("tent at the origin is nearly the whole ball; sample it directly")
    zdir = tent.z / zm
    r2_sup = (alpha / 2) * (1 - zm ** 2) + (1 - zm)
    radius = math.sqrt(min(r2_sup, 2.0))
    out = np.empty((0, n), dtype=complex)
    for _ in range(200):
        if out.shape[0] >= m:
            break
        batch = 4 * (m - out.shape[0]) + 64
        tau = cap_directions(zdir, radius, batch, rng)
        rho = rng.uniform(zm, 1.0, size=batch)
        pts = tau * rho[:, None]
        out = np.concatenate([out, pts[contains_many(tent, pts)]])
    if out.shape[0] < m:
        raise DegenerateRegionError("tent sampler starved")
    return out[:m]


def tube_block_comparison_check(n: int, cases: int = 40, samples: int = 400,
                                seed: int = 0) -> dict:
    """Sampled verification of the two tube/block comparisons:
    S*(xi, r) inside S_{(1-r) xi, 2}, and S_a inside S*(a/|a|, 2(1-|a|)+eps)
    for |a| > 1/2. Returns counts and the worst violation margins."""
    rng = np.random.default_rng(seed)
    worst_tb = -math.inf
    worst_bt = -math.inf
    checked = 0
    for _ in range(cases):
        xi = sphere_points(n, 1, rng)[0]
        r = rng.uniform(0.05, 0.95)
        tube = Tube(xi, r)
        block = Block((1 - r) * xi, 2.0)
        pts = _sample_tube(tube, samples, rng)
        rr = np.linalg.norm(pts, axis=1)
        am = 1 - r
        # margin > 0 means the block membership fails by that much
        ang = np.abs(1 - (pts / rr[:, None]) @ np.conj(xi)) - 3 * (1 - am)
        rad = am - rr
        worst_tb = max(worst_tb, float(np.max(np.maximum(ang, rad))))
        checked += pts.shape[0]

        amag = rng.uniform(0.55, 0.995)
        adir = sphere_points(n, 1, rng)[0]
        eps_r = min(0.5 * (1 - 2 * (1 - amag)), 0.02)
        rtube = 2 * (1 - amag) + eps_r
        bpts = _sample_block(Block(amag * adir, 0.0), samples, rng)
        if bpts.shape[0]:
            marg = np.abs(1 - bpts @ np.conj(adir)) - rtube
            worst_bt = max(worst_bt, float(np.max(marg)))
            checked += bpts.shape[0]
    return {
        "dimension": n,
        "cases": cases,
        "points_checked": checked,
        "worst_tube_in_block_margin": worst_tb,
        "worst_block_in_tube_margin": worst_bt,
        "tube_in_block_ok": worst_tb <= EPS_COMPARE,
        "block_in_tube_ok": worst_bt <= EPS_COMPARE,
    }


def admissible_equivariance_check(n: int, samples: int = 1000, seed: int = 0) -> dict:
    """z in Gamma_{zeta} iff t z in Gamma_{t zeta} for 0 < t <= 1; counts
    disagreements whose margins exceed the comparison slack."""
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(samples):
        alpha = rng.uniform(2.2, 8.0)
        zeta = sphere_points(n, 1, rng)[0] * rng.uniform(0.1, 1.0)
        z = ball_points(n, 1, rng)[0]
        t = rng.uniform(0.05, 1.0)
        zm = np.linalg.norm(zeta)
        # np.vdot(zeta, z) = sum conj(zeta_j) z_j = <z, zeta>
        lhs_margin = (alpha / 2) * (1 - (np.linalg.norm(z) / zm) ** 2) \
            - abs(1 - np.vdot(zeta, z) / zm ** 2)
        tz, tzeta = t * z, t * zeta
        rhs_margin = (alpha / 2) * (1 - (np.linalg.norm(tz) / (t * zm)) ** 2) \
            - abs(1 - np.vdot(tzeta, tz) / (t * zm) ** 2)
        if (lhs_margin > 0) != (rhs_margin > 0):
            if min(abs(lhs_margin), abs(rhs_margin)) > EPS_COMPARE:
                bad += 1
    return {"dimension": n, "samples": samples, "counterexamples": bad}


def tent_in_block_check(n: int, cases: int = 50, samples: int = 200,
                        seed: int = 0) -> dict:
    """Every sampled zeta in T(z, alpha) must lie in S_{z,alpha}."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    checked = 0
    for _ in range(cases):
        alpha = rng.uniform(2.2, 8.0)
        zm = rng.uniform(0.05, 0.995)
        z = sphere_points(n, 1, rng)[0] * zm
        tent = Tent(z, alpha)
        try:
            pts = _sample_tent(tent, samples, rng)
        except DegenerateRegionError:
            continue
        rr = np.linalg.norm(pts, axis=1)
        ang = np.abs(1 - (pts / rr[:, None]) @ np.conj(z / zm)) - (alpha + 1) * (1 - zm)
        rad = zm - rr
        worst = max(worst, float(np.max(np.maximum(ang, rad))))
        checked += pts.shape[0]
    return {
        "dimension": n,
        "points_checked": checked,
        "worst_margin": worst,
        "ok": worst <= EPS_COMPARE,
    }
