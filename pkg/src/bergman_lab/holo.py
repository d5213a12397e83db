"""Symbolic holomorphic functions closed under the radial derivative.

Three runtime node types cover everything the laboratory needs:

* Poly: sparse multivariate polynomial, a canonical map from multi-indices
  to complex coefficients. Exact under evaluation, addition, product,
  radial derivative (each term picks up the factor |beta|) and dilation.
* KernelPiece: scale * (1-|a|^2)^s * <z,a>^m * (1-<z,a>)^(-t), principal
  branch (the base has positive real part on the ball). The familiar nodes
  are the special cases KernelPower (m=0, t=s, the test-function shape
  ((1-|a|^2)/(1-<z,a>))^s) and KernelDerivative (m=1, t=s+1). The family
  is closed under the radial derivative via
      R piece(m, t) = m piece(m, t) + t piece(m+1, t+1),
  and dilation z -> rho z is absorbed exactly by moving the vertex to
  rho a and rescaling, so no dilation wrapper survives simplification.
* SumFun: a flat sum of the above with polynomials merged.

Spherical second moments are exact: polynomials by monomial orthogonality,
kernel pieces by the hypergeometric reduction

    mean_S (1-<r xi,a>)^(-b) (1-<a,r xi>)^(-c) dsigma = 2F1(b, c; n; r^2|a|^2),

extended to m > 0 through the binomial expansion of <z,a>^m = (1-(1-<z,a>))^m.
The same reduction gives exact p-th moments of KernelPower nodes for every
p > 0, which is what the test-function norm brackets run on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import hyp2f1

from .errors import DomainError, UnsupportedRegimeError
from .quadrature import sphere_monomial_pairing

__all__ = [
    "Poly", "KernelPiece", "SumFun", "Monomial", "KernelPower",
    "KernelDerivative", "Sum", "Dilate", "dilate", "radial_derivative",
    "evaluate", "test_function", "kernel_antiderivative", "as_polynomial",
    "random_polynomial", "function_to_json", "function_from_json",
]


def _rows(Z, n: int) -> tuple[np.ndarray, bool]:
    if hasattr(Z, "coords"):
        Z = Z.coords
    A = np.asarray(Z, dtype=complex)
    scalar = A.ndim == 1
    if scalar:
        A = A[None, :]
    if A.ndim != 2 or A.shape[1] != n:
        raise DomainError(f"points must be rows of C^{n}")
    return A, scalar


def _shape_out(vals: np.ndarray, scalar: bool):
    return complex(vals[0]) if scalar else vals


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True, eq=False)
class Poly:
    """Sparse polynomial sum_beta c_beta z^beta, canonically ordered."""

    dim: int
    terms: tuple  # ((beta tuple, complex coefficient), ...)
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        clean = {}
        for beta, c in self.terms:
            beta = tuple(int(b) for b in beta)
            if len(beta) != self.dim or any(b < 0 for b in beta):
                raise DomainError(f"bad multi-index {beta} in C^{self.dim}")
            c = complex(c)
            if c != 0:
                clean[beta] = clean.get(beta, 0) + c
        object.__setattr__(self, "terms",
                           tuple(sorted((b, c) for b, c in clean.items()
                                        if c != 0)))

    @property
    def degree(self) -> int:
        return max((sum(b) for b, _ in self.terms), default=0)

    def evaluate(self, Z):
        A, scalar = _rows(Z, self.dim)
        out = np.zeros(A.shape[0], dtype=complex)
        for beta, c in self.terms:
            out += c * np.prod(A ** np.array(beta), axis=1)
        return _shape_out(out, scalar)

    __call__ = evaluate

    def radial_derivative(self) -> "Poly":
        return Poly(self.dim, tuple((b, c * sum(b)) for b, c in self.terms))

    def dilate(self, rho: float) -> "Poly":
        return Poly(self.dim, tuple((b, c * rho ** sum(b))
                                    for b, c in self.terms))

    def __add__(self, other):
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DomainError("dimension mismatch")
            return Poly(self.dim, self.terms + other.terms)
        return Sum([self, other])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Poly(self.dim, tuple((b, c * other) for b, c in self.terms))
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DomainError("dimension mismatch")
            prod: dict = {}
            for b1, c1 in self.terms:
                for b2, c2 in other.terms:
                    key = tuple(x + y for x, y in zip(b1, b2))
                    prod[key] = prod.get(key, 0) + c1 * c2
            return Poly(self.dim, tuple(prod.items()))
        return NotImplemented

    __rmul__ = __mul__

    def sphere_mean_abs2(self, t) -> np.ndarray:
        """Exact mean of |f(t xi)|^2 over the sphere; cross terms vanish."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for beta, c in self.terms:
            out = out + (abs(c) ** 2
                         * sphere_monomial_pairing(beta, beta, self.dim)
                         * t ** (2 * sum(beta)))
        return out

    def to_json(self) -> dict:
        return {"kind": "poly",
                "terms": [[list(b), c.real, c.imag] for b, c in self.terms]}


def Monomial(beta, c=1.0) -> Poly:
    """Single term c z^beta."""
    beta = tuple(int(b) for b in beta)
    return Poly(len(beta), ((beta, complex(c)),))


# ---------------------------------------------------------------------------
# kernel pieces

@dataclass(frozen=True, eq=False)
class KernelPiece:
    """scale * (1-|a|^2)^s * <z,a>^m * (1-<z,a>)^(-t), principal branch."""

    a: np.ndarray
    s: float
    m: int
    t: float
    scale: complex = 1.0
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if hasattr(self.a, "coords"):
            object.__setattr__(self, "a", self.a.coords)
        a = np.asarray(self.a, dtype=complex).reshape(-1)
        object.__setattr__(self, "a", a)
        if np.linalg.norm(a) >= 1:
            raise DomainError("kernel vertex must lie inside the open ball")
        if self.s <= 0:
            raise DomainError(f"kernel exponent s must be positive: {self.s}")
        if self.m < 0:
            raise DomainError("monomial factor power must be nonnegative")
        object.__setattr__(self, "scale", complex(self.scale))

    @property
    def dim(self) -> int:
        return int(self.a.shape[0])

    def evaluate(self, Z):
        A, scalar = _rows(Z, self.dim)
        u = A @ np.conj(self.a)
        amp = (1 - float(np.linalg.norm(self.a)) ** 2) ** self.s
        vals = self.scale * amp * u ** self.m * (1 - u) ** (-self.t)
        return _shape_out(vals, scalar)

    __call__ = evaluate

    def radial_derivative(self):
        parts = []
        if self.m > 0:
            parts.append(KernelPiece(self.a, self.s, self.m, self.t,
                                     self.scale * self.m))
        if self.t != 0:
            parts.append(KernelPiece(self.a, self.s, self.m + 1, self.t + 1,
                                     self.scale * self.t))
        if not parts:
            return Poly(self.dim, ())
        return parts[0] if len(parts) == 1 else SumFun(tuple(parts))

    def dilate(self, rho: float) -> "KernelPiece":
        if rho == 1.0:
            return self
        am2 = float(np.linalg.norm(self.a)) ** 2
        factor = ((1 - am2) / (1 - rho ** 2 * am2)) ** self.s
        return KernelPiece(rho * self.a, self.s, self.m, self.t,
                           self.scale * factor)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return KernelPiece(self.a, self.s, self.m, self.t,
                               self.scale * other)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        return Sum([self, other])

    def sphere_mean_abs2(self, t) -> np.ndarray:
        return _kernel_pair_mean(self, self, t)

    def sphere_mean_abs_pow(self, t, p: float) -> np.ndarray:
        """Exact mean of |f(t xi)|^p for pure kernel powers (m = 0)."""
        if self.m != 0:
            raise UnsupportedRegimeError(
                "exact p-th spherical moments need a pure kernel power")
        t = np.asarray(t, dtype=float)
        x2 = (t * float(np.linalg.norm(self.a))) ** 2
        amp = (1 - float(np.linalg.norm(self.a)) ** 2) ** (self.s * p)
        h = hyp2f1(self.t * p / 2, self.t * p / 2, self.dim, x2)
        return abs(self.scale) ** p * amp * h

    def to_json(self) -> dict:
        out = {"kind": "kernel",
               "a": [[z.real, z.imag] for z in self.a],
               "p": self.s}
        if self.m != 0 or self.t != self.s:
            out["m"] = self.m
            out["t"] = self.t
        if self.scale != 1:
            out["scale"] = [self.scale.real, self.scale.imag]
        return out


def _kernel_pair_mean(f: KernelPiece, g: KernelPiece, t) -> np.ndarray:
    """Exact spherical mean of f(t xi) conj(g(t xi)) for pieces sharing a
    vertex, via the two-parameter hypergeometric reduction; real part is
    taken by the caller when summing a Hermitian combination."""
    if f.dim != g.dim or not np.array_equal(f.a, g.a):
        raise UnsupportedRegimeError("exact pair means need a shared vertex")
    t = np.asarray(t, dtype=float)
    n = f.dim
    am = float(np.linalg.norm(f.a))
    x2 = (t * am) ** 2
    amp = (1 - am ** 2) ** (f.s + g.s)
    acc = np.zeros_like(t)
    for i in range(f.m + 1):
        ci = math.comb(f.m, i) * (-1) ** i
        for j in range(g.m + 1):
            cj = math.comb(g.m, j) * (-1) ** j
            acc = acc + ci * cj * hyp2f1(f.t - i, g.t - j, n, x2)
    return (f.scale * np.conj(g.scale)).real * amp * acc


def KernelPower(a, s: float, scale=1.0) -> KernelPiece:
    """scale * ((1-|a|^2)/(1-<z,a>))^s."""
    return KernelPiece(a, float(s), 0, float(s), scale)


def KernelDerivative(a, s: float, scale=1.0) -> KernelPiece:
    """scale * (1-|a|^2)^s <z,a> (1-<z,a>)^(-s-1), i.e. (1/s) R KernelPower."""
    return KernelPiece(a, float(s), 1, float(s) + 1, scale)


# ---------------------------------------------------------------------------
# sums

@dataclass(frozen=True, eq=False)
class SumFun:
    """Flat sum of polynomial and kernel nodes (at most one Poly)."""

    parts: tuple
    meta: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        dims = {p.dim for p in self.parts}
        if len(dims) != 1:
            raise DomainError("sum parts must share a dimension")

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    def evaluate(self, Z):
        A, scalar = _rows(Z, self.dim)
        out = np.zeros(A.shape[0], dtype=complex)
        for p in self.parts:
            out = out + np.atleast_1d(p.evaluate(A))
        return _shape_out(out, scalar)

    __call__ = evaluate

    def radial_derivative(self):
        return Sum([p.radial_derivative() for p in self.parts])

    def dilate(self, rho: float):
        return Sum([p.dilate(rho) for p in self.parts])

    def __add__(self, other):
        return Sum([self, other])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Sum([p * other for p in self.parts])
        return NotImplemented

    __rmul__ = __mul__

    def sphere_mean_abs2(self, t) -> np.ndarray:
        kernels = [p for p in self.parts if isinstance(p, KernelPiece)]
        if len(kernels) != len(self.parts):
            raise UnsupportedRegimeError(
                "exact second moments of mixed sums are not available")
        a0 = kernels[0].a
        if not all(np.array_equal(k.a, a0) for k in kernels):
            raise UnsupportedRegimeError(
                "exact second moments need a shared kernel vertex")
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for f in kernels:
            for g in kernels:
                acc = acc + _kernel_pair_mean(f, g, t)
        return acc

    def to_json(self) -> dict:
        return {"kind": "sum", "parts": [p.to_json() for p in self.parts]}


def Sum(parts) -> Poly | KernelPiece | SumFun:
    """Flatten, merge polynomials, drop empty parts."""
    flat: list = []
    for p in parts:
        if isinstance(p, SumFun):
            flat.extend(p.parts)
        else:
            flat.append(p)
    polys = [p for p in flat if isinstance(p, Poly)]
    rest = [p for p in flat if not isinstance(p, Poly)]
    merged: list = []
    if polys:
        dim = polys[0].dim
        total = Poly(dim, tuple(t for p in polys for t in p.terms))
        if total.terms or not rest:
            merged.append(total)
    merged.extend(rest)
    if not merged:
        raise DomainError("empty sum")
    return merged[0] if len(merged) == 1 else SumFun(tuple(merged))


HoloFun = Poly | KernelPiece | SumFun


# ---------------------------------------------------------------------------
# module-level operations

def evaluate(f: HoloFun, z):
    return f.evaluate(z)


def radial_derivative(f: HoloFun) -> HoloFun:
    """R f = sum_j z_j df/dz_j, exact on every node."""
    return f.radial_derivative()


def dilate(f: HoloFun, rho: float) -> HoloFun:
    """f_rho(z) = f(rho z), simplified exactly into the same node family."""
    if not 0 < rho <= 1:
        raise DomainError(f"dilation factor must lie in (0, 1]: {rho}")
    return f.dilate(float(rho))


Dilate = dilate


def as_polynomial(f: HoloFun) -> Poly | None:
    return f if isinstance(f, Poly) else None


def test_function(a, p: float, w) -> KernelPiece:
    """The unit-bump family F_{a,p} = ((1-|a|^2)/(1-<z,a>))^((gamma+n)/p).

    gamma = max(2n+2, ceil(beta)+n+3) where beta is the fitted tail
    exponent of the weight, comfortably above the beta+n+1 threshold the
    norm comparison needs; the choice is recorded in the node metadata.
    |F_{a,p}| is comparable to 1 on the block S_a.
    """
    from .weights import classify

    if p <= 0:
        raise DomainError(f"exponent p must be positive: {p}")
    if hasattr(a, "coords"):
        a = a.coords
    a = np.asarray(a, dtype=complex).reshape(-1)
    n = a.shape[0]
    beta = classify(w).tail_exponent
    gamma = max(2 * n + 2, math.ceil(beta) + n + 3)
    s = (gamma + n) / p
    piece = KernelPiece(a, s, 0, s, 1.0,
                        meta={"gamma": gamma, "p": p, "tail_exponent": beta})
    return piece


def kernel_antiderivative(f: KernelPiece) -> KernelPiece:
    """Diagnostic partial inverse of the radial derivative for pure kernel
    powers with s > 1: returns g with R g = <z,a> f(z) exactly (so |R g|
    is comparable to |f| away from the vertex's orthogonal slice)."""
    if not isinstance(f, KernelPiece) or f.m != 0 or f.t != f.s:
        raise UnsupportedRegimeError("antiderivative needs a pure kernel power")
    if f.s <= 1:
        raise DomainError("antiderivative needs s > 1")
    am2 = float(np.linalg.norm(f.a)) ** 2
    return KernelPiece(f.a, f.s - 1, 0, f.s - 1,
                       f.scale * (1 - am2) / (f.s - 1))


def random_polynomial(n: int, max_degree: int, rng: np.random.Generator,
                      terms: int = 6) -> Poly:
    """Random sparse polynomial with standard complex normal coefficients."""
    chosen = {}
    for _ in range(terms):
        deg = int(rng.integers(0, max_degree + 1))
        cuts = np.sort(rng.integers(0, deg + 1, size=n - 1)) if n > 1 else np.array([], dtype=int)
        beta = tuple(np.diff(np.concatenate([[0], cuts, [deg]])).astype(int))
        chosen[beta] = complex(rng.standard_normal(), rng.standard_normal())
    return Poly(n, tuple(chosen.items()))


# ---------------------------------------------------------------------------
# JSON

def function_to_json(f: HoloFun) -> dict:
    return f.to_json()


def function_from_json(data: dict) -> HoloFun:
    if not isinstance(data, dict) or "kind" not in data:
        raise DomainError("function JSON must be an object with a kind")
    kind = data["kind"]
    if kind == "poly":
        terms = []
        for entry in data["terms"]:
            beta, re, im = entry
            terms.append((tuple(int(b) for b in beta), complex(re, im)))
        if not terms:
            raise DomainError("poly JSON needs at least one term")
        return Poly(len(terms[0][0]), tuple(terms))
    if kind == "kernel":
        a = np.array([complex(re, im) for re, im in data["a"]])
        s = float(data["p"])
        m = int(data.get("m", 0))
        t = float(data.get("t", s))
        sc = data.get("scale", [1.0, 0.0])
        return KernelPiece(a, s, m, t, complex(sc[0], sc[1]))
    if kind == "dilate":
        return dilate(function_from_json(data["inner"]), float(data["r"]))
    if kind == "sum":
        return Sum([function_from_json(p) for p in data["parts"]])
    raise DomainError(f"unknown function kind {kind!r}")
