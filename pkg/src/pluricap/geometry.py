"""Points, balls and regions of a generic subspace G = C^m x R^(n-m) of C^n.

Points of C^n are complex arrays of shape ``(N, n)``. A point of G has real
coordinates ``[Re z_1, Im z_1, ..., Re z_m, Im z_m, x_{m+1}, ..., x_n]``; the
two views are converted with :meth:`AmbientSpace.to_complex` and
:meth:`AmbientSpace.to_real`.

Regions are declarative: each carries a bounding ball and an exact membership
predicate, and every Monte-Carlo estimate in the package only ever calls
``contains``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special
from scipy.stats import qmc

from . import _rng
from ._jsonio import SCHEMA_VERSION, cx, from_cx, from_num, num

# relative slack used by membership tests on closed sets
_EDGE = 1e-12


class GeometryError(ValueError):
    pass


class SearchError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# spaces and balls


@dataclass(frozen=True)
class AmbientSpace:
    """The generic subspace C^m x R^(n-m) of C^n (``m = n`` means G = C^n)."""

    n: int
    m: int | None = None

    def __post_init__(self):
        if self.m is None:
            object.__setattr__(self, "m", self.n)
        if self.n < 1 or not 0 <= self.m <= self.n:
            raise GeometryError(f"need 0 <= m <= n and n >= 1, got n={self.n}, m={self.m}")

    @property
    def full_complex(self) -> bool:
        return self.m == self.n

    @property
    def real_dim(self) -> int:
        return self.n + self.m

    def to_complex(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        m = self.m
        z = np.empty((x.shape[0], self.n), dtype=complex)
        if m:
            z[:, :m] = x[:, 0:2 * m:2] + 1j * x[:, 1:2 * m:2]
        z[:, m:] = x[:, 2 * m:]
        return z

    def to_real(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        m = self.m
        x = np.empty((z.shape[0], self.real_dim))
        if m:
            x[:, 0:2 * m:2] = z[:, :m].real
            x[:, 1:2 * m:2] = z[:, :m].imag
        x[:, 2 * m:] = z[:, m:].real
        return x

    def to_json(self):
        return {"n": self.n, "m": self.m}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["n"]), None if d.get("m") is None else int(d["m"]))


def unit_ball_volume(k: int) -> float:
    """Volume of the euclidean unit ball of R^k."""
    if int(k) != k or k < 1:
        raise GeometryError(f"dimension must be a positive integer, got {k!r}")
    k = int(k)
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def sphere_area(k: int) -> float:
    """Surface measure of the unit sphere S^(k-1) in R^k."""
    return k * unit_ball_volume(k)


def _unit_ball_sample(gen, size, dim):
    g = gen.standard_normal((size, dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = gen.random(size) ** (1.0 / dim)
    return g * r[:, None]


def _unit_sphere_sample(gen, size, dim):
    g = gen.standard_normal((size, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@dataclass(frozen=True)
class Ball:
    """Closed euclidean ball of G; ``center`` is a point of G given in C^n."""

    center: tuple
    radius: float
    space: AmbientSpace

    def __post_init__(self):
        c = tuple(complex(v) for v in np.atleast_1d(self.center))
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        if len(c) != self.space.n:
            raise GeometryError("center dimension does not match the ambient space")
        if not self.radius > 0:
            raise GeometryError(f"radius must be positive, got {self.radius}")
        if any(abs(v.imag) > 0 for v in c[self.space.m:]):
            raise GeometryError("center must lie in the generic subspace")

    @classmethod
    def complex_ball(cls, center, radius):
        center = np.atleast_1d(np.asarray(center, dtype=complex))
        return cls(tuple(center), radius, AmbientSpace(len(center)))

    @classmethod
    def unit(cls, n: int, m: int | None = None):
        return cls((0j,) * n, 1.0, AmbientSpace(n, m))

    @property
    def dim(self) -> int:
        return self.space.real_dim

    @property
    def center_array(self) -> np.ndarray:
        return np.asarray(self.center, dtype=complex)

    @property
    def center_real(self) -> np.ndarray:
        return self.space.to_real(self.center_array)[0]

    @property
    def volume(self) -> float:
        return unit_ball_volume(self.dim) * self.radius ** self.dim

    def contains(self, z) -> np.ndarray:
        x = self.space.to_real(z) - self.center_real
        return np.einsum("ij,ij->i", x, x) <= self.radius ** 2 * (1 + _EDGE)

    def sample(self, gen, size) -> np.ndarray:
        x = self.center_real + self.radius * _unit_ball_sample(gen, size, self.dim)
        return self.space.to_complex(x)

    def sample_boundary(self, gen, size) -> np.ndarray:
        x = self.center_real + self.radius * _unit_sphere_sample(gen, size, self.dim)
        return self.space.to_complex(x)

    def to_json(self):
        return {"center": [cx(c) for c in self.center], "radius": self.radius,
                "space": self.space.to_json()}

    @classmethod
    def from_json(cls, d):
        space = AmbientSpace.from_json(d["space"]) if "space" in d else AmbientSpace(len(d["center"]))
        return cls(tuple(from_cx(c) for c in d["center"]), float(d["radius"]), space)


def enclosing_ball(balls: Sequence[Ball]) -> Ball:
    """A ball containing every ball of the list (not necessarily the smallest)."""
    space = balls[0].space
    centers = np.array([b.center_real for b in balls])
    c = centers.mean(axis=0)
    r = max(np.linalg.norm(b.center_real - c) + b.radius for b in balls)
    return Ball(tuple(space.to_complex(c)[0]), r, space)


# ---------------------------------------------------------------------------
# plane factors of product sets


@dataclass(frozen=True)
class PlaneDisc:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise GeometryError("disc radius must be positive")

    def contains(self, w):
        return np.abs(w - self.center) <= self.radius * (1 + _EDGE)

    @property
    def mid(self):
        return self.center

    @property
    def half_width(self):
        return self.radius

    def to_json(self):
        return {"type": "disc", "center": cx(self.center), "radius": self.radius}


@dataclass(frozen=True)
class PlaneInterval:
    """Real segment [a, b] of the real axis."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not self.b > self.a:
            raise GeometryError("interval needs a < b")

    def contains(self, w):
        w = np.asarray(w)
        scale = max(1.0, abs(self.a), abs(self.b))
        tol = _EDGE * scale
        return (np.abs(w.imag) <= tol) & (w.real >= self.a - tol) & (w.real <= self.b + tol)

    @property
    def mid(self):
        return complex(0.5 * (self.a + self.b))

    @property
    def half_width(self):
        return 0.5 * (self.b - self.a)

    def to_json(self):
        return {"type": "interval", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class PlanePoints:
    """A finite subset of C (a polar set)."""

    points: tuple

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        if not pts:
            raise GeometryError("empty point set")
        object.__setattr__(self, "points", pts)

    def contains(self, w):
        w = np.asarray(w)
        p = np.asarray(self.points)
        return np.min(np.abs(w[..., None] - p), axis=-1) <= _EDGE

    @property
    def mid(self):
        return complex(np.mean(self.points))

    @property
    def half_width(self):
        m = self.mid
        return max(max(abs(p - m) for p in self.points), 1e-300)

    def to_json(self):
        return {"type": "points", "points": [cx(p) for p in self.points]}


def plane_set_from_json(d):
    kind = d["type"]
    if kind == "disc":
        return PlaneDisc(from_cx(d["center"]), float(d["radius"]))
    if kind == "interval":
        return PlaneInterval(float(d["a"]), float(d["b"]))
    if kind == "points":
        return PlanePoints(tuple(from_cx(p) for p in d["points"]))
    raise GeometryError(f"unknown plane set type {kind!r}")


# ---------------------------------------------------------------------------
# regions

PSH_FUNCTIONS: dict[str, Callable[[dict], Callable]] = {}


def register_psh_function(name: str):
    """Register a factory ``params -> (z -> values)`` usable by sublevel regions."""

    def deco(factory):
        PSH_FUNCTIONS[name] = factory
        return factory

    return deco


class Region:
    """Base class; subclasses define ``_member`` and ``to_json``."""

    bounding_ball: Ball

    @property
    def space(self) -> AmbientSpace:
        return self.bounding_ball.space

    def contains(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        return self._member(z) & self.bounding_ball.contains(z)

    def _member(self, z):
        raise NotImplementedError

    def sample(self, gen, size, max_rounds=200) -> np.ndarray:
        """Uniform points of the region by rejection from the bounding ball."""
        out, have = [], 0
        for _ in range(max_rounds):
            z = self.bounding_ball.sample(gen, max(size, 256))
            z = z[self.contains(z)]
            out.append(z)
            have += len(z)
            if have >= size:
                break
        pts = np.concatenate(out) if out else np.empty((0, self.space.n), complex)
        return pts[:size]


@dataclass(frozen=True)
class BallRegion(Region):
    ball: Ball
    bounding_ball: Ball = None

    def __post_init__(self):
        if self.bounding_ball is None:
            object.__setattr__(self, "bounding_ball", self.ball)

    def _member(self, z):
        return self.ball.contains(z)

    def to_json(self):
        d = {"type": "ball", "ball": self.ball.to_json()}
        if self.bounding_ball != self.ball:
            d["bounding_ball"] = self.bounding_ball.to_json()
        return d


@dataclass(frozen=True)
class BoxRegion(Region):
    """Coordinate box of G (real coordinates); infinite bounds are allowed."""

    lo: tuple
    hi: tuple
    bounding_ball: Ball

    def __post_init__(self):
        lo = tuple(-math.inf if v is None else float(v) for v in self.lo)
        hi = tuple(math.inf if v is None else float(v) for v in self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != self.space.real_dim or len(hi) != self.space.real_dim:
            raise GeometryError("box bounds must have one entry per real coordinate of G")
        if any(h < l for l, h in zip(lo, hi)):
            raise GeometryError("box needs lo <= hi")

    def _member(self, z):
        x = self.space.to_real(z)
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        tol = _EDGE * np.maximum(1.0, np.maximum(np.abs(np.where(np.isfinite(lo), lo, 0)),
                                                 np.abs(np.where(np.isfinite(hi), hi, 0))))
        return np.all((x >= lo - tol) & (x <= hi + tol), axis=1)

    @property
    def bounded(self) -> bool:
        return all(map(math.isfinite, self.lo + self.hi))

    def to_json(self):
        return {"type": "box", "lo": [num(v) if math.isfinite(v) else None for v in self.lo],
                "hi": [num(v) if math.isfinite(v) else None for v in self.hi],
                "bounding_ball": self.bounding_ball.to_json()}


@dataclass(frozen=True)
class ProductRegion(Region):
    """Product K_1 x ... x K_n of plane sets, one per coordinate of C^n."""

    factors: tuple
    space_: AmbientSpace = None
    bounding_ball: Ball = None

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        space = self.space_ or AmbientSpace(len(factors))
        object.__setattr__(self, "space_", space)
        if len(factors) != space.n:
            raise GeometryError("one plane factor per complex coordinate is required")
        for f in factors[space.m:]:
            if not isinstance(f, PlaneInterval) and not (
                    isinstance(f, PlanePoints) and all(p.imag == 0 for p in f.points)):
                raise GeometryError("real coordinates of G accept only real factors")
        if self.bounding_ball is None:
            center = tuple(f.mid for f in factors)
            radius = math.sqrt(sum(f.half_width ** 2 for f in factors))
            object.__setattr__(self, "bounding_ball", Ball(center, radius, space))

    def _member(self, z):
        ok = np.ones(z.shape[0], dtype=bool)
        for j, f in enumerate(self.factors):
            ok &= f.contains(z[:, j])
        return ok

    def to_json(self):
        return {"type": "product", "factors": [f.to_json() for f in self.factors],
                "space": self.space_.to_json(), "bounding_ball": self.bounding_ball.to_json()}


@dataclass(frozen=True)
class LemniscateRegion(Region):
    """{z : |P(z)| <= threshold} inside the bounding ball."""

    poly: object
    threshold: float
    bounding_ball: Ball

    def _member(self, z):
        return np.abs(self.poly(z)) <= self.threshold

    def to_json(self):
        return {"type": "lemniscate", "poly": self.poly.to_json(), "threshold": self.threshold,
                "bounding_ball": self.bounding_ball.to_json()}


@dataclass(frozen=True)
class SublevelRegion(Region):
    """{z : u(z) <= -s} inside the bounding ball, for a registered psh function u."""

    function: str
    params: dict
    s: float
    bounding_ball: Ball
    func: Callable = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.func is None:
            _ensure_registry()
            if self.function not in PSH_FUNCTIONS:
                raise GeometryError(f"unknown psh function id {self.function!r}")
            object.__setattr__(self, "func", PSH_FUNCTIONS[self.function](self.params))

    def _member(self, z):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.func(z) <= -self.s

    def to_json(self):
        return {"type": "sublevel", "function": self.function, "params": self.params, "s": self.s,
                "bounding_ball": self.bounding_ball.to_json()}


@dataclass(frozen=True)
class UnionRegion(Region):
    members: tuple
    bounding_ball: Ball = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise GeometryError("empty union")
        if self.bounding_ball is None:
            object.__setattr__(self, "bounding_ball", enclosing_ball([k.bounding_ball for k in self.members]))

    def _member(self, z):
        ok = np.zeros(z.shape[0], dtype=bool)
        for k in self.members:
            ok |= k.contains(z)
        return ok

    def to_json(self):
        return {"type": "union", "members": [k.to_json() for k in self.members],
                "bounding_ball": self.bounding_ball.to_json()}


@dataclass(frozen=True)
class IntersectionRegion(Region):
    members: tuple
    bounding_ball: Ball = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise GeometryError("empty intersection")
        if self.bounding_ball is None:
            object.__setattr__(self, "bounding_ball", min((k.bounding_ball for k in self.members),
                                                          key=lambda b: b.radius))

    def _member(self, z):
        ok = np.ones(z.shape[0], dtype=bool)
        for k in self.members:
            ok &= k.contains(z)
        return ok

    def to_json(self):
        return {"type": "intersection", "members": [k.to_json() for k in self.members],
                "bounding_ball": self.bounding_ball.to_json()}


def _ensure_registry():
    # the psh function factories live next to the classes that define them
    from . import integrability, ma_capacity  # noqa: F401


def region_from_json(d) -> Region:
    """Rebuild a region from its JSON form (see ``Region.to_json``)."""
    kind = d.get("type")
    bb = Ball.from_json(d["bounding_ball"]) if d.get("bounding_ball") else None
    if kind == "ball":
        return BallRegion(Ball.from_json(d["ball"]), bb)
    if kind == "box":
        return BoxRegion(tuple(from_num(v) for v in d["lo"]), tuple(from_num(v) for v in d["hi"]), bb)
    if kind == "product":
        space = AmbientSpace.from_json(d["space"]) if d.get("space") else None
        return ProductRegion(tuple(plane_set_from_json(f) for f in d["factors"]), space, bb)
    if kind == "lemniscate":
        from .polynomials import Polynomial
        return LemniscateRegion(Polynomial.from_json(d["poly"]), float(d["threshold"]), bb)
    if kind == "sublevel":
        return SublevelRegion(d["function"], dict(d.get("params", {})), float(d["s"]), bb)
    if kind == "union":
        return UnionRegion(tuple(region_from_json(k) for k in d["members"]), bb)
    if kind == "intersection":
        return IntersectionRegion(tuple(region_from_json(k) for k in d["members"]), bb)
    raise GeometryError(f"unknown region type {kind!r}")


def region_or_ball_from_json(d):
    if "type" not in d and "radius" in d:
        return Ball.from_json(d)
    return region_from_json(d)


# ---------------------------------------------------------------------------
# Monte-Carlo volumes


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int
    hits: int = 0
    reference_volume: float = 1.0

    @property
    def fraction(self) -> float:
        return self.value / self.reference_volume

    @property
    def fraction_error(self) -> float:
        return self.std_error / self.reference_volume

    def interval(self, k: float = 3.0) -> tuple[float, float]:
        return self.value - k * self.std_error, self.value + k * self.std_error

    def to_json(self):
        return {"kind": "volume_estimate", "schema_version": SCHEMA_VERSION, "value": self.value,
                "std_error": self.std_error, "n_samples": self.n_samples, "seed": self.seed,
                "hits": self.hits, "reference_volume": self.reference_volume}

    @classmethod
    def from_json(cls, d):
        return cls(float(d["value"]), float(d["std_error"]), int(d["n_samples"]), int(d["seed"]),
                   int(d.get("hits", 0)), float(d.get("reference_volume", 1.0)))


def hit_or_miss(K: Region, sampler: Ball, n_samples: int, seed: int, stream: int = 0,
                threads: int | None = None) -> VolumeEstimate:
    """Hit-or-miss estimate of vol(K) using uniform points of ``sampler``."""
    if n_samples < 1:
        raise GeometryError("n_samples must be >= 1")

    def count(gen, size):
        return int(np.count_nonzero(K.contains(sampler.sample(gen, size))))

    hits = sum(_rng.map_chunks(count, n_samples, seed, stream, threads))
    p = hits / n_samples
    vol = sampler.volume
    se = vol * math.sqrt(p * (1 - p) / n_samples)
    return VolumeEstimate(vol * p, se, int(n_samples), int(seed), hits, vol)


def volume_mc(K: Region, n_samples: int, seed: int, threads: int | None = None) -> VolumeEstimate:
    """Unbiased hit-or-miss estimate of the Lebesgue volume of K in G.

    Deterministic given ``seed``; two regions sharing a bounding ball see the
    same sample points, so nested regions give ordered estimates.
    """
    return hit_or_miss(K, K.bounding_ball, n_samples, seed, threads=threads)


def relative_volume_mc(K: Region, B: Ball, n_samples: int, seed: int,
                       threads: int | None = None) -> VolumeEstimate:
    """Estimate of vol(K ∩ B)/vol(B) with B as the sampling ball (value is a fraction)."""
    est = hit_or_miss(K, B, n_samples, seed, threads=threads)
    return VolumeEstimate(est.fraction, est.fraction_error, est.n_samples, est.seed, est.hits, 1.0)


# ---------------------------------------------------------------------------
# slicing searches


@dataclass(frozen=True)
class SliceResult:
    direction: np.ndarray
    ratio: float
    std_error: float
    volume_ratio: float
    volume_ratio_error: float
    constant: float
    n_directions: int

    @property
    def bound(self) -> float:
        """The guaranteed lower bound volume_ratio / constant."""
        return self.volume_ratio / self.constant

    @property
    def holds(self) -> bool:
        lo_target = (self.volume_ratio - 3 * self.volume_ratio_error) / self.constant
        return self.ratio + 3 * self.std_error >= lo_target


def _sphere_directions(dim, count, seed):
    sob = qmc.Sobol(dim, scramble=True, seed=seed)
    u = sob.random_base2(max(1, math.ceil(math.log2(max(2, count)))))
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = special.ndtri(u)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _search(ratio_fn, dim, n_directions, seed, n_refine=3):
    dirs = _sphere_directions(dim, n_directions, seed)
    vals = np.array([ratio_fn(d) for d in dirs])
    if not np.any(np.isfinite(vals)):
        raise SearchError("every sampled slice misses the ball")
    order = np.argsort(-np.where(np.isfinite(vals), vals, -np.inf))
    best_d, best_v = dirs[order[0]], vals[order[0]]
    for idx in order[:n_refine]:
        res = optimize.minimize(lambda x: -ratio_fn(x / max(np.linalg.norm(x), 1e-300)),
                                dirs[idx], method="Nelder-Mead",
                                options={"maxiter": 200 * dim, "xatol": 1e-4, "fatol": 1e-6})
        if np.isfinite(res.fun) and -res.fun > best_v:
            best_v, best_d = -res.fun, res.x / np.linalg.norm(res.x)
    return best_d, best_v


def slice_search_complex(K: Region, B: Ball, a, n_directions: int = 256, n_slice_samples: int = 4096,
                         n_volume_samples: int = 200_000, seed: int = 0) -> SliceResult:
    """Search complex lines through ``a`` in ∂B for a slice as dense as K in B.

    Each line ``a + ζw`` meets B in a disc; the slice ratio is the fraction of
    that disc lying in K, estimated on a fixed set of uniform disc points.
    """
    from .bounds import c_prime_n
    if not B.space.full_complex:
        raise GeometryError("complex slicing needs B to be a ball of C^n")
    n = B.space.n
    a = np.asarray(a, dtype=complex).reshape(n)
    v = a - B.center_array
    if abs(np.linalg.norm(v) - B.radius) > 1e-9 * B.radius:
        raise GeometryError("the base point must lie on the boundary sphere")
    gen = _rng.generator(seed, 0, stream=11)
    disc = _unit_ball_sample(gen, n_slice_samples, 2)
    disc = disc[:, 0] + 1j * disc[:, 1]

    def ratio(x):
        w = x[:n] + 1j * x[n:]
        beta = np.vdot(v, w)
        if abs(beta) < 1e-14 * B.radius:
            return -np.inf
        zeta = -np.conj(beta) + abs(beta) * disc
        return float(np.mean(K.contains(a[None, :] + zeta[:, None] * w[None, :])))

    best_d, best_v = _search(ratio, 2 * n, n_directions, seed)
    vol = relative_volume_mc(K, B, n_volume_samples, seed)
    se = math.sqrt(max(best_v * (1 - best_v), 0.0) / n_slice_samples)
    w = best_d[:n] + 1j * best_d[n:]
    return SliceResult(w, best_v, se, vol.value, vol.std_error, float(c_prime_n(n)), n_directions)


def slice_search_real(K: Region, B: Ball, a, n_directions: int = 256, n_slice_samples: int = 4096,
                      n_volume_samples: int = 200_000, seed: int = 0) -> SliceResult:
    """Search real lines of G through ``a`` in B for a slice as dense as K in B (constant 2N)."""
    space = B.space
    N = space.real_dim
    a_real = space.to_real(a)[0]
    v = a_real - B.center_real
    if v @ v > B.radius ** 2 * (1 + 1e-9):
        raise GeometryError("the base point must lie in the ball")
    gen = _rng.generator(seed, 0, stream=12)
    u = (np.arange(n_slice_samples) + gen.random(n_slice_samples)) / n_slice_samples

    def ratio(xi):
        b = v @ xi
        disc = b * b - (v @ v - B.radius ** 2)
        if disc <= 0:
            return -np.inf
        root = math.sqrt(disc)
        t = (-b - root) + 2 * root * u
        pts = space.to_complex(a_real[None, :] + t[:, None] * xi[None, :])
        return float(np.mean(K.contains(pts)))

    if N == 1:
        best_d, best_v = np.array([1.0]), ratio(np.array([1.0]))
        if not np.isfinite(best_v):
            raise SearchError("degenerate ball")
    else:
        best_d, best_v = _search(ratio, N, n_directions, seed)
    vol = relative_volume_mc(K, B, n_volume_samples, seed)
    se = math.sqrt(max(best_v * (1 - best_v), 0.0) / n_slice_samples)
    return SliceResult(best_d, best_v, se, vol.value, vol.std_error, float(2 * N), n_directions)


# ---------------------------------------------------------------------------
# sphere moment


def sphere_moment_exact(n: int) -> float:
    """Closed form of the integral of |w_1|^(2n) over the unit sphere of C^n."""
    return 4 * n * math.factorial(n) ** 2 / math.factorial(2 * n) * unit_ball_volume(2 * n)


def sphere_moment(n: int, n_samples: int = 1_000_000, seed: int = 0,
                  threads: int | None = None) -> tuple[float, float]:
    """Monte-Carlo estimate (value, std_error) of the integral of |w_1|^(2n) over S^(2n-1)."""
    if n < 1:
        raise GeometryError("n must be >= 1")

    def moments(gen, size):
        w = _unit_sphere_sample(gen, size, 2 * n)
        f = (w[:, 0] ** 2 + w[:, 1] ** 2) ** n
        return f.sum(), (f * f).sum()

    parts = _rng.map_chunks(moments, n_samples, seed, stream=13, threads=threads)
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / n_samples
    var = max(s2 / n_samples - mean * mean, 0.0)
    area = sphere_area(2 * n)
    return area * mean, area * math.sqrt(var / n_samples)
