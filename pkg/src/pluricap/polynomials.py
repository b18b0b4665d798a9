"""Sparse multivariate complex polynomials and their sup norms on regions.

A sup norm is reported as a sampled lower bound, a locally refined value and,
on regions with a tensor or spherical grid (discs, intervals, boxes, products,
complex balls), a certified upper bound. Certification uses Bernstein's
inequality along the grid curves: if every point of the set is within angular
distance ``h`` of a grid point along a curve on which P is a trigonometric
polynomial of degree <= d, then ``sup |P| <= max_grid |P| / (1 - h d)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import _rng
from ._jsonio import from_cx
from .geometry import (Ball, BallRegion, BoxRegion, GeometryError, PlaneDisc, PlaneInterval,
                       PlanePoints, ProductRegion, Region, UnionRegion)

# largest certification grid we are willing to build
MAX_GRID_POINTS = 250_000


class PolynomialError(ValueError):
    pass


def multi_indices(n: int, d: int) -> list[tuple[int, ...]]:
    """All exponents of total degree <= d in n variables, graded order."""
    out = []
    for total in range(d + 1):
        for c in itertools.combinations_with_replacement(range(n), total):
            alpha = [0] * n
            for j in c:
                alpha[j] += 1
            out.append(tuple(alpha))
    return out


def monomial_matrix(z, indices) -> np.ndarray:
    """Matrix of monomials z^alpha, one row per point."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    deg = max((max(a) for a in indices), default=0)
    powers = [np.vander(z[:, j], deg + 1, increasing=True) for j in range(z.shape[1])]
    out = np.ones((z.shape[0], len(indices)), dtype=complex)
    for k, alpha in enumerate(indices):
        for j, e in enumerate(alpha):
            if e:
                out[:, k] *= powers[j][:, e]
    return out


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: ``terms`` maps exponent tuples to complex coefficients."""

    n: int
    terms: tuple
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __init__(self, terms, n: int | None = None, meta: dict | None = None):
        items = dict(terms).items() if not isinstance(terms, dict) else terms.items()
        clean = {}
        for alpha, c in items:
            alpha = tuple(int(e) for e in np.atleast_1d(alpha))
            c = complex(c)
            if any(e < 0 for e in alpha):
                raise PolynomialError("negative exponent")
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        if n is None:
            lengths = {len(a) for a in clean}
            if len(lengths) > 1:
                raise PolynomialError("inconsistent multi-index lengths")
            n = lengths.pop() if lengths else 1
        if any(len(a) != n for a in clean):
            raise PolynomialError("multi-index length differs from the number of variables")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "terms", tuple(sorted(clean.items())))
        object.__setattr__(self, "meta", dict(meta or {}))

    @classmethod
    def monomial(cls, alpha, coeff=1.0):
        return cls({tuple(alpha): coeff})

    @classmethod
    def from_coefficients(cls, indices, coeffs, n):
        return cls(dict(zip(map(tuple, indices), coeffs)), n)

    @property
    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        return max((sum(a) for a, _ in self.terms), default=-math.inf)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        single = z.ndim == 1
        z2 = np.atleast_2d(z)
        if z2.shape[1] != self.n:
            raise PolynomialError(f"point dimension {z2.shape[1]} != {self.n}")
        if self.is_zero:
            out = np.zeros(z2.shape[0], dtype=complex)
        else:
            idx = [a for a, _ in self.terms]
            coeffs = np.array([c for _, c in self.terms])
            out = monomial_matrix(z2, idx) @ coeffs
        return out[0] if single else out

    def scale(self, factor) -> "Polynomial":
        return Polynomial({a: factor * c for a, c in self.terms}, self.n, dict(self.meta))

    def with_meta(self, **meta) -> "Polynomial":
        return Polynomial(dict(self.terms), self.n, {**self.meta, **meta})

    def to_json(self):
        return {"n": self.n, "terms": [[list(a), c.real, c.imag] for a, c in self.terms]}

    @classmethod
    def from_json(cls, d):
        if isinstance(d, list):
            d = {"terms": d}
        terms = {}
        for entry in d["terms"]:
            alpha, re, im = entry
            alpha = tuple(alpha)
            terms[alpha] = terms.get(alpha, 0) + complex(float(re), float(im))
        return cls(terms, d.get("n"))

    @classmethod
    def parse_coeffs(cls, coeffs: dict):
        return cls({tuple(map(int, k.split(","))): from_cx(v) for k, v in coeffs.items()})


# ---------------------------------------------------------------------------
# certification grids


@dataclass(frozen=True)
class CertGrid:
    points: np.ndarray
    inflation: float

    def bound(self, values) -> float:
        return float(np.max(np.abs(values))) * self.inflation


def _circle(center, radius, M):
    t = 2 * np.pi * np.arange(M) / M
    return center + radius * np.exp(1j * t)


def _cheb_segment(p, q, M):
    """M Chebyshev-extremal points on the segment [p, q] of C (M >= 2)."""
    t = 0.5 * (1 - np.cos(np.pi * np.arange(M) / (M - 1)))
    return p + (q - p) * t


def _disc_count(d, oversample):
    return max(int(math.ceil(oversample * math.pi * d)), 8)


def _segment_count(d, oversample):
    return max(int(math.ceil(oversample * math.pi * d / 2)) + 1, 4)


def _factor_grid(kind, data, d, oversample):
    """Return (points, inflation) for a 1-D factor."""
    if kind == "disc":
        c, r = data
        M = _disc_count(d, oversample)
        return _circle(c, r, M), 1.0 / (1 - math.pi * d / M)
    if kind == "segment":
        p, q = data
        M = _segment_count(d, oversample)
        return _cheb_segment(p, q, M), 1.0 / (1 - math.pi * d / (2 * (M - 1)))
    if kind == "rect":
        x0, x1, y0, y1 = data
        M = _segment_count(d, oversample)
        corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
        pts = np.concatenate([_cheb_segment(corners[k], corners[(k + 1) % 4], M) for k in range(4)])
        return np.unique(pts), 1.0 / (1 - math.pi * d / (2 * (M - 1)))
    if kind == "points":
        return np.asarray(data, dtype=complex), 1.0
    raise GeometryError(kind)


def _tensor(factor_pts):
    grids = np.meshgrid(*factor_pts, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _factors_of(K):
    space = K.space
    if isinstance(K, ProductRegion):
        out = []
        for f in K.factors:
            if isinstance(f, PlaneDisc):
                out.append(("disc", (f.center, f.radius)))
            elif isinstance(f, PlaneInterval):
                out.append(("segment", (complex(f.a), complex(f.b))))
            elif isinstance(f, PlanePoints):
                out.append(("points", f.points))
        return out
    if isinstance(K, BoxRegion) and K.bounded:
        out = []
        lo, hi = K.lo, K.hi
        for j in range(space.m):
            x0, x1, y0, y1 = lo[2 * j], hi[2 * j], lo[2 * j + 1], hi[2 * j + 1]
            if y0 == y1:
                out.append(("segment", (complex(x0, y0), complex(x1, y0))))
            elif x0 == x1:
                out.append(("segment", (complex(x0, y0), complex(x0, y1))))
            else:
                out.append(("rect", (x0, x1, y0, y1)))
        for k in range(2 * space.m, space.real_dim):
            out.append(("segment", (complex(lo[k]), complex(hi[k]))))
        return out
    return None


def _sphere_grid(ball: Ball, d: int, oversample: float):
    """Cubed-sphere grid of the boundary of a complex ball, with its inflation."""
    N = ball.dim
    # geodesic covering radius h <= (pi/2) (delta/2) sqrt(N-1); ask h*d <= 1/oversample
    target = 1.0 / max(oversample, 1.01)
    k = 2
    while True:
        delta = 2.0 / (k - 1)
        h = 0.5 * math.pi * 0.5 * delta * math.sqrt(N - 1)
        size = 2 * N * k ** (N - 1)
        if h * d <= target or size > MAX_GRID_POINTS:
            break
        k += 1
    if h * d >= 1 or size > MAX_GRID_POINTS * 1.5:
        return None
    axis = np.linspace(-1, 1, k)
    face = np.stack([g.ravel() for g in np.meshgrid(*([axis] * (N - 1)), indexing="ij")], axis=1)
    pts = []
    for j in range(N):
        for sgn in (-1.0, 1.0):
            y = np.insert(face, j, sgn, axis=1)
            pts.append(y / np.linalg.norm(y, axis=1, keepdims=True))
    x = ball.center_real + ball.radius * np.concatenate(pts)
    return CertGrid(ball.space.to_complex(x), 1.0 / (1 - h * d))


def certified_grid(K, d: int, oversample: float = 8.0) -> CertGrid | None:
    """A finite grid on (a superset of the Shilov boundary of) K with its inflation factor.

    Returns ``None`` when no certification is available for this region type
    or the grid would be too large.
    """
    d = max(int(d), 1)
    if isinstance(K, Ball):
        K = BallRegion(K)
    if isinstance(K, UnionRegion):
        parts = [certified_grid(k, d, oversample) for k in K.members]
        if any(p is None for p in parts):
            return None
        return CertGrid(np.concatenate([p.points for p in parts]), max(p.inflation for p in parts))
    if isinstance(K, BallRegion):
        ball = K.ball
        space = ball.space
        if space.real_dim == 1:
            c = ball.center[0]
            return _tensor_grid([("segment", (c - ball.radius, c + ball.radius))], d, oversample)
        if space.real_dim == 2 and space.full_complex:
            return _tensor_grid([("disc", (ball.center[0], ball.radius))], d, oversample)
        if space.full_complex:
            return _sphere_grid(ball, d, oversample)
        return None
    factors = _factors_of(K)
    if factors is None:
        return None
    return _tensor_grid(factors, d, oversample)


def _tensor_grid(factors, d, oversample):
    os_ = float(oversample)
    while True:
        parts = [_factor_grid(kind, data, d, os_) for kind, data in factors]
        size = math.prod(len(p[0]) for p in parts)
        if size <= MAX_GRID_POINTS or os_ <= 1.2:
            break
        os_ = max(1.2, os_ * (MAX_GRID_POINTS / size) ** (1.0 / len(parts)) * 0.98)
    if size > 4 * MAX_GRID_POINTS:
        return None
    pts = _tensor([p[0] for p in parts])
    return CertGrid(pts, math.prod(p[1] for p in parts))


# ---------------------------------------------------------------------------
# sup norms


@dataclass(frozen=True)
class SupNorm:
    lower: float
    heuristic: float
    upper: float | None = None

    @property
    def certified(self) -> bool:
        return self.upper is not None


def _as_region(K):
    return BallRegion(K) if isinstance(K, Ball) else K


def _refine_max(P, K: Region, starts, n_starts=4):
    space = K.space
    best = 0.0

    def neg(x):
        z = space.to_complex(x)
        if not K.contains(z)[0]:
            return 0.0
        return -abs(P(z)[0])

    for z0 in starts[:n_starts]:
        x0 = space.to_real(z0)[0]
        step = 0.05 * K.bounding_ball.radius
        simplex = np.vstack([x0, x0 + step * np.eye(len(x0))])
        res = optimize.minimize(neg, x0, method="Nelder-Mead",
                                options={"initial_simplex": simplex, "maxiter": 400 * len(x0),
                                         "xatol": 1e-10, "fatol": 1e-14})
        best = max(best, -res.fun)
    return best


def sup_norm(P: Polynomial, K, n_samples: int = 20_000, seed: int = 0, refine: bool = True,
             oversample: float = 8.0) -> SupNorm:
    """Bounds on ||P||_K: sampled lower bound, refined value and (when available) certified upper."""
    K = _as_region(K)
    if isinstance(K, BoxRegion) and not K.bounded and not np.isfinite(K.bounding_ball.radius):
        raise GeometryError("unbounded region")
    d = P.degree
    if d == -math.inf:
        return SupNorm(0.0, 0.0, 0.0)
    gen = _rng.generator(seed, 0, stream=21)
    pts = [K.sample(gen, n_samples)]
    grid = certified_grid(K, max(int(d), 1), oversample) if d >= 1 else None
    upper = None
    if d == 0:
        v = abs(P.terms[0][1])
        return SupNorm(v, v, v)
    if grid is not None:
        gvals = np.abs(P(grid.points))
        upper = float(np.max(gvals)) * grid.inflation
        inside = K.contains(grid.points)
        pts.append(grid.points[inside])
    z = np.concatenate(pts)
    if len(z) == 0:
        raise GeometryError("could not sample the region")
    vals = np.abs(P(z))
    lower = float(np.max(vals))
    heur = lower
    if refine:
        starts = z[np.argsort(-vals)[:8]]
        heur = max(lower, _refine_max(P, K, starts))
    if upper is not None:
        heur = min(heur, upper)
    return SupNorm(float(lower), float(heur), float(upper))


def normalize_on(P: Polynomial, K, n_samples: int = 20_000, seed: int = 0) -> Polynomial:
    """P / ||P||_K; ``meta`` records the norm used and whether it was certified."""
    if P.is_zero:
        raise PolynomialError("cannot normalize the zero polynomial")
    s = sup_norm(P, K, n_samples=n_samples, seed=seed, refine=False)
    if s.certified:
        norm, flavor = s.lower, "certified"
    else:
        s = sup_norm(P, K, n_samples=n_samples, seed=seed, refine=True)
        norm, flavor = s.heuristic, "heuristic"
    if norm <= 0:
        raise PolynomialError("polynomial vanishes on the sampled region")
    return P.scale(1.0 / norm).with_meta(norm=norm, norm_flavor=flavor, norm_upper=s.upper)
