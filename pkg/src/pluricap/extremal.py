"""Closed-form extremal functions and the Bernstein-Walsh checks built on them.

The plane functions use the Joukowski map ``h(ζ) = ζ + sqrt(ζ² - 1)`` on the
branch with ``|h| >= 1``; numerically ``log|h(ζ)| = |Re arccosh ζ|``.
All functions take points of C^n as complex arrays of shape ``(N, n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import _rng
from ._jsonio import cx, num
from .geometry import Ball, GeometryError, Region
from .reports import EXACT, HEURISTIC, LOWER, UPPER, Side, compare

_GOLDEN = (math.sqrt(5) - 1) / 2


def joukowski_h(zeta):
    """h(ζ) = ζ + sqrt(ζ² - 1) on the branch with |h(ζ)| >= 1."""
    zeta = np.asarray(zeta, dtype=complex)
    s = np.sqrt(zeta - 1) * np.sqrt(zeta + 1)
    a, b = zeta + s, zeta - s
    return np.where(np.abs(a) >= np.abs(b), a, b)


def log_abs_h(zeta):
    """log|h(ζ)|, the Green function of [-1, 1] with pole at infinity."""
    return np.abs(np.arccosh(np.asarray(zeta, dtype=complex)).real)


@dataclass(frozen=True)
class ExtremalValue:
    """A value of (a maximum of) an extremal function with its bound direction."""

    value: float
    direction: str
    point: tuple | None = None
    method: str = ""

    @property
    def side(self) -> Side:
        return Side(self.value, self.direction)

    def to_json(self):
        return {"kind": "extremal_value", "value": num(self.value), "direction": self.direction,
                "point": None if self.point is None else [cx(p) for p in self.point],
                "method": self.method}


def _as2d(z, n):
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    if z.shape[1] != n:
        raise GeometryError(f"point dimension {z.shape[1]} != {n}")
    return z


def _plane_projection(ball: Ball, j: int):
    """Projection of a ball of G to coordinate j: ('disc', c, R) or ('segment', a, b)."""
    c = ball.center[j]
    if j < ball.space.m:
        return "disc", c, ball.radius
    return "segment", c.real - ball.radius, c.real + ball.radius


class ExtremalFn:
    """Base class. Subclasses implement ``__call__`` and ``max_over``."""

    n: int = 1

    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError

    def max_over(self, ball: Ball, n_samples: int = 4096, seed: int = 0,
                 closed_form: bool = True) -> ExtremalValue:
        return search_max(self, ball, n_samples, seed)


# ---------------------------------------------------------------------------
# plane variants


@dataclass(frozen=True)
class DiscV(ExtremalFn):
    """V of the closed disc D(center, radius): log+(|z - c| / R)."""

    center: complex = 0j
    radius: float = 1.0
    n: int = field(default=1, init=False)

    def __call__(self, z):
        z = _as2d(z, 1)[:, 0]
        return np.log(np.maximum(np.abs(z - self.center) / self.radius, 1.0))

    def plane_max(self, kind, c, R):
        if kind == "disc":
            d = abs(c - self.center)
            u = (c - self.center) / d if d > 0 else 1.0
            return math.log(max((d + R) / self.radius, 1.0)), c + R * u
        ends = [complex(c), complex(R)]
        vals = [math.log(max(abs(e - self.center) / self.radius, 1.0)) for e in ends]
        k = int(np.argmax(vals))
        return vals[k], ends[k]

    def max_over(self, ball, n_samples=4096, seed=0, closed_form=True):
        if ball.space.n != 1 or not closed_form:
            return search_max(self, ball, n_samples, seed)
        v, p = self.plane_max(*_plane_projection(ball, 0))
        return ExtremalValue(v, EXACT, (p,), "closed_form")

    def to_json(self):
        return {"type": "disc", "center": cx(self.center), "radius": self.radius}


@dataclass(frozen=True)
class IntervalV(ExtremalFn):
    """V of the real segment [a, b]: log|h((2z - a - b)/(b - a))|."""

    a: float = -1.0
    b: float = 1.0
    n: int = field(default=1, init=False)

    @property
    def mid(self):
        return 0.5 * (self.a + self.b)

    @property
    def half(self):
        return 0.5 * (self.b - self.a)

    def _v(self, w):
        return log_abs_h((np.asarray(w, dtype=complex) - self.mid) / self.half)

    def __call__(self, z):
        return self._v(_as2d(z, 1)[:, 0])

    def plane_max(self, kind, c, R):
        """Maximum over a disc or real segment; returns (value, maximizer, exact?)."""
        if kind == "segment":
            ends = np.array([c, R], dtype=complex)
            vals = self._v(ends)
            k = int(np.argmax(vals))
            return float(vals[k]), complex(ends[k]), True
        if abs(c - self.mid) <= 1e-15 * max(1.0, abs(self.mid)):
            return math.asinh(R / self.half), complex(self.mid + 1j * R), True
        # V is subharmonic, so its max over the disc sits on the circle
        t = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
        vals = self._v(c + R * np.exp(1j * t))
        k = int(np.argmax(vals))
        res = optimize.minimize_scalar(lambda s: -float(self._v(c + R * np.exp(1j * s))),
                                       bounds=(t[k] - 2e-3, t[k] + 2e-3), method="bounded",
                                       options={"xatol": 1e-12})
        if -res.fun > vals[k]:
            return float(-res.fun), complex(c + R * np.exp(1j * res.x)), False
        return float(vals[k]), complex(c + R * np.exp(1j * t[k])), False

    def max_over(self, ball, n_samples=4096, seed=0, closed_form=True):
        if ball.space.n != 1 or not closed_form:
            return search_max(self, ball, n_samples, seed)
        v, p, exact = self.plane_max(*_plane_projection(ball, 0))
        return ExtremalValue(v, EXACT if exact else LOWER, (p,), "closed_form" if exact else "circle_search")

    def to_json(self):
        return {"type": "interval", "a": self.a, "b": self.b}


# ---------------------------------------------------------------------------
# real ball (Lundin) and products


@dataclass(frozen=True)
class LundinV(ExtremalFn):
    """V of the real euclidean ball D(center, radius) of R^n inside C^n.

    ``V(z) = max_ξ log|h(ξ·w)|`` over real unit vectors ξ, with
    ``w = (z - center)/radius``. Only the projection of ξ onto the plane
    spanned by Re w and Im w matters, and log|h| grows along rays, so the
    maximum is a sweep over one angle in that plane.
    """

    n: int = 2
    center: tuple = ()
    radius: float = 1.0
    n_angles: int = 256

    def __post_init__(self):
        c = tuple(float(v) for v in self.center) or (0.0,) * self.n
        if len(c) != self.n:
            raise GeometryError("center must have n real coordinates")
        object.__setattr__(self, "center", c)

    def _frame(self, w):
        x, y = w.real, w.imag
        nx, ny = np.linalg.norm(x, axis=1), np.linalg.norm(y, axis=1)
        e1 = np.where((nx > 0)[:, None], x / np.maximum(nx, 1e-300)[:, None],
                      y / np.maximum(ny, 1e-300)[:, None])
        r = y - np.einsum("ij,ij->i", y, e1)[:, None] * e1
        nr = np.linalg.norm(r, axis=1)
        ok = nr > 1e-14 * np.maximum(ny, 1e-300)
        e2 = np.where(ok[:, None], r / np.maximum(nr, 1e-300)[:, None], 0.0)
        return np.einsum("ij,ij->i", e1, w), np.einsum("ij,ij->i", e2, w)

    def __call__(self, z):
        w = (_as2d(z, self.n) - np.asarray(self.center)) / self.radius
        p, q = self._frame(w)

        def f(theta):
            return log_abs_h(np.cos(theta) * p + np.sin(theta) * q)

        grid = np.linspace(0, np.pi, self.n_angles, endpoint=False)
        vals = log_abs_h(np.cos(grid)[None, :] * p[:, None] + np.sin(grid)[None, :] * q[:, None])
        k = np.argmax(vals, axis=1)
        best = vals[np.arange(len(k)), k]
        step = np.pi / self.n_angles
        lo, hi = grid[k] - step, grid[k] + step
        # vectorized golden-section refinement inside the bracket
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        f1, f2 = f(x1), f(x2)
        for _ in range(48):
            left = f1 >= f2
            hi = np.where(left, x2, hi)
            lo = np.where(left, lo, x1)
            x2n = np.where(left, x1, lo + _GOLDEN * (hi - lo))
            x1n = np.where(left, hi - _GOLDEN * (hi - lo), x2)
            f1, f2 = np.where(left, f(x1n), f2), np.where(left, f1, f(x2n))
            x1, x2 = x1n, x2n
        out = np.maximum(best, np.maximum(f1, f2))
        # closed-form shortcuts: real points and purely imaginary points
        real = np.all(np.abs(w.imag) == 0, axis=1)
        imag = np.all(np.abs(w.real) == 0, axis=1)
        out = np.where(real, np.arccosh(np.maximum(np.linalg.norm(w.real, axis=1), 1.0)), out)
        out = np.where(imag & ~real, np.arcsinh(np.linalg.norm(w.imag, axis=1)), out)
        return out

    def max_over(self, ball, n_samples=4096, seed=0, closed_form=True):
        if ball.space.n != self.n:
            raise GeometryError("dimension mismatch")
        concentric = np.allclose(ball.center_array, np.asarray(self.center), rtol=0, atol=1e-15)
        if not (closed_form and concentric):
            return search_max(self, ball, n_samples, seed)
        R = ball.radius / self.radius
        c = np.asarray(self.center, dtype=complex)
        if ball.space.m >= 1:
            # ζ = ξ·w fills the disc |ζ| <= R; the max of log|h| there is at ζ = iR
            p = c.copy()
            p[0] += 1j * ball.radius
            return ExtremalValue(math.asinh(R), EXACT, tuple(p), "closed_form")
        p = c.copy()
        p[0] += ball.radius
        return ExtremalValue(math.acosh(max(R, 1.0)), EXACT, tuple(p), "closed_form")

    def to_json(self):
        return {"type": "lundin", "n": self.n, "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class ProductV(ExtremalFn):
    """V of a product of plane sets: the max of the factor functions."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n(self):
        return len(self.factors)

    def __call__(self, z):
        z = _as2d(z, self.n)
        return np.max(np.stack([f(z[:, j:j + 1]) for j, f in enumerate(self.factors)]), axis=0)

    def max_over(self, ball, n_samples=4096, seed=0, closed_form=True):
        if ball.space.n != self.n:
            raise GeometryError("dimension mismatch")
        if not closed_form:
            return search_max(self, ball, n_samples, seed)
        best, exact, arg = -math.inf, True, None
        for j, f in enumerate(self.factors):
            proj = _plane_projection(ball, j)
            out = f.plane_max(*proj)
            v, p = out[0], out[1]
            if len(out) > 2:
                exact &= out[2]
            if v > best:
                best, arg = v, (j, p)
        point = list(ball.center)
        point[arg[0]] = arg[1]
        return ExtremalValue(best, EXACT if exact else LOWER, tuple(point), "product")

    def to_json(self):
        return {"type": "product", "factors": [f.to_json() for f in self.factors]}


def extremal_from_json(d) -> ExtremalFn:
    kind = d["type"]
    if kind == "disc":
        from ._jsonio import from_cx
        return DiscV(from_cx(d.get("center", 0)), float(d.get("radius", 1.0)))
    if kind == "interval":
        return IntervalV(float(d.get("a", -1)), float(d.get("b", 1)))
    if kind == "lundin":
        n = int(d["n"])
        return LundinV(n, tuple(d.get("center") or (0.0,) * n), float(d.get("radius", 1.0)))
    if kind == "product":
        return ProductV(tuple(extremal_from_json(f) for f in d["factors"]))
    raise GeometryError(f"unknown extremal function type {kind!r}")


# ---------------------------------------------------------------------------
# searches and checks


def v_eval(F, z) -> np.ndarray:
    return F(z)


def search_max(F, ball: Ball, n_samples: int = 4096, seed: int = 0, n_refine: int = 4,
               boundary_only: bool | None = None) -> ExtremalValue:
    """Sampled maximum of F over a ball, refined by Nelder-Mead; a lower bound."""
    space = ball.space
    gen = _rng.generator(seed, 0, stream=31)
    if boundary_only is None:
        boundary_only = space.full_complex
    pts = [ball.sample_boundary(gen, n_samples)]
    if not boundary_only:
        pts.append(ball.sample(gen, n_samples))
    z = np.concatenate(pts)
    vals = F(z)
    order = np.argsort(-vals)
    best, arg = float(vals[order[0]]), z[order[0]]
    c, R = ball.center_real, ball.radius

    def project(x):
        d = x - c
        nd = np.linalg.norm(d)
        if boundary_only:
            return c + R * d / max(nd, 1e-300)
        return x if nd <= R else c + R * d / nd

    for idx in order[:n_refine]:
        x0 = space.to_real(z[idx])[0]
        res = optimize.minimize(lambda x: -float(F(space.to_complex(project(x)))[0]), x0,
                                method="Nelder-Mead",
                                options={"maxiter": 300 * len(x0), "xatol": 1e-9, "fatol": 1e-13})
        zc = space.to_complex(project(res.x))
        v = float(F(zc)[0])
        if v > best:
            best, arg = v, zc[0]
    return ExtremalValue(best, LOWER, tuple(arg), "search")


def lelong_growth(F, n_rays: int = 16, seed: int = 0, t_grid=(1e2, 1e3, 1e4, 1e5, 1e6)) -> dict:
    """sup over sampled rays of F(t z0) - log+|t z0| on a grid of t.

    Membership in the Lelong class shows as a bounded, settling sequence.
    """
    gen = _rng.generator(seed, 0, stream=32)
    n = F.n
    z0 = gen.standard_normal((n_rays, n)) + 1j * gen.standard_normal((n_rays, n))
    z0 /= np.linalg.norm(z0, axis=1, keepdims=True)
    sups = []
    for t in t_grid:
        v = F(t * z0) - math.log(max(t, 1.0))
        sups.append(float(np.max(v)))
    sups = np.asarray(sups)
    settled = bool(np.all(np.isfinite(sups)) and abs(sups[-1] - sups[-2]) < 1e-3 * max(1.0, abs(sups[-1]))
                   and np.all(np.diff(sups) < 1.0))
    return {"t": list(t_grid), "sup": sups.tolist(), "bounded": settled}


def _sup_over_set(u, K, n_samples, seed):
    """A lower bound of sup_K u by sampling K (exact when u has a closed-form max on a ball)."""
    from .geometry import BallRegion
    if isinstance(K, Ball):
        K = BallRegion(K)
    if isinstance(K, BallRegion) and hasattr(u, "max_over"):
        ev = u.max_over(K.ball, n_samples=n_samples, seed=seed)
        if ev.direction in (EXACT, LOWER):
            return Side(ev.value, ev.direction)
    gen = _rng.generator(seed, 0, stream=33)
    z = K.sample(gen, n_samples)
    return Side(float(np.max(u(z))), LOWER)


def bernstein_walsh_check(u, K: Region, B: Ball, T: Side, n_samples: int = 20_000, seed: int = 0,
                          theorem: str = "bernstein-walsh", instance: str = ""):
    """Check sup_B u <= sup_K u - log T with T an upper bound of T_B(K)."""
    if hasattr(u, "n") and hasattr(u, "max_over") and u.n >= 1:
        growth = lelong_growth(u)
        if not growth["bounded"]:
            raise GeometryError("function fails the Lelong growth check")
    lhs_ev = u.max_over(B, n_samples=n_samples, seed=seed)
    lhs = Side(lhs_ev.value, lhs_ev.direction)
    supK = _sup_over_set(u, K, n_samples, seed)
    if T.direction not in (EXACT, UPPER):
        rhs = Side(supK.value - math.log(T.value), HEURISTIC)
    else:
        rhs = Side(supK.value - math.log(T.value), supK.direction)
    return compare(theorem, instance, lhs, rhs, seed=seed, sup_K=supK.value, T=T.value)


def bernstein_walsh_volume_check(u, K: Region, B: Ball, rel_volume: Side, n_samples: int = 20_000,
                                 seed: int = 0, instance: str = ""):
    """Volume forms: sup_B u <= sup_K u + ½ log c_n - ½ log(rel. volume) on C^n,
    and sup_B u <= sup_K u + log 8(n+m) - log(rel. volume) on a proper generic subspace."""
    from .bounds import c_n
    space = B.space
    lhs_ev = u.max_over(B, n_samples=n_samples, seed=seed)
    lhs = Side(lhs_ev.value, lhs_ev.direction)
    supK = _sup_over_set(u, K, n_samples, seed)
    vol_hi = rel_volume.upper()
    if space.full_complex:
        const = float(c_n(space.n))
        extra = 0.5 * math.log(const)
        factor = 0.5
    else:
        const = 8.0 * space.real_dim
        extra = math.log(const)
        factor = 1.0
    if vol_hi is None or vol_hi <= 0:
        rhs = Side(math.inf if vol_hi == 0 else math.nan, HEURISTIC)
    else:
        rhs = Side(supK.value + extra - factor * math.log(min(vol_hi, 1.0)), supK.direction)
    return compare("bernstein-walsh-volume", instance, lhs, rhs, const, seed,
                   rel_volume=rel_volume.to_json(), sup_K=supK.value)
