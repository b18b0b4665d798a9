"""Monge-Ampère condenser capacity: closed forms, a plane obstacle solver and two checks.

Masses follow the normalization dd^c = (i/π)∂∂̄, under which
(dd^c log|z - a|)^n is the unit point mass at a. In the plane this makes
dd^c u = Δu/(2π) dλ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from ._jsonio import SCHEMA_VERSION, num
from .bounds import DomainError
from .geometry import (Ball, BallRegion, GeometryError, PlaneDisc, PlaneInterval, ProductRegion,
                       register_psh_function)
from .reports import EXACT, ESTIMATE, LOWER, Side, compare, skipped


def cap_concentric(r: float, R: float, n: int) -> float:
    """cap(B(a, r); B(a, R)) = log(R/r)^(-n)."""
    if not 0 < r < R:
        raise DomainError(f"need 0 < r < R, got r={r}, R={R}")
    return math.log(R / r) ** (-n)


def radial_mass(chi, t: float, n: int, eps: float = 1e-7) -> float:
    """Mass of (dd^c χ(log|z|))^n on the closed ball {log|z| <= t}.

    For a convex increasing χ this is χ'(t+)^n; the jump χ'(t+)^n - χ'(t-)^n
    is the part carried by the sphere itself.
    """
    right = (chi(t + 2 * eps) - chi(t + eps)) / eps
    return right ** n


def cap_radial_oracle(r: float, R: float, n: int) -> float:
    """Capacity of the concentric ball condenser from its relative extremal function."""
    L = math.log(R / r)

    def chi(t):
        return max((t - math.log(R)) / L, -1.0)

    return radial_mass(chi, math.log(r), n)


# ---------------------------------------------------------------------------
# test functions with zero boundary values


@dataclass(frozen=True)
class RadialGreen:
    """φ = w log(|z - a| / R) on the ball B(a, R) of C^n; total mass w^n."""

    n: int
    center: tuple = ()
    radius: float = 1.0
    weight: float = 1.0

    def __post_init__(self):
        c = tuple(complex(v) for v in self.center) or (0j,) * self.n
        object.__setattr__(self, "center", c)
        if len(c) != self.n or self.radius <= 0 or self.weight <= 0:
            raise GeometryError("invalid radial Green function")

    @property
    def domain(self) -> Ball:
        return Ball.complex_ball(self.center, self.radius)

    @property
    def mass(self) -> float:
        return self.weight ** self.n

    @property
    def poles(self):
        return [np.asarray(self.center)]

    @property
    def singular_exponent(self) -> float:
        return self.weight

    def __call__(self, z):
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        with np.errstate(divide="ignore"):
            return self.weight * np.log(np.linalg.norm(z - np.asarray(self.center), axis=1) / self.radius)

    def scaled(self, c: float) -> "RadialGreen":
        return RadialGreen(self.n, self.center, self.radius, self.weight * c)

    def sublevel_radius(self, s: float) -> float:
        return self.radius * math.exp(-s / self.weight)

    def sublevel_capacity(self, s: float) -> float:
        """cap({φ <= -s}; domain) in closed form."""
        if s <= 0:
            return math.inf
        return cap_concentric(self.sublevel_radius(s), self.radius, self.n)

    def to_json(self):
        return {"type": "radial_green", "n": self.n, "center": [[c.real, c.imag] for c in self.center],
                "radius": self.radius, "weight": self.weight}


def disc_green(z, a, R):
    """Green function of the disc D(0, R) with pole a: log|R(z - a)/(R² - conj(a) z)|."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(R * (z - a) / (R * R - np.conj(a) * z)))


@dataclass(frozen=True)
class MaxOfGreens:
    """φ = max_k w_k g(z, a_k) on the disc D(0, R), for poles a_k in the disc."""

    poles_: tuple
    weights: tuple
    radius: float = 1.0
    n: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "poles_", tuple(complex(a) for a in self.poles_))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.poles_) != len(self.weights) or not self.poles_:
            raise GeometryError("one weight per pole is required")
        if any(abs(a) >= self.radius for a in self.poles_):
            raise GeometryError("poles must lie inside the disc")

    @property
    def domain(self) -> Ball:
        return Ball.complex_ball([0j], self.radius)

    @property
    def poles(self):
        return [np.array([a]) for a in self.poles_]

    @property
    def singular_exponent(self) -> float:
        return max(self.weights)

    def __call__(self, z):
        z = np.atleast_2d(np.asarray(z, dtype=complex))[:, 0]
        return np.max(np.stack([w * disc_green(z, a, self.radius)
                                for a, w in zip(self.poles_, self.weights)]), axis=0)

    @property
    def mass(self) -> float:
        """Boundary flux (1/2π)∮ ∂φ/∂ν ds: each Green function contributes a Poisson kernel."""
        M = 8192
        t = 2 * np.pi * (np.arange(M) + 0.5) / M
        zb = self.radius * np.exp(1j * t)
        flux = np.max(np.stack([w * (self.radius ** 2 - abs(a) ** 2) / (self.radius * np.abs(zb - a) ** 2)
                                for a, w in zip(self.poles_, self.weights)]), axis=0)
        return float(np.sum(flux) * self.radius * (2 * np.pi / M) / (2 * np.pi))

    def scaled(self, c: float) -> "MaxOfGreens":
        return MaxOfGreens(self.poles_, tuple(c * w for w in self.weights), self.radius)

    def to_json(self):
        return {"type": "max_of_greens", "poles": [[a.real, a.imag] for a in self.poles_],
                "weights": list(self.weights), "radius": self.radius}


def cegrell_from_json(d):
    from ._jsonio import from_cx
    if d["type"] == "radial_green":
        n = int(d["n"])
        c = tuple(from_cx(v) for v in d.get("center") or [[0, 0]] * n)
        return RadialGreen(n, c, float(d.get("radius", 1.0)), float(d.get("weight", 1.0)))
    if d["type"] == "max_of_greens":
        return MaxOfGreens(tuple(from_cx(a) for a in d["poles"]), tuple(d["weights"]),
                           float(d.get("radius", 1.0)))
    raise GeometryError(f"unknown test function {d['type']!r}")


@register_psh_function("radial_green")
def _radial_green_factory(params):
    return cegrell_from_json({"type": "radial_green", **params})


@register_psh_function("max_of_greens")
def _max_of_greens_factory(params):
    return cegrell_from_json({"type": "max_of_greens", **params})


# ---------------------------------------------------------------------------
# plane obstacle problem


@dataclass(frozen=True)
class GridConfig:
    """Uniform grid on the square circumscribing the disc Ω; ``n`` nodes per side."""

    n: int = 512
    omega: float | None = None
    tol: float = 1e-9
    max_iter: int = 200_000
    coarse: bool = True

    def relaxation(self) -> float:
        # optimal SOR factor for the Laplacian on an n x n grid
        return self.omega if self.omega is not None else 2.0 / (1.0 + math.sin(math.pi / (self.n - 1)))


@numba.njit(cache=True)
def _psor(w, obstacle, active, omega, tol, max_iter):
    """Projected SOR for w = max(obstacle, harmonic) with w = 0 off ``active``."""
    ny, nx = w.shape
    for it in range(max_iter):
        change = 0.0
        for i in range(1, ny - 1):
            for j in range(1, nx - 1):
                if not active[i, j]:
                    continue
                avg = 0.25 * (w[i - 1, j] + w[i + 1, j] + w[i, j - 1] + w[i, j + 1])
                new = w[i, j] + omega * (avg - w[i, j])
                if new < obstacle[i, j]:
                    new = obstacle[i, j]
                d = abs(new - w[i, j])
                if d > change:
                    change = d
                w[i, j] = new
        if change < tol:
            return it + 1, change
    return max_iter, change


@dataclass(frozen=True)
class RelExtremalResult:
    """Relative extremal function h = -w on the grid and the capacity it carries."""

    h: np.ndarray = field(repr=False)
    capacity: float
    error: float
    iterations: int
    residual: float
    converged: bool
    infinite: bool
    x: np.ndarray = field(repr=False, default=None)
    coarse_capacity: float = math.nan

    def to_json(self):
        return {"kind": "rel_extremal", "schema_version": SCHEMA_VERSION, "capacity": num(self.capacity),
                "error": num(self.error), "iterations": self.iterations, "residual": num(self.residual),
                "converged": self.converged, "infinite": self.infinite, "grid": list(self.h.shape)}

    def export(self, path_stem: str):
        """Write the field as raw float64 plus a JSON header."""
        import json
        self.h.astype("<f8").tofile(path_stem + ".bin")
        header = {**self.to_json(), "dtype": "<f8", "order": "C",
                  "x_range": [float(self.x[0]), float(self.x[-1])]}
        with open(path_stem + ".json", "w") as fh:
            json.dump(header, fh, indent=2, sort_keys=True)


def _solve_grid(K, center, R, n, cfg, init=None):
    x = np.linspace(-R, R, n)
    X, Y = np.meshgrid(x, x, indexing="xy")
    Z = center + X + 1j * Y
    inside = np.abs(Z - center) < R * (1 - 1e-12)
    active = inside.copy()
    active[0, :] = active[-1, :] = active[:, 0] = active[:, -1] = False
    inK = K.contains(Z.reshape(-1, 1)).reshape(Z.shape) & inside
    obstacle = np.where(inK, 1.0, 0.0)
    # K meets a node next to the Dirichlet boundary: the discrete condenser degenerates
    near = inK & ~(np.roll(active, 1, 0) & np.roll(active, -1, 0) & np.roll(active, 1, 1)
                   & np.roll(active, -1, 1))
    w = obstacle.copy() if init is None else np.maximum(init, obstacle) * active
    omega = GridConfig(n, cfg.omega).relaxation()
    iters, res = _psor(w, obstacle, active, omega, cfg.tol, cfg.max_iter)
    lap = np.zeros_like(w)
    lap[1:-1, 1:-1] = (w[:-2, 1:-1] + w[2:, 1:-1] + w[1:-1, :-2] + w[1:-1, 2:] - 4 * w[1:-1, 1:-1])
    cap = float(-np.sum(lap[active]) / (2 * np.pi))
    return -w, cap, iters, res, bool(np.any(near)), x


def _plane_region(K):
    if isinstance(K, (PlaneDisc, PlaneInterval)):
        return ProductRegion((K,))
    if isinstance(K, Ball):
        return BallRegion(K)
    return K


def rel_extremal_1d(K, omega_disc: PlaneDisc, cfg: GridConfig = GridConfig()) -> RelExtremalResult:
    """Relative extremal function of K in a plane disc and cap(K; Ω) = Δ-mass/(2π).

    The solve runs on an ``n``-node grid, warm-started from the half grid; the
    difference between the two capacities is the reported error.
    """
    K = _plane_region(K)
    c, R = omega_disc.center, omega_disc.radius
    coarse_cap, init = math.nan, None
    if cfg.coarse and cfg.n >= 64:
        nc = cfg.n // 2 + 1
        hc, coarse_cap, _, _, _, xc = _solve_grid(K, c, R, nc, cfg)
        # bilinear prolongation of the coarse field
        from scipy.interpolate import RegularGridInterpolator
        interp = RegularGridInterpolator((xc, xc), -hc)
        x = np.linspace(-R, R, cfg.n)
        X, Y = np.meshgrid(x, x, indexing="xy")
        init = interp(np.stack([Y.ravel(), X.ravel()], axis=1)).reshape(X.shape)
    h, cap, iters, res, near, x = _solve_grid(K, c, R, cfg.n, cfg, init)
    converged = res < cfg.tol
    err = abs(cap - coarse_cap) if math.isfinite(coarse_cap) else math.nan
    if near:
        return RelExtremalResult(h, math.inf, math.nan, iters, res, converged, True, x, coarse_cap)
    return RelExtremalResult(h, cap, err, iters, res, converged, False, x, coarse_cap)


# ---------------------------------------------------------------------------
# checks


def sublevel_cap_bound(phi, s: float, grid: GridConfig = GridConfig(n=256), instance: str = ""):
    """Check cap({φ <= -s}; Ω) <= s^(-n) ∫(dd^c φ)^n."""
    if s <= 0:
        raise DomainError("s must be positive")
    n = phi.n
    rhs = Side(s ** (-n) * phi.mass, EXACT)
    if isinstance(phi, RadialGreen):
        lhs = Side(phi.sublevel_capacity(s), EXACT)
        return compare("sublevel-capacity", instance or f"radial n={n} s={s}", lhs, rhs, 1.0,
                       ratio=lhs.value / rhs.value)
    if isinstance(phi, MaxOfGreens):
        from .geometry import SublevelRegion
        E = SublevelRegion("max_of_greens", {}, s, phi.domain, func=phi)
        res = rel_extremal_1d(E, PlaneDisc(0j, phi.radius), grid)
        if res.infinite:
            return skipped("sublevel-capacity", instance, "sublevel set reaches the boundary")
        lhs = Side(res.capacity, ESTIMATE, res.error)
        rhs = Side(rhs.value, ESTIMATE, 1e-9 * rhs.value)
        return compare("sublevel-capacity", instance or f"max-of-greens s={s}", lhs, rhs, 1.0,
                       ratio=lhs.value / rhs.value, grid=grid.n)
    return skipped("sublevel-capacity", instance, "no capacity path for this test function")


def _to_ball_region(E):
    if isinstance(E, Ball):
        return BallRegion(E)
    return E


def alexander_taylor_check(E, Omega: Ball, Xi: Ball, T: Side | None = None, cap: Side | None = None,
                           instance: str = "", grid: GridConfig = GridConfig(n=256), d_max: int = 8):
    """Check T_Ξ(E) <= exp(-cap(E; Ω)^(-1/n)).

    Closed forms are used for concentric ball condensers; in the plane the
    Chebyshev optimizer bounds T from above and the obstacle solver gives cap.
    Caller-supplied sides override either path.
    """
    n = Omega.space.n
    Er = _to_ball_region(E)
    concentric = (isinstance(Er, BallRegion) and Er.ball.space.full_complex
                  and np.allclose(Er.ball.center_array, Omega.center_array)
                  and np.allclose(Omega.center_array, Xi.center_array))
    if T is None and concentric:
        rho = Er.ball.radius
        if rho >= Omega.radius:
            T = Side(1.0, EXACT)
        else:
            T = Side(rho / Xi.radius, EXACT)
    if cap is None and concentric:
        rho = Er.ball.radius
        cap = Side(math.inf if rho >= Omega.radius else cap_concentric(rho, Omega.radius, n), EXACT)
    if (T is None or cap is None) and n == 1:
        from .capacity import chebyshev_T
        if T is None:
            est = chebyshev_T(Er, Xi, d_max)
            T = est.upper()
        if cap is None:
            res = rel_extremal_1d(Er, PlaneDisc(Omega.center[0], Omega.radius), grid)
            cap = Side(math.inf, EXACT) if res.infinite else Side(res.capacity, ESTIMATE, res.error)
    if T is None or cap is None:
        return skipped("alexander-taylor", instance, "no capacity path")
    rhs = _exp_neg_cap(cap, n)
    return compare("alexander-taylor", instance, T, rhs, seed=None, cap=cap.to_json())


def _exp_neg_cap(cap: Side, n: int) -> Side:
    """exp(-cap^(-1/n)) with the direction of cap carried over (the map is increasing)."""
    def f(c):
        if c <= 0:
            return 0.0
        return 1.0 if math.isinf(c) else math.exp(-c ** (-1.0 / n))

    if cap.direction == ESTIMATE:
        lo = f(max(cap.value - 3 * cap.std_error, 0.0))
        return Side(lo, LOWER)
    return Side(f(cap.value), cap.direction)


def cap_lower_from_T(T_upper: float, n: int) -> float:
    """cap(E; Ω) >= (-log T_Ξ(E))^(-n), a rearrangement of the Alexander-Taylor inequality."""
    if T_upper >= 1:
        return 0.0
    return (-math.log(T_upper)) ** (-n)
