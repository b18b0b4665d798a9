"""Theorem-indexed verification suites.

Every registered theorem id owns an instance generator that returns a list of
:class:`~pluricap.reports.InequalityReport`. Suites group ids; a bundle holds
one JSON document per suite and a roll-up CSV. Report JSON carries no timings,
so a fixed configuration reproduces it byte for byte.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._jsonio import SCHEMA_VERSION, dumps
from .bounds import GrowthFunction, c_n, c_nm, c_prime_n, polya_exponent, real_generic_constant
from .capacity import (SolverConfig, chebyshev_T, compare_c_and_T_1d, fekete_capacity_1d, product_T)
from .extremal import LundinV, bernstein_walsh_volume_check
from .geometry import (AmbientSpace, Ball, BallRegion, BoxRegion, LemniscateRegion, PlaneDisc,
                       PlaneInterval, ProductRegion, UnionRegion, hit_or_miss, relative_volume_mc,
                       slice_search_complex, slice_search_real, sphere_moment, sphere_moment_exact)
from .integrability import (BallFamily, LogAbs, PolyLog, bmo_norm, cegrell_exp_check, cegrell_lp_check,
                            eta_exp_check, eta_integral_bound, exp_integral, g_moment,
                            lemniscate_decay, lp_integral, polynomial_lemniscate_decay)
from .ma_capacity import (GridConfig, MaxOfGreens, RadialGreen, _exp_neg_cap, alexander_taylor_check,
                          cap_concentric, cap_lower_from_T, rel_extremal_1d, sublevel_cap_bound)
from .polynomials import Polynomial
from .reports import ESTIMATE, LOWER, Side, compare, skipped

# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Budget:
    samples: int
    decay_samples: int
    fekete_k: int
    d_max: int
    psor_grid: int
    slice_directions: int
    bmo_balls: int
    bmo_samples: int
    sphere_samples: int


BUDGETS = {
    "small": Budget(samples=40_000, decay_samples=100_000, fekete_k=24, d_max=6, psor_grid=128,
                    slice_directions=48, bmo_balls=6, bmo_samples=20_000, sphere_samples=200_000),
    "medium": Budget(samples=200_000, decay_samples=1_000_000, fekete_k=48, d_max=8, psor_grid=256,
                     slice_directions=128, bmo_balls=16, bmo_samples=50_000, sphere_samples=1_000_000),
}


@dataclass(frozen=True)
class SuiteConfig:
    """What to run and how hard.

    ``theorems`` of None selects every registered id in the requested suites.
    Dimensions are capped at ``n_max`` (at most 4).
    """

    suites: tuple = ("polya", "lemniscate", "capacity", "integrability")
    theorems: tuple | None = None
    budget: str = "small"
    seed: int = 0
    n_max: int = 2
    jobs: int = 1

    def __post_init__(self):
        if self.budget not in BUDGETS:
            raise ValueError(f"unknown budget {self.budget!r}")
        if not 1 <= self.n_max <= 4:
            raise ValueError("n_max must lie in 1..4")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        object.__setattr__(self, "suites", tuple(self.suites))
        if self.theorems is not None:
            unknown = set(self.theorems) - set(REGISTRY)
            if unknown:
                raise ValueError(f"unknown theorem ids {sorted(unknown)}")
            object.__setattr__(self, "theorems", tuple(self.theorems))

    @property
    def b(self) -> Budget:
        return BUDGETS[self.budget]

    def to_json(self):
        return {"kind": "suite_config", "schema_version": SCHEMA_VERSION, "suites": list(self.suites),
                "theorems": None if self.theorems is None else list(self.theorems),
                "budget": self.budget, "seed": self.seed, "n_max": self.n_max, "jobs": self.jobs}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(d.get("suites", cls.suites)), d.get("theorems"), d.get("budget", "small"),
                   int(d.get("seed", 0)), int(d.get("n_max", 2)), int(d.get("jobs", 1)))


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    label: str
    suite: str
    generator: object


REGISTRY: dict[str, TheoremEntry] = {}


def _register(id_, label, suite):
    def deco(fn):
        REGISTRY[id_] = TheoremEntry(id_, label, suite, fn)
        return fn
    return deco


def _dims(cfg):
    return [(n, m) for n in range(1, cfg.n_max + 1) for m in range(0, n + 1)]


def _disc(c, r):
    return ProductRegion((PlaneDisc(c, r),))


# ---------------------------------------------------------------------------
# Polya-type inequalities


@_register("classical-polya-area", "area of a plane set vs logarithmic capacity", "polya")
def _classical_area(cfg, seed):
    b = cfg.b
    out = [compare("classical-polya-area", "disc r=0.7", Side(math.pi * 0.49), Side(math.pi * 0.49),
                   math.pi, seed)]
    # {|z^2 - 1| <= r^2} is the preimage of a disc of radius r^2 under z^2, so c = r
    r = 0.8
    P = Polynomial({(2,): 1.0, (0,): -1.0})
    K = LemniscateRegion(P, r * r, Ball((0j,), math.sqrt(1 + r * r), AmbientSpace(1)))
    area = hit_or_miss(K, K.bounding_ball, b.samples, seed)
    out.append(compare("classical-polya-area", f"lemniscate |z^2-1|<={r}^2",
                       Side(area.value, ESTIMATE, area.std_error), Side(math.pi * r * r), math.pi, seed))
    # dual route on a disc: exact capacity, with the Fekete upper end and extrapolation recorded
    fek = fekete_capacity_1d(_disc(0.2 + 0.1j, 0.6), b.fekete_k, seed=seed)
    out.append(compare("classical-polya-area", "disc r=0.6", Side(math.pi * 0.36), Side(math.pi * 0.36),
                       math.pi, seed, fekete_hi=fek.hi, fekete_extrapolated=fek.heuristic))
    return out


@_register("classical-polya-length", "length of a plane set vs logarithmic capacity", "polya")
def _classical_length(cfg, seed):
    out = [compare("classical-polya-length", "interval [-1, 0.5]", Side(1.5), Side(4 * 1.5 / 4), 4.0, seed)]
    # [-1,-a] u [a,1] is the preimage of [a^2, 1] under x^2
    for a in (0.2, 0.5, 0.8):
        c = math.sqrt((1 - a * a) / 4)
        out.append(compare("classical-polya-length", f"two intervals a={a}", Side(2 * (1 - a)),
                           Side(4 * c), 4.0, seed, capacity=c))
    return out


@_register("polya-plane", "plane volume vs relative capacity", "polya")
def _polya_plane(cfg, seed):
    b = cfg.b
    out = []
    for c, r in ((0j, 0.5), (0.3 + 0j, 0.4), (-0.2 + 0.5j, 0.3)):
        T = r / (abs(c) + 1.0)
        out.append(compare("polya-plane", f"disc c={c} r={r} in unit disc", Side(r * r), Side(4 * T * T),
                           4.0, seed, T=T))
    half = 0.5
    T = half / (1 + math.sqrt(1 - half * half))
    out.append(compare("polya-plane", "segment [-0.5,0.5] in [-1,1]", Side(half), Side(4 * T), 4.0, seed, T=T))
    # two discs; T is bounded below by the T of the larger disc (monotonicity)
    K = UnionRegion((_disc(0.5, 0.4), _disc(-0.6, 0.15)))
    B = Ball.unit(1)
    rel = relative_volume_mc(K, B, b.samples, seed)
    T_lo = 0.4 / 1.5
    cheb = chebyshev_T(K, B, b.d_max, seed=seed)
    out.append(compare("polya-plane", "two discs r=0.4 at 0.5 and r=0.15 at -0.6", Side(rel.value, ESTIMATE, rel.std_error),
                       Side(4 * T_lo * T_lo, LOWER), 4.0, seed, chebyshev_hi=cheb.hi, chebyshev_lo=cheb.lo))
    return out


@_register("slicing", "slicing of volume along complex and real lines", "polya")
def _slicing(cfg, seed):
    b = cfg.b
    out = []
    for n in range(2, max(2, cfg.n_max) + 1):
        B = Ball.unit(n)
        K = BallRegion(Ball.complex_ball((0.3,) + (0j,) * (n - 1), 0.6))
        a = np.zeros(n, dtype=complex)
        a[0] = 1.0
        res = slice_search_complex(K, B, a, b.slice_directions, 2048, b.samples, seed)
        cp = float(c_prime_n(n))
        out.append(compare("slicing", f"complex n={n} off-centre ball", Side(res.volume_ratio, ESTIMATE,
                           res.volume_ratio_error), Side(cp * res.ratio, ESTIMATE, cp * res.std_error),
                           cp, seed, direction=[complex(w) for w in res.direction]))
    space = AmbientSpace(2, 0)
    B = Ball.unit(2, 0)
    K = BoxRegion((-0.2, -0.7), (0.6, 0.1), B)
    for a in ((0j, 0j), (0.9 + 0j, 0j)):
        res = slice_search_real(K, B, a, b.slice_directions, 2048, b.samples, seed)
        out.append(compare("slicing", f"real box, base point {a[0].real}", Side(res.volume_ratio, ESTIMATE,
                           res.volume_ratio_error), Side(4 * res.ratio, ESTIMATE, 4 * res.std_error),
                           4.0, seed, space=space.to_json()))
    return out


def _ball_T(n, m, rho):
    """Side for T_B(ρB) with B the unit ball of G = C^m x R^(n-m)."""
    if m == n:
        return Side(rho)
    if m == 0:
        return Side(math.exp(-LundinV(n, (0.0,) * n, rho).max_over(Ball.unit(n, 0)).value))
    # ρB contains the real ball of radius ρ in R^n
    return Side(math.exp(-math.asinh(1 / rho)), LOWER)


@_register("polya-relative", "relative volume vs relative capacity", "polya")
def _polya_relative(cfg, seed):
    out = []
    for n, m in _dims(cfg):
        for rho in (0.3, 0.7):
            T = _ball_T(n, m, rho)
            if m == n:
                const, rhs = float(c_n(n)), float(c_n(n)) * T.value ** 2
            else:
                const = 8.0 * (n + m)
                rhs = const * T.value
            out.append(compare("polya-relative", f"n={n} m={m} concentric ball rho={rho}",
                               Side(rho ** (n + m)), Side(rhs, T.direction), const, seed, T=T.value))
    return out


@_register("sphere-moment", "moment of |w_1|^2n over the sphere", "polya")
def _sphere_moment(cfg, seed):
    out = []
    for n in (1, 2, 3):
        est, se = sphere_moment(n, cfg.b.sphere_samples, seed)
        exact = sphere_moment_exact(n)
        out.append(compare("sphere-moment", f"n={n} |MC - closed form| within 3 sigma",
                           Side(abs(est - exact)), Side(3 * se), None, seed, estimate=est, exact=exact))
    return out


@_register("bernstein-walsh-volume", "volume vs Bernstein-Walsh constant", "polya")
def _bw_volume(cfg, seed):
    b = cfg.b
    out = []
    u = LogAbs(1)
    B = Ball.unit(1)
    K = BallRegion(Ball.complex_ball((0.3 + 0j,), 0.5))
    out.append(bernstein_walsh_volume_check(u, K, B, Side(0.25), b.samples // 4, seed, "log|z|, disc"))
    u2 = LogAbs(2, (0.5j, 0j))
    K2 = BallRegion(Ball.complex_ball((0.2 + 0j, 0j), 0.5))
    out.append(bernstein_walsh_volume_check(u2, K2, Ball.unit(2), Side(0.5 ** 4), b.samples // 4, seed,
                                            "log|z-a|, C^2 ball"))
    B3 = Ball.unit(2, 0)
    K3 = BallRegion(Ball((0.1 + 0j, 0j), 0.4, AmbientSpace(2, 0)))
    out.append(bernstein_walsh_volume_check(LogAbs(2, (0j, 2j)), K3, B3, Side(0.16), b.samples // 4, seed,
                                            "log|z-a|, real ball of R^2"))
    return out


@_register("ma-capacity-volume", "volume vs Monge-Ampere capacity", "capacity")
def _ma_capacity_volume(cfg, seed):
    b = cfg.b
    out = []
    for n in range(1, cfg.n_max + 1):
        for rho in (0.2, math.exp(-1), 0.8):
            cap = cap_concentric(rho, 1.0, n)
            rhs = float(c_n(n)) * math.exp(-2 * cap ** (-1.0 / n))
            out.append(compare("ma-capacity-volume", f"complex n={n} ball rho={rho:.4g}", Side(rho ** (2 * n)),
                               Side(rhs), float(c_n(n)), seed, cap=cap))
    # plane condenser: two discs, capacity from the obstacle solver
    K = UnionRegion((_disc(0.5, 0.3), _disc(-0.5, 0.3)))
    res = rel_extremal_1d(K, PlaneDisc(0j, 1.0), GridConfig(n=b.psor_grid))
    rel = relative_volume_mc(K, Ball.unit(1), b.samples, seed)
    cap_side = Side(res.capacity, ESTIMATE, res.error)
    e = _exp_neg_cap(cap_side, 1)
    out.append(compare("ma-capacity-volume", "two discs, obstacle-solver capacity",
                       Side(rel.value, ESTIMATE, rel.std_error), Side(4 * e.value ** 2, e.direction), 4.0, seed,
                       cap=res.capacity, cap_error=res.error))
    # real ball D_rho of R^n inside the complex unit ball; cap bounded below through T
    const_r = real_generic_constant
    for n in range(1, cfg.n_max + 1):
        for rho in (0.3, 0.7):
            T_hi = math.exp(-math.asinh(1 / rho))
            cap_lo = cap_lower_from_T(T_hi, n)
            rhs = const_r(n, 0) * math.exp(-cap_lo ** (-1.0 / n))
            # chain step: T_B(K) <= e^(max V_B) T_Ball(K) with e^(max V_B) = 1 + sqrt 2 for the real unit ball
            T_B = math.exp(-LundinV(n, (0.0,) * n, rho).max_over(Ball.unit(n, 0)).value)
            out.append(compare("ma-capacity-volume", f"real n={n} m=0 ball rho={rho}", Side(rho ** n),
                               Side(rhs, LOWER), const_r(n, 0), seed, cap_lower=cap_lo, T_B=T_B,
                               chain_rhs=(1 + math.sqrt(2)) * T_hi))
            out.append(compare("ma-capacity-volume", f"chain step T_B <= (1+sqrt2) T_Ball, n={n} rho={rho}",
                               Side(T_B), Side((1 + math.sqrt(2)) * T_hi), 1 + math.sqrt(2), seed))
    return out


@_register("polya-unified", "unified volume bound for generic subspaces", "polya")
def _polya_unified(cfg, seed):
    b = cfg.b
    out = []
    for n, m in _dims(cfg):
        const = float(c_nm(n, m))
        k = polya_exponent(n, m)
        rho = 0.5
        T = _ball_T(n, m, rho)
        out.append(compare("polya-unified", f"n={n} m={m} ball rho={rho}", Side(rho ** (n + m)),
                           Side(const * T.value ** k, T.direction), const, seed, exponent=k))
        B = Ball.unit(n, m)
        if B.space.real_dim >= 1:
            # K = B itself: T = 1
            out.append(compare("polya-unified", f"n={n} m={m} K=B", Side(1.0), Side(const), const, seed))
    # random boxes inside the unit ball; capacity is only bounded from above, so report-only
    gen = np.random.default_rng(seed)
    for n, m in _dims(cfg)[:3]:
        B = Ball.unit(n, m)
        N = B.space.real_dim
        lo = gen.uniform(-0.5, 0.0, N)
        K = BoxRegion(tuple(lo), tuple(lo + 0.4), B)
        rel = relative_volume_mc(K, B, b.samples, seed)
        out.append(compare("polya-unified", f"n={n} m={m} random box (capacity from the inscribed ball)",
                           Side(rel.value, ESTIMATE, rel.std_error),
                           Side(float(c_nm(n, m)) * _inscribed_T(n, m, 0.2, np.linalg.norm(lo + 0.2))
                                ** polya_exponent(n, m), LOWER), float(c_nm(n, m)), seed))
    return out


def _inscribed_T(n, m, r, dist):
    """Lower bound of T_B(K) for K containing a ball of radius r at distance ``dist`` from the centre."""
    if m == n:
        return r / (1 + dist)
    # the inscribed ball contains a real ball of radius r; its extremal function grows at most
    # like asinh of (distance + 1)/r on B
    return math.exp(-math.asinh((1 + dist) / r)) if m >= 1 else math.exp(-math.acosh(max((1 + dist) / r, 1)))


@_register("polya-norm-ball", "volume bound for norm balls", "polya")
def _polya_norm_ball(cfg, seed):
    out = []
    for n in range(1, cfg.n_max + 1):
        beta_over_alpha = math.sqrt(n)
        # polydisc and K_r: relative volume r^2
        const = float(c_n(n)) * beta_over_alpha ** (2 * n)
        for r in (0.3, 0.6):
            factors = [(PlaneDisc(0j, r), PlaneDisc(0j, 1.0))] + [(PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0))] * (n - 1)
            T = product_T(factors)
            out.append(compare("polya-norm-ball", f"polydisc n={n} K_r r={r}", Side(r * r),
                               Side(const * T.value ** 2, T.direction), const, seed, T=T.value,
                               sharpness_ratio=r * r / T.value ** 2))
        # cube and I^n(r): relative volume r
        const_r = 8.0 * n * beta_over_alpha ** n
        for r in (0.3, 0.6):
            factors = [(PlaneInterval(-r, r), PlaneInterval(-1, 1))] + [(PlaneInterval(-1, 1), PlaneInterval(-1, 1))] * (n - 1)
            T = product_T(factors)
            out.append(compare("polya-norm-ball", f"cube n={n} I^n({r})", Side(r),
                               Side(const_r * T.value, T.direction), const_r, seed, T=T.value))
    return out


@_register("product-formula", "product formula", "polya")
def _product_formula(cfg, seed):
    out = []
    fac = [(PlaneDisc(0j, 0.3), PlaneDisc(0j, 1.0)), (PlaneDisc(0j, 0.8), PlaneDisc(0j, 1.0))]
    T = product_T(fac)
    out.append(compare("product-formula", "K_0.3 in the bidisc equals 0.3", Side(abs(T.value - 0.3)),
                       Side(1e-12), None, seed, T=T.value))
    fac = [(PlaneInterval(-0.6, 0.6), PlaneInterval(-1, 1)), (PlaneInterval(-1, 1), PlaneInterval(-1, 1))]
    T = product_T(fac)
    out.append(compare("product-formula", "I^2(0.6) in the square equals 1/3", Side(abs(T.value - 1 / 3)),
                       Side(1e-12), None, seed, T=T.value))
    # dual route: the Chebyshev optimizer's certified upper end dominates the product value
    K = ProductRegion((PlaneDisc(0j, 0.5), PlaneDisc(0j, 0.7)))
    Bp = ProductRegion((PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0)))
    exact = product_T([(PlaneDisc(0j, 0.5), PlaneDisc(0j, 1.0)), (PlaneDisc(0j, 0.7), PlaneDisc(0j, 1.0))])
    # a coarse certified grid keeps the tensor-product cone program small
    cheb = chebyshev_T(K, Bp, 3, SolverConfig(oversample=3, boundary_samples=8), seed=seed)
    out.append(compare("product-formula", "bidisc product, optimizer upper end", Side(exact.value),
                       Side(cheb.hi), None, seed, chebyshev_lo=cheb.lo, certified=cheb.hi_sound))
    return out


# ---------------------------------------------------------------------------
# lemniscates and sublevel sets


@_register("lemniscate-lelong", "sublevel decay of Lelong-class functions", "lemniscate")
def _lemniscate_lelong(cfg, seed):
    b = cfg.b
    grid = np.linspace(0.1, 3.0, 20)
    out = []
    out += lemniscate_decay(LogAbs(1), Ball.unit(1), grid, b.decay_samples, seed,
                            instance="log|z| unit disc").reports
    if cfg.n_max >= 2:
        out += lemniscate_decay(LogAbs(2, (0.3 + 0j, 0j)), Ball.unit(2), grid[::4], b.samples, seed,
                                instance="log|z-a| unit ball C^2").reports
        out += lemniscate_decay(LogAbs(2), Ball.unit(2, 0), grid[::4], b.samples, seed,
                                instance="log|z| real unit ball R^2").reports
        P = Polynomial({(1, 1): 1.0, (2, 0): 0.5})
        out += lemniscate_decay(PolyLog(P), Ball.unit(2), grid[::4], b.samples, seed,
                                instance="(1/2)log|z1 z2 + z1^2/2| unit ball C^2").reports
    return out


@_register("lemniscate-polynomial", "area of polynomial lemniscates", "lemniscate")
def _lemniscate_polynomial(cfg, seed):
    b = cfg.b
    eps = np.linspace(0.1, 0.9, 9)
    out = list(polynomial_lemniscate_decay(Polynomial({(3,): 1.0, (0,): -0.2}), Ball.unit(1), eps,
                                           b.samples, seed, "z^3 - 0.2 on unit disc").reports)
    if cfg.n_max >= 2:
        out += polynomial_lemniscate_decay(Polynomial({(2, 0): 1.0}), Ball.unit(2), eps[::2], b.samples,
                                           seed, "z1^2 on unit ball C^2").reports
    out += polynomial_lemniscate_decay(Polynomial({(2,): 1.0, (0,): -0.25}), Ball.unit(1, 0), eps[::2],
                                       b.samples, seed, "x^2 - 1/4 on [-1,1]").reports
    return out


def _cegrell_family(cfg):
    fam = [("radial n=1", RadialGreen(1), None), ("max of two greens", MaxOfGreens((0.3 + 0j, -0.4 + 0j),
                                                                                   (0.5, 0.5), 1.0), None)]
    if cfg.n_max >= 2:
        fam.append(("radial n=2", RadialGreen(2), None))
        fam.append(("radial n=2 on C x R", RadialGreen(2), AmbientSpace(2, 1)))
    return fam


@_register("lemniscate-cegrell", "sublevel decay for finite-mass test functions", "lemniscate")
def _lemniscate_cegrell(cfg, seed):
    out = []
    for name, phi, space in _cegrell_family(cfg):
        reps = cegrell_exp_check(phi, 0.5, space, cfg.b.samples, seed, instance=name)
        out += [r for r in reps if r.theorem == "lemniscate-cegrell"]
    return out


@_register("sublevel-capacity", "capacity of sublevel sets", "lemniscate")
def _sublevel_capacity(cfg, seed):
    out = []
    for n in range(1, 5):
        for s in (0.5, 1.0, 2.0, 5.0):
            out.append(sublevel_cap_bound(RadialGreen(n), s))
    phi = MaxOfGreens((0.3 + 0j, -0.4 + 0j), (0.5, 0.5), 1.0)
    out.append(sublevel_cap_bound(phi, 1.0, GridConfig(n=cfg.b.psor_grid), "max of two greens s=1"))
    return out


# ---------------------------------------------------------------------------
# capacity comparisons


@_register("alexander-taylor", "Alexander-Taylor comparison", "capacity")
def _alexander_taylor(cfg, seed):
    out = []
    for n in range(1, cfg.n_max + 1):
        for rho in np.round(np.arange(0.1, 1.0, 0.1), 10):
            E = Ball.unit(n)
            out.append(alexander_taylor_check(Ball.complex_ball((0j,) * n, float(rho)), E, E,
                                              instance=f"n={n} ball rho={rho:.1f}"))
    K = UnionRegion((_disc(0.5, 0.3), _disc(-0.5, 0.3)))
    D = Ball.unit(1)
    out.append(alexander_taylor_check(K, D, D, instance="two discs in the unit disc",
                                      grid=GridConfig(n=cfg.b.psor_grid), d_max=cfg.b.d_max))
    return out


@_register("logcap-vs-chebyshev", "logarithmic capacity vs Chebyshev constant", "capacity")
def _logcap_vs_chebyshev(cfg, seed):
    b = cfg.b
    out = []
    for name, K in (("disc r=0.5", _disc(0j, 0.5)), ("off-centre disc", _disc(0.3 + 0j, 0.4)),
                    ("segment [-0.5,0.5]", ProductRegion((PlaneInterval(-0.5, 0.5),)))):
        out.append(compare_c_and_T_1d(K, 1.0, 0j, b.fekete_k, b.d_max, seed=seed, instance=name))
    return out


# ---------------------------------------------------------------------------
# integrability


def _lelong_family(cfg):
    fam = [("log|z| unit disc", LogAbs(1), Ball.unit(1))]
    if cfg.n_max >= 2:
        fam.append(("log|z-a| unit ball C^2", LogAbs(2, (0.4 + 0j, 0j)), Ball.unit(2)))
        fam.append(("log|z| real ball R^2", LogAbs(2), Ball.unit(2, 0)))
    fam.append(("log|x| on [-1,1]", LogAbs(1), Ball.unit(1, 0)))
    return fam


@_register("g-moment", "growth-function moments of Lelong functions", "integrability")
def _g_moment(cfg, seed):
    out = []
    for name, u, B in _lelong_family(cfg):
        for g in (GrowthFunction.power(1.0), GrowthFunction.expm1(0.5)):
            out.append(g_moment(u, B, g, cfg.b.samples, seed, f"{name} g={g.kind}").report)
    return out


@_register("exp-integrability", "exponential integrability", "integrability")
def _exp_integrability(cfg, seed):
    out = []
    for name, u, B in _lelong_family(cfg):
        alphas = (0.5, 1.0, 1.5) if B.space.full_complex else (0.25, 0.5, 0.75)
        for a in alphas:
            out.append(exp_integral(u, B, a, cfg.b.samples, seed, f"{name} alpha={a}").report)
    return out


@_register("lp-integrability", "L^p integrability", "integrability")
def _lp_integrability(cfg, seed):
    out = []
    for name, u, B in _lelong_family(cfg):
        for p in (0.5, 1.0, 2.0, 3.0):
            out.append(lp_integral(u, B, p, cfg.b.samples, seed, f"{name} p={p}").report)
    return out


def _bmo_runs(cfg, seed):
    b = cfg.b
    fam = BallFamily(count=b.bmo_balls, n_samples=b.bmo_samples)
    runs = [("log|z| on C", LogAbs(1), AmbientSpace(1), 1.0),
            ("log|x| on R", LogAbs(1), AmbientSpace(1, 0), 0.5)]
    if cfg.n_max >= 2:
        runs.append(("log|z1| on C^2", PolyLog(Polynomial({(1, 0): 1.0})), AmbientSpace(2), 1.0))
    out = []
    for name, u, space, alpha in runs:
        extra = [Ball.unit(space.n, space.m)]
        out.append(bmo_norm(u, space, fam, seed, 1.0, alpha, extra, name))
    return out


@_register("john-nirenberg", "John-Nirenberg exponential bound", "integrability")
def _john_nirenberg(cfg, seed):
    return [r for res in _bmo_runs(cfg, seed) for r in res.jn_reports]


@_register("bmo-bound", "BMO norm bound", "integrability")
def _bmo_bound(cfg, seed):
    return [res.report for res in _bmo_runs(cfg, seed)]


def _eta_family(cfg):
    fam = [("radial n=1", Ball.unit(1), [RadialGreen(1)], None),
           ("radial weight 1/2 n=1, E=B(0,0.5)", Ball.complex_ball((0j,), 0.5), [RadialGreen(1, weight=0.5)], None)]
    if cfg.n_max >= 2:
        fam.append(("radial n=2", Ball.unit(2), [RadialGreen(2)], None))
        fam.append(("radial n=2 on C x R", Ball.unit(2), [RadialGreen(2)], AmbientSpace(2, 1)))
    return fam


@_register("eta-integrability", "integrability over bounded classes", "integrability")
def _eta_integrability(cfg, seed):
    out = []
    for name, E, U, space in _eta_family(cfg):
        for g in (GrowthFunction.power(1.0), GrowthFunction.power(2.0)):
            out += eta_integral_bound(E, U, g, cfg.b.samples, seed, space, f"{name} g=t^{g.p:g}")
    return out


@_register("eta-exp-integrability", "exponential integrability over bounded classes", "integrability")
def _eta_exp(cfg, seed):
    out = []
    for name, E, U, space in _eta_family(cfg):
        alphas = (0.5, 1.0) if space is None else (0.25, 0.5)
        for a in alphas:
            out += eta_exp_check(E, U, a, cfg.b.samples, seed, space, 0.0, f"{name} alpha={a}")
    return out


@_register("limsup-integrability", "integrability under a limsup condition", "integrability")
def _limsup(cfg, seed):
    out = []
    for name, E, U, space in _eta_family(cfg):
        a = 0.5 if space is None else 0.25
        out += eta_exp_check(E, U, a, cfg.b.samples, seed, space, 0.5, f"{name} alpha={a} s0=0.5")
    return out


@_register("cegrell-exp-integrability", "exponential integrability of finite-mass functions", "integrability")
def _cegrell_exp(cfg, seed):
    out = []
    for name, phi, space in _cegrell_family(cfg):
        alphas = (0.5, 1.0, 1.5) if space is None else (0.25, 0.5)
        for a in alphas:
            reps = cegrell_exp_check(phi, a, space, cfg.b.samples, seed, s_grid=(), instance=name)
            out += [r for r in reps if r.theorem == "cegrell-exp-integrability"]
    return out


@_register("cegrell-lp-integrability", "L^p integrability of finite-mass functions", "integrability")
def _cegrell_lp(cfg, seed):
    out = []
    for name, phi, space in _cegrell_family(cfg):
        for p in (1.0, 2.0):
            out.append(cegrell_lp_check(phi, p, space, cfg.b.samples, seed, name))
    return out


# ---------------------------------------------------------------------------
# running


SUITES = ("polya", "lemniscate", "capacity", "integrability")


def _job_seed(seed: int, theorem: str) -> int:
    return int(seed) * 1000 + sorted(REGISTRY).index(theorem)


def run_theorem(theorem: str, cfg: SuiteConfig) -> list:
    entry = REGISTRY[theorem]
    reports = entry.generator(cfg, _job_seed(cfg.seed, theorem))
    if not reports:
        reports = [skipped(theorem, "none", "no instance generated")]
    return reports


def _selected(cfg: SuiteConfig, suite: str) -> list[str]:
    ids = [k for k, e in REGISTRY.items() if e.suite == suite]
    if cfg.theorems is not None:
        ids = [k for k in ids if k in cfg.theorems]
    return ids


def _run_ids(ids, cfg):
    if cfg.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_theorem, ids, [cfg] * len(ids)))
    else:
        results = [run_theorem(i, cfg) for i in ids]
    return [r for rs in results for r in rs]


def run_polya_suite(cfg: SuiteConfig) -> list:
    return _run_ids(_selected(cfg, "polya"), cfg)


def run_lemniscate_suite(cfg: SuiteConfig) -> list:
    return _run_ids(_selected(cfg, "lemniscate"), cfg)


def run_capacity_comparison_suite(cfg: SuiteConfig) -> list:
    return _run_ids(_selected(cfg, "capacity"), cfg)


def run_integrability_suite(cfg: SuiteConfig) -> list:
    return _run_ids(_selected(cfg, "integrability"), cfg)


SUITE_RUNNERS = {"polya": run_polya_suite, "lemniscate": run_lemniscate_suite,
                 "capacity": run_capacity_comparison_suite, "integrability": run_integrability_suite}


def run_all(cfg: SuiteConfig) -> dict:
    """Run every requested suite; returns {suite: [reports]}."""
    if cfg.jobs > 1:
        ids = [i for s in cfg.suites for i in _selected(cfg, s)]
        flat = dict(zip(ids, _map_ids(ids, cfg)))
        return {s: [r for i in _selected(cfg, s) for r in flat[i]] for s in cfg.suites}
    return {s: SUITE_RUNNERS[s](cfg) for s in cfg.suites}


def _map_ids(ids, cfg):
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(run_theorem, ids, [cfg] * len(ids)))


# ---------------------------------------------------------------------------
# sharpness


@dataclass(frozen=True)
class SharpnessFamily:
    name: str
    r: list
    relative_volume: list
    T: list
    slope: float
    target: float

    @property
    def ok(self) -> bool:
        return abs(self.slope - self.target) <= 0.05

    def to_json(self):
        return {"name": self.name, "r": self.r, "relative_volume": self.relative_volume, "T": self.T,
                "slope": self.slope, "target": self.target, "ok": self.ok}


@dataclass(frozen=True)
class SharpnessReport:
    families: list

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.families)

    def to_json(self):
        return {"kind": "sharpness_report", "schema_version": SCHEMA_VERSION,
                "families": [f.to_json() for f in self.families], "ok": self.ok}


def _slope(x, y):
    A = np.vstack([np.log(x), np.ones(len(x))]).T
    return float(np.linalg.lstsq(A, np.log(y), rcond=None)[0][0])


def sharpness_probe(cfg: SuiteConfig | None = None, n: int = 2, m: int = 1) -> SharpnessReport:
    """Least-squares exponent of relative volume against T over the extremal families."""
    fams = []
    r = [round(0.1 * k, 10) for k in range(1, 10)]
    T = [product_T([(PlaneDisc(0j, ri), PlaneDisc(0j, 1.0))] + [(PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0))]
                   * (n - 1)).value for ri in r]
    vol = [ri ** 2 for ri in r]
    fams.append(SharpnessFamily(f"K_r in the polydisc, n={n}", r, vol, T, _slope(T, vol), 2.0))
    r_small = list(np.geomspace(1e-3, 5e-2, 9))
    T = [product_T([(PlaneInterval(-ri, ri), PlaneInterval(-1, 1))] + [(PlaneInterval(-1, 1), PlaneInterval(-1, 1))]
                   * (n - 1)).value for ri in r_small]
    fams.append(SharpnessFamily(f"I^n(r) in the cube, n={n}", [float(x) for x in r_small], list(r_small), T,
                                _slope(T, r_small), 1.0))
    fac_rest = [(PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0))] * m + [(PlaneInterval(-1, 1), PlaneInterval(-1, 1))] * (n - m - 1)
    T = [product_T(fac_rest + [(PlaneInterval(-ri, ri), PlaneInterval(-1, 1))]).value for ri in r_small]
    fams.append(SharpnessFamily(f"Delta^m x I^(n-m)(r), n={n} m={m}", [float(x) for x in r_small],
                                list(r_small), T, _slope(T, r_small), 1.0))
    return SharpnessReport(fams)


# ---------------------------------------------------------------------------
# bundles


def rollup(results: dict) -> list[dict]:
    rows = []
    by_id: dict[str, list] = {}
    for reports in results.values():
        for r in reports:
            by_id.setdefault(r.theorem, []).append(r)
    for tid in sorted(by_id):
        reps = by_id[tid]
        judged = [r for r in reps if r.status != "skipped"]
        margins = [r.margin for r in judged if math.isfinite(r.margin)]
        rows.append({"theorem": tid, "label": REGISTRY[tid].label if tid in REGISTRY else "",
                     "instances": len(reps), "worst_margin": min(margins) if margins else math.nan,
                     "pass_rate": (sum(r.passed for r in judged) / len(judged)) if judged else math.nan,
                     "fail": sum(r.status == "fail" for r in judged),
                     "inconclusive": sum(r.status == "inconclusive" for r in judged)})
    return rows


def rollup_csv(results: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theorem", "label", "instances", "worst_margin", "pass_rate", "fail", "inconclusive"])
    for row in rollup(results):
        w.writerow([row["theorem"], row["label"], row["instances"], repr(row["worst_margin"]),
                    repr(row["pass_rate"]), row["fail"], row["inconclusive"]])
    return buf.getvalue()


def suite_json(suite: str, reports: list, cfg: SuiteConfig) -> str:
    return dumps({"kind": "report_bundle", "schema_version": SCHEMA_VERSION, "suite": suite,
                  "config": cfg.to_json(), "reports": [r.to_json() for r in reports]})


def write_bundle(results: dict, cfg: SuiteConfig, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for suite, reports in results.items():
        p = os.path.join(outdir, f"{suite}.json")
        with open(p, "w") as fh:
            fh.write(suite_json(suite, reports, cfg))
        paths.append(p)
    p = os.path.join(outdir, "rollup.csv")
    with open(p, "w") as fh:
        fh.write(rollup_csv(results))
    paths.append(p)
    return paths


def coverage(results: dict) -> dict[str, int]:
    """Number of non-skipped instances per registered id."""
    cov = {k: 0 for k in REGISTRY}
    for reports in results.values():
        for r in reports:
            if r.theorem in cov and r.status != "skipped":
                cov[r.theorem] += 1
    return cov


def overall_status(reports) -> str:
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"
