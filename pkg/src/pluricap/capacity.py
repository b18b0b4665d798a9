"""Relative logarithmic capacity T_B(K), plane logarithmic capacity and their comparison.

The Chebyshev path bounds ``max_B V_K`` from below through the convex problem

    minimize ||P||_grid  subject to  P(z) = 1,  deg P <= d,

solved as a second-order cone program. Because the grid certifies the sup
norm on K up to a known inflation factor, the optimal polynomial gives a true
lower bound of V_K(z), hence an upper bound of T_B(K). Fekete points give the
plane capacity c(K).
"""
from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass, field

import cvxpy as cp
import numpy as np
from scipy import optimize

from . import _rng
from ._jsonio import SCHEMA_VERSION, cx, from_num, num
from .extremal import DiscV, IntervalV
from .geometry import (Ball, BallRegion, GeometryError, PlaneDisc, PlaneInterval, PlanePoints,
                       ProductRegion, Region)
from .polynomials import certified_grid, monomial_matrix, multi_indices
from .reports import EXACT, HEURISTIC, LOWER, UPPER, Side, compare, skipped

# relative slack added to heuristic capacity intervals to absorb solver tolerance
HEURISTIC_PAD = 1e-6


@dataclass(frozen=True)
class SolverConfig:
    solver: str = "CLARABEL"
    oversample: float = 20.0
    boundary_samples: int = 32
    probe_degree: int = 4
    fekete_candidates: int = 4096
    fekete_sweeps: int = 4

    @classmethod
    def from_json(cls, d):
        known = {k: d[k] for k in cls.__dataclass_fields__ if k in d}
        return cls(**known)

    def to_json(self):
        return dict(self.__dict__)


DEFAULT_SOLVER = SolverConfig()


@dataclass(frozen=True)
class CapacityEstimate:
    """A capacity value with its bound direction and provenance.

    ``lo``/``hi`` bracket the true value; ``lo_sound``/``hi_sound`` say which
    ends are rigorous. ``heuristic`` is the best point estimate.
    """

    value: float
    direction: str
    provenance: str
    lo: float = math.nan
    hi: float = math.nan
    lo_sound: bool = False
    hi_sound: bool = False
    heuristic: float = math.nan
    pluripolar: bool = False
    details: dict = field(default_factory=dict)

    @classmethod
    def exact(cls, value, provenance, **details):
        v = float(value)
        return cls(v, EXACT, provenance, v, v, True, True, v, v == 0.0, details)

    def upper(self) -> Side:
        if self.direction == EXACT:
            return Side(self.value, EXACT)
        return Side(self.hi, UPPER) if self.hi_sound else Side(self.heuristic, HEURISTIC)

    def lower(self) -> Side:
        if self.direction == EXACT:
            return Side(self.value, EXACT)
        return Side(self.lo, LOWER) if self.lo_sound else Side(self.heuristic, HEURISTIC)

    def to_json(self):
        return {"kind": "capacity_estimate", "schema_version": SCHEMA_VERSION,
                "value": num(self.value), "direction": self.direction, "provenance": self.provenance,
                "lo": num(self.lo), "hi": num(self.hi), "lo_sound": self.lo_sound,
                "hi_sound": self.hi_sound, "heuristic": num(self.heuristic),
                "pluripolar": self.pluripolar, "details": _plain(self.details)}

    @classmethod
    def from_json(cls, d):
        return cls(from_num(d["value"]), d["direction"], d["provenance"], from_num(d["lo"]),
                   from_num(d["hi"]), bool(d["lo_sound"]), bool(d["hi_sound"]),
                   from_num(d["heuristic"]), bool(d["pluripolar"]), dict(d.get("details", {})))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, complex) or isinstance(obj, np.complexfloating):
        return cx(obj)
    return num(obj)


def _is_pluripolar(K) -> bool:
    if isinstance(K, PlanePoints):
        return True
    if isinstance(K, ProductRegion):
        return any(isinstance(f, PlanePoints) for f in K.factors)
    return False


def _as_region(K):
    if isinstance(K, Ball):
        return BallRegion(K)
    if isinstance(K, (PlaneDisc, PlaneInterval, PlanePoints)):
        return ProductRegion((K,))
    return K


# ---------------------------------------------------------------------------
# the cone program


class _NormProgram:
    """min ||P||_grid s.t. P(z) = 1 over polynomials of degree <= d, re-solvable in z."""

    def __init__(self, points, d, center, scale, solver):
        self.indices = multi_indices(points.shape[1], d)
        self.center, self.scale, self.d = center, scale, d
        V = monomial_matrix((points - center) / scale, self.indices)
        self.V = V
        M, nb = V.shape
        A = np.block([[V.real, -V.imag], [V.imag, V.real]])
        self.x = cp.Variable(2 * nb)
        self.t = cp.Variable()
        self.cr = cp.Parameter(2 * nb)
        self.ci = cp.Parameter(2 * nb)
        Y = A @ self.x
        cons = [cp.SOC(self.t * np.ones(M), cp.vstack([Y[:M], Y[M:]]), axis=0),
                self.cr @ self.x == 1, self.ci @ self.x == 0]
        self.problem = cp.Problem(cp.Minimize(self.t), cons)
        self.solver = solver
        self.lock = threading.Lock()

    def coefficients_at(self, z):
        return monomial_matrix((np.atleast_2d(z) - self.center) / self.scale, self.indices)[0]

    def solve(self, z):
        a = self.coefficients_at(z)
        with self.lock:
            self.cr.value = np.concatenate([a.real, -a.imag])
            self.ci.value = np.concatenate([a.imag, a.real])
            try:
                with warnings.catch_warnings():
                    # inaccurate solutions are still usable: the certified value
                    # is recomputed from the returned polynomial
                    warnings.simplefilter("ignore", UserWarning)
                    self.problem.solve(solver=self.solver)
            except cp.error.SolverError:
                return None, math.nan, "solver_error"
            status = self.problem.status
            if self.x.value is None:
                return None, math.nan, status
            nb = len(self.indices)
            p = self.x.value[:nb] + 1j * self.x.value[nb:]
            return p, float(self.t.value), status


_PROGRAMS: dict = {}
_PROGRAMS_LOCK = threading.Lock()


def _program(K: Region, grid_points, d, cfg: SolverConfig):
    key = (id(K), K.__class__.__name__, d, cfg.oversample, cfg.solver, grid_points.shape)
    with _PROGRAMS_LOCK:
        prog = _PROGRAMS.get(key)
        if prog is None or prog.K is not K:
            ball = K.bounding_ball
            prog = _NormProgram(grid_points, d, ball.center_array, ball.radius, cfg.solver)
            prog.K = K
            if len(_PROGRAMS) > 64:
                _PROGRAMS.clear()
            _PROGRAMS[key] = prog
        return prog


def _grid_for(K: Region, d: int, cfg: SolverConfig, seed: int):
    grid = certified_grid(K, d, cfg.oversample)
    if grid is not None:
        return grid.points, grid.inflation, True
    gen = _rng.generator(seed, 0, stream=41)
    pts = K.sample(gen, max(2000, int(40 * cfg.oversample * d)))
    return pts, 1.0, False


@dataclass(frozen=True)
class GreenLowerBound:
    """v <= V_K(z) when ``certified``; ``raw`` is the uncertified optimizer value."""

    point: tuple
    degree: int
    value: float
    raw: float
    certified: bool
    degenerate: bool = False
    status: str = "optimal"
    coefficients: np.ndarray | None = field(default=None, compare=False, repr=False)
    norm_upper: float = math.nan

    def to_json(self):
        return {"point": [cx(p) for p in self.point], "degree": self.degree, "value": num(self.value),
                "raw": num(self.raw), "certified": self.certified, "degenerate": self.degenerate,
                "status": self.status}


def green_value(K, z, d: int, cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0) -> GreenLowerBound:
    """Lower bound of the extremal function V_K at z from a degree-d polynomial."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    K = _as_region(K)
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    pts, inflation, certified = _grid_for(K, d, cfg, seed)
    prog = _program(K, pts, d, cfg)
    p, t, status = prog.solve(z)
    zt = tuple(z[0])
    if p is None or not math.isfinite(t):
        return GreenLowerBound(zt, d, 0.0, math.nan, False, True, status)
    on_grid = np.abs(prog.V @ p)
    at_z = abs(prog.coefficients_at(z) @ p)
    upper = float(np.max(on_grid)) * inflation
    raw = -math.log(t) / d if t > 0 else math.inf
    value = max(0.0, math.log(at_z / upper) / d) if upper > 0 and at_z > 0 else 0.0
    degenerate = t >= 1 - 1e-9
    return GreenLowerBound(zt, d, value if certified else 0.0, max(raw, 0.0), certified, degenerate,
                           status, p, upper)


# ---------------------------------------------------------------------------
# the Chebyshev constant T_B(K)


def _b_sampler(B):
    """Return (probe points, projector onto the probed set, max-norm points) for B."""
    if isinstance(B, Ball):
        space = B.space
        c, R = B.center_real, B.radius
        boundary = space.full_complex

        def project(x):
            dx = x - c
            nd = np.linalg.norm(dx)
            if boundary or nd > R:
                return c + R * dx / max(nd, 1e-300)
            return x

        def probes(gen, k):
            pts = [B.sample_boundary(gen, k)]
            if not boundary:
                pts.append(B.sample(gen, k))
            return np.concatenate(pts)

        return probes, project, space
    if isinstance(B, ProductRegion) and all(isinstance(f, PlaneDisc) for f in B.factors):
        space = B.space
        centers = np.array([f.center for f in B.factors])
        radii = np.array([f.radius for f in B.factors])

        def project(x):
            w = space.to_complex(x)[0] - centers
            w = centers + radii * w / np.maximum(np.abs(w), 1e-300)
            return space.to_real(w)[0]

        def probes(gen, k):
            th = gen.random((k, len(radii))) * 2 * np.pi
            return centers + radii * np.exp(1j * th)

        return probes, project, space
    raise GeometryError("B must be a ball or a polydisc")


def _probe_max(K, B, d, cfg, seed):
    probes, project, space = _b_sampler(B)
    gen = _rng.generator(seed, 0, stream=42)
    k = cfg.boundary_samples
    if space.real_dim == 2 and isinstance(B, Ball) and space.full_complex:
        th = 2 * np.pi * (np.arange(k) + 0.5) / k
        pts = B.center_array + B.radius * np.exp(1j * th)[:, None]
    else:
        pts = probes(gen, k)
    vals = np.array([green_value(K, p, d, cfg, seed).raw for p in pts])
    order = np.argsort(-vals)
    best_x, best_v = space.to_real(pts[order[0]])[0], vals[order[0]]

    def neg(x):
        return -green_value(K, space.to_complex(project(x))[0], d, cfg, seed).raw

    x0 = space.to_real(pts[order[0]])[0]
    step = 0.5 * (2 * np.pi / k) * (B.radius if isinstance(B, Ball) else 1.0)
    simplex = np.vstack([x0, x0 + step * np.eye(len(x0))])
    res = optimize.minimize(neg, x0, method="Nelder-Mead",
                            options={"initial_simplex": simplex, "maxiter": 40 * len(x0),
                                     "xatol": 1e-6, "fatol": 1e-9})
    if -res.fun > best_v:
        best_x, best_v = project(res.x), -res.fun
    return space.to_complex(project(best_x))[0], float(best_v), pts


def _richardson_inverse_d(ds, vs):
    ds, vs = np.asarray(ds, float), np.asarray(vs, float)
    if len(ds) < 2:
        return float(vs[-1])
    A = np.stack([np.ones_like(ds), 1.0 / ds], axis=1)
    coef, *_ = np.linalg.lstsq(A, vs, rcond=None)
    return float(coef[0])


def chebyshev_T(K, B, d_max: int = 8, cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0,
                n_norm_samples: int = 2048) -> CapacityEstimate:
    """Two-sided estimate of T_B(K) = exp(-max_B V_K); the upper end is certified."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    if _is_pluripolar(K):
        return CapacityEstimate(0.0, "two_sided", "chebyshev_optimizer", 0.0, 0.0, True, True, 0.0,
                                True, {"d_max": d_max})
    K = _as_region(K)
    d_probe = min(d_max, cfg.probe_degree)
    b, _, probe_pts = _probe_max(K, B, d_probe, cfg, seed)
    probes, _, space = _b_sampler(B)
    gen = _rng.generator(seed, 1, stream=42)
    bpts = np.concatenate([probes(gen, n_norm_samples), probe_pts, b[None, :]])
    ds, raws, lowers = [], [], []
    best_upper, certified = math.inf, False
    for d in range(1, d_max + 1):
        g = green_value(K, b, d, cfg, seed)
        ds.append(d)
        raws.append(g.raw)
        lowers.append(g.value)
        if g.certified and g.coefficients is not None:
            certified = True
            prog = _program(K, _grid_for(K, d, cfg, seed)[0], d, cfg)
            Vb = monomial_matrix((bpts - prog.center) / prog.scale, prog.indices)
            norm_B = float(np.max(np.abs(Vb @ g.coefficients)))
            if norm_B > 0:
                best_upper = min(best_upper, (g.norm_upper / norm_B) ** (1.0 / d))
    hi = min(1.0, math.exp(-max(lowers)), best_upper) if certified else 1.0
    half = [i for i, d in enumerate(ds) if d >= max(1, d_max // 2)]
    v_inf = max(_richardson_inverse_d([ds[i] for i in half], [raws[i] for i in half]), max(raws))
    lo = min(hi, math.exp(-v_inf) * (1 - HEURISTIC_PAD))
    heur = min(hi, math.exp(-max(raws)))
    pluripolar = heur < 1e-12
    return CapacityEstimate(heur, "two_sided", "chebyshev_optimizer", lo, hi, False, certified, heur,
                            pluripolar, {"d_max": d_max, "point": tuple(b), "raw": raws,
                                         "lower": lowers})


# ---------------------------------------------------------------------------
# plane capacity by Fekete points


def plane_capacity_exact(K) -> float | None:
    """Closed-form logarithmic capacity of a disc, segment or finite set."""
    if isinstance(K, ProductRegion) and len(K.factors) == 1:
        K = K.factors[0]
    if isinstance(K, BallRegion) and K.ball.space.n == 1 and K.bounding_ball == K.ball:
        return K.ball.radius if K.ball.space.m == 1 else K.ball.radius / 2
    if isinstance(K, PlaneDisc):
        return K.radius
    if isinstance(K, PlaneInterval):
        return (K.b - K.a) / 4
    if isinstance(K, PlanePoints):
        return 0.0
    return None


def _fekete_candidates(K, count, seed):
    if isinstance(K, ProductRegion) and len(K.factors) == 1:
        K = K.factors[0]
    if isinstance(K, BallRegion) and K.ball.space.n == 1 and K.bounding_ball == K.ball:
        c, R = K.ball.center[0], K.ball.radius
        K = PlaneDisc(c, R) if K.ball.space.m == 1 else PlaneInterval(c.real - R, c.real + R)
    if isinstance(K, PlaneDisc):
        return K.center + K.radius * np.exp(2j * np.pi * np.arange(count) / count)
    if isinstance(K, PlaneInterval):
        return K.mid + K.half_width * np.cos(np.pi * np.arange(count) / (count - 1))
    if isinstance(K, PlanePoints):
        return np.asarray(K.points)
    if isinstance(K, Region) and K.space.n == 1:
        gen = _rng.generator(seed, 0, stream=43)
        pts = K.sample(gen, count)[:, 0]
        if len(pts) == 0:
            raise GeometryError("could not sample the set")
        return pts
    raise GeometryError("Fekete points need a plane set")


def _log_vandermonde(z):
    d = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(len(z), 1)
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(d[iu])))


def _ascent(cand, idx, sweeps):
    """Discrete coordinate ascent of the log Vandermonde over candidate indices."""
    idx = np.array(idx)
    with np.errstate(divide="ignore", invalid="ignore"):
        total = np.sum(np.log(np.abs(cand[:, None] - cand[None, idx])), axis=1)
        for _ in range(sweeps):
            moved = False
            for i in range(len(idx)):
                old = idx[i]
                own = np.log(np.abs(cand - cand[old]))
                S = total - own
                S[old] = np.sum(np.log(np.abs(cand[old] - cand[np.delete(idx, i)])))
                S[np.isnan(S)] = -np.inf
                new = int(np.argmax(S))
                if S[new] > S[old] + 1e-13 * max(1.0, abs(S[old])):
                    idx[i] = new
                    total = S + np.log(np.abs(cand - cand[new]))
                    total[old] = S[old] + own[new]
                    moved = True
            if not moved:
                break
    return idx


def _richardson_fekete(ks, log_deltas):
    ks, y = np.asarray(ks, float), np.asarray(log_deltas, float)
    basis = [np.ones_like(ks), np.log(ks) / (ks - 1), 1.0 / (ks - 1), 1.0 / (ks - 1) ** 2]
    A = np.stack(basis[:max(1, min(4, len(ks) - 1))], axis=1)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(coef[0])


def fekete_capacity_1d(K, k_max: int = 64, cfg: SolverConfig = DEFAULT_SOLVER,
                       seed: int = 0) -> CapacityEstimate:
    """Fekete estimate δ_k of the logarithmic capacity of a plane compact set.

    The δ_k sequence is made nonincreasing in k by comparing each configuration
    with the best one-point deletion of the next, and ``heuristic`` is a
    Richardson fit in k. When K admits a certified grid, ``hi`` is the sup norm
    of the Fekete polynomial to the power 1/k, which bounds c(K) from above;
    otherwise ``hi`` is δ_{k_max} and is only heuristic.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    if _is_pluripolar(K) or (isinstance(K, ProductRegion) and len(K.factors) == 1
                             and isinstance(K.factors[0], PlanePoints)):
        return CapacityEstimate(0.0, UPPER, "fekete", 0.0, 0.0, True, True, 0.0, True, {"k_max": k_max})
    cand = _fekete_candidates(K, cfg.fekete_candidates, seed)
    if len(cand) < 2:
        return CapacityEstimate(0.0, UPPER, "fekete", 0.0, 0.0, True, True, 0.0, True, {"k_max": k_max})
    # Leja sequence as the greedy start
    order = [int(np.argmax(np.abs(cand - np.mean(cand))))]
    with np.errstate(divide="ignore"):
        S = np.log(np.abs(cand - cand[order[0]]))
        while len(order) < min(k_max + 1, len(cand)):
            nxt = int(np.argmax(S))
            order.append(nxt)
            S += np.log(np.abs(cand - cand[nxt]))
    configs, logs = {}, {}
    for k in range(2, min(k_max, len(cand)) + 1):
        idx = _ascent(cand, np.array(order[:k]), cfg.fekete_sweeps)
        configs[k] = idx
        logs[k] = _log_vandermonde(cand[idx])
    ks = sorted(configs)
    for k in reversed(ks[:-1]):
        nxt = cand[configs[k + 1]]
        best = max(range(len(nxt)), key=lambda i: _log_vandermonde(np.delete(nxt, i)))
        trial = _log_vandermonde(np.delete(nxt, best))
        if trial > logs[k]:
            logs[k] = trial
            configs[k] = np.delete(configs[k + 1], best)
    deltas = {}
    for k in ks:
        deltas[k] = math.exp(2 * logs[k] / (k * (k - 1)))
    for k in reversed(ks[:-1]):
        deltas[k] = max(deltas[k], deltas[k + 1])
    kk = ks[-1]
    fit = [k for k in ks if k >= max(2, kk // 2)]
    heur = math.exp(_richardson_fekete(fit, [math.log(deltas[k]) for k in fit]))
    heur = min(heur, deltas[kk])
    details = {"k_max": kk, "deltas": [deltas[k] for k in ks], "fekete_delta": deltas[kk]}
    # δ_k of a local optimum is not a bound; c(K) <= ||F||_K^(1/k) for any monic F is
    cheb = _monic_upper(K, cand[configs[kk]], cfg.oversample)
    if cheb is None:
        return CapacityEstimate(deltas[kk], HEURISTIC, "fekete", heur, deltas[kk], False, False, heur,
                                deltas[kk] < 1e-12, details)
    details["chebyshev_upper"] = cheb
    return CapacityEstimate(cheb, UPPER, "fekete", heur, cheb, False, True, heur, cheb < 1e-12, details)


def _monic_upper(K, roots, oversample):
    """Certified ||prod (z - r_j)||_K^(1/k), or None without a certified grid."""
    k = len(roots)
    grid = certified_grid(K, k, oversample)
    if grid is None:
        return None
    z = grid.points[:, 0]
    with np.errstate(divide="ignore"):
        logs = np.zeros(len(z))
        for r in roots:
            logs += np.log(np.abs(z - r))
    return float(math.exp((np.max(logs) + math.log(grid.inflation)) / k))


# ---------------------------------------------------------------------------
# products and plane comparisons


def _plane_fn(K):
    if isinstance(K, PlaneDisc):
        return DiscV(K.center, K.radius)
    if isinstance(K, PlaneInterval):
        return IntervalV(K.a, K.b)
    return None


def plane_T_exact(K, B) -> tuple[float, bool] | None:
    """exp(-max_B V_K) for a plane disc or segment K and a disc or real segment B."""
    f = _plane_fn(K)
    if f is None:
        return None
    if isinstance(B, PlaneDisc):
        proj = ("disc", B.center, B.radius)
    elif isinstance(B, PlaneInterval):
        proj = ("segment", B.a, B.b)
    else:
        return None
    out = f.plane_max(*proj)
    exact = out[2] if len(out) > 2 else True
    return math.exp(-out[0]), exact


def product_T(factors, cfg: SolverConfig = DEFAULT_SOLVER, d_max: int = 8, seed: int = 0) -> CapacityEstimate:
    """min_j T_{B_j}(K_j) for a product K_1 x ... x K_n inside B_1 x ... x B_n."""
    values = []
    for j, (K, B) in enumerate(factors):
        if isinstance(K, PlanePoints):
            values.append((0.0, EXACT))
            continue
        ex = plane_T_exact(K, B)
        if ex is not None:
            values.append((ex[0], EXACT if ex[1] else UPPER))
            continue
        if isinstance(B, PlaneDisc):
            ball = Ball((B.center,), B.radius, _space1(1))
        elif isinstance(B, PlaneInterval):
            ball = Ball((complex(B.mid),), B.half_width, _space1(0))
        else:
            raise GeometryError("factor balls must be plane discs or segments")
        est = chebyshev_T(ProductRegion((K,)) if not isinstance(K, Region) else K, ball, d_max, cfg,
                          seed + j)
        values.append((est.hi, UPPER if est.hi_sound else HEURISTIC))
    k = int(np.argmin([v for v, _ in values]))
    dirs = {d for _, d in values}
    if dirs == {EXACT}:
        return CapacityEstimate.exact(values[k][0], "product_formula", factors=len(factors))
    direction = HEURISTIC if HEURISTIC in dirs else UPPER
    v = values[k][0]
    return CapacityEstimate(v, direction, "product_formula", math.nan, v, False, direction == UPPER, v,
                            v == 0.0, {"factors": len(factors)})


def _space1(m):
    from .geometry import AmbientSpace
    return AmbientSpace(1, m)


def product_factors_of(K: ProductRegion, B) -> list:
    """Pair the factors of a product set with those of a polydisc/box B."""
    if isinstance(B, ProductRegion):
        return list(zip(K.factors, B.factors))
    raise GeometryError("product formula needs a product reference set")


def compare_c_and_T_1d(K, R: float = 1.0, center: complex = 0j, k_max: int = 48, d_max: int = 8,
                       cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0, instance: str = ""):
    """Check c(K) <= 2R T_D(K) for a plane compact K in the disc D(center, R)."""
    if _is_pluripolar(K) or isinstance(K, PlanePoints):
        return skipped("logcap-vs-chebyshev", instance, "pluripolar set")
    D = PlaneDisc(center, R)
    fek = fekete_capacity_1d(K, k_max, cfg, seed)
    c_exact = plane_capacity_exact(K)
    lhs = Side(c_exact, EXACT) if c_exact is not None else fek.upper()
    plane_K = K.factors[0] if isinstance(K, ProductRegion) and len(K.factors) == 1 else K
    ex = plane_T_exact(plane_K, D)
    ball = Ball((complex(center),), R, _space1(1))
    cheb = chebyshev_T(K, ball, d_max, cfg, seed)
    if ex is not None and ex[1]:
        T_side = Side(ex[0], EXACT)
    else:
        T_side = cheb.lower()
    rhs = Side(2 * R * T_side.value, T_side.direction)
    return compare("logcap-vs-chebyshev", instance, lhs, rhs, 2 * R, seed,
                   fekete=fek.hi, fekete_extrapolated=fek.heuristic, chebyshev_lo=cheb.lo,
                   chebyshev_hi=cheb.hi)
