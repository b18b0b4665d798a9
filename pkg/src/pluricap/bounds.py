"""Dimension constants and the exponential Stieltjes functional of a growth function."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate


class DomainError(ValueError):
    pass


def c_n(n: int) -> Fraction:
    """4^n (n!)^2 / (2n-1)! as an exact rational."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    return Fraction(4 ** n * math.factorial(n) ** 2, math.factorial(2 * n - 1))


def c_prime_n(n: int) -> Fraction:
    """Slicing constant c_n / 4."""
    return c_n(n) / 4


def c_nm(n: int, m: int) -> Fraction:
    """Volume-capacity constant on C^m x R^(n-m): 8(n+m) if m < n, c_n if m = n."""
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    return c_n(n) if m == n else Fraction(8 * (n + m))


def polya_exponent(n: int, m: int) -> int:
    """Exponent 1 + floor(m/n) of the capacity in the volume bound."""
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    return 1 + m // n


def real_generic_constant(n: int, m: int) -> float:
    """8(1+√2)(n+m), the constant for traces on a proper generic subspace."""
    return 8 * (1 + math.sqrt(2)) * (n + m)


def sigma_nm(n: int, m: int) -> float:
    """Uniform BMO bound for restrictions of Lelong-class functions to G."""
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    if m == n:
        c = float(c_n(n))
        return math.log1p(c) + c / 2
    k = 8 * (n + m)
    return 2 * math.log1p(k) + k


# ---------------------------------------------------------------------------
# growth functions


@dataclass(frozen=True)
class GrowthFunction:
    """Increasing g: R+ -> R+ with g(0) = 0.

    ``kind`` is ``"power"`` (g = t**p), ``"expm1"`` (g = exp(alpha t) - 1),
    ``"table"`` (piecewise linear through ``knots``, extended with the last
    slope) or ``"custom"`` (any callable).
    """

    kind: str
    p: float = 1.0
    alpha: float = 1.0
    knots: tuple = ()
    func: Callable | None = field(default=None, compare=False)

    @classmethod
    def power(cls, p: float):
        if p <= 0:
            raise DomainError("power growth needs p > 0")
        return cls("power", p=float(p))

    @classmethod
    def expm1(cls, alpha: float):
        if alpha <= 0:
            raise DomainError("exponential growth needs alpha > 0")
        return cls("expm1", alpha=float(alpha))

    @classmethod
    def table(cls, ts, gs):
        ts, gs = np.asarray(ts, float), np.asarray(gs, float)
        if ts[0] != 0 or gs[0] != 0:
            raise DomainError("table must start at (0, 0)")
        if np.any(np.diff(ts) <= 0) or np.any(np.diff(gs) < 0):
            raise DomainError("table must be increasing")
        return cls("table", knots=tuple(zip(ts.tolist(), gs.tolist())))

    @classmethod
    def custom(cls, func):
        return cls("custom", func=func)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "power":
            return np.where(t > 0, np.abs(t) ** self.p, 0.0)
        if self.kind == "expm1":
            return np.expm1(self.alpha * t)
        if self.kind == "table":
            ts, gs = np.array(self.knots).T
            slope = (gs[-1] - gs[-2]) / (ts[-1] - ts[-2])
            return np.where(t <= ts[-1], np.interp(t, ts, gs), gs[-1] + slope * (t - ts[-1]))
        return np.vectorize(self.func, otypes=[float])(t)

    def is_monotone(self, t_max: float = 50.0, k: int = 2001) -> bool:
        t = np.linspace(0.0, t_max, k)
        g = self(t)
        return bool(abs(g[0]) < 1e-12 and np.all(np.diff(g) >= -1e-12))


def stieltjes_I(g: GrowthFunction, delta: float) -> float:
    """∫_0^∞ e^(-δt) dg(t); returns ``math.inf`` when the integral diverges.

    Closed forms for the power and exponential families; otherwise the
    integration-by-parts identity δ ∫_0^∞ g(t) e^(-δt) dt by quadrature.
    """
    if not delta > 0:
        raise DomainError("delta must be positive")
    if g.kind == "power":
        return math.gamma(g.p + 1) / delta ** g.p
    if g.kind == "expm1":
        return g.alpha / (delta - g.alpha) if g.alpha < delta else math.inf
    if g.kind == "table":
        ts, gs = np.array(g.knots).T
        slopes = np.diff(gs) / np.diff(ts)
        total = float(np.sum(slopes * (np.exp(-delta * ts[:-1]) - np.exp(-delta * ts[1:])) / delta))
        return total + slopes[-1] * math.exp(-delta * ts[-1]) / delta
    return _quad_I(g, delta)


def stieltjes_I_quadrature(g: GrowthFunction, delta: float) -> float:
    """The quadrature path for any variant (used to cross-check the closed forms)."""
    if not delta > 0:
        raise DomainError("delta must be positive")
    return _quad_I(g, delta)


def _quad_I(g, delta):
    probe = [float(g(t / delta)) * math.exp(-t) for t in (40.0, 80.0, 160.0)]
    if not all(map(math.isfinite, probe)) or probe[2] > probe[1] > probe[0] > 0:
        return math.inf
    val, _ = integrate.quad(lambda s: float(g(s / delta)) * math.exp(-s), 0.0, np.inf,
                            epsabs=1e-13, epsrel=1e-11, limit=400)
    # δ ∫ g(t) e^{-δt} dt with t = s/δ
    return val
