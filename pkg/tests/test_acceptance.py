"""The eleven acceptance criteria, each at its stated tolerance and runtime."""
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from pluricap import cli, harness
from pluricap.bounds import GrowthFunction, c_n, sigma_nm
from pluricap.capacity import chebyshev_T, fekete_capacity_1d, product_T
from pluricap.extremal import LundinV, search_max
from pluricap.geometry import Ball, PlaneDisc, PlaneInterval, ProductRegion, sphere_moment, sphere_moment_exact
from pluricap.integrability import LogAbs, g_moment, lemniscate_decay
from pluricap.ma_capacity import GridConfig, RadialGreen, alexander_taylor_check, rel_extremal_1d
from pluricap.reports import audit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_01_constants(acceptance):
    def body():
        return c_n(1), c_n(2), c_n(3), sigma_nm(1, 1)
    (c1, c2, c3, s11), dt = timed(body)
    ok = (c1 == 4 and c2 == Fraction(32, 3) and c3 == Fraction(96, 5)
          and isinstance(c3, Fraction) and abs(s11 - (math.log(5) + 2)) <= 1e-12 and dt < 1)
    acceptance(1, ok, f"c1={c1} c2={c2} c3={c3} sigma11-(log5+2)={s11 - math.log(5) - 2:.1e} t={dt:.3f}s")
    assert ok


def test_02_fekete(acceptance):
    def body():
        d = fekete_capacity_1d(ProductRegion((PlaneDisc(0j, 1.0),)), 64)
        s = fekete_capacity_1d(ProductRegion((PlaneInterval(-1, 1),)), 64)
        return d, s
    (d, s), dt = timed(body)
    ok = abs(d.heuristic - 1) <= 0.01 and abs(s.heuristic - 0.5) <= 0.005 and dt < 30
    acceptance(2, ok, f"c(disc)={d.heuristic:.5f} c([-1,1])={s.heuristic:.5f} k=64 t={dt:.1f}s")
    assert ok


def test_03_chebyshev(acceptance):
    est, dt = timed(lambda: chebyshev_T(ProductRegion((PlaneDisc(0j, 0.5),)), Ball.unit(1), 8))
    width = (est.hi - est.lo) / 0.5
    ok = est.lo <= 0.5 <= est.hi and width <= 0.05 and dt < 120
    acceptance(3, ok, f"T in [{est.lo:.6f}, {est.hi:.6f}] width={100 * width:.2f}% t={dt:.1f}s")
    assert ok


def test_04_product_and_sharpness(acceptance):
    a = product_T([(PlaneDisc(0j, 0.3), PlaneDisc(0j, 1)), (PlaneDisc(0j, 1), PlaneDisc(0j, 1))])
    b = product_T([(PlaneInterval(-0.6, 0.6), PlaneInterval(-1, 1))] * 2)
    rep = harness.sharpness_probe()
    slopes = [f.slope for f in rep.families]
    ok = (a.value == pytest.approx(0.3, abs=1e-15) and b.value == pytest.approx(1 / 3, abs=1e-15)
          and a.direction == b.direction == "exact" and abs(slopes[0] - 2) <= 0.05
          and all(abs(s - 1) <= 0.05 for s in slopes[1:]))
    acceptance(4, ok, f"T(K_0.3)={a.value!r} T(I2(0.6))={b.value!r} slopes={[round(s, 4) for s in slopes]}")
    assert ok


def test_05_lundin(acceptance):
    F = LundinV(2)
    target = math.log(1 + math.sqrt(2))
    found = search_max(F, Ball.unit(2), n_samples=4096, seed=0)
    exact = F.max_over(Ball.unit(2))
    ok = abs(found.value - target) <= 1e-3 and exact.direction == "exact" and exact.value == pytest.approx(target, abs=1e-15)
    acceptance(5, ok, f"search={found.value:.7f} shortcut={exact.value:.7f} target={target:.7f}")
    assert ok


def test_06_sphere_moment(acceptance):
    parts = []
    ok = True
    for n in (1, 2, 3):
        v, se = sphere_moment(n, 1_000_000, seed=n)
        exact = sphere_moment_exact(n)
        ok &= abs(v - exact) <= 3 * se
        # |w_1|^2 is constant on S^1, so the n = 1 estimate has zero variance
        parts.append(f"n={n}:{(v - exact) / se:+.2f}σ" if se > 0 else f"n={n}:diff={v - exact:.1e}")
    acceptance(6, ok, " ".join(parts))
    assert ok


def test_07_ma_closed_forms(acceptance):
    worst_f = 0.0
    for n in (1, 2, 3, 4):
        phi = RadialGreen(n)
        for s in (0.5, 1, 2, 5):
            worst_f = max(worst_f, abs(phi.sublevel_capacity(s) * s ** n / phi.mass - 1))
    worst_at = 0.0
    for rho in np.round(np.arange(0.1, 1.0, 0.1), 10):
        rep = alexander_taylor_check(Ball.complex_ball((0j, 0j), float(rho)), Ball.unit(2), Ball.unit(2))
        worst_at = max(worst_at, abs(rep.lhs.value / rep.rhs.value - 1))
    ok = worst_f <= 1e-12 and worst_at <= 1e-12
    acceptance(7, ok, f"sublevel ratio err={worst_f:.1e} AT err={worst_at:.1e}")
    assert ok


def test_08_psor(acceptance):
    res, dt = timed(lambda: rel_extremal_1d(ProductRegion((PlaneDisc(0j, 0.3),)), PlaneDisc(0j, 1.0),
                                            GridConfig(n=512)))
    exact = 1 / math.log(1 / 0.3)
    rel = abs(res.capacity - exact) / exact
    ok = rel <= 0.02 and dt < 60
    acceptance(8, ok, f"cap={res.capacity:.5f} exact={exact:.5f} rel={100 * rel:.2f}% t={dt:.1f}s")
    assert ok


def test_09_lemniscate_decay(acceptance):
    grid = np.linspace(0.25, 5.0, 20)
    table = lemniscate_decay(LogAbs(1), Ball.unit(1), grid, 1_000_000, seed=9)
    row = [r for r in table.rows if abs(r.s - 1.0) < 1e-12][0]
    z = (row.ratio - math.exp(-2)) / row.std_error
    bound_ok = all(r.ratio <= 4 * math.exp(-2 * r.s) for r in table.rows) and table.all_pass
    ok = abs(z) <= 3 and bound_ok
    acceptance(9, ok, f"ratio(s=1)={row.ratio:.5f} ({z:+.2f}σ) bound held on {len(table.rows)} points")
    assert ok


def test_10_integrability(acceptance):
    zs = []
    for p in (0.5, 1, 2, 3):
        res = g_moment(LogAbs(1), Ball.unit(1), GrowthFunction.power(p), 400_000, seed=100 + int(2 * p))
        zs.append((res.estimate.mean - math.gamma(p + 1) / 2 ** p) / res.estimate.std_error)
    reps = harness.run_all(harness.SuiteConfig(suites=("integrability",), seed=10))["integrability"]
    fails = [r for r in reps if r.status == "fail"]
    ok = all(abs(z) <= 3 for z in zs) and not fails and audit(reps) == [] and all(r.passed for r in reps)
    acceptance(10, ok, f"g-moment z={[round(z, 2) for z in zs]} registry instances={len(reps)} "
                       f"fail={len(fails)} pass={sum(r.passed for r in reps)}")
    assert ok


def test_11_registry(acceptance, tmp_path, capsys):
    t0 = time.perf_counter()
    code = cli.main(["verify", "--all", "--budget", "small", "--seed", "11", "--out", str(tmp_path)])
    dt = time.perf_counter() - t0
    summary = json.loads(capsys.readouterr().out)
    cov = summary["coverage"]
    ok = (len(cov) == 27 and all(v >= 1 for v in cov.values()) and summary["audit_problems"] == []
          and dt <= 600 and code == 0)
    acceptance(11, ok, f"ids covered={sum(v >= 1 for v in cov.values())}/27 reports={summary['reports']} "
                       f"status={summary['status']} t={dt:.1f}s")
    assert ok
