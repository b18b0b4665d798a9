import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.bounds import DomainError, GrowthFunction
from pluricap.geometry import AmbientSpace, Ball
from pluricap.integrability import (BallFamily, LogAbs, PolyLog, ball_mean, bmo_norm, cegrell_exp_check,
                                    cegrell_lp_check, eta, eta_exp_check, eta_integral_bound, exp_integral,
                                    g_moment, lemniscate_decay, lp_integral, polynomial_lemniscate_decay)
from pluricap.ma_capacity import RadialGreen
from pluricap.polynomials import Polynomial

# frozen quadrature oracles (scipy.integrate.quad on the radial densities)
BMO_LOG_DISC = 0.3678794411714423      # mean |log r + 1/2| over the unit disc
BMO_LOG_LINE = 0.735758882342885       # mean |log x + 1| over [0, 1]
JN_LOG_DISC = 1.5896534353620084       # mean exp|log r + 1/2| over the unit disc
MEAN_LOG_SHIFTED = -0.375              # mean log|z - 1/2| over the unit disc
RG2_EXP = {0.5: 5.63977394345971, 1.0: 6.579736267392906, 1.5: 7.8956835208167995}


def within(est, value, k=3.0):
    return abs(est.mean - value) <= k * est.std_error + 1e-12


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
def test_g_moment_gamma_closed_form(p):
    res = g_moment(LogAbs(1), Ball.unit(1), GrowthFunction.power(p), 200_000, seed=int(10 * p))
    assert within(res.estimate, math.gamma(p + 1) / 2 ** p)
    assert res.report.status == "pass"


def test_real_line_moment():
    res = lp_integral(LogAbs(1), Ball.unit(1, 0), 2.0, 100_000, 0)
    assert within(res.estimate, math.gamma(3))
    assert res.report.status == "pass"


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_exp_integral_closed_form(alpha):
    res = exp_integral(LogAbs(1), Ball.unit(1), alpha, 100_000, 1)
    assert within(res.estimate, 2 / (2 - alpha))
    assert res.report.status == "pass"


def test_exp_integral_domain():
    with pytest.raises(DomainError):
        exp_integral(LogAbs(1), Ball.unit(1), 2.0)
    with pytest.raises(DomainError):
        exp_integral(LogAbs(1), Ball.unit(1, 0), 1.0)


def test_importance_mean_shifted_pole():
    u = LogAbs(1, (0.5,))
    est = ball_mean(u, Ball.unit(1), 100_000, 2, pole=np.array([0.5]), gamma=0.5)
    assert within(est, MEAN_LOG_SHIFTED)


def test_importance_and_uniform_agree():
    u = LogAbs(1)
    f = lambda z: np.exp(-0.8 * u(z))
    a = ball_mean(f, Ball.unit(1), 100_000, 3)
    b = ball_mean(f, Ball.unit(1), 100_000, 3, pole=np.zeros(1), gamma=0.8)
    assert abs(a.mean - b.mean) <= 3 * math.hypot(a.std_error, b.std_error)
    assert b.std_error < a.std_error


def test_lemniscate_decay_log_disc():
    table = lemniscate_decay(LogAbs(1), Ball.unit(1), np.linspace(0.1, 3, 20), 200_000, 4)
    assert table.all_pass
    # rows share one sample, so use a family-wise 4σ band
    for row in table.rows:
        assert abs(row.ratio - math.exp(-2 * row.s)) <= 4 * row.std_error
    assert table.to_csv().splitlines()[0] == "s,ratio,std_error,bound"


def test_polynomial_lemniscate_decay():
    table = polynomial_lemniscate_decay(Polynomial({(1,): 1.0}), Ball.unit(1), [0.3], 100_000, 5)
    # the normalizing sup norm is a certified upper bound, inflated by at most 8/7
    row = table.rows[0]
    assert 0.09 - 3 * row.std_error <= row.ratio <= 0.09 * (8 / 7) ** 2 + 3 * row.std_error
    assert table.all_pass


def test_bmo_of_log_on_the_disc():
    res = bmo_norm(LogAbs(1), AmbientSpace(1), BallFamily(count=4, n_samples=50_000), 0, 1.0, 1.0,
                   extra_balls=[Ball.unit(1)])
    assert res.report.status == "pass"
    assert all(r.status == "pass" for r in res.jn_reports)
    unit = [p for p in res.per_ball if p[0] == 1.0][0]
    assert abs(unit[1] - BMO_LOG_DISC) <= 3 * unit[2]


def test_bmo_family_spans_four_decades():
    with pytest.raises(DomainError):
        BallFamily(r_min=1e-1, r_max=1e2)


def test_bmo_on_the_line():
    res = bmo_norm(LogAbs(1), AmbientSpace(1, 0), BallFamily(count=3, n_samples=50_000), 1, 1.0, 0.5,
                   extra_balls=[Ball((0.5,), 0.5, AmbientSpace(1, 0))])
    unit = [p for p in res.per_ball if p[0] == 0.5][0]
    assert abs(unit[1] - BMO_LOG_LINE) <= 3 * unit[2]


def test_eta_of_radial_green():
    assert eta(Ball.unit(1), [RadialGreen(1)]).value == pytest.approx(1.0, rel=1e-9)
    e = eta(Ball.unit(2), [RadialGreen(2, weight=0.5)])
    assert e.value == pytest.approx(0.5, rel=1e-9) and e.direction == "exact"


@settings(max_examples=10, deadline=None)
@given(c=st.floats(0.2, 1.0))
def test_eta_is_homogeneous(c):
    base = eta(Ball.unit(1), [RadialGreen(1)]).value
    assert eta(Ball.unit(1), [RadialGreen(1, weight=c)]).value == pytest.approx(c * base, rel=1e-9)


def test_eta_grid_schedules_agree():
    a = eta(Ball.unit(1), [RadialGreen(1)], np.geomspace(1e-2, 1e2, 41))
    b = eta(Ball.unit(1), [RadialGreen(1)], np.linspace(0.05, 50, 30), refine=4)
    assert abs(a.value - b.value) < 1e-6


def test_eta_integral_bound_example():
    reps = eta_integral_bound(Ball.unit(1), [RadialGreen(1)], GrowthFunction.power(1.0), 100_000, 6)
    assert reps[0].status == "pass"
    assert abs(reps[0].lhs.value - math.pi / 2) <= 3 * reps[0].lhs.std_error
    assert reps[0].rhs.value == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_cegrell_exp_radial_n2(alpha):
    reps = cegrell_exp_check(RadialGreen(2), alpha, None, 100_000, 7, s_grid=())
    assert reps[0].status == "pass"
    assert abs(reps[0].lhs.value - RG2_EXP[alpha]) <= 3 * reps[0].lhs.std_error


def test_cegrell_mass_guard():
    with pytest.raises(DomainError):
        cegrell_exp_check(RadialGreen(1, weight=1.5), 0.5)


def test_cegrell_real_generic():
    reps = cegrell_exp_check(RadialGreen(2), 0.5, AmbientSpace(2, 1), 50_000, 8)
    assert all(r.status == "pass" for r in reps)


def test_cegrell_lp():
    rep = cegrell_lp_check(RadialGreen(1), 1.0, None, 100_000, 9)
    assert rep.status == "pass"
    assert abs(rep.lhs.value - math.pi / 2) <= 3 * rep.lhs.std_error


def test_limsup_shift_factor():
    plain = eta_exp_check(Ball.unit(1), [RadialGreen(1)], 0.5, 50_000, 10)
    shifted = eta_exp_check(Ball.unit(1), [RadialGreen(1)], 0.5, 50_000, 10, shift=0.5)
    h = eta(Ball.unit(1), [RadialGreen(1)], shift=0.5).value
    vol = math.pi
    expected = math.exp(0.25) * (vol + (plain[0].rhs.value - vol) / (0.5 / (2 - 0.5)) * 0.5 * h / (2 - 0.5 * h))
    assert shifted[0].rhs.value == pytest.approx(expected, rel=1e-12)
    assert shifted[0].theorem == "limsup-integrability"
    assert shifted[0].status == "pass"


def test_polylog_upper_max_is_certified():
    u = PolyLog(Polynomial({(2,): 1.0}))
    s = u.upper_max(Ball.unit(1))
    assert s.direction == "upper_bound" and s.value >= 0.0
