import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.extremal import (DiscV, IntervalV, LundinV, ProductV, extremal_from_json, joukowski_h,
                               lelong_growth, log_abs_h, search_max)
from pluricap.geometry import Ball

LOG1P2 = math.log(1 + math.sqrt(2))


@settings(max_examples=50)
@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False))
def test_joukowski_modulus_at_least_one(z):
    assert abs(joukowski_h(z)) >= 1 - 1e-9
    assert log_abs_h(z) == pytest.approx(math.log(abs(joukowski_h(z))), abs=1e-9)


def test_interval_extremal_known_values():
    V = IntervalV(-1.0, 1.0)
    assert V(np.array([[0.5 + 0j]]))[0] == 0.0
    assert V(np.array([[1j]]))[0] == pytest.approx(LOG1P2)
    assert V(np.array([[2.0 + 0j]]))[0] == pytest.approx(math.acosh(2.0))


def test_disc_extremal():
    V = DiscV(0.5j, 2.0)
    assert V(np.array([[0.5j + 4.0]]))[0] == pytest.approx(math.log(2))
    assert V(np.array([[0j]]))[0] == 0.0


def test_lundin_shortcut_and_sphere_search():
    F = LundinV(2)
    exact = F.max_over(Ball.unit(2))
    assert exact.direction == "exact"
    assert exact.value == pytest.approx(LOG1P2, abs=1e-15)
    searched = F.max_over(Ball.unit(2), closed_form=False, n_samples=2048)
    assert abs(searched.value - LOG1P2) < 1e-3
    assert F(np.array([[1j, 0]]))[0] == pytest.approx(LOG1P2)


def test_lundin_matches_brute_force_over_directions():
    F = LundinV(3)
    gen = np.random.default_rng(0)
    z = gen.normal(size=(5, 3)) + 1j * gen.normal(size=(5, 3))
    xi = gen.normal(size=(20000, 3))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    brute = np.max(log_abs_h(z @ xi.T), axis=1)
    vals = F(z)
    assert np.all(vals >= brute - 1e-9)
    assert np.allclose(vals, brute, atol=2e-3)


def test_lundin_on_real_ball_vanishes_inside():
    F = LundinV(2)
    assert np.all(F(np.array([[0.3, -0.4], [0.6, 0.8]], dtype=complex)) <= 1e-12)


def test_product_extremal_is_max_of_factors():
    F = ProductV((DiscV(0j, 0.5), IntervalV(-1, 1)))
    z = np.array([[1.0 + 0j, 1j]])
    assert F(z)[0] == pytest.approx(max(math.log(2), LOG1P2))
    mx = F.max_over(Ball.unit(2))
    assert mx.value >= math.log(2) - 1e-12


def test_search_max_is_a_lower_bound():
    F = LundinV(2)
    ev = search_max(F, Ball.unit(2), n_samples=512, seed=1)
    assert ev.direction == "lower_bound"
    assert ev.value <= LOG1P2 + 1e-12


def test_lelong_growth_settles():
    g = lelong_growth(LundinV(2))
    assert g["bounded"]


def test_json_round_trip():
    for F in (DiscV(0.1j, 0.3), IntervalV(-0.5, 2.0), LundinV(2, (0.1, 0.0), 0.5)):
        G = extremal_from_json(F.to_json())
        z = np.array([[0.7 + 0.2j] * F.n])
        assert G(z)[0] == pytest.approx(F(z)[0])


@pytest.mark.parametrize("rho", [0.1, 0.5, 0.9])
def test_real_ball_max_closed_forms(rho):
    F = LundinV(2, (0.0, 0.0), rho)
    assert F.max_over(Ball.unit(2)).value == pytest.approx(math.asinh(1 / rho))
    assert F.max_over(Ball.unit(2, 0)).value == pytest.approx(math.acosh(1 / rho))
