import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.capacity import (CapacityEstimate, SolverConfig, chebyshev_T, compare_c_and_T_1d,
                               fekete_capacity_1d, green_value, plane_T_exact, product_T)
from pluricap.geometry import Ball, PlaneDisc, PlaneInterval, PlanePoints, ProductRegion


def disc(c, r):
    return ProductRegion((PlaneDisc(c, r),))


def test_fekete_disc_and_interval():
    d = fekete_capacity_1d(disc(0j, 1.0), 32)
    assert d.direction == "upper_bound"
    assert d.hi >= 1.0
    assert abs(d.heuristic - 1.0) < 0.01
    s = fekete_capacity_1d(ProductRegion((PlaneInterval(-1, 1),)), 32)
    assert s.hi >= 0.5
    assert abs(s.heuristic - 0.5) < 0.01


def test_fekete_deltas_nonincreasing():
    d = fekete_capacity_1d(disc(0.3, 0.7), 24)
    deltas = d.details["deltas"]
    assert all(a >= b for a, b in zip(deltas, deltas[1:]))


def test_finite_set_has_zero_capacity():
    d = fekete_capacity_1d(ProductRegion((PlanePoints((0j, 1 + 0j)),)), 8)
    assert d.hi == 0.0 and d.pluripolar


def test_green_value_is_a_lower_bound():
    K = disc(0j, 1.0)
    for z, d in ((2.0, 4), (1.5j, 6)):
        g = green_value(K, np.array([z]), d)
        assert g.certified
        assert g.value <= math.log(abs(z)) + 1e-9
        assert g.raw == pytest.approx(math.log(abs(z)), abs=1e-6)


def test_green_value_interval():
    g = green_value(ProductRegion((PlaneInterval(-1, 1),)), np.array([1j]), 8)
    assert g.value <= math.log(1 + math.sqrt(2)) + 1e-9
    assert g.raw > 0.8


def test_chebyshev_interval_contains_truth():
    est = chebyshev_T(disc(0j, 0.5), Ball.unit(1), 6)
    assert est.hi_sound
    assert est.lo <= 0.5 <= est.hi
    seg = chebyshev_T(ProductRegion((PlaneInterval(-1, 1),)), Ball.complex_ball((0j,), 1.0), 6)
    truth = 1 / (1 + math.sqrt(2))
    assert seg.lo <= truth <= seg.hi


def test_chebyshev_K_equal_B():
    est = chebyshev_T(disc(0j, 1.0), Ball.unit(1), 3)
    assert est.hi == pytest.approx(1.0)


def test_plane_T_exact_closed_forms():
    assert plane_T_exact(PlaneDisc(0j, 0.3), PlaneDisc(0j, 1.0)) == (pytest.approx(0.3), True)
    T, exact = plane_T_exact(PlaneInterval(-0.6, 0.6), PlaneInterval(-1, 1))
    assert exact and T == pytest.approx(1 / 3)


def test_product_formula():
    est = product_T([(PlaneDisc(0j, 0.3), PlaneDisc(0j, 1)), (PlaneDisc(0j, 0.9), PlaneDisc(0j, 1))])
    assert est.direction == "exact" and est.value == pytest.approx(0.3, abs=1e-15)
    est = product_T([(PlaneInterval(-0.6, 0.6), PlaneInterval(-1, 1)), (PlaneInterval(-1, 1), PlaneInterval(-1, 1))])
    assert est.value == pytest.approx(1 / 3, abs=1e-15)
    est = product_T([(PlanePoints((0j,)), PlaneDisc(0j, 1)), (PlaneDisc(0j, 0.5), PlaneDisc(0j, 1))])
    assert est.value == 0.0


@settings(max_examples=20, deadline=None)
@given(r=st.floats(0.05, 0.95), R=st.floats(0.05, 0.95))
def test_interval_T_formula(r, R):
    T, exact = plane_T_exact(PlaneInterval(-r, r), PlaneInterval(-1, 1))
    assert exact
    assert T == pytest.approx(r / (1 + math.sqrt(1 - r * r)), rel=1e-12)
    T2, _ = plane_T_exact(PlaneDisc(0j, r * R), PlaneDisc(0j, R))
    assert T2 == pytest.approx(r, rel=1e-12)


def test_logcap_vs_chebyshev_on_disc():
    rep = compare_c_and_T_1d(disc(0j, 0.5), 1.0, 0j, 16, 4)
    assert rep.status == "pass"


def test_estimate_json_round_trip():
    est = chebyshev_T(disc(0j, 0.5), Ball.unit(1), 3)
    back = CapacityEstimate.from_json(est.to_json())
    assert back.hi == est.hi and back.lo == est.lo


def test_solver_config_round_trip():
    cfg = SolverConfig(oversample=12.0, boundary_samples=16)
    assert SolverConfig.from_json(cfg.to_json()) == cfg


@settings(max_examples=8, deadline=None)
@given(r=st.floats(0.1, 2.0), kind=st.sampled_from(["disc", "interval"]))
def test_fekete_upper_end_is_sound(r, kind):
    K = PlaneDisc(0.1j, r) if kind == "disc" else PlaneInterval(-r, r)
    exact = r if kind == "disc" else r / 2
    est = fekete_capacity_1d(ProductRegion((K,)), 16)
    assert est.hi_sound and est.hi >= exact * (1 - 1e-12)
    assert est.details["fekete_delta"] >= est.heuristic
