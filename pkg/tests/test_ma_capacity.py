import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.bounds import DomainError
from pluricap.geometry import Ball, PlaneDisc, ProductRegion
from pluricap.ma_capacity import (GridConfig, MaxOfGreens, RadialGreen, alexander_taylor_check,
                                  cap_concentric, cap_lower_from_T, cap_radial_oracle, rel_extremal_1d,
                                  sublevel_cap_bound)


def test_cap_concentric_values():
    assert cap_concentric(1 / math.e, 1.0, 2) == pytest.approx(1.0)
    assert cap_concentric(0.5, 1.0, 3) == pytest.approx(math.log(2) ** -3)
    with pytest.raises(DomainError):
        cap_concentric(1.0, 1.0, 1)


@pytest.mark.parametrize("r,n", [(0.5, 1), (0.3, 2), (0.8, 3)])
def test_cap_concentric_matches_radial_oracle(r, n):
    assert cap_radial_oracle(r, 1.0, n) == pytest.approx(cap_concentric(r, 1.0, n), rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 4), s=st.floats(0.1, 8.0), w=st.floats(0.2, 1.0))
def test_radial_sublevel_equality(n, s, w):
    phi = RadialGreen(n, weight=w)
    assert phi.sublevel_capacity(s) * s ** n / phi.mass == pytest.approx(1.0, rel=1e-12)


def test_radial_green_scaling():
    phi = RadialGreen(2)
    assert phi.scaled(0.5).mass == pytest.approx(0.25)
    z = np.array([[0.1, 0.2j]])
    assert phi.scaled(0.5)(z)[0] == pytest.approx(0.5 * phi(z)[0])


def test_max_of_greens_mass():
    assert MaxOfGreens((0j,), (1.0,)).mass == pytest.approx(1.0, rel=1e-9)
    two = MaxOfGreens((0.3 + 0j, -0.4 + 0j), (0.5, 0.5))
    assert 0.5 < two.mass < 1.0


def test_psor_concentric_condenser():
    res = rel_extremal_1d(ProductRegion((PlaneDisc(0j, 0.3),)), PlaneDisc(0j, 1.0), GridConfig(n=128))
    exact = 1 / math.log(1 / 0.3)
    assert res.converged
    assert abs(res.capacity - exact) / exact < 0.03
    assert res.error > 0
    # frozen value of this deterministic grid solve
    assert res.capacity == pytest.approx(0.8161, abs=5e-4)


def test_psor_flags_boundary_contact():
    res = rel_extremal_1d(ProductRegion((PlaneDisc(0j, 0.999),)), PlaneDisc(0j, 1.0), GridConfig(n=64))
    assert res.infinite


def test_sublevel_bound_reports():
    rep = sublevel_cap_bound(RadialGreen(3), 2.0)
    assert rep.status == "pass" and rep.details["ratio"] == pytest.approx(1.0, abs=1e-12)
    rep = sublevel_cap_bound(MaxOfGreens((0.3 + 0j, -0.4 + 0j), (0.5, 0.5)), 1.0, GridConfig(n=128))
    assert rep.status == "pass"


@pytest.mark.parametrize("rho", [0.1, 0.5, 0.9])
def test_alexander_taylor_equality_for_balls(rho):
    rep = alexander_taylor_check(Ball.complex_ball((0j, 0j), rho), Ball.unit(2), Ball.unit(2))
    assert rep.status == "pass"
    assert rep.lhs.value == pytest.approx(rep.rhs.value, rel=1e-12)


def test_cap_lower_from_T():
    assert cap_lower_from_T(math.exp(-2.0), 2) == pytest.approx(0.25)
    assert cap_lower_from_T(1.0, 2) == 0.0


def test_grid_export(tmp_path):
    res = rel_extremal_1d(ProductRegion((PlaneDisc(0j, 0.3),)), PlaneDisc(0j, 1.0), GridConfig(n=32))
    res.export(str(tmp_path / "h"))
    assert (tmp_path / "h.bin").stat().st_size == 32 * 32 * 8
