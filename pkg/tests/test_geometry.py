import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap import _rng
from pluricap.geometry import (AmbientSpace, Ball, BallRegion, BoxRegion, GeometryError, LemniscateRegion,
                               PlaneDisc, PlaneInterval, ProductRegion, UnionRegion, region_from_json,
                               relative_volume_mc, slice_search_complex, slice_search_real, sphere_moment,
                               sphere_moment_exact, unit_ball_volume, volume_mc)
from pluricap.polynomials import Polynomial


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 4), data=st.data())
def test_real_coordinates_round_trip(n, data):
    m = data.draw(st.integers(0, n))
    space = AmbientSpace(n, m)
    x = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=space.real_dim, max_size=space.real_dim)))
    z = space.to_complex(x)
    assert np.allclose(space.to_real(z)[0], x)
    assert np.all(z[0, m:].imag == 0)


def test_unit_ball_volume_oracle():
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(4) == pytest.approx(math.pi ** 2 / 2)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)


def test_ball_sampling_stays_inside():
    for n, m in ((1, 1), (2, 0), (2, 1), (3, 3)):
        B = Ball.unit(n, m)
        pts = B.sample(_rng.generator(3), 2000)
        assert pts.shape == (2000, n)
        assert np.all(B.contains(pts))
        assert np.all(pts[:, m:].imag == 0)


def test_volume_of_concentric_ball():
    K = BallRegion(Ball.complex_ball((0j, 0j), 0.5))
    est = relative_volume_mc(K, Ball.unit(2), 200_000, 1)
    assert abs(est.value - 0.5 ** 4) < 3 * est.std_error + 1e-12


def test_volume_of_box_in_real_ball():
    B = Ball.unit(2, 0)
    K = BoxRegion((-0.5, -0.5), (0.5, 0.5), B)
    est = relative_volume_mc(K, B, 200_000, 2)
    assert abs(est.value - 1 / math.pi) < 3 * est.std_error


def test_volume_is_independent_of_thread_count(monkeypatch):
    K = ProductRegion((PlaneDisc(0j, 0.5), PlaneInterval(-0.3, 0.2)), AmbientSpace(2, 1))
    a = volume_mc(K, 100_000, 5, threads=1)
    b = volume_mc(K, 100_000, 5, threads=4)
    assert a == b


def test_nested_regions_give_ordered_estimates():
    bb = Ball.unit(1)
    small = BallRegion(Ball.complex_ball((0j,), 0.3), bb)
    big = BallRegion(Ball.complex_ball((0j,), 0.6), bb)
    assert volume_mc(small, 50_000, 0).value <= volume_mc(big, 50_000, 0).value


def test_region_json_round_trip():
    P = Polynomial({(2,): 1.0, (0,): -1.0})
    K = UnionRegion((LemniscateRegion(P, 0.5, Ball.complex_ball((0j,), 1.5)),
                     ProductRegion((PlaneDisc(0.2j, 0.1),))))
    d = json.loads(json.dumps(K.to_json()))
    K2 = region_from_json(d)
    pts = Ball.complex_ball((0j,), 1.5).sample(_rng.generator(0), 500)
    assert np.array_equal(K.contains(pts), K2.contains(pts))


def test_box_needs_ordered_bounds():
    with pytest.raises(GeometryError):
        BoxRegion((1.0,), (0.0,), Ball.unit(1, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sphere_moment_within_three_sigma(n):
    est, se = sphere_moment(n, 200_000, seed=n)
    assert abs(est - sphere_moment_exact(n)) <= 3 * se + 1e-12


def test_sphere_moment_closed_form_oracle():
    # n = 2: 4*2*(2!)^2/4! * vol(B^4) = (4/3)(pi^2/2)
    assert sphere_moment_exact(2) == pytest.approx(4 / 3 * math.pi ** 2 / 2)


def test_complex_slicing_bound_holds():
    K = BallRegion(Ball.complex_ball((0.3, 0j), 0.6))
    res = slice_search_complex(K, Ball.unit(2), (1.0, 0j), 32, 2048, 50_000, 0)
    assert res.holds
    assert res.ratio >= res.bound - 3 * res.std_error


def test_real_slicing_through_the_centre():
    B = Ball.unit(2, 0)
    K = BoxRegion((-1.0, -0.1), (1.0, 0.1), B)
    res = slice_search_real(K, B, (0j, 0j), 32, 2048, 50_000, 0)
    # the x1 axis lies entirely in K
    assert res.ratio == pytest.approx(1.0)
    assert res.holds


def test_slicing_rejects_interior_base_point():
    with pytest.raises(GeometryError):
        slice_search_complex(BallRegion(Ball.unit(2)), Ball.unit(2), (0.5, 0j))
