import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.geometry import Ball, PlaneDisc, ProductRegion
from pluricap.polynomials import (Polynomial, PolynomialError, certified_grid, multi_indices, normalize_on,
                                  sup_norm)


def test_multi_indices_count():
    assert len(multi_indices(2, 3)) == math.comb(5, 2)
    assert len(multi_indices(3, 2)) == math.comb(5, 3)


def test_eval_and_degree():
    P = Polynomial({(2, 0): 1.0, (0, 1): -2j})
    z = np.array([[1 + 1j, 2.0]])
    assert P(z)[0] == pytest.approx((1 + 1j) ** 2 - 4j)
    assert P.degree == 2
    assert Polynomial({}).degree == -math.inf


def test_json_round_trip():
    P = Polynomial({(3, 1): 0.5 - 1j, (0, 0): 2.0})
    assert Polynomial.from_json(P.to_json()) == P


def test_negative_exponent_rejected():
    with pytest.raises(PolynomialError):
        Polynomial({(-1,): 1.0})


def test_chebyshev_polynomial_norm_on_segment():
    T4 = Polynomial({(4,): 8.0, (2,): -8.0, (0,): 1.0})
    s = sup_norm(T4, Ball.unit(1, 0))
    assert s.certified
    assert s.lower <= 1.0 + 1e-12 and 1.0 <= s.upper
    # default oversampling 8 gives inflation 1/(1 - 1/8)
    assert s.upper <= 8 / 7 + 1e-9


def test_monomial_on_bidisc():
    B = ProductRegion((PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0)))
    s = sup_norm(Polynomial({(1, 1): 1.0}), B)
    assert s.certified and s.lower <= 1.0 + 1e-12 and 1.0 <= s.upper


def test_complex_sphere_norm():
    # |z1 z2| on the unit ball of C^2 peaks at 1/2
    s = sup_norm(Polynomial({(1, 1): 1.0}), Ball.unit(2))
    assert s.certified and s.lower <= 0.5 + 1e-12 and 0.5 <= s.upper
    assert s.lower == pytest.approx(0.5, rel=1e-4)


def test_normalize_on_records_metadata():
    P = normalize_on(Polynomial({(1, 0): 1.0, (0, 1): 1.0}), ProductRegion((PlaneDisc(0j, 1), PlaneDisc(0j, 1))))
    assert P.meta["norm_flavor"] == "certified"
    assert dict(P.terms)[(1, 0)] == pytest.approx(0.5, rel=1e-6)


@settings(max_examples=20, deadline=None)
@given(coeffs=st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                       min_size=2, max_size=6))
def test_certified_upper_dominates_samples(coeffs):
    P = Polynomial({(k,): c for k, c in enumerate(coeffs)}, n=1)
    if P.is_zero:
        return
    s = sup_norm(P, Ball.unit(1), n_samples=2000, refine=False)
    w = np.exp(1j * np.linspace(0, 2 * np.pi, 4001))[:, None]
    assert np.max(np.abs(P(w))) <= s.upper * (1 + 1e-9)
    assert s.lower <= s.upper * (1 + 1e-12)


def test_certified_grid_inflation():
    g = certified_grid(Ball.unit(1), 4, oversample=8.0)
    M = len(g.points)
    assert g.inflation == pytest.approx(1 / (1 - math.pi * 4 / M))
