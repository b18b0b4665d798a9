import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluricap.bounds import (DomainError, GrowthFunction, c_n, c_nm, c_prime_n, polya_exponent,
                             real_generic_constant, sigma_nm, stieltjes_I, stieltjes_I_quadrature)


def test_cn_values_are_exact_rationals():
    assert c_n(1) == 4
    assert c_n(2) == Fraction(32, 3)
    assert c_n(3) == Fraction(96, 5)
    assert isinstance(c_n(3), Fraction)


def test_cn_factorial_formula_oracle():
    for n in range(1, 9):
        oracle = Fraction(4 ** n * math.factorial(n) ** 2, math.factorial(2 * n - 1))
        assert c_n(n) == oracle
        assert c_prime_n(n) == oracle / 4


def test_cn_asymptotic_growth():
    n = 400
    assert float(c_n(n)) / (2 * math.sqrt(math.pi) * n ** 1.5) == pytest.approx(1, rel=5e-3)


def test_unified_constant_and_exponent():
    assert c_nm(2, 2) == c_n(2)
    assert c_nm(2, 1) == 24
    assert polya_exponent(2, 2) == 2
    assert polya_exponent(3, 1) == 1
    assert real_generic_constant(2, 1) == pytest.approx(8 * (1 + math.sqrt(2)) * 3)


def test_sigma_11():
    assert abs(sigma_nm(1, 1) - (math.log(5) + 2)) < 1e-12


def test_cn_rejects_bad_n():
    with pytest.raises(DomainError):
        c_n(0)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("delta", [1.0, 2.0])
def test_stieltjes_power_closed_form(p, delta):
    g = GrowthFunction.power(p)
    assert stieltjes_I(g, delta) == pytest.approx(math.gamma(p + 1) / delta ** p, rel=1e-12)


def test_stieltjes_expm1_diverges_at_delta():
    assert math.isinf(stieltjes_I(GrowthFunction.expm1(2.0), 2.0))
    assert stieltjes_I(GrowthFunction.expm1(1.0), 2.0) == pytest.approx(1.0)


@settings(max_examples=25, deadline=None)
@given(p=st.floats(0.3, 4.0), delta=st.floats(0.5, 3.0))
def test_stieltjes_closed_form_matches_quadrature(p, delta):
    g = GrowthFunction.power(p)
    assert stieltjes_I(g, delta) == pytest.approx(stieltjes_I_quadrature(g, delta), rel=1e-6)


@settings(max_examples=25, deadline=None)
@given(knots=st.lists(st.floats(0.01, 2.0), min_size=2, max_size=6))
def test_table_growth_is_monotone(knots):
    ts = np.concatenate([[0.0], np.cumsum(knots)])
    gs = np.concatenate([[0.0], np.cumsum(knots[::-1])])
    g = GrowthFunction.table(ts, gs)
    assert g.is_monotone()
    assert stieltjes_I(g, 2.0) > 0


def test_growth_domain_errors():
    with pytest.raises(DomainError):
        GrowthFunction.power(0)
    with pytest.raises(DomainError):
        GrowthFunction.table([0, 1], [0, -1])
