import math

from hypothesis import given, strategies as st

from pluricap.reports import (DIRECTIONS, ESTIMATE, HEURISTIC, LOWER, UPPER, InequalityReport, Side,
                              audit, compare, judge, skipped)


def test_exact_sides():
    assert judge(Side(1.0), Side(2.0))[0] == "pass"
    assert judge(Side(3.0), Side(2.0))[0] == "fail"
    assert judge(Side(2.0), Side(2.0))[0] == "pass"


def test_direction_table():
    # an upper bound on the right cannot certify a pass
    assert judge(Side(1.0), Side(2.0, UPPER))[0] == "inconclusive"
    # an upper bound on the left is what a pass needs
    assert judge(Side(1.0, UPPER), Side(2.0, LOWER))[0] == "pass"
    # a lower bound above an upper bound is a definite failure
    assert judge(Side(3.0, LOWER), Side(2.0, UPPER))[0] == "fail"
    assert judge(Side(1.0, HEURISTIC), Side(2.0))[0] == "inconclusive"


def test_estimates_are_widened_by_three_sigma():
    assert judge(Side(1.0, ESTIMATE, 0.1), Side(1.25))[0] == "inconclusive"
    assert judge(Side(1.0, ESTIMATE, 0.1), Side(1.31))[0] == "pass"
    assert judge(Side(1.0, ESTIMATE, 0.1), Side(0.69))[0] == "fail"


side = st.builds(Side, st.floats(-10, 10), st.sampled_from(DIRECTIONS), st.floats(0, 1))


@given(side, side)
def test_pass_is_always_sound(lhs, rhs):
    status, _ = judge(lhs, rhs)
    if status == "pass":
        assert lhs.upper() is not None and rhs.lower() is not None
        assert lhs.upper() <= rhs.lower() + 1e-12 * max(1, abs(lhs.upper()), abs(rhs.lower()))
    if status == "fail":
        assert lhs.lower() > rhs.upper()


@given(side, side)
def test_report_json_round_trip(lhs, rhs):
    r = compare("t", "i", lhs, rhs, 2.0, 5, note="x")
    back = InequalityReport.from_json(r.to_json())
    assert back.status == r.status
    assert back.lhs == r.lhs and back.rhs == r.rhs
    assert not audit([back])


def test_audit_flags_tampered_pass():
    r = compare("t", "i", Side(1.0, HEURISTIC), Side(2.0))
    forged = InequalityReport(r.theorem, r.instance, r.lhs, r.rhs, status="pass", margin=1.0)
    assert audit([forged])
    assert not audit([skipped("t", "i", "why")])


def test_infinite_rhs():
    assert judge(Side(5.0), Side(math.inf))[0] == "pass"
