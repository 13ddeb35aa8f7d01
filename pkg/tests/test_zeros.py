import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselframe.errors import InvalidOrderError
from besselframe.zeros import bracket_zero, find_first_zero, first_zero


def test_elementary_zeros():
    assert find_first_zero(-0.5).zero == pytest.approx(math.pi / 2, abs=1e-12)
    assert find_first_zero(0.5).zero == pytest.approx(math.pi, abs=1e-12)


@given(st.floats(-0.99, 2.0))
@settings(max_examples=40, deadline=None)
def test_zero_matches_mpmath_and_bracket(p):
    z = find_first_zero(p, 1e-12)
    ref = float(mpmath.findroot(lambda x: mpmath.besselj(p, x), z.zero))
    assert abs(z.zero - ref) <= 1e-11
    assert z.bracket_valid and z.in_bracket
    assert z.tol_achieved <= 1e-12


def test_bracket_is_proper():
    for p in (-0.99, -0.5, 0.0, 3.0):
        lo, hi = bracket_zero(p)
        assert lo < hi
        # upper^4 - lower^4 = 4 (p+1)^4
        assert hi**4 - lo**4 == pytest.approx(4 * (p + 1) ** 4, rel=1e-9)


def test_tight_tolerance_and_cache():
    z = first_zero(-0.75, 1e-14)
    assert z.tol_achieved <= 1e-14
    assert first_zero(-0.75, 1e-14) is z


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        find_first_zero(0.0, 1e-16)
    with pytest.raises(InvalidOrderError):
        find_first_zero(-1.0)
