import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselframe import _backend, _dd
from besselframe.errors import DomainError, InvalidOrderError
from besselframe.kernel import (
    DEFAULT_CONFIG,
    BesselSpec,
    Kind,
    I_minus_one_reduced,
    eval_dI,
    eval_dJ,
    eval_I,
    eval_I_asymptotic,
    eval_J,
    hyper_series,
    normalized_I_asymptotic,
    one_minus_J_reduced,
    product_coeffs,
)

mpmath.mp.dps = 40


def mp_J(p, x):
    p, x = mpmath.mpf(p), mpmath.mpf(x)
    if x == 0:
        return mpmath.mpf(1)
    return 2**p * mpmath.gamma(p + 1) * x**-p * mpmath.besselj(p, x)


def mp_I(p, x):
    p, x = mpmath.mpf(p), mpmath.mpf(x)
    if x == 0:
        return mpmath.mpf(1)
    return 2**p * mpmath.gamma(p + 1) * x**-p * mpmath.besseli(p, x)


@pytest.mark.parametrize("x", [0.1, 0.7, 1.0, 1.5, math.pi / 2])
def test_closed_forms(x):
    assert eval_J(-0.5, x).value == pytest.approx(math.cos(x), abs=1e-14)
    assert eval_J(0.5, x).value == pytest.approx(math.sin(x) / x, abs=1e-14)
    assert eval_I(-0.5, x).value == pytest.approx(math.cosh(x), rel=1e-14)
    assert eval_I(0.5, x).value == pytest.approx(math.sinh(x) / x, rel=1e-14)


def test_value_at_zero_is_one():
    for p in (-0.99, -0.5, 0.0, 2.5):
        assert eval_J(p, 0.0).value == 1.0
        assert eval_I(p, 0.0).value == 1.0
        assert eval_J(p, 0.0).err_bound == 0.0


@given(st.floats(-0.99, 3.0), st.floats(0.0, 7.5))
@settings(max_examples=150, deadline=None)
def test_J_matches_mpmath(p, x):
    ev = eval_J(p, x, 1e-13)
    assert ev.err_bound <= 1e-13
    assert abs(ev.value - float(mp_J(p, x))) <= ev.total_bound + 1e-15


@given(st.floats(-0.99, 3.0), st.floats(0.0, 50.0))
@settings(max_examples=150, deadline=None)
def test_I_matches_mpmath(p, x):
    ev = eval_I(p, x, 1e-13, relative=True)
    ref = float(mp_I(p, x))
    assert abs(ev.value - ref) <= 1e-13 * ref


@given(st.floats(-0.99, 3.0), st.floats(0.0, 7.5))
@settings(max_examples=50, deadline=None)
def test_even_in_x(p, x):
    assert eval_J(p, x).value == eval_J(p, -x).value
    assert eval_I(p, x).value == eval_I(p, -x).value


def test_error_bound_covers_actual_error_near_zero_of_J():
    # next to j_{-1/2,1} = pi/2 the value is tiny; the bound must still hold
    x = math.pi / 2 - 1e-9
    ev = eval_J(-0.5, x, 1e-15)
    assert abs(ev.value - float(mpmath.cos(mpmath.mpf(x)))) <= ev.total_bound


def test_relative_tolerance_near_zero():
    x = math.pi / 2
    ev = eval_J(-0.5, x, 1e-15, relative=True)
    ref = float(mpmath.cos(mpmath.mpf(x)))
    assert abs(ev.value - ref) <= 1e-15 * abs(ref)


@pytest.mark.parametrize("p,x", [(-0.5, 1.0), (0.0, 2.0), (1.3, 0.4), (-0.9, 3.0)])
def test_derivatives_by_finite_difference(p, x):
    h = 1e-5
    fd = (eval_J(p, x + h, 1e-16).value - eval_J(p, x - h, 1e-16).value) / (2 * h)
    assert eval_dJ(p, x).value == pytest.approx(fd, abs=1e-9)
    fd = (eval_I(p, x + h, 1e-16).value - eval_I(p, x - h, 1e-16).value) / (2 * h)
    assert eval_dI(p, x).value == pytest.approx(fd, rel=1e-9)
    assert eval_dJ(-0.5, x).value == pytest.approx(-math.sin(x), abs=1e-13)


def test_reduced_series_match_direct_forms():
    for q in (-0.5, 0.0, 0.5):
        for x in (1e-6, 0.3, 1.2):
            y = mpmath.mpf(x) ** 2
            ref = float((1 - mp_J(q, x)) / y)
            assert one_minus_J_reduced(q, x).value == pytest.approx(ref, rel=1e-14)
            ref = float((mp_I(q, x) - 1) / y)
            assert I_minus_one_reduced(q, x).value == pytest.approx(ref, rel=1e-14)
    assert one_minus_J_reduced(0.0, 0.0).value == 0.25


@pytest.mark.parametrize("p,q", [(-0.5, 0.5), (0.0, 1.0), (-0.3, 0.7), (0.5, 0.5)])
def test_product_series_consistent_with_kernel(p, q):
    for kind, ev in ((Kind.OSCILLATORY, eval_J), (Kind.MODIFIED, eval_I)):
        ps = product_coeffs(p, q, 60, kind)
        assert ps.coefficients[0] == 1.0
        for x in (0.3, 1.0, 2.0):
            direct = ev(p, x, 1e-16).value * ev(q, x, 1e-16).value
            assert ps.evaluate(x) == pytest.approx(direct, rel=1e-13, abs=1e-15)


def test_product_closed_form_trig():
    # J_{-1/2} J_{1/2} = cos x sin x / x = sin(2x)/(2x)
    ps = product_coeffs(-0.5, 0.5, 40)
    for x in (0.5, 1.0, 1.4):
        assert ps.evaluate(x) == pytest.approx(math.sin(2 * x) / (2 * x), rel=1e-14)


def test_asymptotic_modified():
    for nu in (0.0, 0.5, 1.0):
        ref = float(mpmath.besseli(nu, 40))
        assert eval_I_asymptotic(nu, 40.0, 4) == pytest.approx(ref, rel=1e-6)
    assert normalized_I_asymptotic(-0.5, 35.0) == pytest.approx(math.cosh(35.0), rel=1e-8)
    with pytest.raises(DomainError):
        eval_I_asymptotic(0.0, 10.0, 4)
    with pytest.raises(ValueError):
        eval_I_asymptotic(0.0, 40.0, 5)


def test_order_guard_and_domain():
    with pytest.raises(InvalidOrderError):
        eval_J(-1.0, 1.0)
    with pytest.raises(InvalidOrderError):
        eval_J(-0.995, 1.0)
    with pytest.raises(DomainError):
        eval_J(0.0, 100.0)
    with pytest.raises(DomainError):
        eval_I(0.0, 60.0)
    with pytest.raises(ValueError):
        eval_J(0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        eval_J(BesselSpec(0.0, Kind.MODIFIED), 1.0)
    assert BesselSpec(0.25).p == 0.25
    assert DEFAULT_CONFIG.x_max == pytest.approx(1.1 * math.sqrt(2 * 4 * 6))


def test_stopping_rule_tail_bound_is_honest():
    # sum x^k/k! (e^x) through the generic kernel: t_{k+1}/t_k = (4z/4)/(k+1)
    for x in (0.5, 3.0, 10.0):
        y = 4.0 * x  # z = y/4 = x
        ev = hyper_series(0.0, 1, 1.0, (), ((1.0, 0.0),), 1e-12, rel=True, y=(y, 0.0))
        assert abs(ev.value - math.exp(x)) <= ev.err_bound + ev.round_bound + 1e-15 * math.exp(x)
        assert ev.err_bound <= 1e-12 * math.exp(x)


@pytest.mark.skipif(_backend.compiled_hyp_sum is None, reason="compiled kernel not built")
@given(st.floats(-0.99, 3.0), st.floats(0.0, 7.5), st.sampled_from([-1, 1]),
       st.sampled_from([1e-8, 1e-12, 1e-16]), st.booleans())
@settings(max_examples=200, deadline=None)
def test_backends_agree_bit_for_bit(p, x, sign, tol, rel):
    zh, zl = _dd.two_prod(x, x)
    zh, zl = 0.25 * sign * zh, 0.25 * sign * zl
    den = (1.0, 0.0) + _dd.dd_add(1.0, 0.0, p, 0.0)
    args = (zh, zl, 1.0, 0.0, (), den, tol, rel, 500)
    assert _backend.compiled_hyp_sum(*args) == _backend.pure_hyp_sum(*args)


def test_backend_selected():
    assert _backend.BACKEND in ("compiled", "python")
    if _backend.compiled_hyp_sum is not None:
        assert _backend.BACKEND == "compiled" or _backend.forced_pure()
