import math

import mpmath
import pytest

from besselframe.errors import DomainError, InvalidOrderError
from besselframe.sharpness import (
    F,
    G,
    G_asymptotic,
    alpha_T1,
    alpha_T2,
    best_constants,
    beta_T1,
    beta_T1_ball,
    beta_T2,
    confirm_limits,
    extrapolate_to_zero,
    r2_constant,
    tail_crossing,
)
from besselframe.zeros import first_zero

mpmath.mp.dps = 50


def mp_Jn(p, x):
    p, x = mpmath.mpf(p), mpmath.mpf(x)
    return mpmath.gamma(p + 1) * (x / 2) ** -p * mpmath.besselj(p, x)


def mp_In(p, x):
    p, x = mpmath.mpf(p), mpmath.mpf(x)
    return mpmath.gamma(p + 1) * (x / 2) ** -p * mpmath.besseli(p, x)


def mp_ratio(f, p, x):
    s = -1 if f is mp_Jn else 1
    p, x = mpmath.mpf(p), mpmath.mpf(x)
    num = 1 / (p + 1) + f(p, x) - (p + 2) / (p + 1) * f(p + 1, x)
    return num / (s * x**2 * (f(p + 1, x) - 1))


def mp_zero(p):
    return mpmath.findroot(lambda x: mpmath.besselj(p, x), first_zero(p, 1e-14).zero)


def test_closed_form_constants_at_minus_half():
    assert alpha_T1(-0.5) == 0.1
    assert beta_T2(-0.5) == 0.1
    assert alpha_T2(-0.5) == 0.0
    pi = math.pi
    assert beta_T1(-0.5, 1e-14) == pytest.approx((8 * pi - 24) / (pi**3 - 2 * pi**2), abs=1e-12)


def test_beta_T1_is_F_at_first_zero():
    for p in (-0.99, -0.8, -0.6):
        j = mp_zero(p)
        mp_val = mp_ratio(mp_Jn, p, j * (1 - mpmath.mpf(10) ** -30))
        b = beta_T1_ball(p, 1e-14)
        assert abs(b.mid - float(mp_val)) <= 1e-12
        assert b.rad < 1e-12


def test_ratio_functions_against_mpmath():
    for p in (-0.9, -0.5, 0.0):
        for x in (0.05, 0.8, 2.0):
            assert F(p, x).mid == pytest.approx(float(mp_ratio(mp_Jn, p, x)), rel=1e-12)
            assert G(p, x).mid == pytest.approx(float(mp_ratio(mp_In, p, x)), rel=1e-12)
    assert G(0.0, 30.0).mid == pytest.approx(float(mp_ratio(mp_In, 0, 30)), rel=1e-11)


def test_best_constants_domains():
    bc = best_constants("T1", -0.7)
    assert bc.alpha == alpha_T1(-0.7) and bc.provenance == "closed_form"
    with pytest.raises(InvalidOrderError):
        best_constants("T1", -0.4)
    with pytest.raises(InvalidOrderError):
        best_constants("T2", 0.1)
    with pytest.raises(ValueError):
        best_constants("COR-KH7", -0.5)
    assert r2_constant(0.0) == pytest.approx(1 / 24)


def test_extrapolation_is_exact_on_quadratics():
    ts = [0.1, 0.2, 0.3]
    assert extrapolate_to_zero(ts, [2 + 3 * t - t * t for t in ts]) == pytest.approx(2.0)


@pytest.mark.parametrize("p", [-0.9, -0.5])
def test_confirm_limits_T1(p):
    rep = confirm_limits("T1", p)
    assert rep.start_converged
    assert rep.end_error <= 1e-6


@pytest.mark.parametrize("p", [-0.9, -0.5, 0.0])
def test_confirm_limits_T2(p):
    rep = confirm_limits("T2", p)
    assert rep.start_converged
    assert rep.tail_monotone
    assert rep.tail_rel_diff <= 1e-2
    # G(x) ~ 1 / (2 (p+1) x): G(40) sits above 1e-2 for every p <= 0
    assert rep.end_estimate == pytest.approx(1 / (2 * (p + 1) * 40), rel=0.2)


def test_G_asymptotic():
    assert G_asymptotic(0.0, 1000.0) == pytest.approx(float(mp_ratio(mp_In, 0, 1000)), rel=1e-6)
    with pytest.raises(DomainError):
        G_asymptotic(0.0, 10.0)
    with pytest.raises(ValueError):
        G_asymptotic(0.0, 40.0, k_terms=5)


def test_tail_crossing():
    x = tail_crossing(0.0, 1e-3)
    assert x == 640.0
    assert G_asymptotic(0.0, x) < 1e-3 <= G_asymptotic(0.0, x / 2)
    assert tail_crossing(0.0, 0.0) is None
    assert tail_crossing(-0.99, 1e-9, x_limit=1e3) is None


def test_first_zero_consistency():
    assert first_zero(-0.5, 1e-14).zero == pytest.approx(math.pi / 2, abs=1e-14)
