"""Catalog of the Frame-, Cusa- and Turan-type inequalities as evaluable instances.

Every instance maps a point (p, x) to one or two *sides*: signed margins whose
positivity is the claim. Two-sided claims ``L < 1 < R`` use ``1 - L`` and
``R - 1``; claims comparing against ``x`` (the elementary Frame forms) are
divided by ``x > 0`` first so that they line up with their Bessel
generalizations at p = -1/2.

Bessel-based margins are assembled from the reduced series of
:mod:`besselframe.sharpness` in ball arithmetic, so near-equality regions
(x -> 0, x -> j_{p,1}) are resolved rather than lost to cancellation.
Elementary margins are evaluated with mpmath at two working precisions; their
difference bounds the error.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable

import mpmath

from .ball import Ball
from .errors import DomainError
from .kernel import DEFAULT_CONFIG, Kind, I_minus_one_reduced, eval_I, eval_J
from .sharpness import alpha_T1, alpha_T2, beta_T1_ball, beta_T2, frame_parts
from .zeros import first_zero

X_MAX_UNBOUNDED = 40.0
T1_ZERO_TOL = 1e-14
MP_DPS = (50, 70)


class Relation(enum.Enum):
    STRICT_LESS = "<"
    LESS_EQUAL = "<="
    STRICT_GREATER = ">"
    GREATER_EQUAL = ">="
    SANDWICH = "< <"

    @property
    def strict(self) -> bool:
        return self in (Relation.STRICT_LESS, Relation.STRICT_GREATER, Relation.SANDWICH)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = True
    hi_open: bool = True

    def __contains__(self, v: float) -> bool:
        above = v > self.lo if self.lo_open else v >= self.lo
        below = v < self.hi if self.hi_open else v <= self.hi
        return above and below


class XRule(enum.Enum):
    FIXED = "fixed"
    FIRST_ZERO = "(0, j_{p,1})"
    UNBOUNDED = "(0, inf) truncated"


@dataclass(frozen=True)
class XDomain:
    rule: XRule
    lo: float = 0.0
    hi: float = X_MAX_UNBOUNDED
    lo_open: bool = True
    hi_open: bool = True
    symmetric: bool = False  # claim also holds on the mirrored interval (even in x)
    zero_allowed: bool = False  # x = 0 belongs to the stated domain

    def resolve(self, p: float | None) -> Interval:
        if self.rule is XRule.FIRST_ZERO:
            return Interval(0.0, first_zero(p, T1_ZERO_TOL).zero, True, True)
        if self.rule is XRule.UNBOUNDED:
            return Interval(self.lo, self.hi, self.lo_open, False)
        return Interval(self.lo, self.hi, self.lo_open, self.hi_open)


@dataclass(frozen=True)
class InequalityInstance:
    id: str
    statement: str
    p_domain: Interval | None
    x_domain: XDomain
    relation: Relation
    sides: tuple[str, ...]
    margin_fn: Callable
    constants: Callable | None = None  # p -> (lower constant, upper constant)
    boundary_note: str = ""
    default_steps: tuple[int, int] = (20, 200)
    exploration_p_domain: Interval | None = None
    elementary: bool = False

    @property
    def has_p(self) -> bool:
        return self.p_domain is not None


# --- Bessel-based margins -------------------------------------------------


def _t1_margins(p, x, tol, alpha, beta):
    fp = frame_parts(p, x, Kind.OSCILLATORY)
    return (fp.gap_below(alpha) / fp.frame_den(alpha),
            fp.gap_above(beta) / fp.frame_den(beta))


def _t2_margins(p, x, tol, alpha, beta):
    fp = frame_parts(p, x, Kind.MODIFIED)
    return (fp.gap_below(alpha) / fp.frame_den(alpha),
            fp.gap_above(beta) / fp.frame_den(beta))


def _r2_margins(p, x, tol, alpha, beta):
    # beta-bound < J_{p+1}(x) < alpha-bound
    fp = frame_parts(p, x, Kind.OSCILLATORY)
    return (fp.gap_above(beta) / fp.frame_num_factor(beta),
            fp.gap_below(alpha) / fp.frame_num_factor(alpha))


def _kh7_margin(p, x, tol, *_):
    # (1 + (p+1) I_p)/(p+2) - I_{p+1} = (p+1)/(p+2) * N
    fp = frame_parts(p, x, Kind.MODIFIED)
    P = Ball(p)
    return ((P + 1.0) / (P + 2.0) * fp.N,)


def _kh8_margin(p, x, tol, *_):
    # With P = I_p - 1 = y*Pr and Q = I_{p+1} - 1 = y*Qr the margin
    # u + v - 2 equals y^2 [Pr((p+1)Qr - p Pr) - (p+1) Nr] / ((1+P)(p+2+(p+1)P)).
    fp = frame_parts(p, x, Kind.MODIFIED)
    pr = I_minus_one_reduced(p, x, 1e-17).ball
    qr = fp.d_red
    P = Ball(p)
    num = pr * ((P + 1.0) * qr - P * pr) - (P + 1.0) * fp.n_red
    big_p = fp.y * pr
    den = (1.0 + big_p) * ((P + 2.0) + (P + 1.0) * big_p)
    return (fp.y.sqr() * num / den,)


def _turan(evaluate, p, x, tol):
    etol = min(tol, 1e-15)
    a = evaluate(p, x, etol).ball
    b = evaluate(p + 1.0, x, etol).ball
    c = evaluate(p + 2.0, x, etol).ball
    P = Ball(p)
    return (b.sqr() - (P + 1.0) / (P + 2.0) * a * c,)


def _turan_j_margin(p, x, tol, *_):
    return _turan(eval_J, p, x, tol)


def _turan_i_margin(p, x, tol, *_):
    return _turan(eval_I, p, x, tol)


# --- elementary margins (mpmath) -----------------------------------------


def _mp_eval(fn, x, consts):
    vals = []
    for dps in MP_DPS:
        with mpmath.workdps(dps):
            cs = [mpmath.mpf(c) if not callable(c) else c() for c in consts]
            vals.append(fn(mpmath.mpf(x), *cs))
    out = []
    for lo_prec, hi_prec in zip(*vals):
        mid = float(hi_prec)
        rad = 10.0 * float(abs(hi_prec - lo_prec)) + 2.0**-52 * abs(mid)
        out.append(Ball(mid, rad))
    return tuple(out)


def _hyperbolic_frame(x, r1, r2):
    s, c = mpmath.sinh(x), mpmath.cosh(x)
    lower = (3 + r1 * x**2) * s / (x * (2 + c + r1 * x**2))
    upper = (3 + r2 * x**2) * s / (x * (2 + c + r2 * x**2))
    return (1 - lower, upper - 1)


def _trig_frame(x, r1, r2):
    s, c = mpmath.sin(x), mpmath.cos(x)
    lower = (3 - r1 * x**2) * s / (x * (2 + c - r1 * x**2))
    upper = (3 - r2 * x**2) * s / (x * (2 + c - r2 * x**2))
    return (1 - lower, upper - 1)


def _frame_1954_margin(p, x, tol, alpha, beta):
    return _mp_eval(_hyperbolic_frame, x, (alpha, beta))


def _cs_h_margin(p, x, tol, alpha, beta):
    return _mp_eval(_hyperbolic_frame, x, (alpha, beta))


def _cs_t_margin(p, x, tol, alpha, beta):
    return _mp_eval(_trig_frame, x, (alpha, beta))


def _cusa_margin(p, x, tol, *_):
    if x == 0.0:
        return (Ball(0.0),)
    return _mp_eval(lambda t: ((2 + mpmath.cosh(t)) / 3 - mpmath.sinh(t) / t,), x, ())


def _kh9_margin(p, x, tol, *_):
    if x == 0.0:
        return (Ball(0.0),)

    def fn(t):
        c = mpmath.cosh(t)
        return (mpmath.tanh(t) / t + 3 * c / (2 + c) - 2,)

    return _mp_eval(fn, x, ())


def _turan_trig_margin(p, x, tol, *_):
    if x == 0.0:
        return (Ball(0.0),)

    def fn(t):
        s, c = mpmath.sin(t), mpmath.cos(t)
        return (s**2 - c * (s / t - c),)

    return _mp_eval(fn, x, ())


# --- constants ------------------------------------------------------------

CS_T_RHO2 = (8 * math.pi - 24) / (math.pi**3 - 2 * math.pi**2)


def _cs_t_rho2():
    # evaluated lazily so that it carries the working precision
    return (8 * mpmath.pi - 24) / (mpmath.pi**3 - 2 * mpmath.pi**2)


@lru_cache(maxsize=4096)
def _t1_constants(p):
    return alpha_T1(p), beta_T1_ball(p, T1_ZERO_TOL)


def _t2_constants(p):
    return alpha_T2(p), beta_T2(p)


def _fixed(a, b):
    return lambda p: (a, b)


P_T1 = Interval(-1.0, -0.5, True, False)
P_T2 = Interval(-1.0, 0.0, True, False)
P_TURAN = Interval(-1.0, 0.0, True, True)

_INSTANCES = [
    InequalityInstance(
        "FRAME-1954",
        "(3 + x^2/11) sinh x / (2 + cosh x + x^2/11) < x "
        "< (3 + x^2/10) sinh x / (2 + cosh x + x^2/10)",
        None, XDomain(XRule.FIXED, 0.0, 5.0), Relation.SANDWICH,
        ("lower", "upper"), _frame_1954_margin, _fixed(1.0 / 11.0, 0.1),
        "open interval 0 < x < 5; margins normalized by x", (1, 500), elementary=True),
    InequalityInstance(
        "CHEN-SANDOR-H",
        "(3 + r1 x^2) sinh x / (2 + cosh x + r1 x^2) < x "
        "< (3 + r2 x^2) sinh x / (2 + cosh x + r2 x^2), r1 = 0, r2 = 1/10",
        None, XDomain(XRule.UNBOUNDED), Relation.SANDWICH, ("lower", "upper"),
        _cs_h_margin, _fixed(0.0, 0.1), "x > 0, truncated at x_max",
        (1, 500), elementary=True),
    InequalityInstance(
        "CHEN-SANDOR-T",
        "(3 - r1 x^2) sin x / (2 + cos x - r1 x^2) < x "
        "< (3 - r2 x^2) sin x / (2 + cos x - r2 x^2), r1 = 1/10, "
        "r2 = (8 pi - 24)/(pi^3 - 2 pi^2)",
        None, XDomain(XRule.FIXED, 0.0, math.pi / 2), Relation.SANDWICH,
        ("lower", "upper"), _cs_t_margin,
        lambda p: (0.1, _cs_t_rho2),
        "0 < x < pi/2; both denominators carry -r x^2", (1, 500), elementary=True),
    InequalityInstance(
        "T1",
        "((p+2)/(p+1) - a x^2) J_{p+1} / (1/(p+1) + J_p - a x^2) < 1 "
        "< ((p+2)/(p+1) - b x^2) J_{p+1} / (1/(p+1) + J_p - b x^2)",
        P_T1, XDomain(XRule.FIRST_ZERO), Relation.SANDWICH, ("alpha", "beta"),
        _t1_margins, _t1_constants,
        "equality in the limits x -> 0 (alpha side) and x -> j_{p,1} (beta side)",
        (50, 200), exploration_p_domain=Interval(-0.5, 0.0, True, True)),
    InequalityInstance(
        "T2",
        "((p+2)/(p+1) + a x^2) I_{p+1} / (1/(p+1) + I_p + a x^2) < 1 "
        "< ((p+2)/(p+1) + b x^2) I_{p+1} / (1/(p+1) + I_p + b x^2)",
        P_T2, XDomain(XRule.UNBOUNDED), Relation.SANDWICH, ("alpha", "beta"),
        _t2_margins, _t2_constants,
        "equality in the limits x -> 0 (beta side) and x -> inf (alpha side)",
        (50, 200)),
    InequalityInstance(
        "COR-KH7", "I_{p+1}(x) <= (1 + (p+1) I_p(x)) / (p+2)",
        P_T2, XDomain(XRule.UNBOUNDED, symmetric=True, zero_allowed=True),
        Relation.LESS_EQUAL, ("margin",), _kh7_margin,
        boundary_note="equality at x = 0"),
    InequalityInstance(
        "COR-KH8", "I_{p+1}/I_p + (p+2) I_p / (1 + (p+1) I_p) >= 2",
        P_T2, XDomain(XRule.UNBOUNDED, symmetric=True, zero_allowed=True),
        Relation.GREATER_EQUAL, ("margin",), _kh8_margin,
        boundary_note="equality at x = 0"),
    InequalityInstance(
        "COR-KH9", "tanh x / x + 3 cosh x / (2 + cosh x) >= 2",
        None, XDomain(XRule.UNBOUNDED, symmetric=True, zero_allowed=True),
        Relation.GREATER_EQUAL, ("margin",), _kh9_margin,
        boundary_note="equality at x = 0 (limit)", default_steps=(1, 500),
        elementary=True),
    InequalityInstance(
        "R2-SANDWICH",
        "(1/(p+1) + J_p - b x^2)/((p+2)/(p+1) - b x^2) < J_{p+1}(x) "
        "< (1/(p+1) + J_p - a x^2)/((p+2)/(p+1) - a x^2)",
        P_T1, XDomain(XRule.FIRST_ZERO, symmetric=True), Relation.SANDWICH,
        ("lower", "upper"), _r2_margins, _t1_constants,
        "both bounds touch J_{p+1} at x = 0, which is excluded"),
    InequalityInstance(
        "CUSA-H", "sinh x / x < (2 + cosh x) / 3",
        None, XDomain(XRule.UNBOUNDED), Relation.STRICT_LESS, ("margin",),
        _cusa_margin, boundary_note="x > 0; equality at x = 0",
        default_steps=(1, 500), elementary=True),
    InequalityInstance(
        "TURAN-J", "J_{p+1}^2 - (p+1)/(p+2) J_p J_{p+2} > 0",
        P_TURAN, XDomain(XRule.FIRST_ZERO, symmetric=True, zero_allowed=True),
        Relation.STRICT_GREATER, ("margin",), _turan_j_margin,
        boundary_note="value 1/(p+2) at x = 0"),
    InequalityInstance(
        "TURAN-TRIG", "cos x (sin x / x - cos x) <= sin^2 x",
        None, XDomain(XRule.FIXED, 0.0, math.pi / 2, symmetric=True, zero_allowed=True),
        Relation.LESS_EQUAL, ("margin",), _turan_trig_margin,
        boundary_note="equality at x = 0", default_steps=(1, 500), elementary=True),
    InequalityInstance(
        "TURAN-I", "I_{p+1}^2 - (p+1)/(p+2) I_p I_{p+2} > 0",
        P_T2, XDomain(XRule.UNBOUNDED, symmetric=True, zero_allowed=True),
        Relation.STRICT_GREATER, ("margin",), _turan_i_margin,
        boundary_note="holds for every x; sampled on (0, x_max]"),
]

CATALOG: dict[str, InequalityInstance] = {inst.id: inst for inst in _INSTANCES}


def get_instance(instance_id: str) -> InequalityInstance:
    try:
        return CATALOG[instance_id]
    except KeyError:
        raise KeyError(
            f"unknown instance {instance_id!r}; known: {', '.join(CATALOG)}") from None


def check_point(inst: InequalityInstance, p: float | None, x: float,
                exploration: bool = False) -> float:
    """Validate (p, x) against the instance domain; returns |x| for even claims."""
    if inst.has_p:
        dom = inst.exploration_p_domain if exploration else inst.p_domain
        if p is None or p not in dom:
            raise DomainError(f"{inst.id}: p={p} outside {dom}")
        DEFAULT_CONFIG.check_order(p)
    x = float(x)
    xd = inst.x_domain
    if x == 0.0 and xd.zero_allowed:
        return 0.0
    if x < 0.0 and xd.symmetric:
        x = -x
    iv = xd.resolve(p)
    if xd.rule is XRule.UNBOUNDED and x > iv.hi and inst.elementary:
        return x
    if x not in iv:
        raise DomainError(f"{inst.id}: x={x} outside the domain {iv} at p={p}")
    return x
