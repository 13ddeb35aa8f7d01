"""Best-possible constants of the Frame-type inequalities and the ratio functions F, G.

With ``Phi = J`` (sign s = -1) or ``Phi = I`` (s = +1) and ``y = x^2`` define

    N(y) = 1/(p+1) + Phi_p - (p+2)/(p+1) Phi_{p+1} = sum_{n>=2} s^n a_n y^n
    D(y) = s y (Phi_{p+1} - 1)                   = sum_{n>=2} s^n b_n y^n

    a_n = (n-1) / (4^n n! (p+1) (p+2)_n),   b_n = 1 / (4^(n-1) (n-1)! (p+2)_(n-1)).

F = N/D for J and G = N/D for I. Both N and D vanish like y^2, so they are
summed with the y^2 factored out. The coefficient ratio is
``r_n = a_n/b_n = (n-1)/(4n(p+1)(p+n+1))`` and ``r_2 = 1/(8(p+1)(p+3))``, so

    r_2 D - N = sum_{n>=3} s^n e_n y^n,
    e_n = b_n (n-2)(n-p-3) / (8 n (p+1)(p+3)(p+n+1)),

which is how ``c D - N`` is formed for constants ``c`` near ``r_2``: the
constant term cancels exactly instead of numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import _dd
from .ball import Ball, hull
from .errors import DomainError, InvalidOrderError
from .kernel import (
    DEFAULT_CONFIG,
    Kind,
    eval_I,
    eval_J,
    hyper_series,
    shifted,
)
from .zeros import first_zero

SERIES_TOL = 1e-17  # relative, for the internal reduced series


def alpha_T1(p: float) -> float:
    """``1/(8(p+1)(p+3))``: lower constant of the Bessel Frame inequality."""
    p = DEFAULT_CONFIG.check_order(p)
    return 1.0 / (8.0 * (p + 1.0) * (p + 3.0))


def beta_T2(p: float) -> float:
    """``1/(8(p+1)(p+3))``: upper constant of the modified Bessel Frame inequality."""
    return alpha_T1(p)


def alpha_T2(p: float) -> float:
    DEFAULT_CONFIG.check_order(p)
    return 0.0


def r2_constant(p: float) -> float:
    """The common limit ``F(0+) = G(0+) = a_2/b_2``."""
    return alpha_T1(p)


def _b_start(p, n0):
    # b_{n0} as a double-double
    v = _dd.dd(1.0 / (4.0 ** (n0 - 1) * math.factorial(n0 - 1)))
    for i in range(n0 - 1):
        v = _dd.div(v, shifted(p, 2.0 + i))
    return v


def _e_start(p, n0):
    b = _b_start(p, n0)
    num = _dd.mul(_dd.dd(float(n0 - 2)), shifted(p, n0 - 3.0, -1.0))
    den = _dd.mul(_dd.dd(8.0 * n0), shifted(p, 1.0))
    den = _dd.mul(den, shifted(p, 3.0))
    den = _dd.mul(den, shifted(p, n0 + 1.0))
    return _dd.div(_dd.mul(b, num), den)


@dataclass(frozen=True)
class FrameParts:
    """Reduced series of one (p, x, kind) point, as balls."""

    p: float
    x: float
    kind: Kind
    y: Ball
    n_red: Ball  # N / y^2
    d_red: Ball  # D / y^2
    e_red: Ball  # sum_k s^k e_{n0+k} y^k
    n0: int
    phi_p: Ball  # Phi_p(x)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def sign(self) -> int:
        return self.kind.sign

    @property
    def N(self) -> Ball:
        return self.y.sqr() * self.n_red

    @property
    def D(self) -> Ball:
        return self.y.sqr() * self.d_red

    @property
    def E(self) -> Ball:
        """``r_2 D - N``."""
        yn = self.y.sqr()
        for _ in range(self.n0 - 2):
            yn = yn * self.y
        return (self.sign ** self.n0) * (yn * self.e_red)

    @property
    def ratio(self) -> Ball:
        """F (kind J) or G (kind I)."""
        return self.n_red / self.d_red

    def gap_above(self, c: float) -> Ball:
        """``c D - N``: positive exactly when ratio < c."""
        if c == 0.0:
            return -self.N
        delta = Ball.of(c) - r2_constant(self.p)
        if delta.mid == 0.0:
            return self.E
        return self.E + delta * self.D

    def gap_below(self, c: float) -> Ball:
        """``N - c D``: positive exactly when ratio > c."""
        return -self.gap_above(c)

    def frame_den(self, c: float) -> Ball:
        """``1/(p+1) + Phi_p + s c y``."""
        return 1.0 / (Ball(self.p) + 1.0) + self.phi_p + self.sign * c * self.y

    def frame_num_factor(self, c: float) -> Ball:
        """``(p+2)/(p+1) + s c y``."""
        return (Ball(self.p) + 2.0) / (Ball(self.p) + 1.0) + self.sign * c * self.y


def frame_parts(p: float, x: float, kind: Kind, tol: float = SERIES_TOL,
                config=DEFAULT_CONFIG) -> FrameParts:
    p = config.check_order(p)
    x = abs(float(x))
    s = kind.sign
    y = x * x
    yb = Ball(y, 2.0**-53 * y)
    # N / y^2: t0 = a_2, ratio s (y/4)(k+2)/((k+1)(k+3)(k+p+4))
    a2 = _dd.div(_dd.dd(1.0 / 32.0),
                 _dd.mul(_dd.mul(shifted(p, 1.0), shifted(p, 2.0)), shifted(p, 3.0)))
    n_red = hyper_series(x, s, a2, ((2.0, 0.0),),
                         ((1.0, 0.0), (3.0, 0.0), shifted(p, 4.0)), tol, rel=True,
                         config=config)
    # D / y^2: t0 = b_2, ratio s (y/4)/((k+2)(k+p+3))
    b2 = _b_start(p, 2)
    d_red = hyper_series(x, s, b2, (), ((2.0, 0.0), shifted(p, 3.0)), tol, rel=True,
                         config=config)
    n0 = 4 if p == 0.0 else 3
    e0 = _e_start(p, n0)
    e_red = hyper_series(
        x, s, e0,
        ((n0 - 1.0, 0.0), shifted(p, n0 - 2.0, -1.0)),
        ((n0 - 2.0, 0.0), shifted(p, n0 - 3.0, -1.0), (n0 + 1.0, 0.0),
         shifted(p, n0 + 2.0)),
        tol, rel=True, config=config)
    phi = (eval_J if kind is Kind.OSCILLATORY else eval_I)(p, x, 1e-16, config)
    return FrameParts(p, x, kind, yb, n_red.ball, d_red.ball, e_red.ball, n0, phi.ball)


def F(p: float, x: float, tol: float = SERIES_TOL) -> Ball:
    """Ratio function of the Bessel Frame inequality, increasing on (0, j_{p,1})."""
    return frame_parts(p, x, Kind.OSCILLATORY, tol).ratio


def G(p: float, x: float, tol: float = SERIES_TOL) -> Ball:
    """Ratio function of the modified Bessel Frame inequality, decreasing on (0, inf)."""
    return frame_parts(p, x, Kind.MODIFIED, tol).ratio


def _asym_sum(nu, x, k_terms):
    mu = 4.0 * nu * nu
    term = total = 1.0
    for k in range(1, k_terms):
        term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        total += term
    return total


def G_asymptotic(p: float, x: float, k_terms: int = 4,
                 x_asym: float = DEFAULT_CONFIG.x_asym) -> float:
    """G from the large-argument expansion of I_p and I_{p+1} (uncertified).

    Numerator and denominator are divided by ``e^x / sqrt(2 pi x)`` so the
    value stays finite for any large x.
    """
    if not 1 <= k_terms <= 4:
        raise ValueError("k_terms must be between 1 and 4")
    if not x >= x_asym:
        raise DomainError(f"x={x:g} below the asymptotic regime x >= {x_asym:g}")
    w = math.sqrt(2.0 * math.pi * x) * math.exp(-x)
    ip = 2.0**p * math.gamma(p + 1.0) * x**-p * _asym_sum(p, x, k_terms)
    q = p + 1.0
    ip1 = 2.0**q * math.gamma(q + 1.0) * x**-q * _asym_sum(q, x, k_terms)
    num = w / (p + 1.0) + ip - (p + 2.0) / (p + 1.0) * ip1
    return num / (x * x * (ip1 - w))


def beta_T1_ball(p: float, tol: float = 1e-12) -> Ball:
    """``beta`` of the Bessel Frame inequality as a ball covering the zero's uncertainty.

    Since ``J_p(j) = 0``, beta equals ``F(j)``; the reduced series avoid the
    cancellation in ``1/(p+1) - (p+2)/(p+1) J_{p+1}(j)`` as p -> -1.
    """
    p = DEFAULT_CONFIG.check_order(p)
    z = first_zero(p, max(tol, 1e-14))
    lo, hi = z.zero - z.tol_achieved, z.zero + z.tol_achieved
    mid = F(p, z.zero)
    return hull(hull(F(p, lo), F(p, hi)), mid)


def beta_T1(p: float, tol: float = 1e-12) -> float:
    """``(1/(p+1) - (p+2)/(p+1) J_{p+1}(j)) / (j^2 (1 - J_{p+1}(j)))`` at ``j = j_{p,1}``.

    Evaluated as ``F(j)`` (see :func:`beta_T1_ball`). The T1 inequality covers
    p in (-1, -1/2]; other orders are computed but are exploratory only.
    """
    return beta_T1_ball(p, tol).mid


@dataclass(frozen=True)
class BestConstantPair:
    instance: str
    p: float
    alpha: float
    beta: float
    provenance: str  # "closed_form" or "endpoint_limit"


def best_constants(instance: str, p: float, tol: float = 1e-12) -> BestConstantPair:
    if instance == "T1":
        if not -1.0 < p <= -0.5:
            raise InvalidOrderError("T1 constants are defined for p in (-1, -1/2]")
        return BestConstantPair("T1", p, alpha_T1(p), beta_T1(p, tol), "closed_form")
    if instance == "T2":
        if not -1.0 < p <= 0.0:
            raise InvalidOrderError("T2 constants are defined for p in (-1, 0]")
        return BestConstantPair("T2", p, alpha_T2(p), beta_T2(p), "closed_form")
    raise ValueError(f"no best constants for instance {instance!r}")


def extrapolate_to_zero(ts, fs) -> float:
    """Value at t = 0 of the interpolating polynomial through (t_i, f_i) (Neville)."""
    n = len(ts)
    P = list(fs)
    for m in range(1, n):
        for i in range(n - m):
            P[i] = (ts[i + m] * P[i] - ts[i] * P[i + 1]) / (ts[i + m] - ts[i])
    return P[0]


EPSILONS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class LimitReport:
    instance: str
    p: float
    start_target: float  # closed-form limit at x -> 0+
    start_estimate: float
    end_target: float  # beta (T1) or 0 (T2)
    end_estimate: float  # extrapolated F(j-) (T1) or G(x_max) (T2)
    tolerance: float
    tail_asymptotic: float | None = None
    tail_rel_diff: float | None = None
    tail_monotone: bool | None = None
    tail_threshold: float | None = None

    @property
    def start_error(self) -> float:
        return abs(self.start_estimate - self.start_target)

    @property
    def end_error(self) -> float:
        return abs(self.end_estimate - self.end_target)

    @property
    def start_converged(self) -> bool:
        return self.start_error <= self.tolerance

    @property
    def tail_small(self) -> bool | None:
        if self.tail_threshold is None:
            return None
        return self.end_estimate <= self.tail_threshold


def confirm_limits(instance: str, p: float, tol: float = 1e-8, x_max: float = 40.0,
                   tail_threshold: float = 1e-2) -> LimitReport:
    """Confirm the endpoint limits of F (T1) or G (T2) by 3-point extrapolation.

    Near 0 the extrapolation variable is ``y = x^2`` (F and G are even and
    smooth); near ``j_{p,1}`` it is ``h = j - x``.
    """
    if instance == "T1":
        j = first_zero(p, 1e-14).zero
        xs = [e * j for e in EPSILONS]
        start = extrapolate_to_zero([x * x for x in xs], [F(p, x).mid for x in xs])
        hs = [e * j for e in EPSILONS]
        end = extrapolate_to_zero(hs, [F(p, j - h).mid for h in hs])
        return LimitReport("T1", p, alpha_T1(p), start, beta_T1(p, 1e-14), end, tol)
    if instance == "T2":
        xs = list(EPSILONS)
        start = extrapolate_to_zero([x * x for x in xs], [G(p, x).mid for x in xs])
        tail = G(p, x_max).mid
        asym = G_asymptotic(p, x_max)
        probes = [G(p, x_max * f).mid for f in (0.75, 0.875, 1.0)]
        monotone = probes[0] > probes[1] > probes[2] > 0.0
        return LimitReport("T2", p, beta_T2(p), start, 0.0, tail, tol,
                           tail_asymptotic=asym,
                           tail_rel_diff=abs(tail - asym) / abs(tail),
                           tail_monotone=monotone, tail_threshold=tail_threshold)
    raise ValueError(f"confirm_limits supports T1 and T2, not {instance!r}")


def tail_crossing(p: float, level: float, x_start: float = 40.0,
                  x_limit: float = 1e8) -> float | None:
    """First doubling of ``x_start`` at which the asymptotic G falls below ``level``.

    Exhibits where a positive lower constant for the modified inequality first
    fails; returns None when no crossing occurs below ``x_limit``.
    """
    if level <= 0.0:
        return None
    x = max(x_start, DEFAULT_CONFIG.x_asym)
    while x <= x_limit:
        if G_asymptotic(p, x) < level:
            return x
        x *= 2.0
    return None
