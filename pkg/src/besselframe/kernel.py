"""Normalized Bessel functions with certified truncation error.

``J_p(x) = 2^p Gamma(p+1) x^-p J_p(x)`` and the modified analogue ``I_p`` are
evaluated from their even power series in ``y = x^2``; consecutive terms are
generated by the multiplicative recurrence

    t_{n+1} = t_n * (-+ y/4) / ((n+1)(p+n+1)),

so no gamma function is needed. Terms and partial sums are carried in
double-double arithmetic (see :mod:`besselframe._dd`), which keeps rounding
far below the reported truncation bound, even next to a zero of ``J_p``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import _dd
from ._backend import hyp_sum
from .ball import Ball
from .errors import DomainError, InvalidOrderError, ToleranceNotReachedError

__all__ = [
    "Kind",
    "KernelConfig",
    "DEFAULT_CONFIG",
    "BesselSpec",
    "Evaluation",
    "ProductSeries",
    "eval_J",
    "eval_I",
    "eval_dJ",
    "eval_dI",
    "hyper_series",
    "one_minus_J_reduced",
    "I_minus_one_reduced",
    "product_coeffs",
    "eval_I_asymptotic",
    "normalized_I_asymptotic",
]


class Kind(enum.Enum):
    OSCILLATORY = "J"
    MODIFIED = "I"

    @property
    def sign(self) -> int:
        return -1 if self is Kind.OSCILLATORY else 1


@dataclass(frozen=True)
class KernelConfig:
    """Numerical guards shared by all kernel operations."""

    order_guard: float = 1e-2
    max_terms: int = 500
    p_max: float = 3.0
    x_max_modified: float = 50.0
    x_asym: float = 30.0

    @property
    def x_max(self) -> float:
        # 1.1 x the upper bound on j_{p,1} at the largest supported order
        return 1.1 * math.sqrt(2.0 * (self.p_max + 1.0) * (self.p_max + 3.0))

    def check_order(self, p: float) -> float:
        p = float(p)
        if not math.isfinite(p) or p + 1.0 < self.order_guard * (1.0 - 1e-12):
            raise InvalidOrderError(
                f"order p={p!r} below the guard p >= {-1.0 + self.order_guard}"
            )
        return p

    def x_limit(self, kind: Kind) -> float:
        return self.x_max if kind is Kind.OSCILLATORY else self.x_max_modified


DEFAULT_CONFIG = KernelConfig()


@dataclass(frozen=True)
class BesselSpec:
    p: float
    kind: Kind = Kind.OSCILLATORY
    config: KernelConfig = field(default=DEFAULT_CONFIG, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p", self.config.check_order(self.p))


@dataclass(frozen=True)
class Evaluation:
    """Series value with its absolute truncation bound.

    ``round_bound`` bounds the floating-point error (dominated by the final
    rounding of the double-double sum to a float); it is kept apart from
    ``err_bound`` so that the latter is the pure truncation bound.
    """

    value: float
    err_bound: float
    terms_used: int
    round_bound: float = 0.0

    @property
    def total_bound(self) -> float:
        return self.err_bound + self.round_bound

    @property
    def ball(self) -> Ball:
        return Ball(self.value, self.total_bound)


def _flat(params) -> tuple:
    out = []
    for a in params:
        h, l = a if isinstance(a, tuple) else (float(a), 0.0)
        out.append(h)
        out.append(l)
    return tuple(out)


def shifted(p: float, c: float, m: float = 1.0) -> tuple:
    """``c + m*p`` as an exact double-double (``m`` in {-1, 1, 2})."""
    return _dd.dd_add(float(c), 0.0, m * p, 0.0)


def hyper_series(x, sign, t0, num, den, tol, *, rel=False, config=DEFAULT_CONFIG,
                 y=None) -> Evaluation:
    """Certified sum of ``sum_k t_k`` with ``t_{k+1}/t_k = sign*(y/4)*prod(k+b)/prod(k+a)``.

    ``y`` defaults to ``x*x`` formed exactly. ``t0`` may be a float or a
    double-double pair; parameters likewise.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if y is None:
        yh, yl = _dd.two_prod(float(x), float(x))
    else:
        yh, yl = y
    zh, zl = 0.25 * sign * yh, 0.25 * sign * yl
    th, tl = t0 if isinstance(t0, tuple) else (float(t0), 0.0)
    fnum, fden = _flat(num), _flat(den)
    sh, sl, err, n, wabs = hyp_sum(zh, zl, th, tl, fnum, fden, float(tol), bool(rel),
                                   config.max_terms)
    if n < 0:
        raise ToleranceNotReachedError(
            f"series did not reach tol={tol:g} within {config.max_terms} terms"
        )
    value = sh + sl
    m = len(num) + len(den)
    rnd = 2.0**-53 * abs(value) + 2.0**-98 * (m + 2 + n) * wabs
    return Evaluation(value, err, n, rnd)


def _resolve(spec, kind: Kind, config: KernelConfig) -> BesselSpec:
    if isinstance(spec, BesselSpec):
        if spec.kind is not kind:
            raise ValueError(f"expected a {kind.name} spec, got {spec.kind.name}")
        return spec
    return BesselSpec(spec, kind, config)


def _check_x(x: float, kind: Kind, config: KernelConfig) -> float:
    x = float(x)
    lim = config.x_limit(kind)
    if not abs(x) <= lim:
        raise DomainError(f"|x|={abs(x):g} exceeds x_max={lim:g} for {kind.name}")
    return x


def _eval(spec, x, tol, kind, config, relative=False):
    spec = _resolve(spec, kind, config)
    x = _check_x(x, kind, spec.config)
    if not tol > 0:
        raise ValueError("tol must be positive")
    if x == 0.0:
        return Evaluation(1.0, 0.0, 1, 0.0)
    p = spec.p
    return hyper_series(x, kind.sign, 1.0, (), ((1.0, 0.0), shifted(p, 1.0)), tol,
                        rel=relative, config=spec.config)


def eval_J(spec, x: float, tol: float = 1e-14, config: KernelConfig = DEFAULT_CONFIG,
           *, relative: bool = False) -> Evaluation:
    """Normalized Bessel function ``J_p(x)``; ``spec`` is a BesselSpec or the order p.

    ``tol`` bounds the truncation error absolutely, or relative to the value
    when ``relative`` is set (useful next to a zero).

    >>> round(eval_J(-0.5, 1.0).value, 12)  # cos(1)
    0.540302305868
    """
    return _eval(spec, x, tol, Kind.OSCILLATORY, config, relative)


def eval_I(spec, x: float, tol: float = 1e-14, config: KernelConfig = DEFAULT_CONFIG,
           *, relative: bool = False) -> Evaluation:
    """Normalized modified Bessel function ``I_p(x) >= 1``."""
    return _eval(spec, x, tol, Kind.MODIFIED, config, relative)


def _deriv(spec, x, tol, kind, config):
    spec = _resolve(spec, kind, config)
    x = _check_x(x, kind, spec.config)
    scale = abs(x) / (2.0 * (spec.p + 1.0))
    if scale == 0.0:
        return Evaluation(0.0, 0.0, 1, 0.0)
    inner = _eval(BesselSpec(spec.p + 1.0, kind, spec.config), x, tol / scale, kind,
                  spec.config)
    v = kind.sign * x / (2.0 * (spec.p + 1.0)) * inner.value
    return Evaluation(v, inner.err_bound * scale, inner.terms_used,
                      inner.round_bound * scale + 4 * 2.0**-53 * abs(v))


def eval_dJ(spec, x: float, tol: float = 1e-14, config: KernelConfig = DEFAULT_CONFIG
            ) -> Evaluation:
    """Derivative ``J_p'(x) = -x/(2(p+1)) J_{p+1}(x)``."""
    return _deriv(spec, x, tol, Kind.OSCILLATORY, config)


def eval_dI(spec, x: float, tol: float = 1e-14, config: KernelConfig = DEFAULT_CONFIG
            ) -> Evaluation:
    """Derivative ``I_p'(x) = x/(2(p+1)) I_{p+1}(x)``."""
    return _deriv(spec, x, tol, Kind.MODIFIED, config)


def _reduced(q, x, tol, kind, rel, config):
    # (1 - J_q)/x^2 = sum_k t_k with t_0 = 1/(4(q+1)), ratio (-y/4)/((k+2)(k+q+2));
    # (I_q - 1)/x^2 has the same terms without the sign flips.
    q = config.check_order(q)
    x = _check_x(x, kind, config)
    t0 = _dd.div((0.25, 0.0), shifted(q, 1.0))
    return hyper_series(x, kind.sign, t0, (), ((2.0, 0.0), shifted(q, 2.0)), tol,
                        rel=rel, config=config)


def one_minus_J_reduced(q: float, x: float, tol: float = 1e-15, *, rel: bool = True,
                        config: KernelConfig = DEFAULT_CONFIG) -> Evaluation:
    """``(1 - J_q(x)) / x^2`` without cancellation (limit ``1/(4(q+1))`` at 0)."""
    return _reduced(q, x, tol, Kind.OSCILLATORY, rel, config)


def I_minus_one_reduced(q: float, x: float, tol: float = 1e-15, *, rel: bool = True,
                        config: KernelConfig = DEFAULT_CONFIG) -> Evaluation:
    """``(I_q(x) - 1) / x^2``, a positive series."""
    return _reduced(q, x, tol, Kind.MODIFIED, rel, config)


@dataclass(frozen=True)
class ProductSeries:
    """Coefficients ``c_n`` of ``x^{2n}`` in the product of two normalized functions."""

    p: float
    q: float
    kind: Kind
    coefficients: tuple

    def evaluate(self, x: float) -> float:
        y = x * x
        s = 0.0
        for c in reversed(self.coefficients):
            s = s * y + c
        return s


def product_coeffs(p: float, q: float, N: int, kind: Kind = Kind.OSCILLATORY,
                   config: KernelConfig = DEFAULT_CONFIG) -> ProductSeries:
    """Cauchy-product coefficients of ``F_p(x) F_q(x)`` for ``F`` = J or I.

    Uses the ratio of consecutive gamma factors,

        c_{n+1}/c_n = s (p+q+2n+1)(p+q+2n+2) / (4(n+1)(p+q+n+1)(p+n+1)(q+n+1)),

    with ``s = -1`` for J and ``+1`` for I, starting from ``c_0 = 1``.
    """
    p = config.check_order(p)
    q = config.check_order(q)
    N = int(N)
    if N < 0 or N > config.max_terms:
        raise ValueError(f"N must be in [0, {config.max_terms}]")
    s = kind.sign
    pq = p + q
    c = [1.0]
    for n in range(N):
        r = (pq + 2 * n + 1) * (pq + 2 * n + 2) / (
            4.0 * (n + 1) * (pq + n + 1) * (p + n + 1) * (q + n + 1))
        c.append(c[-1] * s * r)
    return ProductSeries(p, q, kind, tuple(c))


def eval_I_asymptotic(nu: float, x: float, k_terms: int,
                      x_asym: float = DEFAULT_CONFIG.x_asym) -> float:
    """Large-argument expansion of the (unnormalized) modified Bessel ``I_nu(x)``.

    ``e^x / sqrt(2 pi x) * sum_{k<K} (-1)^k a_k(nu) / x^k`` with
    ``a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k)``. Not certified; used to
    cross-check tail behaviour only.
    """
    if not 1 <= k_terms <= 4:
        raise ValueError("k_terms must be between 1 and 4")
    if not x >= x_asym:
        raise DomainError(f"x={x:g} below the asymptotic regime x >= {x_asym:g}")
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    for k in range(1, k_terms):
        term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        total += term
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * total


def normalized_I_asymptotic(p: float, x: float, k_terms: int = 4,
                            x_asym: float = DEFAULT_CONFIG.x_asym) -> float:
    """``2^p Gamma(p+1) x^-p I_p(x)`` from :func:`eval_I_asymptotic`."""
    return (2.0**p * math.gamma(p + 1.0) * x**-p
            * eval_I_asymptotic(p, x, k_terms, x_asym))
