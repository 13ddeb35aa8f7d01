"""Monotone coefficient-ratio certification and replay of the ratio bounds.

The generic tool is :func:`certify_ratio_monotone`: for ``A = sum a_n x^n`` and
``B = sum b_n x^n`` with ``b_n > 0``, a monotone ``a_n/b_n`` makes ``A/B``
monotone in the same direction. Sequences are built from multiplicative
recurrences; with ``exact=True`` every coefficient is a ``Fraction`` (any float
order is a rational number) and the verdict involves no rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .ball import Ball
from .errors import BesselFrameError, DomainError
from .kernel import DEFAULT_CONFIG, Kind, eval_J, product_coeffs
from .zeros import first_zero

N_DEFAULT = 200
FLOAT_TIE = 8.0 * 2.0**-52
_RESCALE = 2.0**500


class NonPositiveDenominatorError(BesselFrameError, ValueError):
    """A denominator coefficient b_n <= 0 was met."""


class NotDecreasingError(BesselFrameError, ArithmeticError):
    """Alternating-series terms failed to decrease in magnitude."""


@dataclass(frozen=True)
class CoeffSequencePair:
    """Coefficient sequences ``(a_n, b_n)`` for ``n_min <= n <= n_max``.

    ``generate`` yields ``(n, a_n, b_n)``; a generator may multiply both members
    at one index by the same positive number (used to avoid underflow), which
    changes neither the ratio nor the sign of ``b_n``.
    """

    name: str
    n_min: int
    n_max: int
    generate: Callable[[], Iterator[tuple]]
    exact: bool = False

    @classmethod
    def from_closed_form(cls, name, a, b, n_min, n_max, exact=False):
        def gen():
            for n in range(n_min, n_max + 1):
                yield n, a(n), b(n)

        return cls(name, n_min, n_max, gen, exact)

    def terms(self) -> list[tuple]:
        return list(self.generate())


@dataclass(frozen=True)
class RatioVerdict:
    name: str
    direction: str
    strict_requested: bool
    monotone: bool  # non-strict monotone in the requested direction
    strictly_monotone: bool
    first_failure: int | None  # first n with r_{n+1} on the wrong side of r_n
    ties: tuple[int, ...]  # n with r_{n+1} == r_n (within rounding in float mode)
    n_checked: int
    exact: bool

    @property
    def holds(self) -> bool:
        return self.strictly_monotone if self.strict_requested else self.monotone


def certify_ratio_monotone(pair: CoeffSequencePair, direction: str = "decreasing",
                           strict: bool = True) -> RatioVerdict:
    """Check that ``a_n/b_n`` is monotone over the pair's range."""
    if direction not in ("increasing", "decreasing"):
        raise ValueError("direction must be 'increasing' or 'decreasing'")
    sgn = 1 if direction == "increasing" else -1
    terms = pair.terms()
    if not terms:
        raise ValueError(f"{pair.name}: empty range")
    ratios = []
    for n, a, b in terms:
        if not b > 0:
            raise NonPositiveDenominatorError(f"{pair.name}: b_{n} = {b} is not positive")
        ratios.append((n, a / b))
    first_failure = None
    ties = []
    for (n, r0), (_, r1) in zip(ratios, ratios[1:]):
        d = (r1 - r0) * sgn
        if pair.exact:
            tie = d == 0
        else:
            tie = abs(d) <= FLOAT_TIE * max(abs(r0), abs(r1))
        if tie:
            ties.append(n)
        elif d < 0 and first_failure is None:
            first_failure = n
    monotone = first_failure is None
    return RatioVerdict(pair.name, direction, strict, monotone, monotone and not ties,
                        first_failure, tuple(ties), len(ratios), pair.exact)


def _num(p, exact):
    return Fraction(p) if exact else float(p)


def t2_pair(p: float, N: int = N_DEFAULT, exact: bool = True) -> CoeffSequencePair:
    """Numerator/denominator coefficients of the modified-Bessel ratio G.

    ``a_n = (n-1)/(4^n n! (p+1)(p+2)_n)`` and ``b_n = 1/(4^{n-1}(n-1)!(p+2)_{n-1})``
    for ``n >= 2``, so ``a_n/b_n = (n-1)/(4n(p+1)(p+n+1))``.
    """
    p = DEFAULT_CONFIG.check_order(p)
    if N < 3:
        raise ValueError("N must be at least 3")
    P = _num(p, exact)
    one = Fraction(1) if exact else 1.0

    def gen():
        a = one / (32 * (P + 1) * (P + 2) * (P + 3))
        b = one / (4 * (P + 2))
        for n in range(2, N + 1):
            yield n, a, b
            a = a * n / ((n - 1) * 4 * (n + 1) * (P + n + 2))
            b = b / (4 * n * (P + n + 1))
            if not exact and b < 1.0 / _RESCALE:
                a, b = a * _RESCALE, b * _RESCALE

    return CoeffSequencePair(f"T2 a_n/b_n (p={p:g})", 2, N, gen, exact)


def t2_ratio_closed_form(p, n, exact: bool = True):
    P = _num(p, exact)
    return (n - 1) / (4 * n * (P + 1) * (P + n + 1))


# --- replayed ratio chains ----------------------------------------------------------


@dataclass(frozen=True)
class ChainReplay:
    """Per-index values of a chain ``v_0 <= v_1 < v_2 < ... < 1``.

    ``links[k]`` names the comparison between ``values[k]`` and ``values[k+1]``
    (the last value is compared with 1).
    """

    name: str
    p: float
    x: float
    links: tuple[str, ...]
    rows: tuple[tuple[int, tuple[float, ...]], ...]
    link_ok: tuple[bool, ...]
    first_failure: tuple[int, str] | None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def column(self, k: int) -> list[float]:
        return [vals[k] for _, vals in self.rows]


def _replay(name, p, x, links, rows, strictness):
    ok = [True] * len(links)
    first = None
    for n, vals in rows:
        chain = list(vals) + [1.0]
        for k, strict in enumerate(strictness):
            a, b = chain[k], chain[k + 1]
            good = a < b if strict else a <= b
            if not good:
                ok[k] = False
                if first is None:
                    first = (n, links[k])
    return ChainReplay(name, p, x, tuple(links), tuple(rows), tuple(ok), first)


def _check_domain(p, x):
    if not -1.0 < p < 0.0:
        raise DomainError(f"p={p} outside (-1, 0)")
    j = first_zero(p, 1e-14).zero
    if not 0.0 <= abs(x) < j:
        raise DomainError(f"|x|={abs(x)} outside [0, j_p,1) = [0, {j})")
    return abs(float(x)), j


def replay_alpha_ratio(p: float, x: float, N: int = 50) -> ChainReplay:
    """``alpha_{n+1}/alpha_n`` against ``x^2/(2(n+1)(n+p+2)) < (p+1)(p+3)/((n+1)(n+p+2)) < 1``.

    Each row holds the ratio as displayed (numerator ``n^2+n+3``), the ratio of
    the coefficients themselves (numerator ``n^2+n+2``), the first bound and the
    bound after ``x^2 < 2(p+1)(p+3)``. Both ratios are checked against the bound.
    """
    x, _ = _check_domain(p, x)
    if N < 6:
        raise ValueError("N must be at least 6")
    y = x * x
    rows = []
    for n in range(6, N + 1):
        q = 4.0 * (n + 1) * (n + p + 2) * (n * n - n + 2)
        displayed = (n * n + n + 3) * y / q
        exact = (n * n + n + 2) * y / q
        bound = y / (2.0 * (n + 1) * (n + p + 2))
        zero_bound = (p + 1) * (p + 3) / ((n + 1) * (n + p + 2))
        rows.append((n, (exact, displayed, bound, zero_bound)))
    links = ("exact <= displayed", "displayed <= x^2 bound",
             "x^2 bound < zero bound", "zero bound < 1")
    return _replay("alpha ratio", p, x, links, rows, (False, False, True, True))


def alpha_coefficient(p: float, n: int) -> float:
    """``(n^2-n+2) Gamma(p+1) / (2^{2n-1} n! Gamma(n+p+2))``."""
    lg = (math.lgamma(p + 1) - (2 * n - 1) * math.log(2.0) - math.lgamma(n + 1)
          - math.lgamma(n + p + 2))
    return (n * n - n + 2) * math.exp(lg)


def b_coefficients(p: float, N: int) -> list[float]:
    """``B_n``, n = 0..N, with ``B_0 = 1/(p+2)`` and
    ``B_{n+1}/B_n = (2p+2n+3)/(2(n+1)(p+n+3)(2p+n+3))``."""
    out = [1.0 / (p + 2.0)]
    for n in range(N):
        out.append(out[-1] * (2 * p + 2 * n + 3) / (2.0 * (n + 1) * (p + n + 3) * (2 * p + n + 3)))
    return out


def d_coefficients(p: float, N: int) -> dict[int, float]:
    """``D_n`` for 3 <= n <= N from ``D_3 = (2p+7)/(96(p+1)(p+2)^2(p+3)(p+4))``."""
    d = (2 * p + 7) / (96.0 * (p + 1) * (p + 2) ** 2 * (p + 3) * (p + 4))
    out = {}
    for n in range(3, N + 1):
        out[n] = d
        d *= (n - 1) * (2 * p + 2 * n + 3) / (2.0 * (n - 2) * (n + 1) * (p + n + 2) * (2 * p + n + 3))
    return out


@dataclass(frozen=True)
class BDReplay:
    B: ChainReplay
    B_start: ChainReplay  # B_1/B_0 chain
    D: ChainReplay
    B_product_rel_diff: float
    D_product_rel_diff: float

    @property
    def passed(self) -> bool:
        return (self.B.passed and self.B_start.passed and self.D.passed
                and self.B_product_rel_diff <= 1e-10 and self.D_product_rel_diff <= 1e-10)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def replay_B_D_ratios(p: float, x: float, N: int = 50) -> BDReplay:
    """Replay the decreasing-ratio chains for ``B_n x^{2n}`` (n >= 1) and ``D_n x^{2n}`` (n >= 6).

    The coefficients are also rebuilt from the product series ``J_{p+1}^2`` and
    ``J_p J_{p+1}`` (``B_n = |c_n|/(p+n+2)``, ``(-1)^n D_n = 2(c_n - (p+2)/(p+1) c'_n)``)
    and the largest relative disagreement is reported.
    """
    x, j = _check_domain(p, x)
    if N < 7:
        raise ValueError("N must be at least 7")
    y, jj = x * x, j * j
    rows = []
    for n in range(1, N + 1):
        base = (2 * p + 2 * n + 3) / (2.0 * (n + 1) * (p + n + 3) * (2 * p + n + 3))
        rows.append((n, (base * y, base * jj, 2.0 * (p + 1) * (p + 3) * base,
                         (2 * p + 2 * n + 3) / (2.0 * (2 * p + n + 3)))))
    b_chain = _replay("B ratio", p, x, ("x < j", "j^2 < 2(p+1)(p+3)", "drop factor",
                                        "final"), rows, (True, True, True, True))
    start = _replay("B_1/B_0", p, x, ("x < j", "j^2/(2(p+3)) < p+1", "p+1 < 1"),
                    [(0, (y / (2 * (p + 3)), jj / (2 * (p + 3)), p + 1.0))],
                    (True, True, True))
    rows = []
    for n in range(6, N + 1):
        base = (n - 1) * (2 * p + 2 * n + 3) / (
            2.0 * (n - 2) * (n + 1) * (p + n + 2) * (2 * p + n + 3))
        rows.append((n, (base * y, base * jj, 2.0 * (p + 1) * (p + 3) * base,
                         (2 * p + 2 * n + 3) * (p + 3) / ((n - 2) * (p + n + 2) * (2 * p + n + 3)),
                         (2 * p + 2 * n + 3) / ((n - 2) * (p + n + 2)),
                         (2 * p + 2 * n + 3) / (4.0 * (p + n + 2)))))
    d_chain = _replay("D ratio", p, x, ("x < j", "j^2 < 2(p+1)(p+3)", "(n-1)(p+1) < n+1",
                                        "p+3 < 2p+n+3", "n-2 >= 4", "final"),
                      rows, (True, True, True, True, False, True))

    m = min(N, 60)  # beyond this the coefficients approach the underflow range
    bs = b_coefficients(p, m)
    c11 = product_coeffs(p + 1.0, p + 1.0, m, Kind.OSCILLATORY).coefficients
    c01 = product_coeffs(p, p + 1.0, m, Kind.OSCILLATORY).coefficients
    b_diff = max(_rel(abs(c11[n]) / (p + n + 2), bs[n]) for n in range(m + 1))
    ds = d_coefficients(p, m)
    d_diff = max(_rel((-1) ** n * 2.0 * (c01[n] - (p + 2) / (p + 1) * c11[n]), ds[n])
                 for n in range(3, m + 1))
    return BDReplay(b_chain, start, d_chain, b_diff, d_diff)


# --- Turan expression from its coefficient series -------------------------------------


@dataclass(frozen=True)
class TuranEnclosure:
    p: float
    x: float
    lower: float
    upper: float
    terms: int
    decreasing: bool
    kernel: Ball

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def positive(self) -> bool:
        return self.lower > 0.0

    @property
    def kernel_diff(self) -> float:
        return abs(self.value - self.kernel.mid)

    @property
    def contains_kernel(self) -> bool:
        return self.lower - self.kernel.rad <= self.kernel.mid <= self.upper + self.kernel.rad


def turan_kernel(p: float, x: float, tol: float = 1e-16) -> Ball:
    """``J_{p+1}^2 - (p+1)/(p+2) J_p J_{p+2}`` from direct kernel evaluations."""
    a = eval_J(p, x, tol).ball
    b = eval_J(p + 1.0, x, tol).ball
    c = eval_J(p + 2.0, x, tol).ball
    return b.sqr() - (Ball(p) + 1.0) / (Ball(p) + 2.0) * a * c


def b_series_sum(p: float, x: float, N: int = N_DEFAULT, rel_tol: float = 1e-17) -> float:
    """``sum (-1)^n B_n x^{2n}`` summed until the terms drop below ``rel_tol``."""
    y = float(x) ** 2
    t = 1.0 / (p + 2.0)
    parts = []
    for n in range(N + 1):
        parts.append(t)
        t *= -y * (2 * p + 2 * n + 3) / (2.0 * (n + 1) * (p + n + 3) * (2 * p + n + 3))
        if abs(t) <= rel_tol * abs(math.fsum(parts)):
            break
    return math.fsum(parts)


def turan_via_coefficients(p: float, x: float, N: int = N_DEFAULT) -> TuranEnclosure:
    """Alternating-series enclosure of the Turan expression for ``|x| < j_{p,1}``.

    Terms ``B_n x^{2n}`` are checked to decrease from n = 0; consecutive partial
    sums then bracket the value. The bracket is widened by a rounding bound and
    compared with direct kernel evaluation.
    """
    x, _ = _check_domain(p, x)
    y = x * x
    t = 1.0 / (p + 2.0)
    parts = []
    abs_sum = 0.0
    decreasing = True
    n = 0
    while True:
        parts.append(t)
        abs_sum += abs(t)
        nxt = -t * y * (2 * p + 2 * n + 3) / (2.0 * (n + 1) * (p + n + 3) * (2 * p + n + 3))
        if abs(nxt) >= abs(t):
            decreasing = False
        n += 1
        s = math.fsum(parts)
        if abs(nxt) <= 2.0**-60 * abs(s) or n > N:
            break
        t = nxt
    if not decreasing:
        raise NotDecreasingError(f"B_n x^2n not decreasing at p={p}, x={x}")
    # the next partial sum s + nxt lies on the other side of the limit
    s_next = s + nxt
    rnd = 4.0 * n * 2.0**-53 * abs_sum
    lo, hi = min(s, s_next) - rnd, max(s, s_next) + rnd
    return TuranEnclosure(p, x, lo, hi, n, decreasing, turan_kernel(p, x))
