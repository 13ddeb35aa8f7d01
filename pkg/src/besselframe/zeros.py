"""First positive zero ``j_{p,1}`` of ``J_p``.

The classical bracket ``4(p+1) sqrt(p+2) < j^2 < 2(p+1)(p+3)`` seeds a
bisection with a safeguarded secant step. The bracket is proper for every
p > -1 (upper^4 - lower^4 = 4(p+1)^4); when it shows no certified sign change,
or lies beyond x_max, a fixed-step scan locates the first sign change instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import NoSignChangeError
from .kernel import DEFAULT_CONFIG, KernelConfig, eval_J

SCAN_STEP = 0.1


@dataclass(frozen=True)
class ZeroResult:
    p: float
    lower: float
    upper: float
    zero: float
    tol_achieved: float
    bracket_valid: bool

    @property
    def in_bracket(self) -> bool:
        return self.lower < self.zero < self.upper


def bracket_zero(p: float, config: KernelConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Analytic bounds ``(sqrt(4(p+1)sqrt(p+2)), sqrt(2(p+1)(p+3)))`` on ``j_{p,1}``.

    The pair is returned as computed; :func:`find_first_zero` records whether it
    is proper rather than assuming it.
    """
    p = config.check_order(p)
    return (math.sqrt(4.0 * (p + 1.0) * math.sqrt(p + 2.0)),
            math.sqrt(2.0 * (p + 1.0) * (p + 3.0)))


def _probe(p, x, etol, config):
    """Certified sign of J_p(x) (0 when the error bound straddles zero) and its value."""
    ev = eval_J(p, x, etol, config)
    if abs(ev.value) <= ev.total_bound:
        # undetermined: retry with a much tighter tolerance before giving up
        ev = eval_J(p, x, etol * 1e-6, config)
        if abs(ev.value) <= ev.total_bound:
            return 0, ev.value
    return (1 if ev.value > 0 else -1), ev.value


def _sign(p, x, etol, config):
    return _probe(p, x, etol, config)[0]


def _scan(p, start, x_max, etol, config):
    """Smallest x-step interval [a, b] in (0, x_max] with J_p(a) > 0 >= J_p(b)."""
    # walk outward from the bracket midpoint, then confirm nothing earlier
    x = min(max(start, SCAN_STEP), x_max)
    s = _sign(p, x, etol, config)
    if s > 0:
        while True:
            nx = min(x + SCAN_STEP, x_max)
            if nx <= x:
                raise NoSignChangeError(f"J_{p} has no sign change in (0, {x_max:g}]")
            ns = _sign(p, nx, etol, config)
            if ns <= 0:
                a, b = x, nx
                break
            x = nx
    else:
        b = x
        while True:
            a = max(b - SCAN_STEP, 0.0)
            if a == 0.0 or _sign(p, a, etol, config) > 0:
                break
            b = a
    lo = 0.0
    while lo + SCAN_STEP < a:
        nxt = lo + SCAN_STEP
        if _sign(p, nxt, etol, config) <= 0:
            return _scan(p, nxt, x_max, etol, config)
        lo = nxt
    return a, b


def find_first_zero(p: float, tol: float = 1e-12, config: KernelConfig = DEFAULT_CONFIG
                    ) -> ZeroResult:
    """Refine ``j_{p,1}`` to within ``tol``; evaluation tolerance is ``tol/10``."""
    p = config.check_order(p)
    if not tol >= 1e-14:
        raise ValueError("tol must be >= 1e-14")
    lower, upper = bracket_zero(p, config)
    etol = tol / 10.0
    valid = lower < upper
    a = b = None
    if valid and upper <= config.x_max:
        if _sign(p, lower, etol, config) > 0 and _sign(p, upper, etol, config) < 0:
            a, b = lower, upper
    if a is None:
        a, b = _scan(p, 0.5 * (lower + upper), config.x_max, etol, config)
        if _sign(p, b, etol, config) == 0:
            return ZeroResult(p, lower, upper, b, 0.0, valid)
    fa = _probe(p, a, etol, config)[1]
    fb = _probe(p, b, etol, config)[1]
    use_secant = True
    while b - a > tol:
        m = 0.5 * (a + b)
        if use_secant and fa != fb:
            c = b - fb * (b - a) / (fb - fa)
            w = b - a
            if a + 0.05 * w < c < b - 0.05 * w:
                m = c
        use_secant = not use_secant  # alternate to keep bisection's guarantee
        s, fm = _probe(p, m, etol, config)
        if s > 0:
            a, fa = m, fm
        elif s < 0:
            b, fb = m, fm
        else:
            a = b = m
            break
    zero = 0.5 * (a + b)
    return ZeroResult(p, lower, upper, zero, 0.5 * (b - a), valid)


@lru_cache(maxsize=4096)
def first_zero(p: float, tol: float = 1e-12) -> ZeroResult:
    """Cached :func:`find_first_zero` with the default configuration."""
    return find_first_zero(p, tol)

