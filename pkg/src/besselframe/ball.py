"""Midpoint-radius ("ball") arithmetic on floats.

Each :class:`Ball` encloses a real number in ``[mid - rad, mid + rad]``. The
operations propagate input radii to first order exactly and add one unit of
rounding (``2**-52 * |mid|``) per operation, which dominates the float error
of a single correctly rounded op.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 2.0**-52


@dataclass(frozen=True)
class Ball:
    mid: float
    rad: float = 0.0

    @staticmethod
    def of(x) -> "Ball":
        return x if isinstance(x, Ball) else Ball(float(x), 0.0)

    @property
    def lo(self) -> float:
        return self.mid - self.rad

    @property
    def hi(self) -> float:
        return self.mid + self.rad

    def contains(self, x: float) -> bool:
        return abs(x - self.mid) <= self.rad

    def sign_certain(self) -> bool:
        return abs(self.mid) > self.rad

    def __add__(self, other):
        o = Ball.of(other)
        m = self.mid + o.mid
        return Ball(m, self.rad + o.rad + EPS * abs(m))

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad)

    def __sub__(self, other):
        o = Ball.of(other)
        m = self.mid - o.mid
        return Ball(m, self.rad + o.rad + EPS * abs(m))

    def __rsub__(self, other):
        return Ball.of(other) - self

    def __mul__(self, other):
        o = Ball.of(other)
        m = self.mid * o.mid
        r = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return Ball(m, r + EPS * abs(m))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Ball.of(other)
        d = abs(o.mid)
        if d <= o.rad:
            raise ZeroDivisionError("divisor ball contains zero")
        m = self.mid / o.mid
        r = (abs(self.mid) * o.rad + d * self.rad) / (d * (d - o.rad))
        return Ball(m, r + EPS * abs(m))

    def __rtruediv__(self, other):
        return Ball.of(other) / self

    def sqr(self) -> "Ball":
        m = self.mid * self.mid
        return Ball(m, 2 * abs(self.mid) * self.rad + self.rad**2 + EPS * m)

    def __float__(self):
        return self.mid

    def __repr__(self):
        return f"Ball({self.mid!r} +/- {self.rad:.3g})"


def hull(a: Ball, b: Ball) -> Ball:
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    mid = 0.5 * (lo + hi)
    return Ball(mid, (hi - lo) * 0.5 * (1 + 2 * EPS) + EPS * abs(mid))


def isfinite(b: Ball) -> bool:
    return math.isfinite(b.mid) and math.isfinite(b.rad)
