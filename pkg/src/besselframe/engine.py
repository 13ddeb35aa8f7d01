"""Point evaluation and grid sweeps over the inequality catalog."""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .ball import Ball
from .catalog import CATALOG, InequalityInstance, XRule, check_point, get_instance
from .errors import BesselFrameError, DomainError
from .sharpness import F, G, alpha_T1, beta_T1, beta_T2
from .zeros import first_zero

P_FLOOR = -0.99
INSET = 1e-6
CERTAINTY = 1e-2  # a sign counts only when err_bound <= CERTAINTY * |margin|
WORKERS_ENV = "BESSELFRAME_WORKERS"


class Status(str, enum.Enum):
    OK = "ok"
    VIOLATION = "violation"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class PointResult:
    instance_id: str
    p: float | None
    x: float
    sides: tuple[tuple[str, Ball], ...]
    margin: float
    err_bound: float
    side: str
    status: Status

    @property
    def certain(self) -> bool:
        return self.status is not Status.INDETERMINATE


def _side_status(b: Ball, strict: bool) -> Status:
    if b.mid == 0.0 and b.rad == 0.0:
        return Status.VIOLATION if strict else Status.OK
    if not math.isfinite(b.mid) or b.rad > CERTAINTY * abs(b.mid):
        return Status.INDETERMINATE
    return Status.OK if b.mid > 0.0 else Status.VIOLATION


def _scaled(c, factor):
    if factor == 1.0:
        return c
    if callable(c):
        return lambda: c() * factor
    return c * factor


PERTURB_SIDES = ("both", "alpha", "beta")


def resolve_constants(inst: InequalityInstance, p, alpha=None, beta=None, perturb=1.0,
                      perturb_side: str = "both"):
    """Constants used by ``inst`` at ``p``: defaults scaled by ``perturb``, or overrides.

    ``perturb_side`` limits the scaling to the lower ("alpha") or upper ("beta")
    constant; explicit overrides always win.
    """
    if perturb_side not in PERTURB_SIDES:
        raise ValueError(f"perturb_side must be one of {PERTURB_SIDES}")
    if inst.constants is None:
        return None, None
    a0, b0 = inst.constants(p)
    if perturb_side != "beta":
        a0 = _scaled(a0, perturb)
    if perturb_side != "alpha":
        b0 = _scaled(b0, perturb)
    return (alpha if alpha is not None else a0), (beta if beta is not None else b0)


def evaluate_instance(instance, p, x, tol: float = 1e-12, *, alpha=None, beta=None,
                      perturb: float = 1.0, perturb_side: str = "both",
                      exploration: bool = False) -> PointResult:
    """Signed margins of one instance at one point, with a certainty verdict.

    The reported margin is the smallest side; the status is a violation when any
    side is certainly negative, ok when every side is certainly positive (or an
    exact zero for a non-strict claim) and indeterminate otherwise.
    """
    inst = instance if isinstance(instance, InequalityInstance) else get_instance(instance)
    xa = check_point(inst, p, x, exploration)
    a, b = resolve_constants(inst, p, alpha, beta, perturb, perturb_side)
    balls = inst.margin_fn(p, xa, tol, a, b)
    sides = tuple(zip(inst.sides, balls))
    statuses = [_side_status(bl, inst.relation.strict) for bl in balls]
    if Status.VIOLATION in statuses:
        status = Status.VIOLATION
    elif Status.INDETERMINATE in statuses:
        status = Status.INDETERMINATE
    else:
        status = Status.OK
    k = min(range(len(balls)), key=lambda i: balls[i].mid)
    return PointResult(inst.id, p, float(x), sides, balls[k].mid, balls[k].rad,
                       inst.sides[k], status)


# --- grids ---------------------------------------------------------------------


def linspace(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [hi]
    pts = [lo + (hi - lo) * i / (n - 1) for i in range(n - 1)]
    pts.append(hi)
    return pts


def _inset(iv, floor=None):
    lo, hi = iv.lo, iv.hi
    if floor is not None and lo < floor:
        lo = floor
        lo_open = False
    else:
        lo_open = iv.lo_open
    w = hi - lo
    if lo_open:
        lo += INSET * w
    if iv.hi_open:
        hi -= INSET * w
    return lo, hi


def p_grid(inst: InequalityInstance, p_steps: int, exploration: bool = False):
    if not inst.has_p:
        return [None]
    dom = inst.exploration_p_domain if exploration else inst.p_domain
    if dom is None:
        raise ValueError(f"{inst.id} has no exploration domain")
    lo, hi = _inset(dom, P_FLOOR)
    return linspace(lo, hi, p_steps)


def x_grid(inst: InequalityInstance, p, x_steps: int, x_max: float | None = None):
    iv = inst.x_domain.resolve(p)
    if x_max is not None and inst.x_domain.rule is XRule.UNBOUNDED:
        iv = type(iv)(iv.lo, x_max, iv.lo_open, False)
    lo, hi = _inset(iv)
    return linspace(lo, hi, x_steps)


# --- sweeps ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    p: float | None
    x: float
    margin: float
    err_bound: float
    side: str
    status: Status


@dataclass
class SweepReport:
    instance_id: str
    tol: float
    p_steps: int
    x_steps: int
    exploration: bool
    overrides: dict
    points: list[SweepPoint] = field(default_factory=list)

    @property
    def asserted(self) -> bool:
        return not self.exploration

    @property
    def counts(self) -> dict[str, int]:
        c = {s.value: 0 for s in Status}
        for pt in self.points:
            c[pt.status.value] += 1
        return c

    @property
    def violations(self) -> list[SweepPoint]:
        return [pt for pt in self.points if pt.status is Status.VIOLATION]

    @property
    def indeterminate(self) -> list[SweepPoint]:
        return [pt for pt in self.points if pt.status is Status.INDETERMINATE]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.indeterminate

    def _finite(self):
        return [pt for pt in self.points if math.isfinite(pt.margin)]

    @property
    def min_margin(self) -> float:
        pts = self._finite()
        return min(pt.margin for pt in pts) if pts else math.nan

    @property
    def argmin(self) -> tuple[float | None, float] | None:
        pts = self._finite()
        if not pts:
            return None
        best = min(pts, key=lambda pt: pt.margin)
        return best.p, best.x


def _sweep_row(args):
    inst_id, p, xs, tol, alpha, beta, perturb, side, exploration = args
    inst = CATALOG[inst_id]
    row = []
    for x in xs:
        try:
            r = evaluate_instance(inst, p, x, tol, alpha=alpha, beta=beta,
                                  perturb=perturb, perturb_side=side,
                                  exploration=exploration)
            row.append(SweepPoint(p, x, r.margin, r.err_bound, r.side, r.status))
        except (BesselFrameError, ArithmeticError) as exc:
            if isinstance(exc, DomainError):
                raise
            row.append(SweepPoint(p, x, math.nan, math.inf, "", Status.INDETERMINATE))
    return row


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def sweep(instance, p_steps: int | None = None, x_steps: int | None = None,
          tol: float = 1e-12, *, alpha=None, beta=None, perturb: float = 1.0,
          perturb_side: str = "both", exploration: bool = False, p_values=None, x_max: float | None = None,
          workers: int | None = None) -> SweepReport:
    """Evaluate an instance on a deterministic (p, x) grid.

    Orders run from max(p_lo, -0.99) to p_hi; for each order x spans the
    resolved domain. Open ends are moved inward by 1e-6 of the interval width.
    Results are identical for any worker count.
    """
    inst = instance if isinstance(instance, InequalityInstance) else get_instance(instance)
    dp, dx = inst.default_steps
    p_steps = p_steps or dp
    x_steps = x_steps or dx
    if p_steps < 1 or x_steps < 2:
        raise ValueError("need p_steps >= 1 and x_steps >= 2")
    ps = list(p_values) if p_values is not None else p_grid(inst, p_steps, exploration)
    if not inst.has_p:
        ps = [None]
    if perturb_side not in PERTURB_SIDES:
        raise ValueError(f"perturb_side must be one of {PERTURB_SIDES}")
    jobs = [(inst.id, p, x_grid(inst, p, x_steps, x_max), tol, alpha, beta, perturb,
             perturb_side, exploration) for p in ps]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    overrides = {"alpha": alpha, "beta": beta, "perturb": perturb,
                 "perturb_side": perturb_side}
    rep = SweepReport(inst.id, tol, len(ps), x_steps, exploration, overrides)
    for row in rows:
        rep.points.extend(row)
    return rep


# --- monotonicity of the ratio functions --------------------------------------------


@dataclass(frozen=True)
class MonotoneReport:
    function: str  # "F" or "G"
    p: float
    xs: tuple[float, ...]
    values: tuple[float, ...]
    radii: tuple[float, ...]
    monotone: bool
    first_failure: int | None
    start_target: float
    end_target: float
    h_positive: int = 0  # F only: interior points with certified H > 0
    h_negative: int = 0
    h_unresolved: int = 0
    tail_small: bool | None = None  # G only: G(x_max) <= tail threshold

    @property
    def start_gap(self) -> float:
        return abs(self.values[0] - self.start_target)

    @property
    def end_gap(self) -> float:
        return abs(self.values[-1] - self.end_target)


def _scan_monotone(vals, direction):
    for i in range(len(vals) - 1):
        a, b = vals[i], vals[i + 1]
        step = (b.mid - a.mid) * direction
        if step < -(a.rad + b.rad):
            return i
    return None


def check_F_monotone(p: float, x_steps: int = 200, h_rel: float = 1e-3) -> MonotoneReport:
    """F(p, .) is nondecreasing on (0, j_{p,1}) up to evaluation error.

    Also tests ``H(x) = x^4 (1 - J_{p+1})^2 F'(x) > 0`` at interior grid points
    with central differences of step ``h_rel`` times the grid spacing; points
    whose difference is not resolved by the error bounds are counted apart.
    """
    j = first_zero(p, 1e-14).zero
    lo, hi = j * INSET, j * (1.0 - INSET)
    xs = linspace(lo, hi, x_steps)
    vals = [F(p, x) for x in xs]
    fail = _scan_monotone(vals, +1)
    h = h_rel * (hi - lo) / (x_steps - 1)
    pos = neg = unres = 0
    for x in xs[2:-2]:
        d = F(p, x + h) - F(p, x - h)
        if not d.sign_certain():
            unres += 1
        elif d.mid > 0:
            pos += 1
        else:
            neg += 1
    return MonotoneReport("F", p, tuple(xs), tuple(v.mid for v in vals),
                          tuple(v.rad for v in vals), fail is None, fail,
                          alpha_T1(p), beta_T1(p, 1e-14), pos, neg, unres)


def check_G_monotone(p: float, x_steps: int = 200, x_max: float = 40.0,
                     tail_threshold: float = 1e-2) -> MonotoneReport:
    """G(p, .) is nonincreasing on (0, x_max] up to evaluation error.

    ``tail_small`` records whether G has dropped below ``tail_threshold`` by
    ``x_max``; it is reported, not part of the monotonicity verdict.
    """
    xs = linspace(x_max * INSET, x_max, x_steps)
    vals = [G(p, x) for x in xs]
    fail = _scan_monotone(vals, -1)
    return MonotoneReport("G", p, tuple(xs), tuple(v.mid for v in vals),
                          tuple(v.rad for v in vals), fail is None, fail,
                          beta_T2(p), 0.0, tail_small=vals[-1].hi <= tail_threshold)


def compare_orientations(instance, p_steps: int | None = None, x_steps: int | None = None,
                         tol: float = 1e-12) -> dict[str, dict[str, int]]:
    """Sweep counts with the constants as labelled and with the two swapped.

    Only the labelled assignment is a claim; the swapped one shows which end of
    the ratio function each constant governs.
    """
    inst = instance if isinstance(instance, InequalityInstance) else get_instance(instance)
    if inst.constants is None:
        raise ValueError(f"{inst.id} has no constants to swap")
    stated = sweep(inst, p_steps, x_steps, tol)
    swapped = SweepReport(inst.id, tol, stated.p_steps, stated.x_steps, False,
                          {"swapped": True})
    for p in sorted({pt.p for pt in stated.points}):
        a, b = inst.constants(p)
        row = sweep(inst, x_steps=x_steps, tol=tol, alpha=b, beta=a, p_values=[p])
        swapped.points.extend(row.points)
    return {"stated": stated.counts, "swapped": swapped.counts}
