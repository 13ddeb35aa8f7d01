import math

import pytest

from besselframe.ball import Ball
from besselframe.catalog import CATALOG, Relation, get_instance
from besselframe.engine import (
    P_FLOOR,
    Status,
    _side_status,
    check_F_monotone,
    check_G_monotone,
    compare_orientations,
    default_workers,
    evaluate_instance,
    linspace,
    p_grid,
    resolve_constants,
    sweep,
    x_grid,
)
from besselframe.errors import DomainError
from besselframe.sharpness import beta_T1, beta_T2
from besselframe.zeros import first_zero

ALL_IDS = list(CATALOG)


def test_catalog_contents():
    assert len(CATALOG) == 13
    for iid in ("T1", "T2", "COR-KH7", "COR-KH8", "COR-KH9", "R2-SANDWICH", "CUSA-H",
                "TURAN-J", "TURAN-I", "TURAN-TRIG", "FRAME-1954", "CHEN-SANDOR-H",
                "CHEN-SANDOR-T"):
        assert get_instance(iid).id == iid
    with pytest.raises(KeyError, match="known"):
        get_instance("T3")
    assert Relation.SANDWICH.strict and not Relation.LESS_EQUAL.strict


def test_documented_point_values():
    r = evaluate_instance("T2", -0.5, 1.0)
    assert r.status is Status.OK and r.side == "beta"
    assert dict(r.sides)["alpha"].mid == pytest.approx(0.004933, abs=5e-7)
    r = evaluate_instance("T1", -0.5, 1.0)
    assert r.margin == pytest.approx(1.5e-5, rel=0.01)
    r = evaluate_instance("COR-KH9", None, 0.0)
    assert r.margin == 0.0 and r.status is Status.OK


def test_exact_zero_and_certainty_rule():
    assert _side_status(Ball(0.0), strict=False) is Status.OK
    assert _side_status(Ball(0.0), strict=True) is Status.VIOLATION
    assert _side_status(Ball(1.0, 0.02), strict=True) is Status.INDETERMINATE
    assert _side_status(Ball(-1.0, 0.001), strict=False) is Status.VIOLATION
    # the value 1/(p+2) at 0 keeps TURAN-J strictly positive
    assert evaluate_instance("TURAN-J", -0.5, 0.0).margin == pytest.approx(2 / 3)
    r = evaluate_instance("COR-KH7", -0.5, 0.0)
    assert r.margin == 0.0 and r.status is Status.OK


@pytest.mark.parametrize("bessel,elem,p", [
    ("T1", "CHEN-SANDOR-T", -0.5),
    ("T2", "CHEN-SANDOR-H", -0.5),
    ("COR-KH8", "COR-KH9", -0.5),
])
def test_specializations_agree(bessel, elem, p):
    for x in (0.2, 0.7, 1.2, 1.5):
        a = evaluate_instance(bessel, p, x)
        b = evaluate_instance(elem, None, x)
        for (_, ba), (_, bb) in zip(a.sides, b.sides):
            assert abs(ba.mid - bb.mid) <= 1e-12


def test_domain_checks():
    with pytest.raises(DomainError):
        evaluate_instance("T1", -0.3, 1.0)
    with pytest.raises(DomainError):
        evaluate_instance("T1", -0.5, 2.0)  # beyond pi/2
    with pytest.raises(DomainError):
        evaluate_instance("T2", None, 1.0)
    with pytest.raises(DomainError):
        evaluate_instance("CUSA-H", None, 0.0)
    # even claims accept negative x
    assert evaluate_instance("COR-KH7", -0.5, -2.0).margin == pytest.approx(
        evaluate_instance("COR-KH7", -0.5, 2.0).margin)
    # exploration widens only T1's order range
    r = evaluate_instance("T1", -0.3, 1.0, exploration=True)
    assert r.status in set(Status)


def test_resolve_constants():
    inst = get_instance("T2")
    a, b = resolve_constants(inst, -0.5, perturb=1.01, perturb_side="beta")
    assert a == 0.0 and b == pytest.approx(1.01 * beta_T2(-0.5))
    a, b = resolve_constants(inst, -0.5, alpha=0.02)
    assert a == 0.02 and b == beta_T2(-0.5)
    with pytest.raises(ValueError):
        resolve_constants(inst, -0.5, perturb_side="left")
    assert resolve_constants(get_instance("CUSA-H"), None) == (None, None)


def test_grids():
    xs = linspace(0.0, 1.0, 11)
    assert xs[0] == 0.0 and xs[-1] == 1.0 and len(xs) == 11
    ps = p_grid(get_instance("T1"), 50)
    assert ps[0] == P_FLOOR and ps[-1] == -0.5 and len(ps) == 50
    xg = x_grid(get_instance("T1"), -0.5, 200)
    assert 0.0 < xg[0] and xg[-1] < first_zero(-0.5, 1e-14).zero and len(xg) == 200
    xg = x_grid(get_instance("T2"), 0.0, 200)
    assert xg[-1] == 40.0


@pytest.mark.parametrize("iid", ALL_IDS)
def test_default_sweeps_certify(iid):
    rep = sweep(iid)
    assert rep.asserted
    assert rep.counts["violation"] == 0, rep.violations[:3]
    assert rep.counts["indeterminate"] == 0, rep.indeterminate[:3]
    assert rep.min_margin >= 0.0


def test_sweep_report_helpers():
    rep = sweep("CUSA-H", x_steps=20)
    assert rep.passed and len(rep.points) == 20
    assert rep.argmin[1] == rep.points[0].x
    with pytest.raises(ValueError):
        sweep("CUSA-H", x_steps=1)
    with pytest.raises(ValueError):
        sweep("T2", perturb_side="middle")


def test_workers_do_not_change_results():
    a = sweep("T2", 6, 30, workers=1)
    b = sweep("T2", 6, 30, workers=3)
    assert a.points == b.points


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("BESSELFRAME_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("BESSELFRAME_WORKERS", "many")
    with pytest.raises(ValueError):
        default_workers()


def test_perturbations_break_sharp_constants():
    t1 = sweep("T1", 5, 50, perturb=1.01, perturb_side="alpha")
    assert t1.violations and min(pt.x for pt in t1.violations) < 0.1
    t1 = sweep("T1", 5, 50, perturb=0.99, perturb_side="beta")
    assert t1.violations
    t2 = sweep("T2", 5, 200, perturb=0.99, perturb_side="beta")
    assert t2.violations and min(pt.x for pt in t2.violations) < 1.0
    t2 = sweep("T2", p_values=[0.0], x_steps=200, alpha=0.02)
    assert t2.violations and min(pt.x for pt in t2.violations) > 20.0


def test_weakened_constants_never_fail():
    # widening a sharp bound cannot create a violation
    assert not sweep("T2", 5, 100, perturb=1.01, perturb_side="beta").violations
    assert not sweep("T2", 5, 100, alpha=-1e-3).violations


def test_orientation_swap():
    res = compare_orientations("T1", 4, 40)
    assert res["stated"]["violation"] == 0
    assert res["swapped"]["ok"] == 0
    with pytest.raises(ValueError):
        compare_orientations("CUSA-H")


def test_exploration_sweep_is_not_asserted():
    rep = sweep("T1", 3, 20, exploration=True)
    assert not rep.asserted
    assert all(-0.5 < pt.p < 0.0 for pt in rep.points)


@pytest.mark.parametrize("p", [-0.99, -0.75, -0.5])
def test_F_monotone(p):
    rep = check_F_monotone(p)
    assert rep.monotone and rep.h_negative == 0 and rep.h_unresolved == 0
    assert rep.end_target == pytest.approx(beta_T1(p, 1e-14))
    assert rep.end_gap < 1e-3


def test_F_not_monotone_above_minus_quarter():
    # F is not monotone for all orders: at p = 0 it decreases towards j_{0,1}
    assert not check_F_monotone(0.0).monotone


@pytest.mark.parametrize("p", [-0.99, -0.5, 0.0])
def test_G_monotone(p):
    rep = check_G_monotone(p)
    assert rep.monotone
    assert rep.start_gap < 1e-6
    assert math.isfinite(rep.values[-1])
