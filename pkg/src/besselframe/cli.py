"""Command-line front end: ``besselframe {verify,constants,zero,certify,all}``.

Exit status: 0 when every asserted check is certified, 1 when any violation
was found, 2 when only indeterminate points remain. Exploration sweeps are
reported but never affect the status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field

from . import __version__
from .catalog import CATALOG, get_instance
from .certifier import (
    certify_ratio_monotone,
    replay_alpha_ratio,
    replay_B_D_ratios,
    t2_pair,
    turan_via_coefficients,
)
from .engine import PERTURB_SIDES, SweepReport, sweep
from .errors import BesselFrameError
from .sharpness import alpha_T1, alpha_T2, beta_T1, beta_T2
from .zeros import find_first_zero

CSV_HEADER = ("instance_id", "p", "x", "margin", "err_bound", "status")
EXIT_OK, EXIT_VIOLATION, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 64
TOL_RANGE = (1e-14, 1e-6)
STEPS_RANGE = (2, 10**6)
CERTIFY_P = (-0.9, -0.5, -0.1)


@dataclass
class RunConfig:
    subcommand: str
    instances: list[str] = field(default_factory=list)
    p_steps: int | None = None
    x_steps: int | None = None
    p: list[float] = field(default_factory=list)
    tol: float = 1e-12
    output: str | None = None
    fmt: str = "json"
    exploration: bool = False
    perturb: float = 1.0
    perturb_side: str = "both"
    alpha: float | None = None
    beta: float | None = None
    n_terms: int = 50

    def validate(self) -> "RunConfig":
        if self.subcommand not in ("verify", "constants", "zero", "certify", "all"):
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        lo, hi = TOL_RANGE
        if not lo <= self.tol <= hi:
            raise ValueError(f"tol must lie in [{lo:g}, {hi:g}]")
        for name in ("p_steps", "x_steps"):
            v = getattr(self, name)
            if v is not None and not STEPS_RANGE[0] <= v <= STEPS_RANGE[1]:
                raise ValueError(f"{name} must lie in [{STEPS_RANGE[0]}, {STEPS_RANGE[1]}]")
        for iid in self.instances:
            get_instance(iid)
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.perturb_side not in PERTURB_SIDES:
            raise ValueError(f"perturb side must be one of {PERTURB_SIDES}")
        if not (math.isfinite(self.perturb) and self.perturb > 0):
            raise ValueError("perturb must be a positive factor")
        if self.subcommand == "verify" and not self.instances:
            raise ValueError("verify needs at least one --instance")
        if self.subcommand in ("constants", "zero") and len(self.p) != 1:
            raise ValueError(f"{self.subcommand} needs exactly one --p")
        return self


# --- formatting ---------------------------------------------------------------------------


def fmt_float(v) -> str:
    if v is None:
        return ""
    return format(float(v), ".17g")


def _json_float(v):
    if v is None or not math.isfinite(v):
        return None
    return float(v)


def _point_rows(rep: SweepReport):
    for pt in rep.points:
        yield (rep.instance_id, fmt_float(pt.p), fmt_float(pt.x), fmt_float(pt.margin),
               fmt_float(pt.err_bound), pt.status.value)


def _summary(reports) -> dict:
    counts = {"ok": 0, "violation": 0, "indeterminate": 0}
    best = None
    for rep in reports:
        for k, v in rep.counts.items():
            counts[k] += v
        m = rep.min_margin
        if math.isfinite(m) and (best is None or m < best[0]):
            best = (m, rep.instance_id, rep.argmin)
    return {
        "min_margin": _json_float(best[0]) if best else None,
        "argmin": ({"instance_id": best[1], "p": _json_float(best[2][0]),
                    "x": _json_float(best[2][1])} if best else None),
        "counts": counts,
    }


def _report_json(cfg: RunConfig, reports) -> str:
    results = []
    for rep in reports:
        results.append({
            "instance_id": rep.instance_id,
            "asserted": rep.asserted,
            "p_steps": rep.p_steps,
            "x_steps": rep.x_steps,
            "overrides": {k: (v if not isinstance(v, float) else _json_float(v))
                          for k, v in rep.overrides.items()},
            "summary": _summary([rep]),
            "points": [{"p": _json_float(pt.p), "x": pt.x, "margin": _json_float(pt.margin),
                        "err_bound": _json_float(pt.err_bound), "side": pt.side,
                        "status": pt.status.value} for pt in rep.points],
        })
    doc = {"config": _config_dict(cfg), "results": results,
           "summary": _summary([r for r in reports if r.asserted])}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _report_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rep in reports:
        w.writerows(_point_rows(rep))
    return buf.getvalue()


def _config_dict(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d.pop("output")
    d["version"] = __version__
    return d


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and ``os.replace``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".besselframe-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg: RunConfig, text: str, out) -> None:
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        out.write(text)


def _status_code(reports) -> int:
    asserted = [r for r in reports if r.asserted]
    if any(r.violations for r in asserted):
        return EXIT_VIOLATION
    if any(r.indeterminate for r in asserted):
        return EXIT_INDETERMINATE
    return EXIT_OK


# --- subcommands ------------------------------------------------------------------------


def _sweeps(cfg: RunConfig, ids) -> list[SweepReport]:
    reports = []
    for iid in ids:
        inst = get_instance(iid)
        p_values = cfg.p if (cfg.p and inst.has_p) else None
        reports.append(sweep(inst, cfg.p_steps, cfg.x_steps, cfg.tol, alpha=cfg.alpha,
                             beta=cfg.beta, perturb=cfg.perturb,
                             perturb_side=cfg.perturb_side,
                             exploration=cfg.exploration and inst.exploration_p_domain
                             is not None, p_values=p_values))
    return reports


def _run_sweeps(cfg: RunConfig, ids, out, err) -> int:
    reports = _sweeps(cfg, ids)
    text = _report_json(cfg, reports) if cfg.fmt == "json" else _report_csv(reports)
    _emit(cfg, text, out)
    for rep in reports:
        c = rep.counts
        mode = "exploration" if rep.exploration else "asserted"
        am = rep.argmin
        loc = f"p={fmt_float(am[0]) or '-'} x={fmt_float(am[1])}" if am else "-"
        err.write(f"{rep.instance_id:14s} {mode:11s} ok={c['ok']} violation={c['violation']} "
                  f"indeterminate={c['indeterminate']} min_margin={fmt_float(rep.min_margin)} "
                  f"at {loc}\n")
    return _status_code(reports)


def cmd_constants(cfg: RunConfig, out) -> int:
    p = cfg.p[0]
    doc = {"p": p, "alpha_T1": alpha_T1(p), "beta_T1": beta_T1(p, max(cfg.tol, 1e-14)),
           "alpha_T2": alpha_T2(p), "beta_T2": beta_T2(p),
           "T1_in_range": -1.0 < p <= -0.5, "T2_in_range": -1.0 < p <= 0.0}
    _emit(cfg, json.dumps(doc, sort_keys=True) + "\n", out)
    return EXIT_OK


def cmd_zero(cfg: RunConfig, out) -> int:
    z = find_first_zero(cfg.p[0], cfg.tol)
    doc = {"p": z.p, "zero": z.zero, "lower": z.lower, "upper": z.upper,
           "tol_achieved": z.tol_achieved, "bracket_valid": z.bracket_valid,
           "in_bracket": z.in_bracket}
    _emit(cfg, json.dumps(doc, sort_keys=True) + "\n", out)
    return EXIT_OK


def cmd_certify(cfg: RunConfig, out) -> int:
    ps = cfg.p or list(CERTIFY_P)
    rows = []
    ok = True
    for p in ps:
        v = certify_ratio_monotone(t2_pair(p, 200), "decreasing", strict=p < 0.0)
        row = {"p": p, "t2_ratio": {"holds": v.holds, "strict": v.strictly_monotone,
                                    "ties": list(v.ties), "first_failure": v.first_failure}}
        ok &= v.holds
        if -1.0 < p < 0.0:
            x = 0.9 * find_first_zero(p, 1e-14).zero
            a = replay_alpha_ratio(p, x, cfg.n_terms)
            bd = replay_B_D_ratios(p, x, cfg.n_terms)
            t = turan_via_coefficients(p, x)
            row.update({
                "x": x,
                "alpha_ratio": {"passed": a.passed, "first_failure": a.first_failure},
                "B_ratio": {"passed": bd.B.passed and bd.B_start.passed,
                            "product_rel_diff": bd.B_product_rel_diff},
                "D_ratio": {"passed": bd.D.passed, "product_rel_diff": bd.D_product_rel_diff},
                "turan": {"lower": t.lower, "upper": t.upper, "kernel": t.kernel.mid,
                          "positive": t.positive, "contains_kernel": t.contains_kernel},
            })
            ok &= a.passed and bd.passed and t.positive and t.kernel_diff <= 1e-10
        rows.append(row)
    _emit(cfg, json.dumps({"certify": rows, "passed": ok}, sort_keys=True, indent=1) + "\n",
          out)
    return EXIT_OK if ok else EXIT_VIOLATION


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    cfg.validate()
    if cfg.subcommand == "verify":
        return _run_sweeps(cfg, cfg.instances, out, err)
    if cfg.subcommand == "all":
        return _run_sweeps(cfg, cfg.instances or list(CATALOG), out, err)
    if cfg.subcommand == "constants":
        return cmd_constants(cfg, out)
    if cfg.subcommand == "zero":
        return cmd_zero(cfg, out)
    return cmd_certify(cfg, out)


# --- argument parsing ---------------------------------------------------------------------


def _instances(values) -> list[str]:
    ids = []
    for v in values or []:
        ids.extend(s.strip() for s in v.split(",") if s.strip())
    return ids


class _Parser(argparse.ArgumentParser):
    # argparse's own status 2 would read as "indeterminate"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="besselframe",
                                 description="Certified Bessel Frame/Cusa/Turan inequality checks")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, sweeps=False):
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--output", "-o")
        if sweeps:
            p.add_argument("--instance", action="append",
                           help="catalog id (repeat or comma-separate)")
            p.add_argument("--p-steps", type=int)
            p.add_argument("--x-steps", type=int)
            p.add_argument("--p", type=float, action="append", help="fixed order(s)")
            p.add_argument("--format", choices=("csv", "json"), default="json")
            p.add_argument("--exploration", action="store_true")
            p.add_argument("--perturb", type=float, default=1.0)
            p.add_argument("--perturb-side", choices=PERTURB_SIDES, default="both")
            p.add_argument("--alpha", type=float)
            p.add_argument("--beta", type=float)

    common(sub.add_parser("verify", help="sweep catalog instances"), sweeps=True)
    common(sub.add_parser("all", help="sweep every instance at its default grid"),
           sweeps=True)
    c = sub.add_parser("constants", help="best constants at one order")
    common(c)
    c.add_argument("--p", type=float, action="append", required=True)
    z = sub.add_parser("zero", help="first positive zero of J_p")
    common(z)
    z.add_argument("--p", type=float, action="append", required=True)
    cf = sub.add_parser("certify", help="coefficient-ratio certificates")
    common(cf)
    cf.add_argument("--p", type=float, action="append")
    cf.add_argument("--n-terms", type=int, default=50)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=ns.subcommand,
        instances=_instances(getattr(ns, "instance", None)),
        p_steps=getattr(ns, "p_steps", None),
        x_steps=getattr(ns, "x_steps", None),
        p=list(getattr(ns, "p", None) or []),
        tol=ns.tol,
        output=ns.output,
        fmt=getattr(ns, "format", "json"),
        exploration=getattr(ns, "exploration", False),
        perturb=getattr(ns, "perturb", 1.0),
        perturb_side=getattr(ns, "perturb_side", "both"),
        alpha=getattr(ns, "alpha", None),
        beta=getattr(ns, "beta", None),
        n_terms=getattr(ns, "n_terms", 50),
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(config_from_args(ns))
    except (ValueError, KeyError, BesselFrameError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"besselframe: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
