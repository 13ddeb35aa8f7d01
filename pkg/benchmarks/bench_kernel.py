"""Compare the compiled and pure-Python series kernels.

    python3 benchmarks/bench_kernel.py [--repeat N]

Part 1 times ``hyp_sum`` directly from both backends on the same arguments.
Part 2 times a T1 sweep end to end in a fresh interpreter per backend
(the backend is fixed at import, so ``BESSELFRAME_PURE=1`` needs a new process).
"""

import argparse
import os
import subprocess
import sys
import timeit

from besselframe import _backend, _dd

SWEEP = ("import time; from besselframe.engine import sweep; t = time.perf_counter(); "
         "sweep('T1', 20, 100, workers=1); print(time.perf_counter() - t)")


def kernel_args():
    out = []
    for p in (-0.9, -0.5, 0.0, 1.5):
        for x in (0.1, 1.0, 3.0, 7.0):
            zh, zl = _dd.two_prod(x, x)
            den = (1.0, 0.0) + _dd.dd_add(1.0, 0.0, p, 0.0)
            out.append((-0.25 * zh, -0.25 * zl, 1.0, 0.0, (), den, 1e-16, False, 500))
    return out


def bench_kernel(repeat):
    args = kernel_args()
    rows = {}
    for name, fn in (("compiled", _backend.compiled_hyp_sum), ("python", _backend.pure_hyp_sum)):
        if fn is None:
            continue
        t = min(timeit.repeat(lambda: [fn(*a) for a in args], number=50, repeat=repeat))
        rows[name] = t / (50 * len(args)) * 1e6
    return rows


def bench_sweep():
    rows = {}
    for name, pure in (("compiled", "0"), ("python", "1")):
        if name == "compiled" and _backend.compiled_hyp_sum is None:
            continue
        env = dict(os.environ, BESSELFRAME_PURE=pure)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True,
                             text=True, check=True)
        rows[name] = float(out.stdout)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ns = ap.parse_args(argv)
    if _backend.compiled_hyp_sum is None:
        print("compiled extension not built; timing the pure-Python kernel only")
    k = bench_kernel(ns.repeat)
    for name, us in k.items():
        print(f"hyp_sum  {name:9s} {us:9.2f} us/call")
    if len(k) == 2:
        print(f"hyp_sum  speedup   {k['python'] / k['compiled']:9.1f}x")
    s = bench_sweep()
    for name, sec in s.items():
        print(f"T1 sweep {name:9s} {sec:9.3f} s (20 x 100)")
    if len(s) == 2:
        print(f"T1 sweep speedup   {s['python'] / s['compiled']:9.1f}x")


if __name__ == "__main__":
    main()
