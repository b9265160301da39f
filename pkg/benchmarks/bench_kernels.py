"""Compare the compiled and pure-Python enumeration kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs both backends on identical inputs, checks that the
results agree, and reports the best-of-N time per call.  The last workload runs ``m_bound``
end to end through the dispatcher, pinned to each backend in turn.
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit
from typing import Callable

from kodaira_bundles import _kernels_py

try:
    from kodaira_bundles import _kernels_c
except ImportError:
    _kernels_c = None

FORMS = [(1, 0, 1), (1, 0, 2), (1, 1, 2), (2, 1, 4), (3, 0, 7)]


def represent_workload(mod) -> Callable[[], object]:
    def run():
        return [mod.represent(*f, n) for f in FORMS for n in range(1, 400)]

    return run


def coset_workload(mod) -> Callable[[], object]:
    def run():
        return [
            sorted(mod.coset_points(*f, x0, y0, r, 600))
            for f in FORMS
            for r in (2, 3, 5)
            for x0 in range(r)
            for y0 in range(r)
        ]

    return run


def _zero_sum_inputs():
    cases = []
    for f in FORMS:
        for r, (u, v) in [(2, (3, 1)), (3, (4, 5)), (4, (7, 2)), (5, (9, 3)), (6, (5, 7))]:
            w = (u - r * round(u / r), v - r * round(v / r))
            q = lambda x, y: f[0] * x * x + f[1] * x * y + f[2] * y * y  # noqa: E731
            # a loose starting bound forces a deeper search; the minimum is unchanged
            best = 4 * ((r - 1) * q(*w) + q((r - 1) * w[0], (r - 1) * w[1]))
            pts = _kernels_py.coset_points(*f, u % r, v % r, r, best // 2)
            xs, ys, qs = (list(t) for t in zip(*pts))
            cases.append((f, xs, ys, qs, r, best))
    return cases


def zero_sum_workload(mod) -> Callable[[], object]:
    cases = _zero_sum_inputs()

    def run():
        return [mod.min_zero_sum(*f, xs, ys, qs, r, best)[0] for f, xs, ys, qs, r, best in cases]

    return run


def m_bound_workload(mod) -> Callable[[], object]:
    """End to end: ``m_bound`` over many classes with the dispatcher pinned to ``mod``."""
    from kodaira_bundles import kernels
    from kodaira_bundles.curves import CurveModel
    from kodaira_bundles.kodaira import KodairaSurface, NSClass, m_bound
    from kodaira_bundles.lattice import Lattice2

    classes = []
    for D in (1, 2, 3, 7):
        X = KodairaSurface(CurveModel(Lattice2.standard(D)), CurveModel(Lattice2.standard(D)))
        H = X.hom()
        classes += [NSClass(X, H.element(x, y)) for x in range(-4, 5) for y in range(-4, 5) if x or y]

    def run():
        saved = kernels._kernels_c
        kernels._kernels_c = mod if mod is not _kernels_py else None
        try:
            return [m_bound(r, c) for c in classes for r in (2, 3, 4, 6)]
        finally:
            kernels._kernels_c = saved

    return run


WORKLOADS = {
    "represent": represent_workload,
    "coset_points": coset_workload,
    "min_zero_sum": zero_sum_workload,
    "m_bound": m_bound_workload,
}


def best_time(fn: Callable[[], object], repeat: int) -> float:
    """Best per-call time; each sample loops long enough to be measurable."""
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels not built; only the pure-Python backend is available", file=sys.stderr)
    rows = []
    for name, make in WORKLOADS.items():
        py = make(_kernels_py)
        t_py = best_time(py, args.repeat)
        row = {"workload": name, "python_s": t_py, "cython_s": None, "speedup": None}
        if _kernels_c is not None:
            c = make(_kernels_c)
            if c() != py():
                print(f"{name}: backends disagree", file=sys.stderr)
                return 1
            t_c = best_time(c, args.repeat)
            row.update(cython_s=t_c, speedup=t_py / t_c if t_c else None)
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'workload':<14}{'python (ms)':>13}{'cython (ms)':>13}{'speedup':>10}")
        for r in rows:
            c = f"{1000 * r['cython_s']:.3f}" if r["cython_s"] is not None else "-"
            s = f"{r['speedup']:.1f}x" if r["speedup"] else "-"
            print(f"{r['workload']:<14}{1000 * r['python_s']:>13.3f}{c:>13}{s:>10}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
