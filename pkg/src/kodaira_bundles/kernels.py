"""Dispatch for the enumeration kernels.

The compiled ``_kernels_c`` extension is used when it imported successfully
and the arguments fit comfortably in 64-bit arithmetic; otherwise the
pure-Python implementation runs.  Set ``KODAIRA_BUNDLES_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("KODAIRA_BUNDLES_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels_c  # type: ignore[attr-defined]
except ImportError:
    _kernels_c = None

__all__ = ["BACKEND", "represent", "coset_points", "min_zero_sum", "compiled_available"]

BACKEND = "cython" if _kernels_c is not None else "python"

# |values| below this keep every product in the kernels inside int64
_SAFE = 1 << 28


def compiled_available() -> bool:
    return _kernels_c is not None


def _fits(*vals: int) -> bool:
    return all(-_SAFE < v < _SAFE for v in vals)


def represent(a: int, b: int, c: int, n: int) -> list[tuple[int, int]]:
    if _kernels_c is not None and _fits(a, b, c, n) and _fits(4 * a * n // _SAFE, 4 * a * c):
        return _kernels_c.represent(a, b, c, n)
    return _kernels_py.represent(a, b, c, n)


def coset_points(
    a: int, b: int, c: int, x0: int, y0: int, step: int, bound: int
) -> list[tuple[int, int, int]]:
    if (
        _kernels_c is not None
        and _fits(a, b, c, x0, y0, step, bound)
        and _fits(4 * a * bound // _SAFE, 4 * a * c)
    ):
        return _kernels_c.coset_points(a, b, c, x0, y0, step, bound)
    return _kernels_py.coset_points(a, b, c, x0, y0, step, bound)


def min_zero_sum(
    a: int,
    b: int,
    c: int,
    xs: list[int],
    ys: list[int],
    qs: list[int],
    count: int,
    best: int,
) -> tuple[int, list[int] | None]:
    coords = [abs(v) for v in xs] + [abs(v) for v in ys]
    span = count * (max(coords) if coords else 0) + 1
    if (
        _kernels_c is not None
        and _fits(a, b, c, best, span, count * best // _SAFE)
        and _fits(max(abs(a), abs(b), abs(c)) * span * span // _SAFE)
    ):
        return _kernels_c.min_zero_sum(a, b, c, xs, ys, qs, count, best)
    return _kernels_py.min_zero_sum(a, b, c, xs, ys, qs, count, best)
