"""Pure-Python versions of the hot enumeration kernels.

All three routines work with a positive-definite integral binary quadratic
form ``Q(x, y) = a*x^2 + b*x*y + c*y^2`` (``4ac - b^2 > 0``).  The compiled
module ``_kernels_c`` mirrors these signatures exactly.
"""

from __future__ import annotations

from math import isqrt


def _disc(a: int, b: int, c: int) -> int:
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise ValueError(f"form ({a}, {b}, {c}) is not positive definite")
    return disc


def represent(a: int, b: int, c: int, n: int) -> list[tuple[int, int]]:
    """All integer ``(x, y)`` with ``Q(x, y) == n``, sorted."""
    disc = _disc(a, b, c)
    if n < 0:
        return []
    if n == 0:
        return [(0, 0)]
    out = []
    ymax = isqrt(4 * a * n // disc)
    two_a = 2 * a
    for y in range(-ymax, ymax + 1):
        dx = 4 * a * n - disc * y * y
        if dx < 0:
            continue
        s = isqrt(dx)
        if s * s != dx:
            continue
        for num in {-b * y - s, -b * y + s}:
            if num % two_a == 0:
                out.append((num // two_a, y))
    out.sort()
    return out


def coset_points(
    a: int, b: int, c: int, x0: int, y0: int, step: int, bound: int
) -> list[tuple[int, int, int]]:
    """Points ``(x, y)`` congruent to ``(x0, y0)`` mod ``step`` with ``Q <= bound``.

    Returns ``(x, y, Q(x, y))`` triples sorted by ``(Q, x, y)``.
    """
    disc = _disc(a, b, c)
    if bound < 0:
        return []
    out = []
    ymax = isqrt(4 * a * bound // disc)
    y = -ymax + ((y0 + ymax) % step)
    two_a = 2 * a
    while y <= ymax:
        dx = 4 * a * bound - disc * y * y
        if dx >= 0:
            s = isqrt(dx) + 1
            lo = -((b * y + s) // two_a) - 1
            hi = (-b * y + s) // two_a + 1
            x = lo + ((x0 - lo) % step)
            while x <= hi:
                q = a * x * x + b * x * y + c * y * y
                if q <= bound:
                    out.append((q, x, y))
                x += step
        y += step
    out.sort()
    return [(x, y, q) for q, x, y in out]


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
    """Minimise ``sum Q(w_i)`` over ``count`` points summing to zero.

    The first ``count - 1`` points are drawn (with repetition) from the
    candidate list, which must be sorted by ``qs``; the last point is forced to
    ``-sum`` and must carry the largest value.  Only totals strictly below
    ``best`` are accepted.  Returns ``(best, witness_indices)``; the witness is
    ``None`` if nothing beat the starting ``best``.
    """
    m = len(qs)
    chosen: list[int] = []
    witness: list[int] | None = None

    def dfs(start: int, depth: int, sx: int, sy: int, total: int) -> None:
        nonlocal best, witness
        if depth == count - 1:
            x, y = -sx, -sy
            q = a * x * x + b * x * y + c * y * y
            if depth and q < qs[chosen[-1]]:
                return
            if total + q < best:
                best = total + q
                witness = list(chosen)
            return
        remaining = count - depth
        for j in range(start, m):
            if total + remaining * qs[j] >= best:
                break
            chosen.append(j)
            dfs(j, depth + 1, sx + xs[j], sy + ys[j], total + qs[j])
            chosen.pop()

    dfs(0, 0, 0, 0, 0)
    return best, witness
