# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled versions of the enumeration kernels in ``_kernels_py``.

Arguments are 64-bit integers; the dispatcher in ``kernels`` only routes
calls here when every intermediate value provably fits.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport sqrt

ctypedef long long i64


cdef inline i64 isqrt64(i64 n):
    cdef i64 s
    if n < 0:
        return -1
    s = <i64>sqrt(<double>n)
    while s * s > n:
        s -= 1
    while (s + 1) * (s + 1) <= n:
        s += 1
    return s


cdef inline i64 floordiv(i64 p, i64 q):
    # q > 0
    cdef i64 r = p // q
    return r


cdef inline i64 pymod(i64 p, i64 q):
    cdef i64 r = p % q
    if r < 0:
        r += q
    return r


def represent(i64 a, i64 b, i64 c, i64 n):
    cdef i64 disc = 4 * a * c - b * b
    cdef i64 y, ymax, dx, s, num, two_a = 2 * a
    if a <= 0 or disc <= 0:
        raise ValueError(f"form ({a}, {b}, {c}) is not positive definite")
    if n < 0:
        return []
    if n == 0:
        return [(0, 0)]
    out = []
    ymax = isqrt64(4 * a * n // disc)
    for y in range(-ymax, ymax + 1):
        dx = 4 * a * n - disc * y * y
        if dx < 0:
            continue
        s = isqrt64(dx)
        if s * s != dx:
            continue
        num = -b * y - s
        if pymod(num, two_a) == 0:
            out.append((floordiv(num, two_a), y))
        if s != 0:
            num = -b * y + s
            if pymod(num, two_a) == 0:
                out.append((floordiv(num, two_a), y))
    out.sort()
    return out


def coset_points(i64 a, i64 b, i64 c, i64 x0, i64 y0, i64 step, i64 bound):
    cdef i64 disc = 4 * a * c - b * b
    cdef i64 ymax, y, x, dx, s, lo, hi, q, two_a = 2 * a
    if a <= 0 or disc <= 0:
        raise ValueError(f"form ({a}, {b}, {c}) is not positive definite")
    if bound < 0:
        return []
    out = []
    ymax = isqrt64(4 * a * bound // disc)
    y = -ymax + pymod(y0 + ymax, step)
    while y <= ymax:
        dx = 4 * a * bound - disc * y * y
        if dx >= 0:
            s = isqrt64(dx) + 1
            lo = -((b * y + s) // two_a) - 1
            hi = (-b * y + s) // two_a + 1
            x = lo + pymod(x0 - lo, step)
            while x <= hi:
                q = a * x * x + b * x * y + c * y * y
                if q <= bound:
                    out.append((q, x, y))
                x += step
        y += step
    out.sort()
    return [(t[1], t[2], t[0]) for t in out]


cdef struct Search:
    i64 a, b, c
    i64 *xs
    i64 *ys
    i64 *qs
    int m
    int count
    i64 best
    int *chosen
    int *witness
    int found


cdef void _dfs(Search *st, int start, int depth, i64 sx, i64 sy, i64 total) nogil:
    cdef i64 x, y, q
    cdef int j, k, remaining
    if depth == st.count - 1:
        x = -sx
        y = -sy
        q = st.a * x * x + st.b * x * y + st.c * y * y
        if depth > 0 and q < st.qs[st.chosen[depth - 1]]:
            return
        if total + q < st.best:
            st.best = total + q
            for k in range(depth):
                st.witness[k] = st.chosen[k]
            st.found = 1
        return
    remaining = st.count - depth
    for j in range(start, st.m):
        if total + remaining * st.qs[j] >= st.best:
            break
        st.chosen[depth] = j
        _dfs(st, j, depth + 1, sx + st.xs[j], sy + st.ys[j], total + st.qs[j])


def min_zero_sum(i64 a, i64 b, i64 c, xs, ys, qs, int count, i64 best):
    cdef Search st
    cdef int i, m = len(qs)
    st.a = a
    st.b = b
    st.c = c
    st.m = m
    st.count = count
    st.best = best
    st.found = 0
    st.xs = <i64 *>malloc((m + 1) * sizeof(i64))
    st.ys = <i64 *>malloc((m + 1) * sizeof(i64))
    st.qs = <i64 *>malloc((m + 1) * sizeof(i64))
    st.chosen = <int *>malloc((count + 1) * sizeof(int))
    st.witness = <int *>malloc((count + 1) * sizeof(int))
    if not (st.xs and st.ys and st.qs and st.chosen and st.witness):
        free(st.xs); free(st.ys); free(st.qs); free(st.chosen); free(st.witness)
        raise MemoryError()
    try:
        for i in range(m):
            st.xs[i] = xs[i]
            st.ys[i] = ys[i]
            st.qs[i] = qs[i]
        with nogil:
            _dfs(&st, 0, 0, 0, 0, 0)
        if st.found:
            witness = [st.witness[i] for i in range(count - 1)]
        else:
            witness = None
        return st.best, witness
    finally:
        free(st.xs)
        free(st.ys)
        free(st.qs)
        free(st.chosen)
        free(st.witness)
