"""Instance builders and independent brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt

from kodaira_bundles.curves import CurveModel
from kodaira_bundles.exactnum import QuadInt
from kodaira_bundles.kodaira import ChernInstance, KodairaSurface, NSClass
from kodaira_bundles.lattice import Lattice2


def q(a, b=0, D=1) -> QuadInt:
    return QuadInt(a, b, D)


def make_instance(D, r, free, c2, torsion=0, n=1, base=None, fiber=None) -> ChernInstance:
    B = CurveModel(base or Lattice2.standard(D), "B")
    E = CurveModel(fiber or Lattice2.standard(D), "E")
    X = KodairaSurface(B, E, n)
    lam = free if isinstance(free, QuadInt) else QuadInt(*free, D)
    return ChernInstance(X, r, NSClass(X, lam, torsion), c2)


def instance_a() -> ChernInstance:
    """D=2, r=2, c1 = 1+sqrt(-2) on B = E = Z[sqrt(-2)], c2 = 0."""
    return make_instance(2, 2, (1, 1), 0)


def instance_b() -> ChernInstance:
    """D=1, r=2, c1 = 1 on B = E = Z[i], c2 = 0."""
    return make_instance(1, 2, (1, 0), 0)


def instance_gcd() -> ChernInstance:
    """D=1, r=4, c1 = 1+i, c2 = 1: R = 10, d = 2."""
    return make_instance(1, 4, (1, 1), 1)


def instance_deformation() -> ChernInstance:
    """D=1, r=2, c1 = 1+i, c2 = 1: R = 4, d = r."""
    return make_instance(1, 2, (1, 1), 1)


def instance_no_diamond() -> ChernInstance:
    """r=6 over Z[sqrt(-2)] where the (k, h) test fires but no diamond exists."""
    return make_instance(2, 6, (3, 1), -9)


# ---------------------------------------------------------------- oracles


def degree_by_norm(lam: QuadInt, source: Lattice2, target: Lattice2) -> Fraction:
    """``N(lam) * covol(source) / covol(target)``; defined for any ``lam`` in K."""
    return lam.norm() * source.covolume() / target.covolume()


def ellipse_box(form: tuple[int, int, int], bound) -> tuple[int, int]:
    """Integer half-widths of the box containing ``{Q(x, y) <= bound}``."""
    a, b, c = form
    disc = 4 * a * c - b * b
    bound = Fraction(bound)
    xr = isqrt(int(4 * c * bound / disc) + 1) + 1
    yr = isqrt(int(4 * a * bound / disc) + 1) + 1
    return xr, yr


def brute_degree_elements(H, n: int) -> set[QuadInt]:
    """Elements of ``H`` of degree ``n`` by a box scan, degrees from norms."""
    if n == 0:
        return {QuadInt(0, 0, H.source.D)}
    form = H.degree_form()
    xr, yr = ellipse_box(form, n)
    out = set()
    for x in range(-xr, xr + 1):
        for y in range(-yr, yr + 1):
            lam = H.element(x, y)
            if lam and degree_by_norm(lam, H.source, H.target) == n:
                out.add(lam)
    return out


def brute_m_bound(r: int, c1: NSClass) -> Fraction:
    """``(1/r) min sum deg(c1/r - mu_i)`` over ``mu_1 + ... + mu_r = c1`` by box search.

    Degrees come from norms in K, not from the degree form; the box is the
    ellipse around ``c1/r`` that every optimal ``mu_i`` must lie in.
    """
    X = c1.surface
    H = X.hom()
    src, tgt = X.base.lattice, X.fiber.lattice
    lam = c1.free
    if not lam:
        return Fraction(0)

    def deg(z: QuadInt) -> Fraction:
        return degree_by_norm(z, src, tgt)

    center = lam / r
    cx, cy = H.coords(center)
    nx, ny = round(cx), round(cy)
    mu0 = H.element(nx, ny)
    incumbent = (r - 1) * deg(center - mu0) + deg(center - (lam - mu0 * (r - 1)))
    xr, yr = ellipse_box(H.degree_form(), incumbent)
    box = [H.element(nx + dx, ny + dy) for dx in range(-xr, xr + 1) for dy in range(-yr, yr + 1)]
    box = [m for m in box if deg(center - m) <= incumbent]
    best = incumbent
    for mus in itertools.combinations_with_replacement(box, r - 1):
        last = lam - sum(mus, QuadInt(0, 0, lam.D))
        total = sum((deg(center - m) for m in mus), Fraction(0)) + deg(center - last)
        best = min(best, total)
    return best / r


def sigma(n: int) -> int:
    return sum(k for k in range(1, n + 1) if n % k == 0)
