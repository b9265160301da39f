"""Néron–Severi classes and bundle invariants on a primary Kodaira surface.

``X -> B`` is a non-trivial principal bundle with fiber ``E``.  Modulo
torsion, ``NS(X)`` is ``Hom(B, E)`` (the dual of ``E`` identified with ``E``),
and the torsion is cyclic of a configured order ``n``, generated by the fiber
class.  A class of ``H^2(X, Z)`` modulo torsion is stored by its four
coordinates on ``H^1(B) ⊗ H^1(E)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import kernels
from .curves import CurveModel, Isogeny, isogeny_degree, rational_representation
from .exactnum import QuadInt
from .homology import degree_on_curve
from .lattice import IntMatrix2, hom_lattice, matmul2

__all__ = [
    "KodairaSurface",
    "NSClass",
    "TopClass",
    "ChernInstance",
    "InvariantReport",
    "Region",
    "BundleInvariants",
    "GenusTwoCovering",
    "DimensionMismatch",
    "InconsistentInvariants",
    "self_intersection",
    "top_self_intersection",
    "to_top_class",
    "pushforward_class",
    "discriminant",
    "invariants",
    "ChernNumbers",
    "chern_numbers",
    "m_bound",
    "pushforward_bundle_invariants",
    "twist_by_fiber",
]


class DimensionMismatch(ValueError):
    pass


class InconsistentInvariants(AssertionError):
    pass


@dataclass(frozen=True)
class KodairaSurface:
    """A topologically non-trivial principal elliptic bundle over ``base`` with fiber ``fiber``."""

    base: CurveModel
    fiber: CurveModel
    torsion_order: int = 1

    def __post_init__(self) -> None:
        if self.base.D != self.fiber.D:
            raise ValueError("base and fiber must have CM by the same field")
        if self.torsion_order < 1:
            raise ValueError("torsion order must be positive")

    @property
    def D(self) -> int:
        return self.base.D

    def hom(self):
        return hom_lattice(self.base.lattice, self.fiber.lattice)


@dataclass(frozen=True)
class NSClass:
    surface: KodairaSurface
    free: QuadInt
    torsion: int = 0

    def __post_init__(self) -> None:
        n = self.surface.torsion_order
        object.__setattr__(self, "torsion", self.torsion % n)
        if self.free.D != self.surface.D:
            raise ValueError("free part lives in the wrong field")
        if self.free:
            scaled = self.surface.base.lattice.scaled(self.free)
            if not self.surface.fiber.lattice.contains_lattice(scaled):
                raise ValueError(f"{self.free} is not in Hom(B, E)")

    def isogeny(self) -> Isogeny:
        return Isogeny(self.free, self.surface.base, self.surface.fiber)

    def degree(self) -> int:
        return isogeny_degree(self.isogeny()) if self.free else 0


@dataclass(frozen=True)
class TopClass:
    """Coordinates ``a11, a21, b11, b21`` on ``H^1(B) ⊗ H^1(E)`` plus a torsion residue."""

    a11: int
    a21: int
    b11: int
    b21: int
    torsion: int = 0
    torsion_order: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", self.torsion % self.torsion_order)

    def matrix(self) -> IntMatrix2:
        return ((self.a11, self.b11), (self.a21, self.b21))

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]], torsion: int = 0, torsion_order: int = 1) -> TopClass:
        return cls(m[0][0], m[1][0], m[0][1], m[1][1], torsion, torsion_order)

    def free_part(self) -> tuple[int, int, int, int]:
        return (self.a11, self.a21, self.b11, self.b21)


class Region(str, enum.Enum):
    NO_BUNDLE = "NoBundle"
    NON_FILTRABLE_ONLY = "NonFiltrableOnly"
    FILTRABLE_RANGE = "FiltrableRange"


@dataclass(frozen=True)
class ChernInstance:
    surface: KodairaSurface
    r: int
    c1: NSClass
    c2: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError("rank must be at least 2")
        if self.c1.surface != self.surface:
            raise ValueError("c1 lives on a different surface")


@dataclass(frozen=True)
class InvariantReport:
    delta: Fraction
    Rval: int
    d: int
    mbound: Fraction
    region: Region
    c1_squared: int = field(default=0)


def self_intersection(c: NSClass) -> int:
    return -2 * c.degree()


def top_self_intersection(c: TopClass) -> int:
    return -2 * (c.a11 * c.b21 - c.b11 * c.a21)


def to_top_class(c: NSClass) -> TopClass:
    n = c.surface.torsion_order
    if not c.free:
        return TopClass(0, 0, 0, 0, c.torsion, n)
    return TopClass.from_matrix(rational_representation(c.isogeny()), c.torsion, n)


def pushforward_class(c: TopClass, pullback: Sequence[Sequence[int]]) -> TopClass:
    """Push a class forward along a covering: compose its matrix with the pull-back ``f^*`` on H_1.

    The fiber class goes to the fiber class, so the torsion residue is carried over.
    """
    if len(pullback) != 2 or any(len(row) != 2 for row in pullback):
        raise DimensionMismatch("pull-back matrix of an elliptic covering must be 2x2")
    m = matmul2(c.matrix(), pullback)
    return TopClass.from_matrix(m, c.torsion, c.torsion_order)


def discriminant(r: int, c1_squared: int | Fraction, c2: int | Fraction) -> Fraction:
    """``(1/r) * (c2 - (r-1)/(2r) * c1^2)``."""
    return Fraction(1, r) * (Fraction(c2) - Fraction(r - 1, 2 * r) * Fraction(c1_squared))


def _coset_minimum(form: tuple[int, int, int], u: int, v: int, r: int) -> int:
    """``min sum Q(w_i)`` over ``w_1..w_r ≡ (u, v) mod r`` with ``sum w_i = 0``."""
    a, b, c = form

    def q(x: int, y: int) -> int:
        return a * x * x + b * x * y + c * y * y

    # incumbent: round c1/r to the nearest lattice point, put the remainder last
    x0, y0 = round(Fraction(u, r)), round(Fraction(v, r))
    w = (u - r * x0, v - r * y0)
    best = (r - 1) * q(*w) + q((r - 1) * w[0], (r - 1) * w[1])
    if best == 0:
        return 0
    # all but the largest point satisfy 2*Q(w_i) <= total < best
    pts = kernels.coset_points(a, b, c, u % r, v % r, r, (best - 1) // 2)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    qs = [p[2] for p in pts]
    best, _ = kernels.min_zero_sum(a, b, c, xs, ys, qs, r, best)
    return best


def m_bound(r: int, c1: NSClass) -> Fraction:
    """Filtrability threshold ``m(r, c1) = (1/r) min sum_i deg(c1/r - mu_i)`` over ``sum mu_i = c1``.

    Torsion is irrelevant (it squares and pairs to zero).  Writing
    ``w_i = c1 - r*mu_i`` turns this into a zero-sum problem on a coset of
    ``r*Hom(B, E)``; the answer is ``min sum deg(w_i) / r^3``.
    """
    if r < 2:
        raise ValueError("rank must be at least 2")
    if not c1.free:
        return Fraction(0)
    H = c1.surface.hom()
    x, y = H.coords(c1.free)
    assert x.denominator == 1 and y.denominator == 1
    total = _coset_minimum(H.degree_form(), int(x), int(y), r)
    return Fraction(total, r**3)


@dataclass(frozen=True)
class ChernNumbers:
    c1_squared: int
    delta: Fraction
    Rval: int
    d: int


def chern_numbers(inst: ChernInstance) -> ChernNumbers:
    """``c1^2``, ``Delta``, ``R = r^2 Delta`` and ``d = gcd(r, R)`` (no m-bound search)."""
    r = inst.r
    c1sq = self_intersection(inst.c1)
    if c1sq % 2:
        raise AssertionError("c1^2 must be even")
    delta = discriminant(r, c1sq, inst.c2)
    R = r * inst.c2 - (r - 1) * (c1sq // 2)
    if Fraction(R) != r * r * delta:
        raise AssertionError("R != r^2 * Delta")
    return ChernNumbers(c1sq, delta, R, gcd(r, R))


def invariants(inst: ChernInstance) -> InvariantReport:
    nums = chern_numbers(inst)
    mb = m_bound(inst.r, inst.c1)
    if nums.delta < 0:
        region = Region.NO_BUNDLE
    elif nums.delta < mb:
        region = Region.NON_FILTRABLE_ONLY
    else:
        region = Region.FILTRABLE_RANGE
    return InvariantReport(nums.delta, nums.Rval, nums.d, mb, region, nums.c1_squared)


@dataclass(frozen=True)
class GenusTwoCovering:
    """A degree-``r`` covering ``C -> B`` with complementary ``C -> F``, and a class on ``J_C``.

    The class ``c: J_C -> E`` is recorded by its restrictions ``c∘f^*`` (on B)
    and ``c∘g^*`` (on F, ``None`` for the zero map).
    """

    r: int
    c_on_base: Isogeny
    c_on_complement: Isogeny | None
    torsion_order: int = 1


@dataclass(frozen=True)
class BundleInvariants:
    rank: int
    c1: TopClass
    delta: Fraction
    degenerate: bool = False


def pushforward_bundle_invariants(cov: GenusTwoCovering) -> BundleInvariants:
    """Rank, ``c1`` and ``Delta`` of ``phi_* L``, computed two ways that must agree.

    Route one: ``2 r^2 Delta = c1^2 - r c^2`` with ``c^2 = -2 deg(c∘j_C)`` and
    ``deg(c∘j_C)`` taken from the product-surface identity.  Route two:
    ``r^2 Delta = deg(c∘g^*)``.
    """
    r = cov.r
    c1 = TopClass.from_matrix(rational_representation(cov.c_on_base), 0, cov.torsion_order)
    if cov.c_on_complement is None:
        return BundleInvariants(r, c1, Fraction(0), degenerate=True)
    c1sq = -2 * isogeny_degree(cov.c_on_base)
    csq = -2 * degree_on_curve(cov.c_on_base, cov.c_on_complement, r)
    via_intersections = Fraction(c1sq - r * csq, 2 * r * r)
    via_complement = Fraction(isogeny_degree(cov.c_on_complement), r * r)
    if via_intersections != via_complement:
        raise InconsistentInvariants(f"Delta mismatch: {via_intersections} != {via_complement}")
    return BundleInvariants(r, c1, via_intersections, degenerate=via_complement == 0)


def twist_by_fiber(c1: TopClass, m: int) -> TopClass:
    """Add ``m`` times the fiber class; only the torsion residue moves."""
    return replace(c1, torsion=(c1.torsion + m) % c1.torsion_order)
