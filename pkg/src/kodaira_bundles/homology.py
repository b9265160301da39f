"""Homological degree formula and intersections on a product of two elliptic curves.

On ``B x F`` the Néron–Severi lattice is spanned by ``e_B = [B x pt]``,
``e_F = [pt x F]`` and the primitive parts ``gamma(lam)`` of graphs of
homomorphisms ``lam: B -> F``, with

    (a, b, lam) . (a', b', lam') = a b' + a' b - <lam, lam'>,
    <lam, mu> = deg(lam + mu) - deg(lam) - deg(mu).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curves import CurveModel, Isogeny, compose, dual_isogeny, isogeny_degree
from .exactnum import QuadInt

__all__ = [
    "PushforwardMatrix",
    "ProductSurfaceClass",
    "NonIntegralDegree",
    "MAX_GENUS",
    "covering_degree",
    "hom_degree",
    "hom_pairing",
    "product_intersection",
    "theta",
    "graph_class",
    "fiber_class",
    "split_degree_check",
]

MAX_GENUS = 4


class NonIntegralDegree(ValueError):
    pass


@dataclass(frozen=True)
class PushforwardMatrix:
    """Matrix of ``gamma_*: H_1(C) -> H_1(E)``; columns ``alpha_1..alpha_g, beta_1..beta_g``."""

    entries: tuple[tuple[int, ...], tuple[int, ...]]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(rows) != 2 or len(rows[0]) != len(rows[1]) or len(rows[0]) % 2:
            raise ValueError("push-forward matrix must be 2 x 2g")
        g = len(rows[0]) // 2
        if not 1 <= g <= MAX_GENUS:
            raise ValueError(f"genus must be between 1 and {MAX_GENUS}")
        object.__setattr__(self, "entries", rows)

    @property
    def genus(self) -> int:
        return len(self.entries[0]) // 2


def covering_degree(P: PushforwardMatrix | Sequence[Sequence[int]]) -> int:
    """Degree of a covering of an elliptic curve: the sum of the (alpha_i, beta_i) minors."""
    if not isinstance(P, PushforwardMatrix):
        P = PushforwardMatrix(tuple(tuple(row) for row in P))
    g = P.genus
    (top, bottom) = P.entries
    return sum(top[i] * bottom[g + i] - top[g + i] * bottom[i] for i in range(g))


@dataclass(frozen=True)
class ProductSurfaceClass:
    """``a*e_B + b*e_F + gamma(hom)`` on ``B x F``; ``hom`` is a multiplier from B to F."""

    a: int
    b: int
    hom: QuadInt
    base: CurveModel
    fiber: CurveModel

    def __add__(self, other: ProductSurfaceClass) -> ProductSurfaceClass:
        _check_same_surface(self, other)
        return ProductSurfaceClass(self.a + other.a, self.b + other.b, self.hom + other.hom, self.base, self.fiber)

    def __neg__(self) -> ProductSurfaceClass:
        return ProductSurfaceClass(-self.a, -self.b, -self.hom, self.base, self.fiber)

    def __sub__(self, other: ProductSurfaceClass) -> ProductSurfaceClass:
        return self + (-other)

    def scaled(self, k: int) -> ProductSurfaceClass:
        return ProductSurfaceClass(k * self.a, k * self.b, self.hom * k, self.base, self.fiber)

    def __mul__(self, other: ProductSurfaceClass) -> int:
        return product_intersection(self, other)


def _check_same_surface(x: ProductSurfaceClass, y: ProductSurfaceClass) -> None:
    if x.base != y.base or x.fiber != y.fiber:
        raise ValueError("classes live on different product surfaces")


def hom_degree(lam: QuadInt, source: CurveModel, target: CurveModel) -> int:
    if not lam:
        return 0
    return isogeny_degree(Isogeny(lam, source, target))


def hom_pairing(lam: QuadInt, mu: QuadInt, source: CurveModel, target: CurveModel) -> int:
    return (
        hom_degree(lam + mu, source, target)
        - hom_degree(lam, source, target)
        - hom_degree(mu, source, target)
    )


def product_intersection(x: ProductSurfaceClass, y: ProductSurfaceClass) -> int:
    _check_same_surface(x, y)
    return x.a * y.b + y.a * x.b - hom_pairing(x.hom, y.hom, x.base, x.fiber)


def theta(base: CurveModel, fiber: CurveModel) -> ProductSurfaceClass:
    """The product principal polarization ``B x 0 + 0 x F``."""
    return ProductSurfaceClass(1, 1, QuadInt(0, 0, base.D), base, fiber)


def graph_class(h: Isogeny) -> ProductSurfaceClass:
    """Class of the graph of ``h: B -> F``."""
    return ProductSurfaceClass(1, isogeny_degree(h), h.multiplier, h.source, h.target)


def fiber_class(
    alpha: Isogeny, beta: Isogeny | None, F: CurveModel | None = None
) -> ProductSurfaceClass:
    """Class of a fiber of ``(x, y) -> alpha(x) - beta(y)`` on ``B x F``.

    ``beta=None`` stands for the zero map; then ``F`` must be given.
    """
    B = alpha.source
    if beta is None:
        if F is None:
            raise ValueError("fiber curve required when beta is zero")
        return ProductSurfaceClass(0, isogeny_degree(alpha), QuadInt(0, 0, B.D), B, F)
    if beta.target != alpha.target:
        raise ValueError("alpha and beta must have the same target")
    mu = compose(dual_isogeny(beta), alpha)
    return ProductSurfaceClass(
        isogeny_degree(beta), isogeny_degree(alpha), -mu.multiplier, B, beta.source
    )


def split_degree_check(c1: Isogeny, delta: Isogeny, r: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``r*deg(c∘j_C) = deg(c∘f^*) + deg(c∘g^*)`` via the product-surface oracle.

    ``c1 = c∘f^*: B -> E`` and ``delta = c∘g^*: F -> E``.  The left side is
    ``(p^*W_1 . p^*S) / r`` with ``p^*W_1 = r*Theta`` and ``S`` the fiber class;
    the right side is ``deg c1 + deg delta``.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    S = fiber_class(c1, delta)
    if product_intersection(S, S) != 0:
        raise AssertionError("fiber class must have self-intersection 0")
    pullback_w1 = theta(S.base, S.fiber).scaled(r)
    lhs = Fraction(product_intersection(pullback_w1, S), r)
    rhs = Fraction(isogeny_degree(c1) + isogeny_degree(delta))
    if rhs.numerator % r:
        raise NonIntegralDegree(f"deg c1 + deg delta = {rhs} is not divisible by r = {r}")
    return lhs, rhs


def degree_on_curve(c1: Isogeny, delta: Isogeny, r: int) -> int:
    """``deg(c∘j_C)`` extracted from the split-degree identity."""
    lhs, rhs = split_degree_check(c1, delta, r)
    if lhs != rhs:
        raise AssertionError(f"split-degree identity failed: {lhs} != {rhs}")
    return int(rhs) // r


__all__ += ["degree_on_curve"]
