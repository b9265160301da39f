"""Rank-2 lattices in an imaginary quadratic field.

A :class:`Lattice2` is ``Z*w1 + Z*w2`` with ``w1, w2`` in K = Q(sqrt(-D)).
Bases are kept positively oriented: the coordinate matrix of ``(w1, w2)`` in
the Q-basis ``(1, sqrt(-D))`` has positive determinant, so every
multiplication map between lattices has a positive-determinant rational
representation.

Hermite normal forms use rows as basis vectors: ``[[a, b], [0, d]]`` with
``a, d > 0`` and ``0 <= b < d`` is the lattice spanned by ``a*w1 + b*w2`` and
``d*w2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import kernels
from .exactnum import QuadInt

__all__ = [
    "IntMatrix2",
    "Lattice2",
    "HomLattice",
    "NotASublattice",
    "DegenerateLattice",
    "det2",
    "matmul2",
    "smith_form",
    "smith_decomposition",
    "hermite_rows",
    "lattice_index",
    "enumerate_sublattices",
    "hom_lattice",
    "enumerate_by_degree",
]

IntMatrix2 = tuple[tuple[int, int], tuple[int, int]]
RatVec = tuple[Fraction, Fraction]


class NotASublattice(ValueError):
    pass


class DegenerateLattice(ValueError):
    """Basis vectors are linearly dependent over Q."""


def det2(m: Sequence[Sequence]) -> int | Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul2(x: Sequence[Sequence], y: Sequence[Sequence]) -> tuple:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_decomposition(m: Sequence[Sequence[int]]) -> tuple[IntMatrix2, IntMatrix2, IntMatrix2]:
    """Return ``(U, S, V)`` with ``U*M*V == S`` diagonal, ``U, V`` unimodular, ``S[0][0] | S[1][1]``."""
    a = [[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def row_op(i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # rows (i, j) <- (s*ri + t*rj, u*ri + v*rj), s*v - t*u = 1
        for mat in (a, U):
            ri, rj = mat[i][:], mat[j][:]
            mat[i] = [s * x + t * y for x, y in zip(ri, rj)]
            mat[j] = [u * x + v * y for x, y in zip(ri, rj)]

    def col_op(i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        for mat in (a, V):
            ci = [mat[0][i], mat[1][i]]
            cj = [mat[0][j], mat[1][j]]
            for r in range(2):
                mat[r][i] = s * ci[r] + t * cj[r]
                mat[r][j] = u * ci[r] + v * cj[r]

    while True:
        # each pass either clears an entry or strictly shrinks |a[0][0]|
        if a[1][0] != 0:
            if a[0][0] != 0 and a[1][0] % a[0][0] == 0:
                row_op(0, 1, 1, 0, -(a[1][0] // a[0][0]), 1)
            else:
                g, s, t = _xgcd(a[0][0], a[1][0])
                row_op(0, 1, s, t, -a[1][0] // g, a[0][0] // g)
        if a[0][1] != 0:
            if a[0][0] != 0 and a[0][1] % a[0][0] == 0:
                col_op(0, 1, 1, 0, -(a[0][1] // a[0][0]), 1)
            else:
                g, s, t = _xgcd(a[0][0], a[0][1])
                col_op(0, 1, s, t, -a[0][1] // g, a[0][0] // g)
        if a[1][0] == 0 and a[0][1] == 0:
            if a[0][0] == 0 or a[1][1] % a[0][0] == 0:
                break
            # fold the second diagonal entry into the first row
            row_op(0, 1, 1, 1, 0, 1)
    if a[0][0] == 0 and a[1][1] != 0:
        col_op(0, 1, 0, 1, 1, 0)
        row_op(0, 1, 0, 1, 1, 0)
    for i in range(2):
        if a[i][i] < 0:
            for c in range(2):
                U[i][c] = -U[i][c]
            a[i][i] = -a[i][i]
    return (
        (tuple(U[0]), tuple(U[1])),
        ((a[0][0], a[0][1]), (a[1][0], a[1][1])),
        (tuple(V[0]), tuple(V[1])),
    )


def smith_form(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Invariant factors ``(d1, d2)`` of a 2x2 integer matrix."""
    _, s, _ = smith_decomposition(m)
    return s[0][0], s[1][1]


def hermite_rows(vectors: Iterable[Sequence[int]]) -> IntMatrix2:
    """Row-style HNF ``[[a, b], [0, d]]`` of the rank-2 lattice spanned by integer vectors."""
    rows = [(int(x), int(y)) for x, y in vectors]
    pivot: tuple[int, int] | None = None
    rest: list[int] = []
    for x, y in rows:
        if x == 0:
            rest.append(y)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, s, t = _xgcd(px, x)
        pivot = (g, s * py + t * y)
        # the complementary combination has zero first coordinate
        rest.append((-x // g) * py + (px // g) * y)
    d = 0
    for y in rest:
        d = gcd(d, y)
    if pivot is None or d == 0:
        raise DegenerateLattice("vectors do not span a rank-2 lattice")
    a, b = pivot
    if a < 0:
        a, b = -a, -b
    return ((a, b % d), (0, d))


def _hermite_rational(vectors: Sequence[RatVec]) -> tuple[RatVec, RatVec]:
    den = 1
    for v in vectors:
        for t in v:
            den = lcm(den, Fraction(t).denominator)
    h = hermite_rows([(int(x * den), int(y * den)) for x, y in vectors])
    return (
        (Fraction(h[0][0], den), Fraction(h[0][1], den)),
        (Fraction(0), Fraction(h[1][1], den)),
    )


def _solve2(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> RatVec:
    """Solve ``m @ x == v`` for ``x`` (2x2 rational, nonsingular)."""
    det = det2(m)
    return (
        Fraction(m[1][1] * v[0] - m[0][1] * v[1]) / det,
        Fraction(m[0][0] * v[1] - m[1][0] * v[0]) / det,
    )


@dataclass(frozen=True)
class Lattice2:
    """A positively oriented Z-basis ``(w1, w2)`` of a lattice in K."""

    w1: QuadInt
    w2: QuadInt

    def __post_init__(self) -> None:
        if self.w1.D != self.w2.D:
            raise ValueError("basis vectors live in different fields")
        det = self.orientation_det()
        if det == 0:
            raise DegenerateLattice(f"basis {self.w1}, {self.w2} is linearly dependent")
        if det < 0:
            raise ValueError("basis is negatively oriented; use Lattice2.oriented")

    @classmethod
    def oriented(cls, w1: QuadInt, w2: QuadInt) -> Lattice2:
        """Build a lattice, negating ``w2`` if needed to fix the orientation."""
        det = w1.a * w2.b - w2.a * w1.b
        if det == 0:
            raise DegenerateLattice(f"basis {w1}, {w2} is linearly dependent")
        return cls(w1, -w2 if det < 0 else w2)

    @classmethod
    def from_coords(cls, D: int, v1: Sequence, v2: Sequence) -> Lattice2:
        return cls.oriented(QuadInt(v1[0], v1[1], D), QuadInt(v2[0], v2[1], D))

    @classmethod
    def standard(cls, D: int) -> Lattice2:
        """``Z + Z*sqrt(-D)``."""
        return cls(QuadInt(1, 0, D), QuadInt(0, 1, D))

    @property
    def D(self) -> int:
        return self.w1.D

    @property
    def basis(self) -> tuple[QuadInt, QuadInt]:
        return (self.w1, self.w2)

    def orientation_det(self) -> Fraction:
        return self.w1.a * self.w2.b - self.w2.a * self.w1.b

    def covolume(self) -> Fraction:
        """Coordinate determinant in the basis ``(1, sqrt(-D))`` (any fixed scale works for ratios)."""
        return self.orientation_det()

    def _basis_matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.w1.a, self.w2.a), (self.w1.b, self.w2.b))

    def coords(self, z: QuadInt) -> RatVec:
        """Coordinates of ``z`` in the basis ``(w1, w2)``."""
        if z.D != self.D:
            raise ValueError("element from a different field")
        return _solve2(self._basis_matrix(), (z.a, z.b))

    def contains(self, z: QuadInt) -> bool:
        x, y = self.coords(z)
        return x.denominator == 1 and y.denominator == 1

    def contains_lattice(self, other: Lattice2) -> bool:
        return self.contains(other.w1) and self.contains(other.w2)

    def same_lattice(self, other: Lattice2) -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)

    def scaled(self, lam: QuadInt) -> Lattice2:
        """``lam * L`` (orientation is preserved since multiplication has determinant N(lam))."""
        if not lam:
            raise DegenerateLattice("cannot scale a lattice by zero")
        return Lattice2(lam * self.w1, lam * self.w2)

    def element(self, x: int, y: int) -> QuadInt:
        return self.w1 * x + self.w2 * y

    def sublattice(self, hnf: Sequence[Sequence[int]]) -> Lattice2:
        """Sublattice whose basis rows are given in this lattice's coordinates."""
        (a, b), (c, d) = hnf
        return Lattice2.oriented(self.element(a, b), self.element(c, d))

    def superlattice(self, vectors: Iterable[RatVec]) -> Lattice2:
        """Lattice spanned by this one and extra vectors given in its rational coordinates.

        The result's basis is the rational row-HNF relative to ``(w1, w2)``.
        """
        gens: list[RatVec] = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
        gens += [(Fraction(x), Fraction(y)) for x, y in vectors]
        (a, b), (_, d) = _hermite_rational(gens)
        return Lattice2(self.w1 * a + self.w2 * b, self.w2 * d)

    def hnf_in(self, sup: Lattice2) -> IntMatrix2:
        """Row-HNF of this lattice in the coordinates of a superlattice."""
        vecs = []
        for w in self.basis:
            x, y = sup.coords(w)
            if x.denominator != 1 or y.denominator != 1:
                raise NotASublattice("lattice is not contained in the given superlattice")
            vecs.append((int(x), int(y)))
        return hermite_rows(vecs)

    def canonical(self) -> Lattice2:
        """Same lattice with basis in rational row-HNF relative to ``(1, sqrt(-D))``."""
        (a, b), (_, d) = _hermite_rational([self.w1.coords(), self.w2.coords()])
        return Lattice2(QuadInt(a, b, self.D), QuadInt(0, d, self.D))


def coordinate_matrix(sub: Lattice2, sup: Lattice2) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Columns are the coordinates of ``sub``'s basis vectors in ``sup``'s basis."""
    c1 = sup.coords(sub.w1)
    c2 = sup.coords(sub.w2)
    return ((c1[0], c2[0]), (c1[1], c2[1]))


def lattice_index(sub: Lattice2, sup: Lattice2) -> int:
    """``[sup : sub]``; raises :class:`NotASublattice` unless ``sub`` is contained in ``sup``."""
    t = coordinate_matrix(sub, sup)
    if any(v.denominator != 1 for row in t for v in row):
        raise NotASublattice(f"{sub} is not contained in {sup}")
    return abs(int(det2(t)))


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def enumerate_sublattices(L: Lattice2, d: int) -> list[Lattice2]:
    """All index-``d`` sublattices of ``L``, in lexicographic order of their HNF ``(a, b, d)``.

    There are exactly sigma(d) of them.
    """
    if d < 1:
        raise ValueError("index must be positive")
    out = []
    for a in _divisors(d):
        e = d // a
        for b in range(e):
            out.append(L.sublattice(((a, b), (0, e))))
    return out


def sublattice_hnfs(d: int) -> list[IntMatrix2]:
    """The HNF matrices matching :func:`enumerate_sublattices`, same order."""
    return [((a, b), (0, d // a)) for a in _divisors(d) for b in range(d // a)]


@dataclass(frozen=True)
class HomLattice:
    """``{lam in K : lam * source ⊆ target}`` with its Z-basis ``generators``."""

    generators: tuple[QuadInt, ...]
    source: Lattice2
    target: Lattice2

    @property
    def rank(self) -> int:
        return len(self.generators)

    def element(self, x: int, y: int) -> QuadInt:
        mu1, mu2 = self.generators
        return mu1 * x + mu2 * y

    def contains(self, lam: QuadInt) -> bool:
        if not lam:
            return True
        return self.target.contains_lattice(self.source.scaled(lam))

    def degree(self, lam: QuadInt) -> int:
        """Degree of the isogeny ``source -> target`` induced by ``lam`` (0 for lam = 0)."""
        if not lam:
            return 0
        return lattice_index(self.source.scaled(lam), self.target)

    def degree_form(self) -> tuple[int, int, int]:
        """Integer coefficients ``(a, b, c)`` of ``deg(x*mu1 + y*mu2) = a x^2 + b xy + c y^2``."""
        mu1, mu2 = self.generators
        a = self.degree(mu1)
        c = self.degree(mu2)
        b = self.degree(mu1 + mu2) - a - c
        return a, b, c

    def coords(self, lam: QuadInt) -> RatVec:
        mu1, mu2 = self.generators
        m = ((mu1.a, mu2.a), (mu1.b, mu2.b))
        return _solve2(m, (lam.a, lam.b))


def hom_lattice(A: Lattice2, B: Lattice2) -> HomLattice:
    """Z-basis of ``{lam : lam*A ⊆ B}`` in rational row-HNF over ``(1, sqrt(-D))``."""
    if A.D != B.D:
        raise ValueError("lattices live in different fields")
    D = A.D
    # lam = x + y*sqrt(-D); lam*w = (x p - D y q) + (x q + y p) sqrt(-D) for w = p + q sqrt(-D)
    bm = B._basis_matrix()
    det = det2(bm)
    functionals: list[RatVec] = []
    for w in A.basis:
        p, q = w.a, w.b
        re_coef = (p, -D * q)
        im_coef = (q, p)
        # coordinates in B: inverse(bm) @ (re, im)
        for row in ((bm[1][1], -bm[0][1]), (-bm[1][0], bm[0][0])):
            functionals.append(
                (
                    (row[0] * re_coef[0] + row[1] * im_coef[0]) / det,
                    (row[0] * re_coef[1] + row[1] * im_coef[1]) / det,
                )
            )
    # the Hom set is the dual of the row lattice of these functionals
    (r11, r12), (r21, r22) = _hermite_rational(functionals)
    rdet = r11 * r22 - r12 * r21
    # columns of the inverse of [[r11, r12], [r21, r22]]
    v1 = (r22 / rdet, -r21 / rdet)
    v2 = (-r12 / rdet, r11 / rdet)
    (a, b), (_, d) = _hermite_rational([v1, v2])
    gens = (QuadInt(a, b, D), QuadInt(0, d, D))
    return HomLattice(gens, A, B)


def _canonical_key(p: tuple[int, int]) -> tuple[int, int, int, int]:
    x, y = p
    return (abs(x) + abs(y), abs(y), -x, -y)


def enumerate_by_degree(H: HomLattice, n: int) -> list[QuadInt]:
    """Every ``lam`` in ``H`` inducing an isogeny of degree exactly ``n``.

    Ordered by coordinates in ``H.generators``: small coefficients first, and
    positive before negative (so ``1`` precedes ``-1``).
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0 or H.rank == 0:
        return [QuadInt(0, 0, H.source.D)] if n == 0 else []
    a, b, c = H.degree_form()
    pts = sorted(kernels.represent(a, b, c, n), key=_canonical_key)
    return [H.element(x, y) for x, y in pts]
