"""Elliptic curves with complex multiplication by K, as lattices in K.

An isogeny ``C/L1 -> C/L2`` is ``z -> lam*z`` for a multiplier ``lam`` with
``lam*L1 ⊆ L2``.  The Weil pairing on ``E[r]`` is modelled by the determinant
pairing in the torsion basis ``(w1/r, w2/r)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactnum import QuadInt
from .lattice import (
    IntMatrix2,
    Lattice2,
    NotASublattice,
    coordinate_matrix,
    det2,
    lattice_index,
    matmul2,
    smith_form,
)

__all__ = [
    "CurveModel",
    "Isogeny",
    "TorsionMatrix",
    "WeilType",
    "NotASubgroup",
    "InvalidIsogeny",
    "isogeny_degree",
    "rational_representation",
    "dual_isogeny",
    "compose",
    "torsion_matrix",
    "weil_type",
    "cyclic_isogeny",
    "quotient_curve",
]


class NotASubgroup(ValueError):
    pass


class InvalidIsogeny(ValueError):
    pass


@dataclass(frozen=True)
class CurveModel:
    lattice: Lattice2
    label: str = ""

    @property
    def D(self) -> int:
        return self.lattice.D

    def __eq__(self, other: object) -> bool:
        # labels are cosmetic
        if not isinstance(other, CurveModel):
            return NotImplemented
        return self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.lattice)


@dataclass(frozen=True)
class Isogeny:
    multiplier: QuadInt
    source: CurveModel
    target: CurveModel

    def __post_init__(self) -> None:
        if not self.multiplier:
            raise InvalidIsogeny("isogeny multiplier must be nonzero")
        if not self.target.lattice.contains_lattice(self.source.lattice.scaled(self.multiplier)):
            raise InvalidIsogeny(
                f"multiplier {self.multiplier} does not map {self.source.lattice} into {self.target.lattice}"
            )

    @classmethod
    def identity(cls, E: CurveModel) -> Isogeny:
        return cls(QuadInt(1, 0, E.D), E, E)

    @classmethod
    def multiplication(cls, E: CurveModel, n: int) -> Isogeny:
        return cls(QuadInt(n, 0, E.D), E, E)


def isogeny_degree(phi: Isogeny) -> int:
    return lattice_index(phi.source.lattice.scaled(phi.multiplier), phi.target.lattice)


def rational_representation(phi: Isogeny) -> IntMatrix2:
    """Integer matrix of ``phi_*`` on H_1; columns are images of ``w1, w2``."""
    t = coordinate_matrix(phi.source.lattice.scaled(phi.multiplier), phi.target.lattice)
    return ((int(t[0][0]), int(t[0][1])), (int(t[1][0]), int(t[1][1])))


def compose(outer: Isogeny, inner: Isogeny) -> Isogeny:
    """``outer ∘ inner``."""
    if inner.target != outer.source:
        raise InvalidIsogeny("isogenies are not composable")
    return Isogeny(outer.multiplier * inner.multiplier, inner.source, outer.target)


def dual_isogeny(phi: Isogeny) -> Isogeny:
    """The dual ``target -> source``; both composites are multiplication by ``deg phi``."""
    n = isogeny_degree(phi)
    return Isogeny(phi.multiplier.conjugate() * Fraction(n) / phi.multiplier.norm(), phi.target, phi.source)


@dataclass(frozen=True)
class TorsionMatrix:
    entries: IntMatrix2
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("torsion modulus must be at least 2")
        r = self.modulus
        object.__setattr__(
            self, "entries", tuple(tuple(int(v) % r for v in row) for row in self.entries)
        )

    @classmethod
    def identity(cls, r: int) -> TorsionMatrix:
        return cls(((1, 0), (0, 1)), r)

    def det(self) -> int:
        return det2(self.entries) % self.modulus

    def __matmul__(self, other: TorsionMatrix) -> TorsionMatrix:
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        return TorsionMatrix(matmul2(self.entries, other.entries), self.modulus)

    def scaled(self, k: int) -> TorsionMatrix:
        return TorsionMatrix(tuple(tuple(k * v for v in row) for row in self.entries), self.modulus)

    def is_invertible(self) -> bool:
        return gcd(self.det(), self.modulus) == 1

    def inverse(self) -> TorsionMatrix:
        r = self.modulus
        inv = pow(self.det(), -1, r)
        (a, b), (c, d) = self.entries
        return TorsionMatrix(((d * inv, -b * inv), (-c * inv, a * inv)), r)


def torsion_matrix(phi: Isogeny, r: int) -> TorsionMatrix:
    """Matrix of ``phi[r]`` in the bases ``(w1/r, w2/r)``."""
    return TorsionMatrix(rational_representation(phi), r)


class WeilType(str, enum.Enum):
    ISOMETRY = "Isometry"
    ANTI_ISOMETRY = "AntiIsometry"
    NEITHER = "Neither"


def weil_type(psi: TorsionMatrix) -> WeilType:
    """Classify against the determinant pairing; r = 2 reports AntiIsometry."""
    det = psi.det()
    if det == (-1) % psi.modulus:
        return WeilType.ANTI_ISOMETRY
    if det == 1 % psi.modulus:
        return WeilType.ISOMETRY
    return WeilType.NEITHER


def cyclic_isogeny(E: CurveModel, R: int) -> tuple[CurveModel, Isogeny]:
    """Canonical cyclic isogeny ``F -> E`` of degree ``R``: ``F = Z*w1 + Z*R*w2``."""
    if R < 1:
        raise ValueError("degree must be positive")
    w1, w2 = E.lattice.basis
    F = CurveModel(Lattice2(w1, w2 * R), label=f"F_{R}")
    delta = Isogeny(QuadInt(1, 0, E.D), F, E)
    assert smith_form(rational_representation(delta)) == (1, R)
    return F, delta


def quotient_curve(
    B: CurveModel, generators: Sequence[Sequence[Fraction]], n: int
) -> tuple[CurveModel, Isogeny]:
    """Quotient of ``B`` by the subgroup of ``B[n]`` generated by rational coordinate pairs.

    Each generator ``(x, y)`` is the point ``x*w1 + y*w2`` with ``n*x, n*y`` integers.
    """
    if n < 1:
        raise ValueError("n must be positive")
    gens = []
    for g in generators:
        x, y = Fraction(g[0]), Fraction(g[1])
        if (x * n).denominator != 1 or (y * n).denominator != 1:
            raise NotASubgroup(f"({x}, {y}) is not an {n}-torsion point")
        gens.append((x, y))
    E1 = CurveModel(B.lattice.superlattice(gens), label=f"{B.label}/G" if B.label else "")
    u = Isogeny(QuadInt(1, 0, B.D), B, E1)
    return E1, u
