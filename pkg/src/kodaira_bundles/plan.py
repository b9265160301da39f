"""Plan node types, shared by the constructor and the verifier."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .curves import CurveModel, Isogeny, TorsionMatrix
from .exactnum import QuadInt
from .kodaira import ChernInstance
from .lattice import IntMatrix2

__all__ = [
    "DeformationCase",
    "GcdReduce",
    "IrreducibleGenus2",
    "DiamondConfig",
    "DiamondSum",
    "TorsionTwist",
    "PlanNode",
    "ConstructionPlan",
    "NODE_TYPES",
]


@dataclass(frozen=True)
class DeformationCase:
    """``d = r``: handled by unramified covers and deformations; not witnessed here."""

    r: int
    Rval: int
    d: int
    citation: str = "d = r: unramified coverings of the base and deformations of sheaves"


@dataclass(frozen=True)
class GcdReduce:
    d: int
    cover: CurveModel
    cover_index_matrix: IntMatrix2
    reduced: ChernInstance
    child: "PlanNode"


@dataclass(frozen=True)
class IrreducibleGenus2:
    F: CurveModel
    delta: Isogeny
    psi: TorsionMatrix
    c_on_base: QuadInt
    c_on_complement: QuadInt
    deg_delta: int
    deg_on_curve: int
    searched_degrees: tuple[int, ...]


@dataclass(frozen=True)
class DiamondConfig:
    k: int
    E1: CurveModel
    E2: CurveModel
    f1: Isogeny
    f2: Isogeny
    f1p: Isogeny
    f2p: Isogeny
    h: Isogeny
    G1: tuple[tuple[Fraction, Fraction], ...]
    G2: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class DiamondSum:
    F: CurveModel
    delta: Isogeny
    psi: TorsionMatrix
    diamond: DiamondConfig
    cprime: QuadInt
    cdblprime: QuadInt
    delta_value: Fraction


@dataclass(frozen=True)
class TorsionTwist:
    """Twist by ``m`` fibers with ``m ≡ target - t0 (mod modulus)``; ``t0`` stays symbolic."""

    target: int
    modulus: int
    child: "PlanNode"

    def describe_twist(self) -> str:
        return f"m ≡ {self.target} - t0 (mod {self.modulus})"


PlanNode = Union[DeformationCase, GcdReduce, IrreducibleGenus2, DiamondSum, TorsionTwist]


@dataclass(frozen=True)
class ConstructionPlan:
    instance: ChernInstance
    root: PlanNode


NODE_TYPES = (DeformationCase, GcdReduce, IrreducibleGenus2, DiamondSum, TorsionTwist)
