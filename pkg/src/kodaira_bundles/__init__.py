"""Existence of vector bundles with given Chern classes on primary Kodaira surfaces.

Exact lattice models of CM elliptic curves, the invariants ``Delta`` and
``m(r, c1)``, construction plans with witnesses, and an independent verifier.
"""

from __future__ import annotations

from ._version import __version__
from .constructor import ConstructionError, NegativeDiscriminant, build_plan
from .curves import CurveModel, Isogeny, TorsionMatrix
from .exactnum import QuadInt, Rational
from .kodaira import ChernInstance, InvariantReport, KodairaSurface, NSClass, Region, invariants, m_bound
from .lattice import Lattice2
from .plan import ConstructionPlan
from .verifier import VerificationReport, verify_plan

__all__ = [
    "__version__",
    "QuadInt",
    "Rational",
    "Lattice2",
    "CurveModel",
    "Isogeny",
    "TorsionMatrix",
    "KodairaSurface",
    "NSClass",
    "ChernInstance",
    "InvariantReport",
    "Region",
    "invariants",
    "m_bound",
    "ConstructionPlan",
    "ConstructionError",
    "NegativeDiscriminant",
    "build_plan",
    "VerificationReport",
    "verify_plan",
]
