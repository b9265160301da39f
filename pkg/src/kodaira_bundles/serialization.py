"""JSON encoding of instances and construction plans.

Rationals are ``{"num": str, "den": str}``, field elements ``{"a": rat, "b": rat}``,
lattices a pair of coordinate pairs over ``(1, sqrt(-D))`` and plan nodes a
tagged union on ``"type"``.  Output is canonical: sorted keys, fixed
indentation, UTF-8, so equal values give equal bytes.

Two error classes are raised while decoding, both carrying a JSON path:
:class:`SchemaError` for structurally malformed input and
:class:`WitnessError` for well-formed data that violates a mathematical
invariant (a dependent basis, a multiplier that does not map one lattice
into another, ...).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable

from ._version import __version__
from .curves import CurveModel, Isogeny, TorsionMatrix
from .exactnum import QuadInt
from .kodaira import ChernInstance, KodairaSurface, NSClass
from .lattice import Lattice2
from .plan import (
    ConstructionPlan,
    DeformationCase,
    DiamondConfig,
    DiamondSum,
    GcdReduce,
    IrreducibleGenus2,
    PlanNode,
    TorsionTwist,
)

__all__ = [
    "SCHEMA_VERSION",
    "DecodeError",
    "SchemaError",
    "WitnessError",
    "dumps",
    "encode_rational",
    "instance_to_json",
    "instance_from_json",
    "plan_to_json",
    "plan_from_json",
    "dump_instance",
    "load_instance",
    "dump_plan",
    "load_plan",
]

SCHEMA_VERSION = 1


class DecodeError(ValueError):
    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class SchemaError(DecodeError):
    """Structurally malformed input (wrong JSON shape or types)."""


class WitnessError(DecodeError):
    """Well-formed input whose values violate an invariant."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- encoding


def encode_rational(x: Fraction | int) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _quad(z: QuadInt) -> dict[str, Any]:
    return {"a": encode_rational(z.a), "b": encode_rational(z.b)}


def _lattice(L: Lattice2) -> list[list[dict[str, str]]]:
    return [[encode_rational(t) for t in w.coords()] for w in L.basis]


def _curve(E: CurveModel) -> dict[str, Any]:
    return {"label": E.label, "lattice": _lattice(E.lattice)}


def _isogeny(phi: Isogeny) -> dict[str, Any]:
    return {"multiplier": _quad(phi.multiplier), "source": _curve(phi.source), "target": _curve(phi.target)}


def _torsion(t: TorsionMatrix) -> dict[str, Any]:
    return {"entries": [list(row) for row in t.entries], "modulus": t.modulus}


def _points(G) -> list[list[dict[str, str]]]:
    return [[encode_rational(t) for t in g] for g in G]


def instance_to_json(inst: ChernInstance) -> dict[str, Any]:
    X = inst.surface
    return {
        "D": X.D,
        "surface": {"base": _curve(X.base), "fiber": _curve(X.fiber), "torsion_order": X.torsion_order},
        "r": inst.r,
        "c1": {"free": _quad(inst.c1.free), "torsion": inst.c1.torsion},
        "c2": inst.c2,
    }


def _node(node: PlanNode) -> dict[str, Any]:
    if isinstance(node, DeformationCase):
        return {"type": "DeformationCase", "r": node.r, "R": node.Rval, "d": node.d, "citation": node.citation}
    if isinstance(node, GcdReduce):
        return {
            "type": "GcdReduce",
            "d": node.d,
            "cover": _curve(node.cover),
            "cover_index_matrix": [list(row) for row in node.cover_index_matrix],
            "reduced": instance_to_json(node.reduced),
            "child": _node(node.child),
        }
    if isinstance(node, TorsionTwist):
        return {
            "type": "TorsionTwist",
            "target": node.target,
            "modulus": node.modulus,
            "twist": node.describe_twist(),
            "child": _node(node.child),
        }
    if isinstance(node, IrreducibleGenus2):
        return {
            "type": "IrreducibleGenus2",
            "F": _curve(node.F),
            "delta": _isogeny(node.delta),
            "psi": _torsion(node.psi),
            "c_on_base": _quad(node.c_on_base),
            "c_on_complement": _quad(node.c_on_complement),
            "deg_delta": node.deg_delta,
            "deg_on_curve": node.deg_on_curve,
            "searched_degrees": list(node.searched_degrees),
        }
    if isinstance(node, DiamondSum):
        dm = node.diamond
        return {
            "type": "DiamondSum",
            "F": _curve(node.F),
            "delta": _isogeny(node.delta),
            "psi": _torsion(node.psi),
            "diamond": {
                "k": dm.k,
                "E1": _curve(dm.E1),
                "E2": _curve(dm.E2),
                "f1": _isogeny(dm.f1),
                "f2": _isogeny(dm.f2),
                "f1p": _isogeny(dm.f1p),
                "f2p": _isogeny(dm.f2p),
                "h": _isogeny(dm.h),
                "G1": _points(dm.G1),
                "G2": _points(dm.G2),
            },
            "cprime": _quad(node.cprime),
            "cdblprime": _quad(node.cdblprime),
            "delta_value": encode_rational(node.delta_value),
        }
    raise TypeError(f"unknown plan node {type(node).__name__}")


def plan_to_json(plan: ConstructionPlan) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "instance": instance_to_json(plan.instance),
        "root": _node(plan.root),
    }


def dump_instance(inst: ChernInstance) -> str:
    return dumps({"schema_version": SCHEMA_VERSION, **instance_to_json(inst)})


def dump_plan(plan: ConstructionPlan) -> str:
    return dumps(plan_to_json(plan))


# ---------------------------------------------------------------- decoding


class _Decoder:
    def __init__(self, witness_errors: type[DecodeError]) -> None:
        self.semantic = witness_errors

    def field(self, obj: Any, key: str, path: str) -> Any:
        if not isinstance(obj, dict):
            raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
        if key not in obj:
            raise SchemaError(path, f"missing field {key!r}")
        return obj[key]

    def build(self, path: str, fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except DecodeError:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise self.semantic(path, str(exc)) from exc

    def int(self, obj: Any, path: str) -> int:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise SchemaError(path, f"expected an integer, got {json.dumps(obj)}")
        return obj

    def int_field(self, obj: Any, key: str, path: str) -> int:
        return self.int(self.field(obj, key, path), f"{path}.{key}")

    def list(self, obj: Any, path: str, length: int | None = None) -> list:
        if not isinstance(obj, list):
            raise SchemaError(path, f"expected an array, got {type(obj).__name__}")
        if length is not None and len(obj) != length:
            raise SchemaError(path, f"expected {length} entries, got {len(obj)}")
        return obj

    def str(self, obj: Any, path: str) -> str:
        if not isinstance(obj, str):
            raise SchemaError(path, "expected a string")
        return obj

    def rat(self, obj: Any, path: str) -> Fraction:
        parts = []
        for key in ("num", "den"):
            s = self.str(self.field(obj, key, path), f"{path}.{key}")
            try:
                parts.append(int(s, 10))
            except ValueError:
                raise SchemaError(f"{path}.{key}", f"not a decimal integer: {s!r}") from None
        if parts[1] == 0:
            raise SchemaError(f"{path}.den", "zero denominator")
        return Fraction(parts[0], parts[1])

    def quad(self, obj: Any, path: str, D: int) -> QuadInt:
        a = self.rat(self.field(obj, "a", path), f"{path}.a")
        b = self.rat(self.field(obj, "b", path), f"{path}.b")
        return self.build(path, lambda: QuadInt(a, b, D))

    def lattice(self, obj: Any, path: str, D: int) -> Lattice2:
        rows = self.list(obj, path, 2)
        coords = []
        for i, row in enumerate(rows):
            pair = self.list(row, f"{path}[{i}]", 2)
            coords.append(tuple(self.rat(t, f"{path}[{i}][{j}]") for j, t in enumerate(pair)))
        return self.build(
            path, lambda: Lattice2(QuadInt(*coords[0], D), QuadInt(*coords[1], D))
        )

    def curve(self, obj: Any, path: str, D: int) -> CurveModel:
        label = self.str(self.field(obj, "label", path), f"{path}.label")
        L = self.lattice(self.field(obj, "lattice", path), f"{path}.lattice", D)
        return CurveModel(L, label)

    def isogeny(self, obj: Any, path: str, D: int) -> Isogeny:
        lam = self.quad(self.field(obj, "multiplier", path), f"{path}.multiplier", D)
        src = self.curve(self.field(obj, "source", path), f"{path}.source", D)
        tgt = self.curve(self.field(obj, "target", path), f"{path}.target", D)
        return self.build(path, lambda: Isogeny(lam, src, tgt))

    def int_matrix(self, obj: Any, path: str) -> tuple[tuple[int, int], tuple[int, int]]:
        rows = self.list(obj, path, 2)
        return tuple(
            tuple(self.int(v, f"{path}[{i}][{j}]") for j, v in enumerate(self.list(row, f"{path}[{i}]", 2)))
            for i, row in enumerate(rows)
        )  # type: ignore[return-value]

    def torsion(self, obj: Any, path: str) -> TorsionMatrix:
        entries = self.int_matrix(self.field(obj, "entries", path), f"{path}.entries")
        modulus = self.int_field(obj, "modulus", path)
        return self.build(path, lambda: TorsionMatrix(entries, modulus))

    def points(self, obj: Any, path: str) -> tuple[tuple[Fraction, Fraction], ...]:
        out = []
        for i, pt in enumerate(self.list(obj, path)):
            pair = self.list(pt, f"{path}[{i}]", 2)
            out.append(tuple(self.rat(t, f"{path}[{i}][{j}]") for j, t in enumerate(pair)))
        return tuple(out)  # type: ignore[return-value]

    def instance(self, obj: Any, path: str) -> ChernInstance:
        D = self.int_field(obj, "D", path)
        if D < 1:
            raise self.semantic(f"{path}.D", f"D must be positive, got {D}")
        self.build(f"{path}.D", lambda: QuadInt(0, 0, D))
        surf_path = f"{path}.surface"
        surf = self.field(obj, "surface", path)
        base = self.curve(self.field(surf, "base", surf_path), f"{surf_path}.base", D)
        fiber = self.curve(self.field(surf, "fiber", surf_path), f"{surf_path}.fiber", D)
        n = self.int_field(surf, "torsion_order", surf_path)
        X = self.build(surf_path, lambda: KodairaSurface(base, fiber, n))
        r = self.int_field(obj, "r", path)
        c1_path = f"{path}.c1"
        c1obj = self.field(obj, "c1", path)
        free = self.quad(self.field(c1obj, "free", c1_path), f"{c1_path}.free", D)
        t = self.int_field(c1obj, "torsion", c1_path)
        if not 0 <= t < n:
            raise self.semantic(f"{c1_path}.torsion", f"torsion residue {t} is not reduced mod {n}")
        c1 = self.build(c1_path, lambda: NSClass(X, free, t))
        c2 = self.int_field(obj, "c2", path)
        return self.build(path, lambda: ChernInstance(X, r, c1, c2))

    def node(self, obj: Any, path: str, D: int) -> PlanNode:
        kind = self.str(self.field(obj, "type", path), f"{path}.type")
        f = lambda key: self.field(obj, key, path)  # noqa: E731
        p = lambda key: f"{path}.{key}"  # noqa: E731
        if kind == "DeformationCase":
            return DeformationCase(
                self.int_field(obj, "r", path),
                self.int_field(obj, "R", path),
                self.int_field(obj, "d", path),
                self.str(f("citation"), p("citation")),
            )
        if kind == "GcdReduce":
            reduced = self.instance(f("reduced"), p("reduced"))
            return GcdReduce(
                self.int_field(obj, "d", path),
                self.curve(f("cover"), p("cover"), D),
                self.int_matrix(f("cover_index_matrix"), p("cover_index_matrix")),
                reduced,
                self.node(f("child"), p("child"), reduced.surface.D),
            )
        if kind == "TorsionTwist":
            self.str(f("twist"), p("twist"))
            return TorsionTwist(
                self.int_field(obj, "target", path),
                self.int_field(obj, "modulus", path),
                self.node(f("child"), p("child"), D),
            )
        if kind == "IrreducibleGenus2":
            searched = tuple(
                self.int(v, f"{p('searched_degrees')}[{i}]")
                for i, v in enumerate(self.list(f("searched_degrees"), p("searched_degrees")))
            )
            return IrreducibleGenus2(
                F=self.curve(f("F"), p("F"), D),
                delta=self.isogeny(f("delta"), p("delta"), D),
                psi=self.torsion(f("psi"), p("psi")),
                c_on_base=self.quad(f("c_on_base"), p("c_on_base"), D),
                c_on_complement=self.quad(f("c_on_complement"), p("c_on_complement"), D),
                deg_delta=self.int_field(obj, "deg_delta", path),
                deg_on_curve=self.int_field(obj, "deg_on_curve", path),
                searched_degrees=searched,
            )
        if kind == "DiamondSum":
            dobj = f("diamond")
            dp = p("diamond")
            g = lambda key: self.field(dobj, key, dp)  # noqa: E731
            q = lambda key: f"{dp}.{key}"  # noqa: E731
            diamond = DiamondConfig(
                k=self.int_field(dobj, "k", dp),
                E1=self.curve(g("E1"), q("E1"), D),
                E2=self.curve(g("E2"), q("E2"), D),
                f1=self.isogeny(g("f1"), q("f1"), D),
                f2=self.isogeny(g("f2"), q("f2"), D),
                f1p=self.isogeny(g("f1p"), q("f1p"), D),
                f2p=self.isogeny(g("f2p"), q("f2p"), D),
                h=self.isogeny(g("h"), q("h"), D),
                G1=self.points(g("G1"), q("G1")),
                G2=self.points(g("G2"), q("G2")),
            )
            return DiamondSum(
                F=self.curve(f("F"), p("F"), D),
                delta=self.isogeny(f("delta"), p("delta"), D),
                psi=self.torsion(f("psi"), p("psi")),
                diamond=diamond,
                cprime=self.quad(f("cprime"), p("cprime"), D),
                cdblprime=self.quad(f("cdblprime"), p("cdblprime"), D),
                delta_value=self.rat(f("delta_value"), p("delta_value")),
            )
        raise SchemaError(f"{path}.type", f"unknown node type {kind!r}")


def _check_schema(obj: Any) -> None:
    v = _Decoder(SchemaError).field(obj, "schema_version", "$")
    if v != SCHEMA_VERSION:
        raise SchemaError("$.schema_version", f"unsupported schema version {json.dumps(v)}")


def instance_from_json(obj: Any, path: str = "$") -> ChernInstance:
    """Decode an instance; every invariant failure is reported as :class:`WitnessError`."""
    return _Decoder(WitnessError).instance(obj, path)


def plan_from_json(obj: Any) -> ConstructionPlan:
    _check_schema(obj)
    dec = _Decoder(WitnessError)
    dec.str(dec.field(obj, "tool_version", "$"), "$.tool_version")
    inst = dec.instance(dec.field(obj, "instance", "$"), "$.instance")
    root = dec.node(dec.field(obj, "root", "$"), "$.root", inst.surface.D)
    return ConstructionPlan(inst, root)


def _parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def load_instance(text: str) -> ChernInstance:
    obj = _parse(text)
    _check_schema(obj)
    return instance_from_json(obj)


def load_plan(text: str) -> ConstructionPlan:
    return plan_from_json(_parse(text))
