"""Independent re-verification of construction plans.

Only the arithmetic layers (lattices, curves, homology, Kodaira classes) are
used here; nothing from the constructor.  Every witness in a plan is either
recomputed and compared or checked for its canonical form, and each check
records both sides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any

from .curves import (
    CurveModel,
    Isogeny,
    InvalidIsogeny,
    TorsionMatrix,
    WeilType,
    dual_isogeny,
    isogeny_degree,
    quotient_curve,
    rational_representation,
    torsion_matrix,
    weil_type,
)
from .exactnum import QuadInt
from .homology import product_intersection, split_degree_check, theta
from .kodaira import (
    ChernInstance,
    GenusTwoCovering,
    chern_numbers,
    discriminant,
    pushforward_bundle_invariants,
    pushforward_class,
    to_top_class,
    top_self_intersection,
    twist_by_fiber,
)
from .lattice import Lattice2, enumerate_by_degree, hom_lattice, lattice_index, smith_form
from .plan import (
    ConstructionPlan,
    DeformationCase,
    DiamondSum,
    GcdReduce,
    IrreducibleGenus2,
    PlanNode,
    TorsionTwist,
)

__all__ = ["Check", "VerificationReport", "verify_plan"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: Any = None
    rhs: Any = None


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


class _Checker:
    def __init__(self) -> None:
        self.report = VerificationReport()

    def eq(self, name: str, lhs: Any, rhs: Any) -> bool:
        ok = lhs == rhs
        self.report.checks.append(Check(name, ok, lhs, rhs))
        return ok

    def true(self, name: str, cond: bool, lhs: Any = None, rhs: Any = None) -> bool:
        self.report.checks.append(Check(name, bool(cond), lhs, rhs))
        return bool(cond)

    def guarded(self, name: str, fn) -> Any:
        """Run ``fn``; a raised arithmetic error becomes a failed check."""
        try:
            return fn()
        except (ValueError, ArithmeticError, AssertionError) as exc:
            self.true(name, False, type(exc).__name__, str(exc))
            return None


def _deg(lam: QuadInt, source: CurveModel, target: CurveModel) -> int:
    return 0 if not lam else isogeny_degree(Isogeny(lam, source, target))


def _in_hom(lam: QuadInt, source: CurveModel, target: CurveModel) -> bool:
    return not lam or target.lattice.contains_lattice(source.lattice.scaled(lam))


def _verify_deformation(ck: _Checker, p: str, node: DeformationCase, inst: ChernInstance) -> None:
    nums = chern_numbers(inst)
    ck.true(f"{p}.delta_nonnegative", nums.delta >= 0, nums.delta, 0)
    ck.eq(f"{p}.r", node.r, inst.r)
    ck.eq(f"{p}.R", node.Rval, nums.Rval)
    ck.eq(f"{p}.d_is_gcd", node.d, gcd(inst.r, nums.Rval))
    ck.eq(f"{p}.d_equals_r", node.d, inst.r)


def _verify_gcd_reduce(ck: _Checker, p: str, node: GcdReduce, inst: ChernInstance) -> None:
    X = inst.surface
    nums = chern_numbers(inst)
    r, R, d = inst.r, nums.Rval, node.d
    ck.true(f"{p}.delta_nonnegative", nums.delta >= 0, nums.delta, 0)
    ck.eq(f"{p}.d_is_gcd", d, gcd(r, R))
    ck.true(f"{p}.d_in_range", 1 < d < r, d, r)
    if not 1 < d < r:
        return
    ck.eq(f"{p}.d_divides_half_c1_squared", (nums.c1_squared // 2) % d, 0)
    (a, b), (z, e) = node.cover_index_matrix
    ck.true(f"{p}.cover_hnf_canonical", z == 0 and a > 0 and e > 0 and 0 <= b < e, node.cover_index_matrix)
    ck.eq(f"{p}.cover_hnf_index", a * e, d)
    if not (a > 0 and e > 0 and z == 0):
        return
    expected_cover = X.base.lattice.sublattice(node.cover_index_matrix)
    ck.eq(f"{p}.cover_lattice", node.cover.lattice, expected_cover)
    ck.eq(f"{p}.cover_index", ck.guarded(f"{p}.cover_index", lambda: lattice_index(node.cover.lattice, X.base.lattice)), d)
    lam = inst.c1.free
    d_fiber = X.fiber.lattice.scaled(QuadInt(d, 0, X.D))
    ck.true(f"{p}.cover_containment", d_fiber.contains_lattice(node.cover.lattice.scaled(lam)))

    red = node.reduced
    Xp = red.surface
    ck.eq(f"{p}.reduced_base", Xp.base, node.cover)
    ck.eq(f"{p}.reduced_fiber", Xp.fiber, X.fiber)
    ck.eq(f"{p}.reduced_torsion_order", Xp.torsion_order, X.torsion_order)
    ck.eq(f"{p}.reduced_rank", red.r * d, r)
    ck.eq(f"{p}.reduced_c1_free", red.c1.free, lam / d)
    ck.eq(f"{p}.reduced_c1_torsion", red.c1.torsion, inst.c1.torsion)

    # push forward along t: B' -> B, whose pull-back on H_1 is the dual t^ : B -> B'
    def push() -> Any:
        t = Isogeny(QuadInt(1, 0, X.D), node.cover, X.base)
        pull = rational_representation(dual_isogeny(t))
        return pushforward_class(to_top_class(red.c1), pull).free_part()

    ck.eq(f"{p}.pushforward_recovers_c1", ck.guarded(f"{p}.pushforward", push), to_top_class(inst.c1).free_part())

    red_nums = chern_numbers(red)
    c1p_sq = red_nums.c1_squared
    ck.eq(f"{p}.reduced_c2", red.c2, inst.c2 - (d - 1) * Fraction(c1p_sq, 2))
    ck.eq(f"{p}.reduced_R", red_nums.Rval, Fraction(R, d))
    ck.eq(f"{p}.reduced_coprime", gcd(red.r, red_nums.Rval), 1)
    ck.eq(f"{p}.reduced_R_is_r2_delta", Fraction(red_nums.Rval), red.r**2 * red_nums.delta)
    _verify_node(ck, f"{p}.child", node.child, red)


def _verify_twist(ck: _Checker, p: str, node: TorsionTwist, inst: ChernInstance) -> None:
    n = inst.surface.torsion_order
    ck.eq(f"{p}.modulus", node.modulus, n)
    ck.true(f"{p}.target_canonical", 0 <= node.target < max(node.modulus, 1), node.target, node.modulus)
    ck.eq(f"{p}.target", node.target, inst.c1.torsion)
    ck.true(
        f"{p}.wraps_coprime_node",
        isinstance(node.child, (IrreducibleGenus2, DiamondSum)),
        type(node.child).__name__,
    )
    c1top = to_top_class(inst.c1)
    nums = chern_numbers(inst)
    for m in sorted({1, n}):
        tw = twist_by_fiber(c1top, m)
        ck.eq(f"{p}.twist_{m}_free_part", tw.free_part(), c1top.free_part())
        ck.eq(
            f"{p}.twist_{m}_delta",
            discriminant(inst.r, top_self_intersection(tw), inst.c2),
            nums.delta,
        )
    if isinstance(node.child, (IrreducibleGenus2, DiamondSum)):
        _verify_node(ck, f"{p}.child", node.child, inst)


def _verify_coprime_common(
    ck: _Checker, p: str, F: CurveModel, delta: Isogeny, psi: TorsionMatrix, inst: ChernInstance
) -> bool:
    X = inst.surface
    E = X.fiber
    r = inst.r
    nums = chern_numbers(inst)
    R = nums.Rval
    ck.true(f"{p}.delta_nonnegative", nums.delta >= 0, nums.delta, 0)
    ck.eq(f"{p}.coprime", gcd(r, R), 1)
    ck.true(f"{p}.R_positive", R >= 1, R)
    ck.true(f"{p}.c1_nonzero", bool(inst.c1.free), inst.c1.free)
    if gcd(r, R) != 1 or R < 1 or not inst.c1.free:
        return False
    c1 = inst.c1.isogeny()
    deg_c1 = isogeny_degree(c1)
    ck.eq(f"{p}.deg_c1_prime_to_r", gcd(r, deg_c1), 1)
    ck.eq(f"{p}.R_congruence", R % r, (-deg_c1) % r)

    w1, w2 = E.lattice.basis
    ck.eq(f"{p}.F_canonical", F.lattice, Lattice2(w1, w2 * R))
    ck.eq(f"{p}.delta_source", delta.source, F)
    ck.eq(f"{p}.delta_target", delta.target, E)
    ck.eq(f"{p}.delta_multiplier", delta.multiplier, QuadInt(1, 0, X.D))
    ck.eq(f"{p}.delta_degree", isogeny_degree(delta), R)
    ck.eq(f"{p}.delta_cyclic", smith_form(rational_representation(delta)), (1, R))
    ck.eq(f"{p}.psi_modulus", psi.modulus, r)
    if psi.modulus != r:
        return False
    c1_r = torsion_matrix(c1, r)
    delta_r = torsion_matrix(delta, r)
    ck.true(f"{p}.c1_r_invertible", c1_r.is_invertible(), c1_r.det())
    ck.true(f"{p}.delta_r_invertible", delta_r.is_invertible(), delta_r.det())
    ck.eq(f"{p}.psi_anti_isometry", weil_type(psi), WeilType.ANTI_ISOMETRY)
    ck.eq(f"{p}.psi_det", psi.det(), (-1) % r)
    # c1(x) = delta(psi(x)) on the generators of B[r]
    ck.eq(f"{p}.graph_killed", (delta_r @ psi).entries, c1_r.entries)
    return True


def _has_reducing_witness(psi: TorsionMatrix, B: CurveModel, F: CurveModel, r: int) -> bool:
    H = hom_lattice(B.lattice, F.lattice)
    for k in range(1, r):
        targets = {psi.scaled(k).entries, psi.scaled(-k).entries}
        for lam in enumerate_by_degree(H, k * (r - k)):
            if torsion_matrix(Isogeny(lam, B, F), r).entries in targets:
                return True
    return False


def _verify_irreducible(ck: _Checker, p: str, node: IrreducibleGenus2, inst: ChernInstance) -> None:
    if not _verify_coprime_common(ck, p, node.F, node.delta, node.psi, inst):
        return
    X = inst.surface
    r = inst.r
    nums = chern_numbers(inst)
    c1 = inst.c1.isogeny()
    ck.eq(f"{p}.c_on_base", node.c_on_base, inst.c1.free)
    ck.eq(f"{p}.c_on_complement", node.c_on_complement, node.delta.multiplier)
    ck.eq(f"{p}.deg_delta_recorded", node.deg_delta, isogeny_degree(node.delta))
    ck.eq(f"{p}.searched_degrees", tuple(node.searched_degrees), tuple(k * (r - k) for k in range(1, r)))
    ck.true(f"{p}.irreducible", not _has_reducing_witness(node.psi, X.base, node.F, r))

    sides = ck.guarded(f"{p}.split_degree", lambda: split_degree_check(c1, node.delta, r))
    if sides is not None:
        lhs, rhs = sides
        ck.eq(f"{p}.split_degree_identity", lhs, rhs)
        ck.eq(f"{p}.deg_on_curve", Fraction(node.deg_on_curve), rhs / r)
    rtheta = theta(X.base, node.F).scaled(r)
    ck.eq(f"{p}.polarization_principal", Fraction(product_intersection(rtheta, rtheta), r * r), 2)

    bundle = ck.guarded(
        f"{p}.pushforward_bundle",
        lambda: pushforward_bundle_invariants(GenusTwoCovering(r, c1, node.delta, X.torsion_order)),
    )
    if bundle is not None:
        ck.eq(f"{p}.bundle_rank", bundle.rank, r)
        ck.eq(f"{p}.bundle_c1", bundle.c1.free_part(), to_top_class(inst.c1).free_part())
        ck.eq(f"{p}.bundle_delta", bundle.delta, nums.delta)
    ck.eq(f"{p}.delta_match", Fraction(node.deg_delta, r * r), nums.delta)


def _verify_diamond(ck: _Checker, p: str, node: DiamondSum, inst: ChernInstance) -> None:
    if not _verify_coprime_common(ck, p, node.F, node.delta, node.psi, inst):
        return
    X = inst.surface
    B, E, F = X.base, X.fiber, node.F
    r = inst.r
    nums = chern_numbers(inst)
    dm = node.diamond
    k = dm.k
    ck.true(f"{p}.k_range", 1 <= k < r, k, r)
    if not 1 <= k < r:
        return
    h = dm.h
    ck.eq(f"{p}.h_source", h.source, B)
    ck.eq(f"{p}.h_target", h.target, F)
    N = isogeny_degree(h)
    ck.eq(f"{p}.h_degree", N, k * (r - k))
    ck.eq(f"{p}.h_torsion", torsion_matrix(h, r).entries, node.psi.scaled(k).entries)

    one = QuadInt(1, 0, X.D)
    for idx, (G, Ei, fi, fip, deg_fi, deg_fip) in enumerate(
        ((dm.G1, dm.E1, dm.f1, dm.f1p, r - k, k), (dm.G2, dm.E2, dm.f2, dm.f2p, k, r - k)), start=1
    ):
        q = f"{p}.E{idx}"
        ck.true(
            f"{q}.generators_canonical",
            all(0 <= t < 1 and (t * N).denominator == 1 for g in G for t in g),
            G,
        )
        quot = ck.guarded(f"{q}.quotient", lambda G=G: quotient_curve(B, G, N))
        if quot is not None:
            ck.eq(f"{q}.lattice", Ei.lattice, quot[0].lattice)
        ck.eq(f"{q}.f_source", fi.source, B)
        ck.eq(f"{q}.f_target", fi.target, Ei)
        ck.eq(f"{q}.f_multiplier", fi.multiplier, one)
        ck.eq(f"{q}.fp_source", fip.source, Ei)
        ck.eq(f"{q}.fp_target", fip.target, F)
        ck.eq(f"{q}.deg_f", isogeny_degree(fi), deg_fi)
        ck.eq(f"{q}.deg_fp", isogeny_degree(fip), deg_fip)
        ck.eq(f"{q}.factorization", fip.multiplier * fi.multiplier, h.multiplier)

    lam = inst.c1.free
    first = node.cprime * dm.f1.multiplier
    second = node.cdblprime * dm.f2.multiplier
    ck.true(f"{p}.cprime_integral", _in_hom(node.cprime, dm.E1, E), node.cprime)
    ck.true(f"{p}.cdblprime_integral", _in_hom(node.cdblprime, dm.E2, E), node.cdblprime)
    ck.true(f"{p}.first_summand_integral", _in_hom(first, B, E), first)
    ck.true(f"{p}.second_summand_integral", _in_hom(second, B, E), second)
    ck.eq(f"{p}.summands_add_to_c1", first + second, lam)
    ck.eq(f"{p}.linear_relation", first * k - second * (r - k), node.delta.multiplier * h.multiplier)
    if not (_in_hom(first, B, E) and _in_hom(second, B, E)):
        return
    c1sq = -2 * _deg(lam, B, E)
    sq1 = -2 * _deg(first, B, E)
    sq2 = -2 * _deg(second, B, E)
    delta_sum = Fraction(1, 2 * r) * (Fraction(c1sq, r) - Fraction(sq1, r - k) - Fraction(sq2, k))
    ck.eq(f"{p}.delta_direct_sum", delta_sum, nums.delta)
    ck.eq(f"{p}.delta_recorded", node.delta_value, nums.delta)
    ck.eq(f"{p}.delta_is_R_over_r2", nums.delta, Fraction(isogeny_degree(node.delta), r * r))


def _verify_node(ck: _Checker, p: str, node: PlanNode, inst: ChernInstance) -> None:
    try:
        if isinstance(node, DeformationCase):
            _verify_deformation(ck, p, node, inst)
        elif isinstance(node, GcdReduce):
            _verify_gcd_reduce(ck, p, node, inst)
        elif isinstance(node, TorsionTwist):
            _verify_twist(ck, p, node, inst)
        elif isinstance(node, IrreducibleGenus2):
            ck.true(f"{p}.wrapped", p.endswith(".child"), p)
            _verify_irreducible(ck, p, node, inst)
        elif isinstance(node, DiamondSum):
            ck.true(f"{p}.wrapped", p.endswith(".child"), p)
            _verify_diamond(ck, p, node, inst)
        else:
            ck.true(f"{p}.node_type", False, type(node).__name__)
    except (ValueError, ArithmeticError, InvalidIsogeny) as exc:
        ck.true(f"{p}.well_formed", False, type(exc).__name__, str(exc))


def verify_plan(plan: ConstructionPlan, inst: ChernInstance) -> VerificationReport:
    ck = _Checker()
    ck.eq("instance_match", plan.instance, inst)
    _verify_node(ck, "root", plan.root, inst)
    return ck.report
