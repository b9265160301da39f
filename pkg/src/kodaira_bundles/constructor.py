"""Construction plans: the existence algorithm as a tree of witnessed steps.

Routing for an instance with ``R = r^2 Delta >= 0`` and ``d = gcd(r, R)``:

* ``d == r``: a terminal :class:`DeformationCase`.
* ``1 < d < r``: :class:`GcdReduce` pulls back along an unramified cover of
  degree ``d`` and recurses on ``(r/d, c1', c2')``.
* ``d == 1``: a cyclic ``delta: F -> E`` of degree ``R`` and the
  anti-isometry ``psi = delta[r]^-1 ∘ c1[r]``.  If ``psi`` is reducible the
  plan is a :class:`DiamondSum`, otherwise :class:`IrreducibleGenus2`.  Both
  are wrapped in a :class:`TorsionTwist`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterator

from .curves import (
    CurveModel,
    Isogeny,
    TorsionMatrix,
    WeilType,
    cyclic_isogeny,
    dual_isogeny,
    isogeny_degree,
    quotient_curve,
    torsion_matrix,
    weil_type,
)
from .exactnum import QuadInt
from .lattice import IntMatrix2, enumerate_by_degree, enumerate_sublattices, hom_lattice, sublattice_hnfs
from .kodaira import ChernInstance, KodairaSurface, NSClass, chern_numbers
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
    "ConstructionError",
    "NegativeDiscriminant",
    "NoReducingCover",
    "NotCoprime",
    "NonIntegralSolution",
    "DiamondExhausted",
    "DeformationCase",
    "GcdReduce",
    "IrreducibleGenus2",
    "DiamondConfig",
    "DiamondSum",
    "TorsionTwist",
    "PlanNode",
    "ConstructionPlan",
    "build_plan",
    "reduce_gcd",
    "build_anti_isometry",
    "test_reducibility",
    "reducibility_witnesses",
    "build_diamond",
    "solve_summand_classes",
    "attach_torsion_twist",
]


class ConstructionError(Exception):
    pass


class NegativeDiscriminant(ConstructionError):
    pass


class NoReducingCover(ConstructionError):
    pass


class NotCoprime(ConstructionError):
    pass


class NonIntegralSolution(ConstructionError):
    pass


class DiamondExhausted(ConstructionError):
    pass


def reduce_gcd(inst: ChernInstance) -> tuple[CurveModel, IntMatrix2, ChernInstance]:
    """Step to an index-``d`` cover ``B' ⊆ B`` with ``c1 * L_B' ⊆ d * L_E``.

    Returns the cover, its HNF in ``B``'s coordinates and the reduced instance.
    """
    nums = chern_numbers(inst)
    r, R, d = inst.r, nums.Rval, nums.d
    if not 1 < d < r:
        raise ValueError(f"reduction needs 1 < d < r, got d={d}, r={r}")
    X = inst.surface
    lam = inst.c1.free
    target = X.fiber.lattice.scaled(QuadInt(d, 0, X.D))
    for hnf, L in zip(sublattice_hnfs(d), enumerate_sublattices(X.base.lattice, d)):
        if target.contains_lattice(L.scaled(lam)):
            break
    else:
        raise NoReducingCover(f"no index-{d} sublattice of the base reduces {lam}")
    cover = CurveModel(L, label=f"B'_{d}")
    Xp = KodairaSurface(cover, X.fiber, X.torsion_order)
    c1p = NSClass(Xp, lam / d, inst.c1.torsion)
    c1p_sq = -2 * c1p.degree()
    c2p = inst.c2 - (d - 1) * c1p_sq // 2
    reduced = ChernInstance(Xp, r // d, c1p, c2p)
    red = chern_numbers(reduced)
    assert red.Rval == R // d and gcd(reduced.r, red.Rval) == 1
    return cover, hnf, reduced


def build_anti_isometry(inst: ChernInstance) -> tuple[CurveModel, Isogeny, TorsionMatrix]:
    nums = chern_numbers(inst)
    r, R = inst.r, nums.Rval
    if gcd(r, R) != 1 or R < 1 or not inst.c1.free:
        raise NotCoprime(f"anti-isometry step needs gcd(r, R) = 1 and R >= 1 (r={r}, R={R})")
    c1 = inst.c1.isogeny()
    if gcd(r, isogeny_degree(c1)) != 1:
        raise NotCoprime(f"deg c1 = {isogeny_degree(c1)} is not prime to r = {r}")
    F, delta = cyclic_isogeny(inst.surface.fiber, R)
    psi = torsion_matrix(delta, r).inverse() @ torsion_matrix(c1, r)
    assert weil_type(psi) is WeilType.ANTI_ISOMETRY
    return F, delta, psi


def reducibility_witnesses(
    psi: TorsionMatrix, B: CurveModel, F: CurveModel, r: int
) -> Iterator[tuple[int, Isogeny]]:
    """All ``(k, h)`` with ``deg h = k(r-k)`` and ``h[r] ≡ ±k*psi``, in search order.

    A hit with ``h[r] ≡ -k*psi`` is reported as ``(r-k, h)``, the same
    condition written for the complementary index; searching ``k`` and ``r-k``
    therefore finds each pair twice, and repeats are dropped.
    """
    if weil_type(psi) is not WeilType.ANTI_ISOMETRY:
        raise ValueError("psi must be an anti-isometry")
    H = hom_lattice(B.lattice, F.lattice)
    if H.rank == 0:
        return
    seen: set[tuple[int, QuadInt]] = set()
    for k in range(1, r):
        plus, minus = psi.scaled(k), psi.scaled(-k)
        for lam in enumerate_by_degree(H, k * (r - k)):
            h = Isogeny(lam, B, F)
            t = torsion_matrix(h, r)
            if t == plus:
                hit = (k, lam)
            elif t == minus:
                hit = (r - k, lam)
            else:
                continue
            if hit not in seen:
                seen.add(hit)
                yield hit[0], h


def test_reducibility(
    psi: TorsionMatrix, B: CurveModel, F: CurveModel, r: int
) -> tuple[int, Isogeny] | None:
    """First reducibility witness ``(k, h)``, or ``None`` if ``psi`` passes as irreducible."""
    return next(reducibility_witnesses(psi, B, F, r), None)


test_reducibility.__test__ = False  # type: ignore[attr-defined]


def _intermediate_subgroups(h: Isogeny, order: int) -> list[tuple[tuple[Fraction, Fraction], ...]]:
    """Subgroups of ``ker h`` of the given order.

    Each is given by two generators in ``B``'s rational coordinates, reduced
    into ``[0, 1)`` (points of ``C/L_B``).
    """
    B = h.source
    N = isogeny_degree(h)
    if N % order:
        return []
    M = h.target.lattice.scaled(h.multiplier.inverse())
    out = []
    for S in enumerate_sublattices(M, N // order):
        if not S.contains_lattice(B.lattice):
            continue
        out.append(tuple(tuple(t % 1 for t in B.lattice.coords(w)) for w in S.basis))
    return out


def solve_summand_classes(
    diamond: DiamondConfig, c1: Isogeny, delta: Isogeny, r: int
) -> tuple[QuadInt, QuadInt]:
    """Solve ``c'∘f1 + c''∘f2 = c1`` and ``k(c'∘f1) - (r-k)(c''∘f2) = delta∘h``."""
    k = diamond.k
    B, E = c1.source, c1.target
    dh = delta.multiplier * diamond.h.multiplier
    lam = c1.multiplier
    first = (lam * (r - k) + dh) / r
    second = (lam * k - dh) / r
    for name, val in (("c'∘f1", first), ("c''∘f2", second)):
        if not hom_lattice(B.lattice, E.lattice).contains(val):
            raise NonIntegralSolution(f"{name} = {val} is not in Hom(B, E)")
    cprime = first * dual_isogeny(diamond.f1).multiplier / (r - k)
    cdblprime = second * dual_isogeny(diamond.f2).multiplier / k
    if cprime and not E.lattice.contains_lattice(diamond.E1.lattice.scaled(cprime)):
        raise NonIntegralSolution(f"c' = {cprime} is not in Hom(E1, E)")
    if cdblprime and not E.lattice.contains_lattice(diamond.E2.lattice.scaled(cdblprime)):
        raise NonIntegralSolution(f"c'' = {cdblprime} is not in Hom(E2, E)")
    return cprime, cdblprime


def build_diamond(
    k: int, h: Isogeny, r: int, c1: Isogeny, delta: Isogeny
) -> tuple[DiamondConfig, QuadInt, QuadInt]:
    """Factor ``h`` through ``E1 = B/G1`` (|G1| = r-k) and ``E2 = B/G2`` (|G2| = k).

    Subgroup choices are tried in enumeration order until the summand classes
    come out integral.
    """
    N = isogeny_degree(h)
    if N != k * (r - k):
        raise ValueError(f"deg h = {N}, expected {k * (r - k)}")
    B, F = h.source, h.target
    last_error: Exception | None = None
    for G1 in _intermediate_subgroups(h, r - k):
        E1, f1 = quotient_curve(B, G1, N)
        f1p = Isogeny(h.multiplier, E1, F)
        for G2 in _intermediate_subgroups(h, k):
            E2, f2 = quotient_curve(B, G2, N)
            f2p = Isogeny(h.multiplier, E2, F)
            diamond = DiamondConfig(k, E1, E2, f1, f2, f1p, f2p, h, G1, G2)
            try:
                cprime, cdblprime = solve_summand_classes(diamond, c1, delta, r)
            except NonIntegralSolution as exc:
                last_error = exc
                continue
            return diamond, cprime, cdblprime
    raise DiamondExhausted(f"no subgroup choice factors h = {h.multiplier} ({last_error})")


def attach_torsion_twist(node: PlanNode, target_torsion: int, modulus: int) -> TorsionTwist:
    """Wrap ``node`` in a fiber twist; twisting a twist folds into one."""
    if isinstance(node, TorsionTwist):
        node = node.child
    return TorsionTwist(target_torsion % modulus, modulus, node)


def _coprime_case(inst: ChernInstance) -> PlanNode:
    X = inst.surface
    r = inst.r
    nums = chern_numbers(inst)
    c1 = inst.c1.isogeny()
    F, delta, psi = build_anti_isometry(inst)
    witnesses = reducibility_witnesses(psi, X.base, F, r)
    hit = next(witnesses, None)
    if hit is None:
        deg_curve = (isogeny_degree(c1) + nums.Rval) // r
        node: PlanNode = IrreducibleGenus2(
            F=F,
            delta=delta,
            psi=psi,
            c_on_base=c1.multiplier,
            c_on_complement=delta.multiplier,
            deg_delta=isogeny_degree(delta),
            deg_on_curve=deg_curve,
            searched_degrees=tuple(k * (r - k) for k in range(1, r)),
        )
    else:
        # later witnesses are tried only if the first admits no diamond
        failures = []
        for k, h in itertools.chain([hit], witnesses):
            try:
                diamond, cprime, cdblprime = build_diamond(k, h, r, c1, delta)
            except DiamondExhausted as exc:
                failures.append(f"k={k}, h={h.multiplier}: {exc}")
                continue
            node = DiamondSum(F, delta, psi, diamond, cprime, cdblprime, nums.delta)
            break
        else:
            raise DiamondExhausted(
                f"psi is reducible by the (k, h) test but no witness admits a diamond ({'; '.join(failures)})"
            )
    return attach_torsion_twist(node, inst.c1.torsion, X.torsion_order)


def _build_node(inst: ChernInstance) -> PlanNode:
    nums = chern_numbers(inst)
    if nums.delta < 0:
        raise NegativeDiscriminant(f"Delta = {nums.delta} < 0: no bundle exists")
    r, d = inst.r, nums.d
    if d == r:
        return DeformationCase(r, nums.Rval, d)
    if d > 1:
        cover, hnf, reduced = reduce_gcd(inst)
        return GcdReduce(d, cover, hnf, reduced, _build_node(reduced))
    return _coprime_case(inst)


def build_plan(inst: ChernInstance) -> ConstructionPlan:
    return ConstructionPlan(inst, _build_node(inst))
