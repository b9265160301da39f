from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import instance_a, instance_b, instance_deformation, instance_gcd, instance_no_diamond, make_instance, q
from kodaira_bundles.constructor import (
    DeformationCase,
    DiamondExhausted,
    DiamondSum,
    GcdReduce,
    IrreducibleGenus2,
    NegativeDiscriminant,
    NotCoprime,
    TorsionTwist,
    _intermediate_subgroups,
    attach_torsion_twist,
    build_anti_isometry,
    build_diamond,
    build_plan,
    reduce_gcd,
    reducibility_witnesses,
    solve_summand_classes,
    test_reducibility as find_reduction,
)
from kodaira_bundles.corpus import Branch, random_instance
from kodaira_bundles.curves import CurveModel, Isogeny, TorsionMatrix, WeilType, isogeny_degree, torsion_matrix, weil_type
from kodaira_bundles.kodaira import chern_numbers
from kodaira_bundles.lattice import Lattice2
from kodaira_bundles.verifier import verify_plan

ZI = CurveModel(Lattice2.standard(1))


class TestBuildPlan:
    def test_irreducible_worked_instance(self):
        root = build_plan(instance_a()).root
        assert isinstance(root, TorsionTwist)
        node = root.child
        assert isinstance(node, IrreducibleGenus2)
        assert node.deg_delta == 3 and isogeny_degree(node.delta) == 3

    def test_diamond_worked_instance(self):
        node = build_plan(instance_b()).root.child
        assert isinstance(node, DiamondSum)
        assert node.diamond.k == 1 and node.diamond.h.multiplier == q(1)
        assert (node.cprime, node.cdblprime) == (q(1), q(0))
        assert node.delta_value == Fraction(1, 4)

    def test_deformation_case(self):
        node = build_plan(instance_deformation()).root
        assert node == DeformationCase(2, 4, 2)

    def test_zero_class_is_deformation(self):
        node = build_plan(make_instance(2, 3, (0, 0), 2)).root
        assert isinstance(node, DeformationCase) and node.Rval == 6 and node.d == 3

    def test_negative(self):
        with pytest.raises(NegativeDiscriminant):
            build_plan(make_instance(1, 2, (0, 0), -1))

    def test_gcd_reduction_recurses(self):
        root = build_plan(instance_gcd()).root
        assert isinstance(root, GcdReduce) and root.d == 2
        assert isinstance(root.child, TorsionTwist)
        assert isinstance(root.child.child, IrreducibleGenus2)

    def test_known_counterexample_exhausts(self):
        # the (k, h) test fires with gcd(k, r-k) = 2 but no diamond exists
        with pytest.raises(DiamondExhausted) as exc:
            build_plan(instance_no_diamond())
        assert "k=2" in str(exc.value) and "k=4" in str(exc.value)


class TestReduceGcd:
    def test_r4_R6(self):
        inst = make_instance(1, 4, (1, 1), 0)
        nums = chern_numbers(inst)
        assert (nums.Rval, nums.d) == (6, 2)
        _, _, red = reduce_gcd(inst)
        assert red.r == 2 and chern_numbers(red).Rval == 3

    def test_multiplication_by_two(self):
        inst = make_instance(1, 6, (2, 0), 0)
        assert chern_numbers(inst).d == 2
        cover, hnf, red = reduce_gcd(inst)
        # B = E, so the first index-2 sublattice in enumeration order already works
        assert red.c1.free == q(1) and red.r == 3
        assert hnf == ((1, 0), (0, 2))

    def test_one_plus_i(self):
        cover, hnf, red = reduce_gcd(instance_gcd())
        assert hnf == ((1, 1), (0, 2))
        assert cover.lattice.same_lattice(Lattice2.standard(1).scaled(q(1, -1)))
        assert red.c1.free == q(1, 1) / 2
        # independent containment check over all three index-2 sublattices
        hits = [h for h in (((1, 0), (0, 2)), ((1, 1), (0, 2)), ((2, 0), (0, 1)))
                if Lattice2.standard(1).scaled(q(2)).contains_lattice(Lattice2.standard(1).sublattice(h).scaled(q(1, 1)))]
        assert hits == [((1, 1), (0, 2))]

    def test_rejects_wrong_branch(self):
        with pytest.raises(ValueError):
            reduce_gcd(instance_a())

    def test_never_fails_on_corpus(self):
        rng = random.Random(31)
        for _ in range(150):
            inst = random_instance(rng, Branch.REDUCE, 8)
            _, hnf, red = reduce_gcd(inst)
            nums, rn = chern_numbers(inst), chern_numbers(red)
            assert red.r == inst.r // nums.d
            assert rn.Rval == nums.Rval // nums.d
            assert Fraction(rn.Rval) == red.r**2 * rn.delta
            assert rn.Rval % red.r != 0 or red.r == 1


class TestAntiIsometry:
    def test_worked_instance(self):
        F, delta, psi = build_anti_isometry(instance_a())
        assert psi.entries == ((1, 0), (1, 1)) and psi.det() == 1
        assert isogeny_degree(delta) == 3
        assert weil_type(psi) is WeilType.ANTI_ISOMETRY

    def test_identity(self):
        _, _, psi = build_anti_isometry(instance_b())
        assert psi.entries == ((1, 0), (0, 1))

    def test_not_coprime(self):
        # deg c1 = 3 with r = 3
        with pytest.raises(NotCoprime):
            build_anti_isometry(make_instance(2, 3, (1, 1), 1))
        with pytest.raises(NotCoprime):
            build_anti_isometry(instance_deformation())


class TestReducibility:
    def test_identity_on_units(self):
        hit = find_reduction(TorsionMatrix(((1, 0), (0, 1)), 2), ZI, ZI, 2)
        assert hit is not None
        k, h = hit
        assert k == 1 and h.multiplier == q(1)

    def test_worked_instance_none(self):
        F, _, psi = build_anti_isometry(instance_a())
        assert find_reduction(psi, CurveModel(Lattice2.standard(2)), F, 2) is None

    def test_requires_anti_isometry(self):
        with pytest.raises(ValueError):
            find_reduction(TorsionMatrix(((1, 0), (0, 1)), 3), ZI, ZI, 3)

    def test_witness_conditions(self):
        psi = torsion_matrix(Isogeny(q(1, 1), ZI, ZI), 3)
        assert weil_type(psi) is WeilType.ANTI_ISOMETRY
        hits = list(reducibility_witnesses(psi, ZI, ZI, 3))
        assert hits
        for k, h in hits:
            assert isogeny_degree(h) == k * (3 - k)
            assert torsion_matrix(h, 3) in (psi.scaled(k), psi.scaled(-(3 - k)))
        assert len(set((k, h.multiplier) for k, h in hits)) == len(hits)


class TestDiamond:
    def test_trivial_kernel(self):
        one = Isogeny.identity(ZI)
        diamond, cp, cpp = build_diamond(1, one, 2, one, one)
        assert diamond.E1 == diamond.E2 == ZI
        for f in (diamond.f1, diamond.f2, diamond.f1p, diamond.f2p):
            assert isogeny_degree(f) == 1
        assert (cp, cpp) == (q(1), q(0))

    def test_subgroups_of_cyclic_kernel(self):
        h = Isogeny(q(1, 1), ZI, ZI)
        assert len(_intermediate_subgroups(h, 2)) == 1
        assert len(_intermediate_subgroups(h, 1)) == 1

    def test_klein_kernel(self):
        h = Isogeny(q(2), ZI, ZI)
        assert len(_intermediate_subgroups(h, 2)) == 3
        assert len(_intermediate_subgroups(h, 4)) == 1

    def test_degree_precondition(self):
        with pytest.raises(ValueError):
            one = Isogeny.identity(ZI)
            build_diamond(1, Isogeny(q(2), ZI, ZI), 3, one, one)

    def test_degree_pattern(self):
        node = build_plan(instance_b()).root.child
        d = node.diamond
        r = 2
        assert isogeny_degree(d.f1) == isogeny_degree(d.f2p) == r - d.k
        assert isogeny_degree(d.f1p) == isogeny_degree(d.f2) == d.k
        assert d.f1p.multiplier * d.f1.multiplier == d.h.multiplier == d.f2p.multiplier * d.f2.multiplier


class TestSummands:
    def test_worked_values(self):
        node = build_plan(instance_b()).root.child
        one = Isogeny.identity(ZI)
        cp, cpp = solve_summand_classes(node.diamond, one, one, 2)
        assert (cp, cpp) == (q(1), q(0))
        # the linear relation k c' f1 - (r-k) c'' f2 = delta h
        assert 1 * cp - 1 * cpp == q(1)

    def test_direct_sum_discriminant(self):
        # (1/4)[(-2)/2 - (-2)/1 - 0] = 1/4
        assert Fraction(1, 4) * (Fraction(-2, 2) - Fraction(-2, 1) - 0) == Fraction(1, 4)
        assert build_plan(instance_b()).root.child.delta_value == Fraction(1, 4)


class TestTorsionTwist:
    def test_trivial_modulus(self):
        node = DeformationCase(2, 4, 2)
        tw = attach_torsion_twist(node, 0, 1)
        assert tw.child is node and tw.target == 0

    def test_symbolic_target(self):
        tw = attach_torsion_twist(DeformationCase(2, 4, 2), 7, 5)
        assert tw.target == 2 and "t0" in tw.describe_twist()

    def test_folding(self):
        node = DeformationCase(2, 4, 2)
        twice = attach_torsion_twist(attach_torsion_twist(node, 1, 4), 3, 4)
        assert twice == TorsionTwist(3, 4, node)

    def test_torsion_carried_from_instance(self):
        root = build_plan(make_instance(2, 2, (1, 1), 0, torsion=2, n=3)).root
        assert root.target == 2 and root.modulus == 3


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(
    st.sampled_from([1, 2, 3, 7]),
    st.integers(2, 4),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.integers(-12, 12),
)
def test_plan_exists_iff_discriminant_nonnegative(D, r, x, y, c2):
    inst = make_instance(D, r, (x, y), c2)
    delta = chern_numbers(inst).delta
    if delta < 0:
        with pytest.raises(NegativeDiscriminant):
            build_plan(inst)
        return
    try:
        plan = build_plan(inst)
    except DiamondExhausted:
        # the (k, h) test can fire without a diamond when gcd(k, r - k) > 1
        assert r >= 4
        return
    assert verify_plan(plan, inst).overall
