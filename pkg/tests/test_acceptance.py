"""Acceptance criteria, one test each; every test records a pass/fail line.

The lines are printed in the terminal summary of a pytest run, and directly
when this file is executed as a script.
"""

from __future__ import annotations

import contextlib
import io
import json
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES
from helpers import (
    brute_m_bound,
    degree_by_norm,
    instance_a,
    instance_b,
    instance_deformation,
    instance_gcd,
    make_instance,
    q,
    sigma,
)
from kodaira_bundles import cli
from kodaira_bundles import serialization as ser
from kodaira_bundles.constructor import (
    NegativeDiscriminant,
    build_anti_isometry,
    build_plan,
    solve_summand_classes,
    test_reducibility as find_reduction,
)
from kodaira_bundles.corpus import branch_of, generate_corpus
from kodaira_bundles.curves import (
    CurveModel,
    Isogeny,
    TorsionMatrix,
    WeilType,
    compose,
    dual_isogeny,
    isogeny_degree,
    torsion_matrix,
    weil_type,
)
from kodaira_bundles.homology import covering_degree, split_degree_check
from kodaira_bundles.kodaira import (
    KodairaSurface,
    NSClass,
    chern_numbers,
    m_bound,
    self_intersection,
    to_top_class,
    top_self_intersection,
)
from kodaira_bundles.lattice import Lattice2, det2, enumerate_sublattices, sublattice_hnfs
from kodaira_bundles.plan import GcdReduce, IrreducibleGenus2, TorsionTwist
from kodaira_bundles.verifier import verify_plan
from mutations import mutate, numeric_paths

CORPUS_SEED = 1


def record(number: int, title: str, passed: bool | None, elapsed: float, detail: str = "") -> None:
    status = "N/A" if passed is None else "PASS" if passed else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s)"
    if detail:
        line += f"  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


class Outcome:
    """Collects named sub-results; ``ok`` is true only if every one held."""

    def __init__(self) -> None:
        self.failures: list[str] = []

    def expect(self, name: str, cond: bool) -> None:
        if not cond:
            self.failures.append(name)

    @property
    def ok(self) -> bool:
        return not self.failures


def _finish(number: int, title: str, out: Outcome, start: float, budget: float, detail: str = "") -> None:
    elapsed = time.perf_counter() - start
    out.expect(f"runtime < {budget:g}s", elapsed < budget)
    if out.failures:
        detail = (detail + "  " if detail else "") + "failed: " + ", ".join(out.failures[:8])
    record(number, title, out.ok, elapsed, detail)
    assert out.ok, out.failures


def test_criterion_1_irreducible_instance():
    start = time.perf_counter()
    out = Outcome()
    inst = instance_a()
    X = inst.surface
    c1 = inst.c1.isogeny()
    out.expect("deg c1 = 3", isogeny_degree(c1) == 3 == degree_by_norm(c1.multiplier, X.base.lattice, X.fiber.lattice))
    nums = chern_numbers(inst)
    out.expect("c1^2 = -6", nums.c1_squared == -6)
    out.expect("R = 3", nums.Rval == 3)
    out.expect("d = 1", nums.d == 1)
    out.expect("Delta = 3/4", nums.delta == Fraction(3, 4))
    F, delta, psi = build_anti_isometry(inst)
    out.expect("psi", psi.entries == ((1, 0), (1, 1)) and psi.modulus == 2)
    out.expect("det psi = -1 mod 2", psi.det() == (-1) % 2 and weil_type(psi) is WeilType.ANTI_ISOMETRY)
    out.expect("reducibility search empty", find_reduction(psi, X.base, F, 2) is None)
    plan = build_plan(inst)
    node = plan.root.child if isinstance(plan.root, TorsionTwist) else plan.root
    out.expect("IrreducibleGenus2", isinstance(node, IrreducibleGenus2))
    out.expect("deg delta = 3", isinstance(node, IrreducibleGenus2) and isogeny_degree(node.delta) == 3)
    lhs, rhs = split_degree_check(c1, delta, 2)
    out.expect("split-degree identity", lhs == rhs == 6 and rhs / 2 == 3)
    rep = verify_plan(plan, inst)
    out.expect("verifier passes all checks", rep.overall)
    _finish(1, "worked irreducible instance", out, start, 1.0, f"{len(rep.checks)} checks")


def test_criterion_2_diamond_instance():
    start = time.perf_counter()
    out = Outcome()
    inst = instance_b()
    X = inst.surface
    nums = chern_numbers(inst)
    out.expect("R = 1", nums.Rval == 1)
    F, delta, psi = build_anti_isometry(inst)
    out.expect("psi = Id", psi == TorsionMatrix.identity(2))
    # exhaustive search over the units of Z[i]: only +-1, +-i have degree 1
    hit = find_reduction(psi, X.base, F, 2)
    out.expect("reducible with k=1, h=1", hit is not None and hit[0] == 1 and hit[1].multiplier == q(1))
    plan = build_plan(inst)
    node = plan.root.child
    cp, cpp = solve_summand_classes(node.diamond, inst.c1.isogeny(), delta, 2)
    out.expect("c' = 1", cp == q(1) and node.cprime == q(1))
    out.expect("c'' = 0", cpp == q(0) and node.cdblprime == q(0))
    k, r = node.diamond.k, 2
    lhs = k * cp * node.diamond.f1.multiplier - (r - k) * cpp * node.diamond.f2.multiplier
    out.expect("linear relation", lhs == delta.multiplier * node.diamond.h.multiplier)
    direct = Fraction(1, 4) * (Fraction(-2, 2) - Fraction(-2 * isogeny_degree(Isogeny(cp, node.diamond.E1, X.fiber)), 1) - 0)
    out.expect("Delta of the direct sum = 1/4 = Delta", direct == Fraction(1, 4) == nums.delta == node.delta_value)
    rep = verify_plan(plan, inst)
    out.expect("verifier passes", rep.overall)
    _finish(2, "worked diamond instance", out, start, 1.0)


def test_criterion_3_m_bound():
    start = time.perf_counter()
    out = Outcome()
    D2 = KodairaSurface(CurveModel(Lattice2.standard(2)), CurveModel(Lattice2.standard(2)))
    c1 = NSClass(D2, q(1, 1, 2))
    out.expect("m(2, 1+sqrt(-2)) = 3/4", m_bound(2, c1) == Fraction(3, 4) == brute_m_bound(2, c1))
    compared = 0
    for D in (1, 2):
        std = Lattice2.standard(D)
        surfaces = [
            KodairaSurface(CurveModel(std), CurveModel(std)),
            KodairaSurface(CurveModel(std.sublattice(((1, 1), (0, 2)))), CurveModel(std)),
            KodairaSurface(CurveModel(std), CurveModel(std.sublattice(((1, 0), (0, 3))))),
        ]
        for X in surfaces:
            H = X.hom()
            for x in range(-5, 6):
                for y in range(-5, 6):
                    lam = H.element(x, y)
                    if not 0 < H.degree(lam) <= 20:
                        continue
                    for r in (2, 3):
                        c = NSClass(X, lam)
                        compared += 1
                        if m_bound(r, c) != brute_m_bound(r, c):
                            out.expect(f"D={D} r={r} lam={lam}", False)
    _finish(3, "m-bound against brute force", out, start, 30.0, f"{compared} classes compared")


def test_criterion_4_plan_level_equivalence():
    start = time.perf_counter()
    out = Outcome()
    corpus = generate_corpus(CORPUS_SEED, 500, 6)
    out.expect("r <= 6", all(i.r <= 6 for i in corpus))
    out.expect("fields", {i.surface.D for i in corpus} <= {1, 2, 3, 7})
    built = verified = 0
    for i, inst in enumerate(corpus):
        nonneg = chern_numbers(inst).delta >= 0
        try:
            plan = build_plan(inst)
        except NegativeDiscriminant:
            out.expect(f"#{i} refused with Delta >= 0", not nonneg)
            continue
        except Exception as exc:
            out.expect(f"#{i} {type(exc).__name__}", False)
            continue
        built += 1
        out.expect(f"#{i} built with Delta < 0", nonneg)
        if verify_plan(plan, inst).overall:
            verified += 1
        else:
            out.expect(f"#{i} plan fails verification", False)
    branches = {b: sum(branch_of(i) == b for i in corpus) for b in ("negative", "d=r", "1<d<r", "d=1")}
    out.expect("all branches present", all(branches.values()))
    detail = f"seed={CORPUS_SEED}; {built} plans, {verified} verified; " + ", ".join(f"{k}={v}" for k, v in branches.items())
    _finish(4, "plan exists iff Delta >= 0, all plans verify", out, start, 60.0, detail)


def _random_lattice(rng: random.Random, D: int) -> Lattice2:
    L = Lattice2.standard(D).sublattice(rng.choice(sublattice_hnfs(rng.randint(1, 6))))
    z = q(rng.randint(-3, 3), rng.randint(-3, 3), D)
    return L.scaled(z) if z else L


def test_criterion_5_formula_agreement():
    start = time.perf_counter()
    out = Outcome()
    rng = random.Random(55)
    N = 1000
    fields = (1, 2, 3, 7)

    # self-intersection from the degree vs the coordinate formula
    bad = 0
    for _ in range(N):
        D = rng.choice(fields)
        X = KodairaSurface(CurveModel(_random_lattice(rng, D)), CurveModel(_random_lattice(rng, D)), rng.randint(1, 5))
        lam = X.hom().element(rng.randint(-6, 6), rng.randint(-6, 6))
        c = NSClass(X, lam, rng.randint(0, 4))
        bad += self_intersection(c) != top_self_intersection(to_top_class(c))
    out.expect(f"self-intersection ({bad} mismatches)", bad == 0)

    # covering degree for genus one is the determinant
    bad = 0
    for _ in range(N):
        m = [[rng.randint(-50, 50) for _ in range(2)] for _ in range(2)]
        bad += covering_degree(m) != det2(m)
    out.expect(f"covering degree ({bad})", bad == 0)

    # torsion matrices are multiplicative, and phi composed with its dual is its degree
    bad_t = bad_d = 0
    for _ in range(N):
        D = rng.choice(fields)
        A, B, C = (CurveModel(_random_lattice(rng, D)) for _ in range(3))
        f = Isogeny(_nonzero(rng, A, B), A, B)
        g = Isogeny(_nonzero(rng, B, C), B, C)
        r = rng.randint(2, 9)
        bad_t += torsion_matrix(compose(g, f), r) != torsion_matrix(g, r) @ torsion_matrix(f, r)
        n = isogeny_degree(f)
        bad_d += not (compose(dual_isogeny(f), f).multiplier == n == compose(f, dual_isogeny(f)).multiplier)
    out.expect(f"torsion multiplicativity ({bad_t})", bad_t == 0)
    out.expect(f"dual composition ({bad_d})", bad_d == 0)

    # number of index-d sublattices is sigma(d), every d <= 30 represented
    bad = 0
    for i in range(N):
        d = i % 30 + 1
        L = _random_lattice(rng, rng.choice(fields))
        subs = enumerate_sublattices(L, d)
        bad += len(subs) != sigma(d) or len({s.canonical() for s in subs}) != sigma(d)
    out.expect(f"sublattice counts ({bad})", bad == 0)
    _finish(5, "formula agreement suites", out, start, 60.0, f"5 x {N} samples")


def _nonzero(rng: random.Random, A: CurveModel, B: CurveModel):
    from kodaira_bundles.lattice import hom_lattice

    H = hom_lattice(A.lattice, B.lattice)
    while True:
        lam = H.element(rng.randint(-3, 3), rng.randint(-3, 3))
        if lam:
            return lam


def _walk(node, inst):
    yield node, inst
    if isinstance(node, GcdReduce):
        yield from _walk(node.child, node.reduced)
    elif isinstance(node, TorsionTwist):
        yield from _walk(node.child, inst)


def test_criterion_6_split_degree_and_reduction():
    start = time.perf_counter()
    out = Outcome()
    irreducible = reductions = 0
    for inst in generate_corpus(CORPUS_SEED, 500, 6):
        if chern_numbers(inst).delta < 0:
            continue
        try:
            plan = build_plan(inst)
        except Exception:  # counted under criterion 4
            continue
        for node, ctx in _walk(plan.root, inst):
            if isinstance(node, IrreducibleGenus2):
                irreducible += 1
                lhs, rhs = split_degree_check(ctx.c1.isogeny(), node.delta, ctx.r)
                out.expect(f"split-degree {lhs} != {rhs}", lhs == rhs)
            elif isinstance(node, GcdReduce):
                reductions += 1
                red = chern_numbers(node.reduced)
                r2 = node.reduced.r
                out.expect("gcd(r', R') = 1", gcd(r2, red.Rval) == 1)
                out.expect("R' = r'^2 Delta'", Fraction(red.Rval) == r2 * r2 * red.delta)
                out.expect("R' = R/d", red.Rval * node.d == chern_numbers(ctx).Rval)
    out.expect("irreducible nodes present", irreducible > 0)
    out.expect("reduction nodes present", reductions > 0)
    _finish(6, "split-degree identity and reduction postconditions", out, start, 60.0,
            f"{irreducible} irreducible nodes, {reductions} reductions")


def test_criterion_7_mutation_soundness(tmp_path):
    start = time.perf_counter()
    out = Outcome()
    instances = [instance_a(), instance_b(), instance_gcd(), instance_deformation(),
                 make_instance(2, 2, (1, 1), 0, torsion=1, n=3)]
    total = rejected = 0
    for j, inst in enumerate(instances):
        ip = tmp_path / f"inst{j}.json"
        ip.write_text(ser.dump_instance(inst), encoding="utf-8")
        obj = json.loads(ser.dump_plan(build_plan(inst)))
        for path in numeric_paths(obj):
            for delta in (1, -1):
                pp = tmp_path / "plan.json"
                pp.write_text(ser.dumps(mutate(obj, path, delta)), encoding="utf-8")
                with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
                    code = cli.main(["verify", "--plan", str(pp), "--instance", str(ip)])
                total += 1
                rejected += code == cli.EXIT_VERIFY_FAILED
    out.expect("at least 100 mutations", total >= 100)
    out.expect(f"{total - rejected} not rejected with exit 1", rejected == total)
    _finish(7, "verifier rejects single-field mutations", out, start, 120.0, f"{rejected}/{total} rejected")


def test_criterion_8_not_reproducible():
    record(8, "analytic content (holomorphic structure, deformation case, smoothness, moduli)", None, 0.0,
           "NOT REPRODUCIBLE: outside the lattice model; represented structurally only")
    pytest.skip("not reproducible at desk scale; documented, not tested")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
