"""Deterministic random instances, stratified over the routing branches."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from math import gcd

from .curves import CurveModel
from .exactnum import QuadInt
from .kodaira import ChernInstance, KodairaSurface, NSClass, chern_numbers, invariants
from .lattice import Lattice2, sublattice_hnfs

__all__ = ["CORPUS_FIELDS", "Branch", "branch_of", "generate_corpus", "random_instance", "summarize"]

CORPUS_FIELDS = (1, 2, 3, 7)


class Branch:
    NEGATIVE = "negative"
    DEFORMATION = "d=r"
    REDUCE = "1<d<r"
    COPRIME = "d=1"

    ALL = (NEGATIVE, DEFORMATION, REDUCE, COPRIME)


def branch_of(inst: ChernInstance) -> str:
    nums = chern_numbers(inst)
    if nums.delta < 0:
        return Branch.NEGATIVE
    if nums.d == inst.r:
        return Branch.DEFORMATION
    return Branch.REDUCE if nums.d > 1 else Branch.COPRIME


def _random_curve(rng: random.Random, D: int, label: str) -> CurveModel:
    L = Lattice2.standard(D)
    index = rng.choice((1, 1, 2, 3))
    if index > 1:
        L = L.sublattice(rng.choice(sublattice_hnfs(index)))
    return CurveModel(L, label)


def _random_hom(rng: random.Random, X: KodairaSurface, radius: int = 3) -> QuadInt:
    H = X.hom()
    while True:
        x, y = rng.randint(-radius, radius), rng.randint(-radius, radius)
        if x or y:
            return H.element(x, y)


def _has_composite(max_r: int) -> bool:
    return any(r % p == 0 and p < r for r in range(4, max_r + 1) for p in range(2, r))


def random_instance(rng: random.Random, branch: str, max_r: int) -> ChernInstance:
    """One instance routed to ``branch``; ``1<d<r`` needs a composite ``r <= max_r``."""
    if max_r < 2:
        raise ValueError("max_r must be at least 2")
    if branch == Branch.REDUCE:
        ranks = [r for r in range(4, max_r + 1) if any(r % p == 0 for p in range(2, r))]
        if not ranks:
            raise ValueError(f"no composite rank <= {max_r}")
    else:
        ranks = list(range(2, max_r + 1))
    D = rng.choice(CORPUS_FIELDS)
    n = rng.choice((1, 1, 2, 3, 4))
    t = rng.randrange(n)
    found = None
    while found is None:
        X = KodairaSurface(_random_curve(rng, D, "B"), _random_curve(rng, D, "E"), n)
        # some surfaces admit no suitable class (e.g. all degrees even with r = 2)
        for _ in range(64):
            r = rng.choice(ranks)
            lam = _random_hom(rng, X)
            deg = X.hom().degree(lam)
            g = gcd(r, deg)
            if branch == Branch.DEFORMATION:
                if rng.random() < 0.25:
                    lam, deg, g = QuadInt(0, 0, D), 0, r
                elif g != r:
                    lam, deg, g = lam * r, deg * r * r, r
            if branch == Branch.COPRIME and g != 1:
                continue
            if branch == Branch.REDUCE and not 1 < g < r:
                continue
            found = (r, lam, deg)
            break
    r, lam, deg = found
    c1 = NSClass(X, lam, t)
    # R = r*c2 + (r-1)*deg; R >= 0 iff c2 >= ceil(-(r-1)*deg / r)
    c2_min = -((r - 1) * deg // r)
    if branch == Branch.NEGATIVE:
        c2 = c2_min - 1 - rng.randrange(3)
    else:
        c2 = c2_min + rng.randrange(4)
        if branch == Branch.COPRIME and r * c2 + (r - 1) * deg < 1:
            c2 += 1
    inst = ChernInstance(X, r, c1, c2)
    assert branch_of(inst) == branch, (branch, branch_of(inst))
    return inst


def generate_corpus(seed: int, count: int, max_r: int = 6) -> list[ChernInstance]:
    """``count`` instances cycling through the branches reachable with ``r <= max_r``."""
    rng = random.Random(seed)
    branches = [b for b in Branch.ALL if b != Branch.REDUCE or _has_composite(max_r)]
    return [random_instance(rng, branches[i % len(branches)], max_r) for i in range(count)]


@dataclass(frozen=True)
class CorpusSummary:
    count: int
    branches: dict[str, int]
    regions: dict[str, int]
    ranks: dict[int, int]
    fields: dict[int, int]

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "branches": dict(sorted(self.branches.items())),
            "regions": dict(sorted(self.regions.items())),
            "ranks": {str(k): v for k, v in sorted(self.ranks.items())},
            "fields": {str(k): v for k, v in sorted(self.fields.items())},
        }


def summarize(corpus: list[ChernInstance]) -> CorpusSummary:
    return CorpusSummary(
        count=len(corpus),
        branches=dict(Counter(branch_of(i) for i in corpus)),
        regions=dict(Counter(invariants(i).region.value for i in corpus)),
        ranks=dict(Counter(i.r for i in corpus)),
        fields=dict(Counter(i.surface.D for i in corpus)),
    )
