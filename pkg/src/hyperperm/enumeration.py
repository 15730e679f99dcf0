"""Exhaustive generators, avoider counts, and the machine-checked verification runs."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator

from .bijection import (
    is_admissible,
    max_tree,
    restrict_to_kary,
    staircase_directions,
    staircase_orders,
    tree_to_perm,
)
from .core import DPermutation, negative_directions
from .patterns import has_231, has_312, has_P1
from .trees import HyperTree, KaryTree

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "CountTable",
    "all_dperms",
    "all_kary_trees",
    "all_hypertrees",
    "fuss_catalan",
    "count_avoiders",
    "count_table",
    "verify_equivalence",
    "verify_bijection",
    "VerificationReport",
]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, d: int, n: int, cost: int, budget: int):
        super().__init__(
            f"d={d}, n={n} needs {cost} permutations, over the budget of {budget}"
        )
        self.cost = cost
        self.budget = budget


def _cost(d: int, n: int) -> int:
    return math.factorial(n) ** (d - 1)


def _check_budget(d: int, n: int, budget: int | None):
    budget = DEFAULT_BUDGET if budget is None else budget
    cost = _cost(d, n)
    if cost > budget:
        raise BudgetExceeded(d, n, cost, budget)


def all_dperms(d: int, n: int, first_rows=None) -> Iterator[DPermutation]:
    """All (n!)^(d-1) d-permutations of size n in lexicographic row order.

    ``first_rows`` restricts the first row to the given candidates, which is how
    the work is split across processes.
    """
    if d < 2 or n < 0:
        raise ValueError(f"need d >= 2 and n >= 0, got d={d}, n={n}")
    perms = list(permutations(range(1, n + 1)))
    heads = perms if first_rows is None else first_rows
    for head in heads:
        for rest in product(perms, repeat=d - 2):
            yield DPermutation((tuple(head),) + rest)


@lru_cache(maxsize=None)
def _kary(k: int, n: int) -> tuple[KaryTree, ...]:
    if n == 0:
        return (KaryTree(k),)
    out = []
    for sizes in _compositions(n - 1, k):
        for kids in product(*(_kary(k, s) for s in sizes)):
            out.append(KaryTree(k, kids))
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def all_kary_trees(k: int, n: int) -> Iterator[KaryTree]:
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    yield from _kary(k, n)


@lru_cache(maxsize=None)
def _hyper(d: int, n: int, allowed: frozenset | None) -> tuple[HyperTree, ...]:
    if n == 0:
        return (HyperTree(d),)
    dirs = negative_directions(d)
    slots = [i for i, f in enumerate(dirs) if allowed is None or f in allowed]
    out = []
    for sizes in _compositions(n - 1, len(slots)):
        choices = [(HyperTree(d),)] * len(dirs)
        for slot, s in zip(slots, sizes):
            choices[slot] = _hyper(d, s, allowed)
        for kids in product(*choices):
            out.append(HyperTree(d, kids))
    return tuple(out)


def all_hypertrees(d: int, n: int, family=None) -> Iterator[HyperTree]:
    """All 2^(d-1)-ary trees with n internal nodes, optionally only under ``family``."""
    allowed = frozenset(family) if family is not None else None
    yield from _hyper(d, n, allowed)


def fuss_catalan(d: int, n: int) -> int:
    """Number of d-ary trees with n internal nodes: C(dn + 1, n) / (dn + 1)."""
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return math.comb(d * n + 1, n) // (d * n + 1)


# -- parallel plumbing -------------------------------------------------------


def _chunks(n: int, jobs: int):
    heads = list(permutations(range(1, n + 1)))
    size = max(1, -(-len(heads) // max(1, jobs)))
    return [heads[i : i + size] for i in range(0, len(heads), size)]


def _fan_out(worker, d: int, n: int, jobs: int, *extra):
    chunks = _chunks(n, jobs)
    if jobs <= 1 or len(chunks) == 1:
        return [worker(d, n, c, *extra) for c in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, *zip(*[(d, n, c, *extra) for c in chunks])))


def _count_chunk(d: int, n: int, heads, variant: str) -> int:
    second = has_231 if variant == "231" else has_312
    return sum(
        1 for p in all_dperms(d, n, heads) if not has_P1(p) and not second(p)
    )


def count_avoiders(
    d: int, n: int, *, budget: int | None = None, jobs: int = 1, variant: str = "231"
) -> int:
    """|S^{d-1}_n(P1, 231)| by exhaustion.

    ``variant="312"`` counts the (P1, 312) class instead; nothing is claimed about it.
    """
    if variant not in ("231", "312"):
        raise ValueError(f"unknown variant {variant!r}")
    _check_budget(d, n, budget)
    return sum(_fan_out(_count_chunk, d, n, jobs, variant))


@dataclass
class CountTable:
    d: int
    n_values: list[int]
    counts: list[int]
    variant: str = "231"

    def rows(self):
        for n, c in zip(self.n_values, self.counts):
            fc = fuss_catalan(self.d, n)
            yield self.d, n, c, fc, c == fc

    def to_csv(self) -> str:
        lines = ["d,n,avoiders,fuss_catalan,match"]
        for d, n, c, fc, ok in self.rows():
            lines.append(f"{d},{n},{c},{fc},{'true' if ok else 'false'}")
        return "\n".join(lines) + "\n"

    def to_bfile(self) -> str:
        return "".join(f"{n} {c}\n" for n, c in zip(self.n_values, self.counts))


def count_table(
    d: int, n_min: int, n_max: int, *, budget: int | None = None, jobs: int = 1, variant: str = "231"
) -> CountTable:
    ns = list(range(n_min, n_max + 1))
    for n in ns:
        _check_budget(d, n, budget)
    counts = [count_avoiders(d, n, budget=budget, jobs=jobs, variant=variant) for n in ns]
    return CountTable(d, ns, counts, variant)


# -- verification -------------------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    d: int
    n: int
    checked: int = 0
    counterexamples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        verdict = "ok" if self.ok else f"{len(self.counterexamples)} counterexample(s)"
        return f"{self.name} d={self.d} n={self.n}: {self.checked} checked, {verdict}"


def _equivalence_chunk(d: int, n: int, heads) -> tuple[int, list[str]]:
    orders = staircase_orders(d)
    checked, bad = 0, []
    for p in all_dperms(d, n, heads):
        checked += 1
        avoid = not has_P1(p) and not has_231(p)
        if avoid != is_admissible(p, orders):
            bad.append(f"{p}: avoids={avoid}, admissible={not avoid}")
    return checked, bad


def verify_equivalence(d: int, n: int, *, budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Avoiding P1 and 231 coincides with admissibility for the staircase orders."""
    _check_budget(d, n, budget)
    report = VerificationReport("equivalence", d, n)
    for checked, bad in _fan_out(_equivalence_chunk, d, n, jobs):
        report.checked += checked
        report.counterexamples.extend(bad)
    return report


def _avoider_chunk(d: int, n: int, heads) -> list[DPermutation]:
    return [p for p in all_dperms(d, n, heads) if not has_P1(p) and not has_231(p)]


def verify_bijection(d: int, n: int, *, budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Avoiders <-> staircase trees <-> d-ary trees, checked both ways."""
    _check_budget(d, n, budget)
    orders = staircase_orders(d)
    family = staircase_directions(d)
    report = VerificationReport("bijection", d, n)
    avoiders = [p for chunk in _fan_out(_avoider_chunk, d, n, jobs) for p in chunk]

    images: dict[HyperTree, DPermutation] = {}
    for p in avoiders:
        report.checked += 1
        t = max_tree(p)
        if not t.internal_directions() <= set(family):
            report.counterexamples.append(f"{p}: max-tree uses directions outside the staircase family")
            continue
        if t in images:
            report.counterexamples.append(f"{p} and {images[t]} share the max-tree {t}")
            continue
        images[t] = p
        back = tree_to_perm(t, orders)
        if back != p:
            report.counterexamples.append(f"{p}: tree_to_perm(max_tree) gave {back}")

    for t in all_hypertrees(d, n, family):
        report.checked += 1
        p = tree_to_perm(t, orders)
        if max_tree(p) != t:
            report.counterexamples.append(f"tree {t}: max_tree(tree_to_perm) differs")
        if t not in images:
            report.counterexamples.append(f"tree {t} has no avoiding preimage")

    kary = set()
    for t in images:
        kary.add(restrict_to_kary(t, family))
    expected = set(all_kary_trees(d, n))
    if kary != expected or len(images) != len(expected):
        report.counterexamples.append(
            f"{len(images)} avoiders map to {len(kary)} {d}-ary trees, expected {len(expected)}"
        )
    return report
