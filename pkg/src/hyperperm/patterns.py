"""Pattern containment through direct projections.

``contains`` is the exhaustive reference engine.  ``has_P1`` and ``has_231``
are the fast detectors used by the enumeration code.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .core import DPermutation, rank_normalize
from .bijection import staircase_directions

__all__ = [
    "P1",
    "P231",
    "P312",
    "Witness",
    "project",
    "contains",
    "occurrences",
    "avoids",
    "has_P1",
    "has_231",
    "has_312",
    "sequence_has_231",
]

# x up, y down, z up across two points
P1 = DPermutation(((2, 1), (1, 2)))
P231 = DPermutation(((2, 3, 1),))
P312 = DPermutation(((3, 1, 2),))


@dataclass(frozen=True)
class Witness:
    """An occurrence: projection coordinates, positions in the projection, original points."""

    indices: tuple[int, ...]
    positions: tuple[int, ...]
    points: tuple[int, ...]
    occurrence: DPermutation


def _check_indices(d: int, indices: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(indices)
    if len(idx) < 2:
        raise ValueError("a projection needs at least two coordinates")
    if any(not 0 <= i < d for i in idx):
        raise ValueError(f"projection indices {idx} out of range 0..{d - 1}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"projection indices {idx} are not strictly ascending")
    return idx


def _projected_points(perm: DPermutation, idx: tuple[int, ...]):
    # points sorted by the first chosen coordinate
    return sorted(range(perm.n), key=lambda i: perm.coords[i][idx[0]])


def project(perm: DPermutation, indices: Sequence[int]) -> DPermutation:
    """The direct projection on ascending coordinates ``indices`` (0 = position)."""
    idx = _check_indices(perm.d, indices)
    if perm.n == 0:
        return DPermutation.empty(len(idx))
    order = _projected_points(perm, idx)
    rows = tuple(rank_normalize([perm.coords[i][l] for i in order]) for l in idx[1:])
    return DPermutation(rows)


def _order_isomorphic(values: Sequence[int], pattern_row: Sequence[int]) -> bool:
    k = len(values)
    for a in range(k):
        for b in range(a + 1, k):
            if (values[a] < values[b]) != (pattern_row[a] < pattern_row[b]):
                return False
    return True


def occurrences(perm: DPermutation, pattern: DPermutation) -> Iterator[Witness]:
    """Every occurrence of ``pattern``, projections first, then point sets, lexicographically."""
    dp, k = pattern.d, pattern.n
    if dp > perm.d or k > perm.n:
        return
    for idx in combinations(range(perm.d), dp):
        order = _projected_points(perm, idx)
        cols = [[perm.coords[i][l] for i in order] for l in idx[1:]]
        for pos in combinations(range(perm.n), k):
            if all(
                _order_isomorphic([col[c] for c in pos], prow)
                for col, prow in zip(cols, pattern.rows)
            ):
                points = tuple(order[c] + 1 for c in pos)
                occ = DPermutation(tuple(rank_normalize([col[c] for c in pos]) for col in cols))
                yield Witness(idx, tuple(c + 1 for c in pos), points, occ)


def contains(perm: DPermutation, pattern: DPermutation) -> Witness | None:
    """The lexicographically first occurrence of ``pattern`` in ``perm``, or ``None``."""
    return next(occurrences(perm, pattern), None)


def avoids(perm: DPermutation, *patterns: DPermutation) -> bool:
    return all(contains(perm, p) is None for p in patterns)


def has_P1(perm: DPermutation) -> bool:
    """Some pair's direction from its higher point (last axis) leaves the staircase family."""
    d = perm.d
    if d < 3:
        return False
    allowed = {f.signs for f in staircase_directions(d)}
    coords = perm.coords
    for a in range(perm.n):
        ca = coords[a]
        for b in range(a + 1, perm.n):
            cb = coords[b]
            hi, lo = (ca, cb) if ca[-1] > cb[-1] else (cb, ca)
            f = tuple(1 if y > x else -1 for x, y in zip(hi, lo))
            if f not in allowed:
                return True
    return False


def sequence_has_231(seq: Sequence[int]) -> bool:
    """Stack scan: a value below anything already popped closes a 231."""
    stack: list[int] = []
    floor = None
    for x in seq:
        if floor is not None and x < floor:
            return True
        while stack and stack[-1] < x:
            floor = stack.pop()
        stack.append(x)
    return False


def _projections_2d(perm: DPermutation):
    coords = perm.coords
    for i, j in combinations(range(perm.d), 2):
        order = sorted(range(perm.n), key=lambda p: coords[p][i])
        yield [coords[p][j] for p in order]


def has_231(perm: DPermutation) -> bool:
    return any(sequence_has_231(seq) for seq in _projections_2d(perm))


def has_312(perm: DPermutation) -> bool:
    # 312 is the reverse-complement of 231
    n = perm.n
    return any(sequence_has_231([n + 1 - v for v in reversed(seq)]) for seq in _projections_2d(perm))
