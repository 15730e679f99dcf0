"""d-permutations, their point diagrams, and directions between points.

A d-permutation of size n is stored as d-1 rows, each a permutation of
1..n.  Coordinate 0 of point i is its position i; coordinate l >= 1 is
``rows[l-1][i-1]``.  Everything is 1-based at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Direction",
    "DPermutation",
    "Point",
    "PermutationParseError",
    "direction_between",
    "opposite",
    "negative_directions",
    "parse_perm",
    "format_perm",
]


class PermutationParseError(ValueError):
    pass


@dataclass(frozen=True)
class Direction:
    """A sign vector in {+1, -1}^d."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"direction signs must be +1/-1, got {self.signs!r}")

    @classmethod
    def from_string(cls, text: str) -> Direction:
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1].replace(",", "")
        try:
            return cls(tuple({"+": 1, "-": -1}[c] for c in text))
        except KeyError:
            raise ValueError(f"bad direction string {text!r}") from None

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __repr__(self):
        return f"Direction('{self}')"

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, axis):
        return self.signs[axis]

    def __neg__(self):
        return Direction(tuple(-s for s in self.signs))

    @property
    def d(self) -> int:
        return len(self.signs)

    def is_negative_on(self, axis: int) -> bool:
        return self.signs[axis] < 0


def opposite(direction: Direction) -> Direction:
    return -direction


def negative_directions(d: int, axis: int | None = None) -> list[Direction]:
    """Directions negative on ``axis`` (default: the last axis), canonically ordered.

    The signs on the remaining axes are read as bits (- -> 0, + -> 1), most
    significant first, and listed in ascending order.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if axis is None:
        axis = d - 1
    if not 0 <= axis < d:
        raise ValueError(f"axis {axis} out of range for d={d}")
    out = []
    for rest in product((-1, 1), repeat=d - 1):
        signs = list(rest)
        signs.insert(axis, -1)
        out.append(Direction(tuple(signs)))
    return out


class Point(NamedTuple):
    index: int
    coords: tuple[int, ...]


@dataclass(frozen=True)
class DPermutation:
    """A tuple of d-1 permutations of {1..n}.

    >>> p = DPermutation.from_rows([3, 2, 1, 4, 5], [5, 2, 1, 3, 4])
    >>> p.d, p.n
    (3, 5)
    >>> p.coords[0]
    (1, 3, 5)
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("a d-permutation needs at least one row (d >= 2)")
        n = len(rows[0])
        expected = set(range(1, n + 1))
        for r, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError(f"row {r} has length {len(row)}, expected {n}")
            if set(row) != expected:
                seen = set()
                for v in row:
                    if v in seen or v not in expected:
                        raise ValueError(f"row {r} is not a permutation of 1..{n}: bad value {v}")
                    seen.add(v)

    @classmethod
    def from_rows(cls, *rows: Iterable[int]) -> DPermutation:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def empty(cls, d: int) -> DPermutation:
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        return cls(((),) * (d - 1))

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]], d: int | None = None) -> DPermutation:
        """Build from d-dimensional points; coordinate 0 must be a permutation of 1..n."""
        if not points:
            if d is None:
                raise ValueError("dimension is required for an empty point set")
            return cls.empty(d)
        pts = sorted(points, key=lambda p: p[0])
        if [p[0] for p in pts] != list(range(1, len(pts) + 1)):
            raise ValueError("coordinate 0 is not a permutation of 1..n")
        width = len(pts[0])
        return cls(tuple(tuple(p[l] for p in pts) for l in range(1, width)))

    @property
    def d(self) -> int:
        return len(self.rows) + 1

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __len__(self):
        return self.n

    @cached_property
    def coords(self) -> tuple[tuple[int, ...], ...]:
        """Coordinates of every point, indexed by position - 1."""
        return tuple(
            (i + 1,) + tuple(row[i] for row in self.rows) for i in range(self.n)
        )

    def point(self, index: int) -> Point:
        if not 1 <= index <= self.n:
            raise ValueError(f"point index {index} out of range 1..{self.n}")
        return Point(index, self.coords[index - 1])

    def points(self) -> list[Point]:
        return [Point(i + 1, c) for i, c in enumerate(self.coords)]

    def index_of(self, axis: int, value: int) -> int:
        """Position of the point whose coordinate on ``axis`` equals ``value``."""
        for i, c in enumerate(self.coords):
            if c[axis] == value:
                return i + 1
        raise ValueError(f"no point with coordinate {value} on axis {axis}")

    def __str__(self):
        return format_perm(self)


def direction_between(perm: DPermutation, a: int, b: int) -> Direction:
    """Sign vector of coords(b) - coords(a); ``a`` and ``b`` are 1-based positions."""
    if a == b:
        raise ValueError("the direction from a point to itself is undefined")
    pa = perm.point(a).coords
    pb = perm.point(b).coords
    return Direction(tuple(1 if y > x else -1 for x, y in zip(pa, pb)))


def rank_normalize(values: Sequence[int]) -> tuple[int, ...]:
    """Replace distinct values by their ranks 1..len(values)."""
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for r, i in enumerate(order, start=1):
        out[i] = r
    return tuple(out)


def subpermutation(perm: DPermutation, positions: Iterable[int]) -> DPermutation:
    """The d-permutation induced by a set of 1-based positions, rank-normalized."""
    pts = [perm.coords[i - 1] for i in sorted(set(positions))]
    if not pts:
        return DPermutation.empty(perm.d)
    cols = [rank_normalize([p[l] for p in pts]) for l in range(perm.d)]
    return DPermutation(tuple(cols[1:]))


def parse_perm(text: str) -> DPermutation:
    """Parse ``"3 2 1 4 5 / 5 2 1 3 4"``; dimension is row count + 1.

    A bare row of digits without spaces (``"41523"``) is accepted when n < 10.
    """
    rows = []
    for r, chunk in enumerate(text.strip().split("/"), start=1):
        tokens = chunk.split()
        if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit():
            tokens = list(tokens[0])
        try:
            row = [int(t) for t in tokens]
        except ValueError as exc:
            raise PermutationParseError(f"row {r}: {exc}") from None
        rows.append(row)
    n = len(rows[0])
    for r, row in enumerate(rows, start=1):
        if len(row) != n:
            raise PermutationParseError(f"row {r} has {len(row)} values, expected {n}")
        seen = set()
        for v in row:
            if not 1 <= v <= n or v in seen:
                raise PermutationParseError(
                    f"row {r} is not a permutation of 1..{n}: offending value {v}"
                )
            seen.add(v)
    return DPermutation(tuple(tuple(row) for row in rows))


def format_perm(perm: DPermutation) -> str:
    return " / ".join(" ".join(map(str, row)) for row in perm.rows)
