"""Max-trees of d-permutations, admissible classes, and the inverse construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DPermutation, Direction, negative_directions
from .trees import HyperTree, KaryTree

__all__ = [
    "OrderSet",
    "RestrictionError",
    "max_tree",
    "min_tree",
    "relabel",
    "is_compatible",
    "staircase_directions",
    "staircase_orders",
    "compatible_order_sets",
    "is_admissible",
    "tree_to_perm",
    "restrict_to_kary",
    "pad_from_kary",
    "parse_orders",
    "format_orders",
]


class RestrictionError(ValueError):
    pass


def _as_direction(f) -> Direction:
    return Direction.from_string(f) if isinstance(f, str) else f


@dataclass(frozen=True)
class OrderSet:
    """One total order per axis on a family of directions from F^d.

    ``orders[l]`` lists the family from first to last on axis ``l``.
    """

    d: int
    family: tuple[Direction, ...]
    orders: tuple[tuple[Direction, ...], ...]

    def __post_init__(self):
        fam = tuple(_as_direction(f) for f in self.family)
        orders = tuple(tuple(_as_direction(f) for f in o) for o in self.orders)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "orders", orders)
        if len(orders) != self.d:
            raise ValueError(f"need {self.d} orders, got {len(orders)}")
        if len(set(fam)) != len(fam):
            raise ValueError("family contains a repeated direction")
        for f in fam:
            if f.d != self.d or f[-1] != -1:
                raise ValueError(f"direction {f} is not in F^{self.d}")
        for l, o in enumerate(orders):
            if len(o) != len(fam) or set(o) != set(fam):
                raise ValueError(f"order on axis {l} is not a total order on the family")

    @classmethod
    def from_orders(cls, orders: Sequence[Sequence[Direction | str]]) -> OrderSet:
        orders = [[_as_direction(f) for f in o] for o in orders]
        return cls(len(orders), tuple(orders[0]), tuple(tuple(o) for o in orders))

    def rank(self, axis: int) -> dict[Direction, int]:
        return {f: i for i, f in enumerate(self.orders[axis])}


def is_compatible(orders: OrderSet) -> bool:
    """No direction positive on axis l precedes one negative on axis l, for every l."""
    for l, order in enumerate(orders.orders):
        seen_plus = False
        for f in order:
            if f[l] > 0:
                seen_plus = True
            elif seen_plus:
                return False
    return True


def staircase_directions(d: int) -> list[Direction]:
    """dir^i = i plus signs followed by d - i minus signs, for i = 0..d-1."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return [Direction((1,) * i + (-1,) * (d - i)) for i in range(d)]


def staircase_orders(d: int) -> OrderSet:
    fam = tuple(staircase_directions(d))
    return OrderSet(d, fam, (fam,) * d)


def compatible_order_sets(d: int, family: Sequence[Direction] | None = None):
    """Every compatible order set on ``family`` (default F^d)."""
    from itertools import permutations, product

    fam = tuple(family) if family is not None else tuple(negative_directions(d))
    per_axis = []
    for l in range(d):
        minus = [f for f in fam if f[l] < 0]
        plus = [f for f in fam if f[l] > 0]
        per_axis.append(
            [a + b for a in permutations(minus) for b in permutations(plus)]
        )
    for choice in product(*per_axis):
        yield OrderSet(d, fam, tuple(choice))


# -- max/min trees ----------------------------------------------------------


def _direction(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if y > x else -1 for x, y in zip(a, b))


def _check_axis(perm: DPermutation, axis: int) -> int:
    if axis < 0:
        axis += perm.d
    if not 0 <= axis < perm.d:
        raise ValueError(f"axis out of range for d={perm.d}")
    return axis


def _build(coords, members: list[int], d: int, axis: int, use_max: bool) -> HyperTree:
    if not members:
        return HyperTree(d, None, axis)
    pick = max if use_max else min
    root = pick(members, key=lambda i: coords[i][axis])
    rc = coords[root]
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in members:
        if i == root:
            continue
        f = _direction(rc, coords[i])
        if not use_max:
            f = tuple(-s for s in f)
        groups.setdefault(f, []).append(i)
    kids = tuple(
        _build(coords, groups.get(f.signs, []), d, axis, use_max)
        for f in negative_directions(d, axis)
    )
    return HyperTree(d, kids, axis, label=rc[axis])


def max_tree(perm: DPermutation, axis: int = -1) -> HyperTree:
    """Recursive decomposition around the point maximal on ``axis``.

    Each child ``f`` holds the points lying in direction ``f`` from the root.
    Labels are the points' coordinates on ``axis``.
    """
    axis = _check_axis(perm, axis)
    return _build(perm.coords, list(range(perm.n)), perm.d, axis, True)


def min_tree(perm: DPermutation, axis: int = -1) -> HyperTree:
    """Dual of :func:`max_tree` around the minimal point.

    A branch towards point p is keyed by the negation of the direction from the
    root to p, so min- and max-trees share child slots.
    """
    axis = _check_axis(perm, axis)
    return _build(perm.coords, list(range(perm.n)), perm.d, axis, False)


def relabel(tree: HyperTree, mapping) -> HyperTree:
    """Move every child to slot ``mapping(direction)``; ``mapping`` must permute the slots."""
    if tree.is_leaf:
        return tree
    kids = {mapping(f): relabel(c, mapping) for f, c in tree.items()}
    if len(kids) != len(tree.children):
        raise ValueError("relabelling is not a bijection on child slots")
    return HyperTree.node(tree.d, kids, tree.axis, tree.label)


# -- admissibility ----------------------------------------------------------


def _require_compatible(orders: OrderSet, d: int):
    if orders.d != d:
        raise ValueError(f"order set has dimension {orders.d}, permutation has {d}")
    if not is_compatible(orders):
        raise ValueError("order set is not compatible")


def is_admissible(perm: DPermutation, orders: OrderSet) -> bool:
    """Whether the max-tree blocks of ``perm`` are laid out as ``orders`` prescribes.

    Internal nodes under directions outside the order family are rejected.
    """
    d = perm.d
    _require_compatible(orders, d)
    family = set(orders.family)
    ranks = [orders.rank(l) for l in range(d)]
    coords = perm.coords
    last = d - 1

    stack = [list(range(perm.n))]
    while stack:
        members = stack.pop()
        if len(members) <= 1:
            continue
        root = max(members, key=lambda i: coords[i][last])
        rc = coords[root]
        groups: dict[Direction, list[int]] = {}
        for i in members:
            if i != root:
                groups.setdefault(Direction(_direction(rc, coords[i])), []).append(i)
        if not family.issuperset(groups):
            return False
        for l in range(d):
            prev_max = None
            for f in sorted(groups, key=ranks[l].__getitem__):
                vals = [coords[i][l] for i in groups[f]]
                if prev_max is not None and min(vals) < prev_max:
                    return False
                prev_max = max(vals)
        stack.extend(groups.values())
    return True


def tree_to_perm(tree: HyperTree, orders: OrderSet) -> DPermutation:
    """The unique permutation admissible for ``orders`` whose max-tree is ``tree``.

    Blocks for the children are laid out in consecutive value ranges in the
    order given on each axis; the root sits right after the blocks that are
    negative on that axis (on the last axis that makes it the maximum).
    """
    d = tree.d
    _require_compatible(orders, d)
    if tree.axis != d - 1:
        raise ValueError("tree_to_perm expects a tree built on the last axis")
    family = set(orders.family)
    ranks = [orders.rank(l) for l in range(d)]

    def build(t: HyperTree) -> list[list[int]]:
        # returns points as coordinate lists with values 1..size on every axis
        if t.is_leaf:
            return []
        blocks = {}
        for f, c in t.items():
            if c.is_leaf:
                continue
            if f not in family:
                raise ValueError(f"tree has an internal node under direction {f}, outside the order family")
            blocks[f] = build(c)
        pts = [p for f in blocks for p in blocks[f]]
        root = [0] * d
        for l in range(d):
            offset = 0
            root_placed = False
            for f in sorted(blocks, key=ranks[l].__getitem__):
                if f[l] > 0 and not root_placed:
                    offset += 1
                    root[l] = offset
                    root_placed = True
                for p in blocks[f]:
                    p[l] += offset
                offset += len(blocks[f])
            if not root_placed:
                root[l] = offset + 1
        pts.append(root)
        return pts

    pts = build(tree)
    return DPermutation.from_points(pts, d=d)


# -- direction restriction ---------------------------------------------------


def restrict_to_kary(
    tree: HyperTree,
    family: Iterable[Direction | str],
    child_order: Sequence[Direction | str] | None = None,
) -> KaryTree:
    """Drop the child slots outside ``family``; survivors are ordered by ``child_order``."""
    fam = [_as_direction(f) for f in family]
    order = [_as_direction(f) for f in child_order] if child_order is not None else fam
    if set(order) != set(fam) or len(order) != len(fam):
        raise ValueError("child_order must list exactly the family")
    k = len(order)

    def go(t: HyperTree, path: tuple[Direction, ...]) -> KaryTree:
        if t.is_leaf:
            return KaryTree(k)
        kids = dict(t.items())
        for f, c in kids.items():
            if f not in order and not c.is_leaf:
                where = "/".join(map(str, path + (f,)))
                name = f"label {c.label}" if c.label is not None else f"path {where}"
                raise RestrictionError(f"internal node ({name}) sits under direction {f} outside the family")
        return KaryTree(k, tuple(go(kids[f], path + (f,)) for f in order))

    return go(tree, ())


def pad_from_kary(
    tree: KaryTree,
    family: Iterable[Direction | str],
    d: int,
    child_order: Sequence[Direction | str] | None = None,
) -> HyperTree:
    """Inverse of :func:`restrict_to_kary`: fill the missing slots with leaves."""
    fam = [_as_direction(f) for f in family]
    order = [_as_direction(f) for f in child_order] if child_order is not None else fam
    if len(order) != tree.k:
        raise ValueError(f"family has {len(order)} directions but the tree is {tree.k}-ary")

    def go(t: KaryTree) -> HyperTree:
        if t.is_leaf:
            return HyperTree(d)
        return HyperTree.node(d, {f: go(c) for f, c in zip(order, t.children)})

    return go(tree)


# -- text format --------------------------------------------------------------


def parse_orders(text: str) -> OrderSet:
    """One line per axis, e.g. ``---<+--<++-``; blank lines and ``#`` comments ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty order set")
    orders = [[Direction.from_string(tok) for tok in ln.split("<")] for ln in lines]
    return OrderSet.from_orders(orders)


def format_orders(orders: OrderSet) -> str:
    return "\n".join("<".join(str(f) for f in o) for o in orders.orders) + "\n"
