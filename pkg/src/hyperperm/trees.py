"""Direction-labelled 2^(d-1)-ary trees, plain k-ary trees, and their text formats.

Serialization grammar (children in canonical direction order)::

    tree := "." | "(" tree tree ... ")"

Node labels ride along for diagnostics and DOT output but never take part in
equality: two trees are equal when their shapes (and dimension/axis) match.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .core import Direction, negative_directions

__all__ = [
    "HyperTree",
    "KaryTree",
    "TreeParseError",
    "internal_node_count",
    "leaf_count",
    "subtree_membership",
    "find_node",
    "parse_tree",
    "format_tree",
    "parse_kary",
    "format_kary",
    "to_dot",
    "to_json",
    "from_json",
]


class TreeParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class HyperTree:
    """A 2^(d-1)-ary tree whose children are keyed by directions negative on ``axis``.

    ``children`` is ``None`` for a leaf, otherwise a tuple in the canonical
    order of :func:`negative_directions`.
    """

    d: int
    children: tuple[HyperTree, ...] | None = None
    axis: int = -1
    label: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.axis < 0:
            object.__setattr__(self, "axis", self.d + self.axis)
        if self.children is not None:
            kids = tuple(self.children)
            object.__setattr__(self, "children", kids)
            if len(kids) != 2 ** (self.d - 1):
                raise ValueError(
                    f"internal node needs {2 ** (self.d - 1)} children, got {len(kids)}"
                )
            for c in kids:
                if c.d != self.d or c.axis != self.axis:
                    raise ValueError("child tree has mismatched dimension or axis")

    @classmethod
    def leaf(cls, d: int, axis: int = -1) -> HyperTree:
        return cls(d, None, axis)

    @classmethod
    def node(cls, d: int, children, axis: int = -1, label: int | None = None) -> HyperTree:
        """Internal node from a sequence in canonical order or a ``{direction: subtree}`` map.

        Directions missing from a map become leaves.
        """
        ax = d + axis if axis < 0 else axis
        if isinstance(children, dict):
            dirs = negative_directions(d, ax)
            keyed = {
                (Direction.from_string(k) if isinstance(k, str) else k): v
                for k, v in children.items()
            }
            unknown = set(keyed) - set(dirs)
            if unknown:
                raise ValueError(f"directions {sorted(map(str, unknown))} are not child slots")
            children = [keyed.get(f, cls(d, None, ax)) for f in dirs]
        return cls(d, tuple(children), ax, label)

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def directions(self) -> list[Direction]:
        return negative_directions(self.d, self.axis)

    def items(self) -> list[tuple[Direction, HyperTree]]:
        if self.children is None:
            return []
        return list(zip(self.directions, self.children))

    def child(self, direction: Direction | str) -> HyperTree:
        if isinstance(direction, str):
            direction = Direction.from_string(direction)
        if self.children is None:
            raise ValueError("a leaf has no children")
        return self.children[self.directions.index(direction)]

    def walk(self, path: tuple[Direction, ...] = ()) -> Iterator[tuple[tuple[Direction, ...], HyperTree]]:
        """Pre-order traversal of internal nodes, yielding ``(path, node)``."""
        if self.children is None:
            return
        yield path, self
        for f, c in self.items():
            yield from c.walk(path + (f,))

    def at(self, path: Sequence[Direction | str]) -> HyperTree:
        node = self
        for f in path:
            node = node.child(f)
        return node

    def internal_directions(self) -> set[Direction]:
        """Directions under which some internal node hangs."""
        out = set()
        for _, node in self.walk():
            for f, c in node.items():
                if not c.is_leaf:
                    out.add(f)
        return out

    def __str__(self):
        return format_tree(self)


@dataclass(frozen=True)
class KaryTree:
    """An ordered k-ary tree; ``children`` is ``None`` for a leaf."""

    k: int
    children: tuple[KaryTree, ...] | None = None

    def __post_init__(self):
        if self.children is not None:
            kids = tuple(self.children)
            object.__setattr__(self, "children", kids)
            if len(kids) != self.k:
                raise ValueError(f"internal node needs {self.k} children, got {len(kids)}")
            if any(c.k != self.k for c in kids):
                raise ValueError("child tree has mismatched arity")

    @classmethod
    def leaf(cls, k: int) -> KaryTree:
        return cls(k)

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def __str__(self):
        return format_kary(self)


Tree = Union[HyperTree, KaryTree]


def internal_node_count(tree: Tree) -> int:
    if tree.children is None:
        return 0
    return 1 + sum(internal_node_count(c) for c in tree.children)


def leaf_count(tree: Tree) -> int:
    if tree.children is None:
        return 1
    return sum(leaf_count(c) for c in tree.children)


def find_node(tree: HyperTree, label: int) -> tuple[Direction, ...]:
    """Path from the root to the internal node carrying ``label``."""
    for path, node in tree.walk():
        if node.label == label:
            return path
    raise ValueError(f"no internal node labelled {label}")


def _resolve(tree: HyperTree, ref) -> tuple[Direction, ...]:
    if isinstance(ref, int):
        return find_node(tree, ref)
    path = tuple(Direction.from_string(f) if isinstance(f, str) else f for f in ref)
    try:
        node = tree.at(path)
    except ValueError:
        node = None
    if node is None or node.is_leaf:
        raise ValueError(f"path {[str(f) for f in path]} does not name an internal node")
    return path


def subtree_membership(tree: HyperTree, ancestor, descendant) -> Direction | None:
    """Direction of the child subtree of ``ancestor`` that holds ``descendant``.

    Nodes are referenced by label (int) or by path (sequence of directions).
    Returns ``None`` when ``descendant`` is not strictly below ``ancestor``.
    """
    a = _resolve(tree, ancestor)
    b = _resolve(tree, descendant)
    if len(b) > len(a) and b[: len(a)] == a:
        return b[len(a)]
    return None


# -- text format ------------------------------------------------------------


def format_tree(tree: HyperTree) -> str:
    if tree.children is None:
        return "."
    return "(" + " ".join(format_tree(c) for c in tree.children) + ")"


def format_kary(tree: KaryTree) -> str:
    if tree.children is None:
        return "."
    return "(" + " ".join(format_kary(c) for c in tree.children) + ")"


class _Reader:
    def __init__(self, text: str, arity: int):
        self.text = text
        self.pos = 0
        self.arity = arity

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def read(self, make_leaf, make_node):
        self.skip()
        if self.pos >= len(self.text):
            raise TreeParseError("unexpected end of input", self.pos)
        c = self.text[self.pos]
        if c == ".":
            self.pos += 1
            return make_leaf()
        if c != "(":
            raise TreeParseError(f"unexpected character {c!r}", self.pos)
        start = self.pos
        self.pos += 1
        kids = []
        while True:
            self.skip()
            if self.pos < len(self.text) and self.text[self.pos] == ")":
                self.pos += 1
                break
            if len(kids) == self.arity:
                raise TreeParseError(f"node has more than {self.arity} children", self.pos)
            kids.append(self.read(make_leaf, make_node))
        if len(kids) != self.arity:
            raise TreeParseError(
                f"node has {len(kids)} children, expected {self.arity}", start
            )
        return make_node(kids)

    def finish(self):
        self.skip()
        if self.pos != len(self.text):
            raise TreeParseError("trailing characters", self.pos)


def parse_tree(text: str, d: int, axis: int = -1) -> HyperTree:
    ax = d + axis if axis < 0 else axis
    reader = _Reader(text, 2 ** (d - 1))
    tree = reader.read(lambda: HyperTree(d, None, ax), lambda kids: HyperTree(d, tuple(kids), ax))
    reader.finish()
    return tree


def parse_kary(text: str, k: int) -> KaryTree:
    reader = _Reader(text, k)
    tree = reader.read(lambda: KaryTree(k), lambda kids: KaryTree(k, tuple(kids)))
    reader.finish()
    return tree


# -- DOT / JSON -------------------------------------------------------------


def to_dot(tree: Tree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    counter = [0]

    def emit(t) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        if t.children is None:
            lines.append(f'  {nid} [shape=square, width=0.12, height=0.12, label="", style=filled];')
            return nid
        label = getattr(t, "label", None)
        lines.append(f'  {nid} [label="{"" if label is None else label}"];')
        if isinstance(t, HyperTree):
            edges = [(str(f), c) for f, c in t.items()]
        else:
            edges = [(str(i), c) for i, c in enumerate(t.children)]
        for edge_label, c in edges:
            cid = emit(c)
            lines.append(f'  {nid} -> {cid} [label="{edge_label}"];')
        return nid

    emit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json_obj(tree: HyperTree):
    if tree.children is None:
        return None
    obj = {"children": {str(f): _json_obj(c) for f, c in tree.items()}}
    if tree.label is not None:
        obj["label"] = tree.label
    return obj


def to_json(tree: HyperTree, **kwargs) -> str:
    """JSON mirror of the node structure; leaves are ``null``."""
    doc = {"d": tree.d, "axis": tree.axis, "tree": _json_obj(tree)}
    return json.dumps(doc, **kwargs)


def from_json(text: str) -> HyperTree:
    doc = json.loads(text)
    d, axis = doc["d"], doc["axis"]

    def build(obj):
        if obj is None:
            return HyperTree(d, None, axis)
        kids = {Direction.from_string(k): build(v) for k, v in obj["children"].items()}
        return HyperTree.node(d, kids, axis, obj.get("label"))

    return build(doc["tree"])
