from itertools import combinations, islice

import pytest
from hypothesis import given, settings

from hyperperm import DPermutation, OrderSet, max_tree, min_tree, parse_perm
from hyperperm.bijection import (
    RestrictionError,
    compatible_order_sets,
    format_orders,
    is_admissible,
    is_compatible,
    pad_from_kary,
    parse_orders,
    relabel,
    restrict_to_kary,
    staircase_directions,
    staircase_orders,
    tree_to_perm,
)
from hyperperm.core import Direction, direction_between, negative_directions
from hyperperm.enumeration import all_dperms, all_hypertrees, all_kary_trees
from hyperperm.trees import (
    HyperTree,
    KaryTree,
    find_node,
    format_tree,
    internal_node_count,
    parse_kary,
    parse_tree,
    subtree_membership,
)

from conftest import C_EX, dperms

D = Direction.from_string
FIG = parse_perm("3 2 1 4 5 / 5 2 1 3 4")


def admissible_oracle(perm, orders):
    """Reads the blocks off the labelled max-tree instead of re-decomposing points."""
    t = max_tree(perm)
    last = perm.d - 1
    fam = set(orders.family)
    for _, node in t.walk():
        blocks = {}
        for f, c in node.items():
            labels = [n.label for _, n in c.walk()]
            if labels and f not in fam:
                return False
            blocks[f] = [perm.coords[perm.index_of(last, z) - 1] for z in labels]
        for l in range(perm.d):
            for f1, f2 in combinations(orders.orders[l], 2):
                for p in blocks.get(f1, []):
                    for q in blocks.get(f2, []):
                        if not p[l] < q[l]:
                            return False
    return True


# -- max-tree -------------------------------------------------------------


def test_max_tree_empty():
    assert max_tree(DPermutation.empty(3)) == HyperTree.leaf(3)


def test_max_tree_figure():
    t = max_tree(FIG)
    assert t.label == 5
    b = t.child("+--")
    assert b.label == 2 and b.child("+--").label == 1
    c = t.child("++-")
    assert c.label == 4 and c.child("---").label == 3
    assert t.child("---").is_leaf and t.child("-+-").is_leaf
    assert format_tree(t) == "(. . (. . (. . . .) .) ((. . . .) . . .))"


def test_two_perms_share_a_max_tree():
    a, b = max_tree(parse_perm("41523")), max_tree(parse_perm("43512"))
    assert a == b
    assert format_tree(a) == "((. (. .)) ((. .) .))"


def test_max_tree_axis_range():
    with pytest.raises(ValueError):
        max_tree(FIG, axis=3)


def _axis_last_oracle(perm, axis):
    # move ``axis`` to the end, build there, move the signs back
    d = perm.d
    perm_order = [l for l in range(d) if l != axis] + [axis]
    moved = DPermutation.from_points([tuple(c[l] for l in perm_order) for c in perm.coords], d=d)

    def back(f):
        signs = [0] * d
        for new, old in enumerate(perm_order):
            signs[old] = f[new]
        return Direction(tuple(signs))

    def convert(t):
        if t.is_leaf:
            return HyperTree(d, None, axis)
        return HyperTree.node(d, {back(f): convert(c) for f, c in t.items()}, axis, t.label)

    return convert(max_tree(moved))


@given(dperms(max_n=6))
def test_other_axes_match_coordinate_permutation(p):
    for axis in range(p.d):
        assert max_tree(p, axis) == _axis_last_oracle(p, axis)


def test_min_tree_small():
    assert min_tree(DPermutation.empty(2)) == HyperTree.leaf(2)
    t = min_tree(DPermutation.from_rows([1], [1]))
    assert internal_node_count(t) == 1 and all(c.is_leaf for c in t.children)


def _complement(perm, axis):
    n = perm.n
    return DPermutation.from_points(
        [tuple(n + 1 - v if l == axis else v for l, v in enumerate(c)) for c in perm.coords],
        d=perm.d,
    )


@pytest.mark.parametrize("n", range(6))
def test_min_tree_is_complemented_max_tree(n):
    for p in all_dperms(2, n):
        for axis in (0, 1):
            # complement flips the axis sign; min-tree keys negate the rest
            flip = lambda f: Direction(tuple(s if l == axis else -s for l, s in enumerate(f.signs)))
            assert min_tree(p, axis) == relabel(max_tree(_complement(p, axis), axis), flip)


def test_min_tree_d3_complement():
    for p in all_dperms(3, 3):
        flip = lambda f: Direction((-f[0], -f[1], f[2]))
        assert min_tree(p) == relabel(max_tree(_complement(p, 2)), flip)


# -- remark on subtree directions -------------------------------------------


@pytest.mark.parametrize("n", range(2, 5))
def test_subtree_membership_characterization(n):
    for p in all_dperms(3, n):
        t = max_tree(p)
        paths = {z: find_node(t, z) for z in range(1, n + 1)}
        by_path = {v: z for z, v in paths.items()}
        for za in range(1, n + 1):
            for zb in range(1, n + 1):
                if za == zb:
                    continue
                a, b = p.index_of(2, za), p.index_of(2, zb)
                pb = paths[zb]
                ancestors = [p.index_of(2, by_path[pb[:i]]) for i in range(len(pb))]
                f = direction_between(p, b, a)
                holds = f[-1] < 0 and all(
                    direction_between(p, c, a) == direction_between(p, c, b) for c in ancestors
                )
                got = subtree_membership(t, zb, za)
                assert (got == f) == holds
                assert got is None or got == f


# -- compatibility and order sets -----------------------------------------


def test_c_ex_is_compatible():
    assert is_compatible(C_EX)


def test_incompatible_axis0():
    bad = OrderSet.from_orders([["+-", "--"], ["--", "+-"]])
    assert not is_compatible(bad)


@pytest.mark.parametrize("d", range(2, 7))
def test_staircase_compatible(d):
    c = staircase_orders(d)
    assert is_compatible(c)
    assert len(c.family) == d
    assert all(o == c.family for o in c.orders)


def test_staircase_listing():
    assert staircase_orders(2).family == (D("--"), D("+-"))
    assert staircase_orders(3).family == (D("---"), D("+--"), D("++-"))
    with pytest.raises(ValueError):
        staircase_directions(1)


def test_order_set_validation():
    with pytest.raises(ValueError):
        OrderSet.from_orders([["--", "+-"], ["--"]])
    with pytest.raises(ValueError):
        OrderSet.from_orders([["-+", "++"], ["-+", "++"]])


def test_orders_text_round_trip():
    text = format_orders(C_EX)
    assert text.splitlines()[0] == "---<-+-<+--<++-"
    assert parse_orders(text) == C_EX
    assert parse_orders("---<+--<++-\n---<+--<++-\n---<+--<++-\n") == staircase_orders(3)


def test_compatible_order_set_counts():
    assert len(list(compatible_order_sets(2))) == 2
    sets = list(compatible_order_sets(3))
    assert len(sets) == 4 * 4 * 24
    assert C_EX in sets and all(is_compatible(c) for c in sets)


# -- admissibility ----------------------------------------------------------


def test_figure_perm_admissible():
    assert is_admissible(FIG, staircase_orders(3))


def test_single_point_admissible():
    for c in list(compatible_order_sets(3))[:20] + [staircase_orders(3)]:
        assert is_admissible(DPermutation.from_rows([1], [1]), c)


def test_incompatible_orders_rejected():
    bad = OrderSet.from_orders([["+-", "--"], ["--", "+-"]])
    with pytest.raises(ValueError):
        is_admissible(parse_perm("21"), bad)


def test_shared_tree_pair_admissibility():
    a, b = parse_perm("41523"), parse_perm("43512")
    # neither is 231-avoiding, so neither is staircase-admissible
    assert not is_admissible(a, staircase_orders(2))
    assert not is_admissible(b, staircase_orders(2))
    assert tree_to_perm(max_tree(a), staircase_orders(2)) == parse_perm("21534")
    flipped = OrderSet.from_orders([["--", "+-"], ["+-", "--"]])
    assert not is_admissible(a, flipped) and is_admissible(b, flipped)
    for c in compatible_order_sets(2):
        assert is_admissible(a, c) + is_admissible(b, c) <= 1


@pytest.mark.parametrize("d,nmax", [(2, 5), (3, 3), (4, 2)])
def test_admissible_matches_oracle(d, nmax):
    sets = [staircase_orders(d)] + list(islice(compatible_order_sets(d), 6))
    for n in range(nmax + 1):
        for p in all_dperms(d, n):
            for c in sets:
                assert is_admissible(p, c) == admissible_oracle(p, c)


# -- inverse construction ----------------------------------------------------


def test_tree_to_perm_small():
    assert tree_to_perm(HyperTree.leaf(3), C_EX) == DPermutation.empty(3)
    assert tree_to_perm(parse_tree("(. . . .)", 3), C_EX) == DPermutation.from_rows([1], [1])


def test_tree_to_perm_rejects_foreign_direction():
    t = parse_tree("(. (. . . .) . .)", 3)
    with pytest.raises(ValueError, match=r"-\+-"):
        tree_to_perm(t, staircase_orders(3))


def test_tree_to_perm_figure():
    assert tree_to_perm(max_tree(FIG), staircase_orders(3)) == FIG


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 4), (3, 22)])
def test_round_trip_all_quaternary_trees(n, count):
    trees = list(all_hypertrees(3, n))
    assert len(trees) == count
    for t in trees:
        p = tree_to_perm(t, C_EX)
        assert max_tree(p) == t
        assert is_admissible(p, C_EX)


def _fiber_sets(d):
    sets = list(compatible_order_sets(d))
    step = max(1, len(sets) // 5)
    chosen = sets[::step]
    fam = staircase_directions(d)
    chosen.append(staircase_orders(d))
    chosen.extend(list(compatible_order_sets(d, fam))[:2])
    # d=2 has only two compatible sets on all of F^2; add one-direction families
    for f in negative_directions(d)[:2]:
        chosen.extend(compatible_order_sets(d, [f]))
    return chosen


@pytest.mark.parametrize("d,nmax", [(2, 5), (3, 3)])
def test_fiber_uniqueness(d, nmax):
    sets = _fiber_sets(d)
    assert len(set(sets)) >= 3
    for n in range(nmax + 1):
        perms = list(all_dperms(d, n))
        trees = [max_tree(p) for p in perms]
        for c in sets:
            fam = set(c.family)
            fibers = {}
            for p, t in zip(perms, trees):
                if admissible_oracle(p, c):
                    fibers.setdefault(t, []).append(p)
            for t in all_hypertrees(d, n, fam if len(fam) < 2 ** (d - 1) else None):
                assert len(fibers.get(t, [])) == 1
                assert fibers[t][0] == tree_to_perm(t, c)
            assert sum(map(len, fibers.values())) == len(fibers)


@settings(max_examples=60)
@given(dperms(max_d=4, max_n=7))
def test_round_trip_a(p):
    c = staircase_orders(p.d)
    if is_admissible(p, c):
        assert tree_to_perm(max_tree(p), c) == p


# -- restriction to k-ary trees ---------------------------------------------


# quaternary tree with no internal node under (+,+,-), and its ternary shadow
QUATERNARY = "((. . . .) (. . (. . . .) .) . .)"
TERNARY = "((. . .) (. . (. . .)) .)"
NO_PPM = [D("---"), D("-+-"), D("+--")]


def test_restrict_figure_pair():
    q = parse_tree(QUATERNARY, 3)
    t = restrict_to_kary(q, NO_PPM)
    assert t == parse_kary(TERNARY, 3)
    assert pad_from_kary(t, NO_PPM, 3) == q
    assert internal_node_count(t) == internal_node_count(q) == 4


def test_restrict_staircase_figure_tree():
    t = restrict_to_kary(max_tree(FIG), staircase_directions(3))
    assert t.k == 3 and internal_node_count(t) == 5


def test_restrict_leaf():
    assert restrict_to_kary(HyperTree.leaf(3), NO_PPM) == KaryTree.leaf(3)
    assert pad_from_kary(KaryTree.leaf(3), NO_PPM, 3) == HyperTree.leaf(3)


def test_restrict_violation_names_node():
    with pytest.raises(RestrictionError, match="label 4"):
        restrict_to_kary(max_tree(FIG), NO_PPM)


def test_pad_arity_mismatch():
    with pytest.raises(ValueError):
        pad_from_kary(KaryTree.leaf(2), NO_PPM, 3)


@pytest.mark.parametrize("n", range(5))
def test_pad_restrict_inverse(n):
    fam = staircase_directions(3)
    padded = set()
    for t in all_kary_trees(3, n):
        q = pad_from_kary(t, fam, 3)
        assert restrict_to_kary(q, fam) == t
        padded.add(q)
    assert padded == set(all_hypertrees(3, n, fam))


def test_child_order_is_respected():
    fam = staircase_directions(3)
    q = max_tree(FIG)
    rev = list(reversed(fam))
    t = restrict_to_kary(q, fam, rev)
    assert t.children[0] == restrict_to_kary(q.child("++-"), fam, rev)
    assert pad_from_kary(t, fam, 3, rev) == q


# -- surjectivity -------------------------------------------------------------


@pytest.mark.parametrize("d,nmax", [(2, 5), (3, 3)])
def test_max_tree_surjective(d, nmax):
    for n in range(nmax + 1):
        image = {max_tree(p) for p in all_dperms(d, n)}
        assert image == set(all_hypertrees(d, n))
