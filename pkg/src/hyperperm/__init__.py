"""Max-trees of d-permutations and the (P1, 231)-avoider / d-ary tree bijection."""

from .core import (
    Direction,
    DPermutation,
    Point,
    direction_between,
    format_perm,
    negative_directions,
    opposite,
    parse_perm,
)
from .trees import (
    HyperTree,
    KaryTree,
    format_tree,
    internal_node_count,
    parse_tree,
    subtree_membership,
    to_dot,
)
from .bijection import (
    OrderSet,
    is_admissible,
    is_compatible,
    max_tree,
    min_tree,
    pad_from_kary,
    restrict_to_kary,
    staircase_orders,
    tree_to_perm,
)
from .patterns import P1, P231, contains, has_231, has_P1, project
from .enumeration import (
    all_dperms,
    all_hypertrees,
    all_kary_trees,
    count_avoiders,
    fuss_catalan,
    verify_bijection,
    verify_equivalence,
)

__version__ = "0.1.0"
