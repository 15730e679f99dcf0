# Max-trees of d-permutations
#
# A 3-permutation is two rows of a permutation; each column i is the point
# (i, row1[i], row2[i]) in a 3-dimensional grid.

from hyperperm import direction_between, max_tree, min_tree, parse_perm
from hyperperm.trees import format_tree, subtree_membership, to_dot, to_json

perm = parse_perm("3 2 1 4 5 / 5 2 1 3 4")
for p in perm.points():
    print(p.index, p.coords)

# Directions are sign vectors; point 1 (z=5) sees point 2 (z=2) towards (+,-,-)
print(direction_between(perm, 1, 2))

# The max-tree splits the points around the highest one on the last axis.
# Children are listed in the order ---, -+-, +--, ++-
tree = max_tree(perm)
print(format_tree(tree))
for direction, child in tree.items():
    print(direction, "leaf" if child.is_leaf else f"node z={child.label}")

# Which branch of the root holds the point with z=1?
print(subtree_membership(tree, 5, 1))

# Two 2-permutations can share a tree
print(max_tree(parse_perm("41523")) == max_tree(parse_perm("43512")))

# Any axis works, and so does the min-tree
print(format_tree(max_tree(perm, axis=0)))
print(format_tree(min_tree(perm)))

# Exports
print(to_json(tree, indent=1)[:200], "...")
with open("max_tree.dot", "w") as fh:
    fh.write(to_dot(tree))
print("wrote max_tree.dot (render with: dot -Tpng max_tree.dot -o max_tree.png)")
