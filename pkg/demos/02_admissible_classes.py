# Admissible permutations: one per tree for every compatible order set

from hyperperm import OrderSet, is_admissible, max_tree, parse_perm, tree_to_perm
from hyperperm.bijection import compatible_order_sets, format_orders, is_compatible
from hyperperm.enumeration import all_dperms, all_hypertrees

# Three total orders on the four directions of F^3, one per axis
c = OrderSet.from_orders([
    ["---", "-+-", "+--", "++-"],
    ["---", "+--", "-+-", "++-"],
    ["---", "+--", "-+-", "++-"],
])
print(format_orders(c))
print("compatible:", is_compatible(c))

# Rebuild a permutation from every quaternary tree with 3 internal nodes
trees = list(all_hypertrees(3, 3))
perms = [tree_to_perm(t, c) for t in trees]
print(len(trees), "trees ->", len(set(perms)), "distinct admissible permutations")
print(all(max_tree(p) == t for p, t in zip(perms, trees)))

# Brute force the other direction: the admissible 3-permutations of size 3
admissible = [p for p in all_dperms(3, 3) if is_admissible(p, c)]
print(len(admissible), "of 36 are admissible")

# d=2 has exactly two compatible order sets; 41523 and 43512 share a tree
# but at most one of them can be admissible for a given set
a, b = parse_perm("41523"), parse_perm("43512")
for orders in compatible_order_sets(2):
    print(format_orders(orders).replace("\n", " | "), is_admissible(a, orders), is_admissible(b, orders))
