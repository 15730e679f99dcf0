# Counting (P1, 231)-avoiders and comparing with Fuss-Catalan numbers

import time

from hyperperm.bijection import restrict_to_kary, staircase_directions
from hyperperm import max_tree
from hyperperm.enumeration import all_dperms, count_avoiders, count_table, fuss_catalan, verify_bijection
from hyperperm.patterns import has_231, has_P1

for d, n_max in [(2, 7), (3, 5), (4, 4)]:
    start = time.perf_counter()
    table = count_table(d, 1, n_max)
    print(table.to_csv(), f"({time.perf_counter() - start:.2f} s)")

# Fuss-Catalan numbers are exact integers of any size
print(fuss_catalan(3, 40))

# Each avoider maps to a ternary tree through its max-tree
fam = staircase_directions(3)
for p in all_dperms(3, 2):
    if not has_P1(p) and not has_231(p):
        print(p, "->", restrict_to_kary(max_tree(p), fam))

print(verify_bijection(3, 4).summary())

# Split the work over processes; the count is the same
print(count_avoiders(3, 5, jobs=4))
