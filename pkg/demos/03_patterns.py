# Pattern containment through direct projections

from hyperperm import parse_perm, project
from hyperperm.patterns import P1, P231, contains, has_231, has_P1, occurrences

perm = parse_perm("1 4 3 2 / 3 1 2 4")

# Projecting on coordinates 1 and 2: sort by the first, read the second
print(project(perm, (1, 2)))

k1 = parse_perm("1 3 2 / 2 1 3")
for w in occurrences(perm, k1):
    print("occurrence at points", w.points)

w = contains(perm, P231)
print("231 via projection", w.indices, "at points", w.points)

# The fast detectors agree with the generic search
print(has_P1(perm), contains(perm, P1) is not None)
print(has_231(perm), contains(perm, P231) is not None)
