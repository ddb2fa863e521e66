"""
Trees, splits and the facet order
=================================

Counts trivalent trees, sorts them with the recursive order and lists
the facets of the smallest interesting complex.
"""
from functools import cmp_to_key

from tropline.splits import Coloring, double_factorial, enumerate_trivalent_trees, tree_less, tree_sort_key
from tropline.complex_topology import sort_facets

for N in range(4, 9):
    count = sum(1 for _ in enumerate_trivalent_trees(N))
    print(f"N={N}: {count} trees, (2N-5)!! = {double_factorial(2 * N - 5)}")

# the comparator and the sort key give the same order
trees = list(enumerate_trivalent_trees(5))
assert sorted(trees, key=cmp_to_key(tree_less)) == sorted(trees, key=tree_sort_key)
for t in sorted(trees, key=tree_sort_key):
    print([sorted(s.members) for s in t.sorted_splits()])

# facets use only splits with points and directions on both sides
for t in sort_facets(Coloring(3, 3))[:5]:
    print("facet", [sorted(s.members) for s in t.sorted_splits()])
