"""
Collinear points and their canonical line
=========================================

Five points in the plane (three coordinates up to a common shift), the
minor test for collinearity, and the tree that the canonical line
through them carries.
"""
from fractions import Fraction

from tropline import Coloring, MarkedLine, PhyloTree, PointConfig, Split, canonical_tree, ev_points
from tropline import tropical_rank_le2

# columns are points; the last row moves points 2, 4 and 5 one step up
m = [[0, 0, 0, 0, 0],
     [0, 0, 0, 0, 0],
     [0, 1, 0, 1, 1]]
print("collinear:", tropical_rank_le2(m).collinear)

line = canonical_tree(PointConfig.from_matrix(m))
for s in line.tree.sorted_splits():
    print("split", sorted(s.members), "length", line.tree.lengths[s])

# a 3x3 matrix whose minimum permutation sum is unique is not collinear
v = tropical_rank_le2([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
print("collinear:", v.collinear, "witness rows/cols:", v.witness)

# going the other way: pick a tree with lengths, evaluate, recover it
c = Coloring(3, 3)
s1, s2 = Split(6, [3, 5, 6]), Split(6, [3, 6])
tree = PhyloTree(6, [s1, s2], {s1: Fraction(1, 2), s2: 2})
points = ev_points(MarkedLine(tree, c, (0, 1, 5)))
print("points:", [[str(x) for x in p] for p in points.points])
back = canonical_tree(points)
print("recovered:", back.tree == tree and back.tree.lengths == tree.lengths, "basepoint:", [str(x) for x in back.basepoint])
