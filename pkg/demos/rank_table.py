"""
A table of top homology ranks
=============================

The closed formula in both of its forms, next to a count of combs.
"""
from tropline import Coloring
from tropline.complex_topology import count_combs, homology_rank_formula

print("d\\n " + "".join(f"{n:>8}" for n in range(1, 8)))
for d in range(1, 8):
    print(f"{d:<4}" + "".join(f"{homology_rank_formula(Coloring(n, d)):>8}" for n in range(1, 8)))

# the comb count agrees wherever it is cheap to enumerate
for d in range(2, 6):
    for n in range(2, 6):
        assert count_combs(Coloring(n, d)) == homology_rank_formula(Coloring(n, d))
print("comb counts agree for 2 <= d, n <= 5")
