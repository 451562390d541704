"""
Compatible partition pairs of U(a, b)
=====================================

Every theta-stable parabolic of U(a, b) is conjugate to one cut out by a
dominant element H = (x; y).  Counting how many x_i beat each y_j gives a
pair of partitions (alpha, beta) in the a x b box.
"""

from minktype import (
    DominantElement,
    GroupShape,
    cohomological_degree,
    enumerate_compatible,
    partitions_from_dominant,
)

# a single dominant element and the pair it produces
H = DominantElement((2, 0), (1, 0, -1))
pair = partitions_from_dominant(H)
print(H, "->", pair, cohomological_degree(pair))

# the full list for a small group, sorted by (alpha, beta)
for shape in (GroupShape(1, 1), GroupShape(2, 2)):
    pairs = enumerate_compatible(shape)
    print(f"{shape}: {len(pairs)} compatible pairs")

for p in enumerate_compatible(GroupShape(2, 2)):
    deg = cohomological_degree(p)
    print(f"  {str(p):<28} R={deg.R} bidegree={deg.bidegree}")
