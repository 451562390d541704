"""
Building a K-type and projecting onto it
========================================

The K-type attached to a pair is the smallest k-stable subspace of the
exterior algebra of p that holds the top wedge of p ∩ u.  Coefficients
are exact fractions throughout.
"""

from minktype import GroupShape, Multivector, minus, plus, project_onto, rectangle_pair
from minktype import ktype_subspace

G = GroupShape(1, 2)
S = ktype_subspace(rectangle_pair(1, 1, G))
print("generator:", S.generator)
print("dim:", S.dim)
for v in S.basis:
    print("  ", v)

# E13 ∧ E31 is not inside; its projection and the orthogonal residual
v = Multivector.wedge_of(G, [plus(1, 2), minus(1, 2)])
Pv = project_onto(S, v)
print("P(v)     =", Pv)
print("v - P(v) =", v - Pv)

# bigger groups just take longer
for shape in (GroupShape(2, 2), GroupShape(2, 3)):
    print(shape, "V_{1,0} has dim", ktype_subspace(rectangle_pair(1, 0, shape)).dim)
