"""
Linear relations and their regular parts
========================================

A relation is a subspace of H + K.  Its multivalued part collects the k with
(0, k) in the relation; projecting it away leaves an operator.
"""

import numpy as np

from star_lebesgue.relation import LinearRelation, graph, injective_part, inverse, ker_part, mul_part, regular_part

# span{((1,0),(1,0)), ((0,0),(0,1))}: the second pair is multivalued
t = LinearRelation.from_pairs([([1, 0], [1, 0]), ([0, 0], [0, 1])], 2, 2)
print(t)
print("mul T basis:\n", np.round(mul_part(t), 12))
op = regular_part(t)
print("regular part as a matrix:\n", np.round(op.as_matrix().real, 12))

# kernels of T are multivalued parts of the inverse
m = np.diag([1.0, 0.0])
print("ker of graph(diag(1,0)):", np.round(ker_part(graph(m)).ravel(), 12))
print("mul of its inverse:     ", np.round(mul_part(inverse(graph(m))).ravel(), 12))

# projecting off both kernel and multivalued part gives an injective operator
s = injective_part(graph(m))
print("injective part holds:", s.holds, " dim", s.relation.dim)
