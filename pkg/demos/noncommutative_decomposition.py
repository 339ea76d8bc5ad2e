"""
Decomposing a state on M_2 + C
==============================

A noncommutative example.  f is a pure state on the matrix block, g is the
trace on the matrix block plus a point mass on the scalar block.  Only the
a_11 corner of g is absolutely continuous with respect to f; the a_22 corner
and the scalar block are singular.
"""

import numpy as np

from star_lebesgue import Functional, decompose, direct_sum, function_algebra, matrix_algebra, scale
from star_lebesgue.decompose import check_maximality, commutant_compressions

alg = direct_sum(matrix_algebra(2), function_algebra(1))

# f(a) = a_11 on the matrix block
f = Functional(np.array([1, 0, 0, 0, 0]))
# g = trace on the matrix block plus 2 * (scalar block)
g = Functional(np.array([1, 0, 0, 1, 2]))

res = decompose(alg, f, g)
print("g_a =", np.round(res.g_a.values.real, 12))
print("g_s =", np.round(res.g_s.values.real, 12))
print("dim H_g =", res.gns_g.dim_h, " dim M =", res.M_basis.shape[1])

cert = res.certificate
print("g = g_a + g_s residual:", cert.additivity_residual)
print("g_a << f:", cert.ac_check.holds, " g_s singular to f:", cert.sing_check.holds)
print("invariance residual:", cert.invariance_residual)

# maximality: every h <= g with h << f lies below g_a
cands = [scale(t, res.g_a) for t in (0.25, 0.5, 1.0)] + commutant_compressions(res, 3, seed=0)
print("maximality verdicts:", [check_maximality(alg, f, g, res, h) for h in cands])
