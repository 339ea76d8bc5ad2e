"""
Lebesgue decomposition of measures on a finite set
==================================================

On the algebra of functions on n points a positive functional is a measure.
The absolutely continuous part of g is g restricted to the support of f.
"""

import numpy as np

from star_lebesgue import Functional, classical_oracle, decompose, function_algebra

rng = np.random.default_rng(1)
n = 6
alg = function_algebra(n)

# weights with some forced zeros
wf = rng.random(n) * (rng.random(n) < 0.5)
wg = rng.random(n)
print("f =", np.round(wf, 3))
print("g =", np.round(wg, 3))

res = decompose(alg, Functional(wf), Functional(wg))
a, s = classical_oracle(wf, wg)
print("g_a =", np.round(res.g_a.values.real, 3), " oracle:", np.round(a, 3))
print("g_s =", np.round(res.g_s.values.real, 3), " oracle:", np.round(s, 3))
print("max deviation from oracle:", np.abs(res.g_a.values - a).max())
print("certificate ok:", res.certificate.ok)
