"""
GNS triples of small functionals
================================

Realize a positive functional as a vector state of a *-representation and
check that the vector state reproduces it.
"""

import numpy as np

from star_lebesgue import Functional, build_gns, check_representable, matrix_algebra, reconstruct, represent

# the trace on 2x2 matrices; basis element i*2+j is the matrix unit E_ij
alg = matrix_algebra(2)
tr = Functional(alg.trace)

cert = check_representable(alg, tr)
print("representable:", cert.representable, " C_min =", round(cert.C_min, 12))

gns = build_gns(alg, tr)
print("dim H =", gns.dim_h, " |zeta|^2 =", round(np.vdot(gns.cyclic, gns.cyclic).real, 12))

# <pi(a) zeta, zeta> gives the trace back
print("reconstructed:", np.round(reconstruct(gns).values.real, 12))

# pi(1) is the identity on H
print("pi(unit) = I:", np.allclose(represent(gns, alg.unit), np.eye(gns.dim_h)))

# the pure state a -> a_11 only sees the first column of a, a 2-dimensional space
state = Functional(np.array([1, 0, 0, 0]))
print("dim H for a -> a_11:", build_gns(alg, state).dim_h)
