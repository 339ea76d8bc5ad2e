"""
Regular parts are mutually absolutely continuous
================================================

Decompose g against f and f against g.  The two absolutely continuous parts
dominate each other in the absolute-continuity sense, and the relation
between the two GNS spaces restricts to an injective operator.
"""

import numpy as np

from star_lebesgue import group_algebra, mutual_ac
from star_lebesgue.star_algebra import symmetric_group_table
from star_lebesgue.corpus import builder_algebras, random_functional

case = next(c for c in builder_algebras() if c.label == "S3")
alg = case.algebra
rng = np.random.default_rng(3)
f = random_functional(case, rng, k=2)
g = random_functional(case, rng, k=2)

rec = mutual_ac(alg, f, g)
print("f_a << g_a:", rec.f_a_ll_g_a.holds, " g_a << f_a:", rec.g_a_ll_f_a.holds)
print("injective part: mul/ker dims", rec.injective_dims,
      " single-valued residual %.1e, injectivity residual %.1e" % (rec.single_valued_residual, rec.injectivity_residual))
print("f_a(a*a) = |(I-P)Aa|^2 residual %.1e" % rec.f_a_formula_residual)
print("g_a(a*a) = |(I-Q)Ba|^2 residual %.1e" % rec.g_a_formula_residual)

# the same on the group algebra built from scratch
table, labels = symmetric_group_table(3)
print("labels:", labels, " same algebra:", np.array_equal(group_algebra(table, labels).mult, alg.mult))
