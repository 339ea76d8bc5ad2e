"""Seeded random test instances over the builder algebras.

Functionals are ``sum_j tau(x_j* a x_j)``.  To get nontrivial kernels (and
hence nonzero singular parts) each ``x_j`` may be multiplied on the left or
right by a self-adjoint idempotent of the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .functional import Functional, vector_functional
from .star_algebra import (
    StarAlgebra,
    cyclic_group_table,
    direct_sum,
    function_algebra,
    group_algebra,
    matrix_algebra,
    symmetric_group_table,
)

__all__ = ["AlgebraCase", "Instance", "builder_algebras", "random_functional", "instances"]


@dataclass(frozen=True, eq=False)
class AlgebraCase:
    algebra: StarAlgebra
    projections: tuple[np.ndarray, ...]
    label: str


@dataclass(frozen=True, eq=False)
class Instance:
    case: AlgebraCase
    f: Functional
    g: Functional
    seed: int

    @property
    def algebra(self) -> StarAlgebra:
        return self.case.algebra


def _function_case(n: int) -> AlgebraCase:
    alg = function_algebra(n)
    return AlgebraCase(alg, tuple(alg.basis(i) for i in range(n)), f"C^{n}")


def _matrix_case(k: int) -> AlgebraCase:
    alg = matrix_algebra(k)
    return AlgebraCase(alg, tuple(alg.basis(i * k + i) for i in range(k)), f"M_{k}")


def _group_case(table, label: str, labels=None) -> AlgebraCase:
    alg = group_algebra(table, labels)
    t = np.asarray(table)
    n = t.shape[0]
    e = int(np.flatnonzero(alg.unit)[0])
    projections = []
    for g in range(n):
        # average over the cyclic subgroup generated by g
        members, x = {e}, g
        while x != e:
            members.add(x)
            x = int(t[x, g])
        if len(members) > 1:
            p = np.zeros(n, dtype=complex)
            p[sorted(members)] = 1.0 / len(members)
            projections.append(p)
        if t[g, g] == e and g != e:
            q = np.zeros(n, dtype=complex)
            q[e], q[g] = 0.5, -0.5
            projections.append(q)
    return AlgebraCase(alg, tuple(projections), label)


def _sum_case(c1: AlgebraCase, c2: AlgebraCase) -> AlgebraCase:
    alg = direct_sum(c1.algebra, c2.algebra)
    n1, n2 = c1.algebra.dim, c2.algebra.dim
    projs = [np.concatenate([p, np.zeros(n2)]) for p in c1.projections]
    projs += [np.concatenate([np.zeros(n1), p]) for p in c2.projections]
    if c1.algebra.unit is not None:
        projs.append(np.concatenate([c1.algebra.unit, np.zeros(n2)]))
    if c2.algebra.unit is not None:
        projs.append(np.concatenate([np.zeros(n1), c2.algebra.unit]))
    return AlgebraCase(alg, tuple(np.asarray(p, dtype=complex) for p in projs), f"{c1.label}+{c2.label}")


def builder_algebras() -> list[AlgebraCase]:
    s3, s3_labels = symmetric_group_table(3)
    cases = [_function_case(n) for n in range(1, 9)]
    cases += [_matrix_case(k) for k in (1, 2, 3)]
    cases += [_group_case(cyclic_group_table(m), f"Z{m}") for m in (2, 3, 4)]
    cases.append(_group_case(s3, "S3", s3_labels))
    cases += [
        _sum_case(_matrix_case(2), _function_case(2)),
        _sum_case(_group_case(cyclic_group_table(3), "Z3"), _matrix_case(2)),
        _sum_case(_matrix_case(2), _matrix_case(2)),
        _sum_case(_function_case(1), _matrix_case(3)),
    ]
    return cases


def random_functional(case: AlgebraCase, rng: np.random.Generator, k: Optional[int] = None) -> Functional:
    alg = case.algebra
    if k is None:
        k = int(rng.integers(0, 6))
    xs = []
    mode = rng.choice(["full", "left", "right"], p=[0.3, 0.35, 0.35])
    for _ in range(k):
        y = (rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)) / np.sqrt(2)
        if mode != "full" and case.projections:
            p = case.projections[int(rng.integers(len(case.projections)))]
            y = np.einsum("i,j,ijk->k", *((p, y) if mode == "left" else (y, p)), alg.mult)
        xs.append(y)
    return vector_functional(alg, xs)


def instances(count: int, seed: int = 0, cases: Optional[list[AlgebraCase]] = None) -> Iterator[Instance]:
    """Yield ``count`` deterministic random instances cycling through ``cases``."""
    cases = cases if cases is not None else builder_algebras()
    for i in range(count):
        case = cases[i % len(cases)]
        rng = np.random.default_rng([seed, i])
        f = random_functional(case, rng)
        g = random_functional(case, rng)
        yield Instance(case, f, g, i)
