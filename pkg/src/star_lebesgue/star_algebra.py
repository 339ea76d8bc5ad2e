"""Finite-dimensional *-algebras given by structure constants.

An algebra of dimension ``n`` is stored as

* ``mult``: an ``(n, n, n)`` complex tensor with ``(x y)_k = sum_ij x_i y_j mult[i, j, k]``;
* ``invol``: an ``(n, n)`` complex matrix ``S`` with ``coeffs(x*) = S @ conj(coeffs(x))``.

Elements are plain 1-D complex numpy arrays of length ``n``.  No unit is
assumed anywhere; builders record one when it exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionMismatch

__all__ = [
    "StarAlgebra",
    "Violation",
    "ValidationReport",
    "as_element",
    "multiply",
    "involution",
    "left_multiplication",
    "validate",
    "function_algebra",
    "matrix_algebra",
    "group_algebra",
    "cyclic_group_table",
    "symmetric_group_table",
    "direct_sum",
]


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    """A finite-dimensional complex *-algebra.

    ``trace`` holds the values of the canonical faithful positive trace on the
    basis when the algebra comes from a builder; it is ``None`` otherwise.
    """

    mult: np.ndarray
    invol: np.ndarray
    basis_labels: tuple[str, ...] = ()
    unit: Optional[np.ndarray] = None
    trace: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        mult = np.asarray(self.mult, dtype=complex)
        if mult.ndim != 3 or len(set(mult.shape)) != 1 or mult.shape[0] == 0:
            raise DimensionMismatch(f"mult must have shape (n, n, n), got {mult.shape}")
        n = mult.shape[0]
        invol = np.asarray(self.invol, dtype=complex)
        if invol.shape != (n, n):
            raise DimensionMismatch(f"invol must have shape ({n}, {n}), got {invol.shape}")
        labels = tuple(self.basis_labels) or tuple(f"b{i}" for i in range(n))
        if len(labels) != n:
            raise DimensionMismatch(f"expected {n} basis labels, got {len(labels)}")
        object.__setattr__(self, "mult", _frozen(mult))
        object.__setattr__(self, "invol", _frozen(invol))
        object.__setattr__(self, "basis_labels", labels)
        for name in ("unit", "trace"):
            value = getattr(self, name)
            if value is not None:
                value = np.asarray(value, dtype=complex)
                if value.shape != (n,):
                    raise DimensionMismatch(f"{name} must have length {n}")
                object.__setattr__(self, name, _frozen(value))

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[i] = 1.0
        return e

    def __repr__(self):
        label = self.name or "StarAlgebra"
        return f"<{label} dim={self.dim} unital={self.unit is not None}>"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def as_element(alg: StarAlgebra, x) -> np.ndarray:
    """Coerce ``x`` to a coefficient vector of ``alg``."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (alg.dim,):
        raise DimensionMismatch(f"element of length {alg.dim} expected, got shape {x.shape}")
    return x


def multiply(alg: StarAlgebra, x, y) -> np.ndarray:
    x = as_element(alg, x)
    y = as_element(alg, y)
    return np.einsum("i,j,ijk->k", x, y, alg.mult)


def involution(alg: StarAlgebra, x) -> np.ndarray:
    return alg.invol @ np.conj(as_element(alg, x))


def left_multiplication(alg: StarAlgebra) -> np.ndarray:
    """Stack of matrices ``L[i]`` with ``L[i] @ coeffs(y) = coeffs(b_i y)``."""
    return np.transpose(alg.mult, (0, 2, 1))


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    invariant: str
    index: tuple[int, ...]
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    tolerance: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self) -> set[str]:
        return {v.invariant for v in self.violations}


def _collect(name: str, residual: np.ndarray, tol: float) -> list[Violation]:
    bad = np.argwhere(residual > tol)
    return [Violation(name, tuple(int(i) for i in idx), float(residual[tuple(idx)])) for idx in bad]


def validate(alg: StarAlgebra, rtol: float = 1e-10) -> ValidationReport:
    """Check the *-algebra axioms on basis elements.

    Residuals are compared against ``rtol * (max |mult| + 1)``.  Every
    offending index tuple is reported.
    """
    m, s = alg.mult, alg.invol
    n = alg.dim
    tol = rtol * (float(np.max(np.abs(m))) + 1.0)
    out: list[Violation] = []

    # (b_i b_j) b_k  vs  b_i (b_j b_k), indices (i, j, k, l)
    lhs = np.einsum("ijm,mkl->ijkl", m, m)
    rhs = np.einsum("jkm,iml->ijkl", m, m)
    out += _collect("associativity", np.abs(lhs - rhs), tol)

    # x** = S conj(S) x
    twice = s @ np.conj(s)
    out += _collect("involutivity", np.abs(twice - np.eye(n)).max(axis=0), tol)

    # (b_i b_j)* = b_j* b_i*; the basis is real so b_i* = S[:, i]
    prod_star = np.einsum("pk,ijk->ijp", s, np.conj(m))
    star_prod = np.einsum("pj,qi,pqk->ijk", s, s, m)
    out += _collect("anti-multiplicativity", np.abs(prod_star - star_prod).max(axis=2), tol)

    if alg.unit is not None:
        u = alg.unit
        left = np.einsum("p,pik->ik", u, m)
        right = np.einsum("p,ipk->ik", u, m)
        eye = np.eye(n)
        out += _collect("unit-left", np.abs(left - eye).max(axis=1), tol)
        out += _collect("unit-right", np.abs(right - eye).max(axis=1), tol)
        out += _collect("unit-selfadjoint", np.abs(s @ np.conj(u) - u), tol)

    return ValidationReport(tuple(out), tol)


# --------------------------------------------------------------------------
# builders


def function_algebra(n: int) -> StarAlgebra:
    """The commutative algebra C^n with pointwise product."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mult = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        mult[i, i, i] = 1.0
    return StarAlgebra(
        mult=mult,
        invol=np.eye(n),
        basis_labels=tuple(f"e{i + 1}" for i in range(n)),
        unit=np.ones(n),
        trace=np.ones(n),
        name=f"function_algebra({n})",
    )


def matrix_algebra(k: int) -> StarAlgebra:
    """Full matrix algebra M_k in the matrix-unit basis, ``E_ij`` at index ``i*k + j``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = k * k
    mult = np.zeros((n, n, n), dtype=complex)
    invol = np.zeros((n, n), dtype=complex)
    for i, j, l in itertools.product(range(k), repeat=3):
        # E_ij E_jl = E_il
        mult[i * k + j, j * k + l, i * k + l] = 1.0
    for i, j in itertools.product(range(k), repeat=2):
        invol[j * k + i, i * k + j] = 1.0
    diag = np.zeros(n)
    diag[[i * k + i for i in range(k)]] = 1.0
    return StarAlgebra(
        mult=mult,
        invol=invol,
        basis_labels=tuple(f"E{i + 1}{j + 1}" for i in range(k) for j in range(k)),
        unit=diag,
        trace=diag,
        name=f"matrix_algebra({k})",
    )


def _check_group_table(table: np.ndarray) -> int:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise ValueError("group table must be a non-empty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise ValueError("group table entries out of range")
    for row in table:
        if len(set(row.tolist())) != n:
            raise ValueError("group table rows must be permutations")
    for col in table.T:
        if len(set(col.tolist())) != n:
            raise ValueError("group table columns must be permutations")
    idx = np.arange(n)
    if not np.array_equal(table[table[:, :, None], idx[None, None, :]], table[idx[:, None, None], table[None, :, :]]):
        raise ValueError("group table is not associative")
    identities = [e for e in range(n) if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)]
    if not identities:
        raise ValueError("group table has no identity")
    return identities[0]


def group_algebra(cayley_table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> StarAlgebra:
    """Group algebra C[G] from a Cayley table ``table[g][h] = index of g h``.

    The involution is ``g* = g^{-1}`` and the canonical trace picks the
    coefficient of the identity.
    """
    table = np.asarray(cayley_table, dtype=int)
    e = _check_group_table(table)
    n = table.shape[0]
    mult = np.zeros((n, n, n), dtype=complex)
    invol = np.zeros((n, n), dtype=complex)
    for g, h in itertools.product(range(n), repeat=2):
        mult[g, h, table[g, h]] = 1.0
    for g in range(n):
        inv = int(np.flatnonzero(table[g] == e)[0])
        invol[inv, g] = 1.0
    unit = np.zeros(n)
    unit[e] = 1.0
    return StarAlgebra(
        mult=mult,
        invol=invol,
        basis_labels=tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n)),
        unit=unit,
        trace=unit,
        name=f"group_algebra(order {n})",
    )


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(m: int) -> tuple[list[list[int]], list[str]]:
    """Cayley table of S_m with the identity permutation first."""
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(m))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return table, labels


def direct_sum(a1: StarAlgebra, a2: StarAlgebra) -> StarAlgebra:
    n1, n2 = a1.dim, a2.dim
    n = n1 + n2
    mult = np.zeros((n, n, n), dtype=complex)
    mult[:n1, :n1, :n1] = a1.mult
    mult[n1:, n1:, n1:] = a2.mult
    invol = np.zeros((n, n), dtype=complex)
    invol[:n1, :n1] = a1.invol
    invol[n1:, n1:] = a2.invol

    def _cat(u, v):
        if u is None or v is None:
            return None
        return np.concatenate([u, v])

    return StarAlgebra(
        mult=mult,
        invol=invol,
        basis_labels=tuple(f"{l}.1" for l in a1.basis_labels) + tuple(f"{l}.2" for l in a2.basis_labels),
        unit=_cat(a1.unit, a2.unit),
        trace=_cat(a1.trace, a2.trace),
        name=f"({a1.name or 'A'}) + ({a2.name or 'B'})",
    )
