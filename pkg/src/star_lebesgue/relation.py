"""Linear relations between finite-dimensional Hilbert spaces.

A relation ``T`` from ``H = C^p`` to ``K = C^q`` is a subspace of ``H + K``.
It is stored by a spanning family (columns of a ``(p + q) x m`` matrix);
an orthonormal basis is computed on first use.  In finite dimension every
subspace is closed, so :func:`close` is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import ConsistencyError, DimensionMismatch

__all__ = [
    "BASIS_RTOL",
    "LinearRelation",
    "OperatorPart",
    "InjectivePart",
    "orth",
    "null_space",
    "projector",
    "complement",
    "subspace_distance",
    "graph",
    "close",
    "mul_part",
    "ker_part",
    "mul_margin",
    "regular_part",
    "injective_part",
    "inverse",
]

BASIS_RTOL = 1e-10
DEFAULT_TOL = 1e-9


def orth(a: np.ndarray, rtol: float = BASIS_RTOL, atol: float = 0.0) -> np.ndarray:
    """Orthonormal basis of the column span of ``a``.

    Singular values at or below ``max(rtol * s_max, atol)`` are discarded.
    """
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] <= atol or s[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    return u[:, s > max(rtol * s[0], atol)]


def complement(basis: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of an orthonormal family."""
    n = basis.shape[0]
    if basis.shape[1] == 0:
        return np.eye(n, dtype=complex)
    return _svd_split(basis.conj().T, 0.5)[3]


def _svd_split(a: np.ndarray, tol: float):
    """Right singular vectors of ``a`` split at the absolute threshold ``tol``.

    Returns ``(u_plus, s_plus, v_plus, v_null, s_all)``; ``s_all`` is padded
    with zeros up to the number of columns.
    """
    rows, cols = a.shape
    if cols == 0:
        empty = np.zeros((0, 0), dtype=complex)
        return np.zeros((rows, 0), dtype=complex), np.zeros(0), empty, empty, np.zeros(0)
    if rows == 0:
        return np.zeros((0, 0), dtype=complex), np.zeros(0), np.zeros((cols, 0), dtype=complex), np.eye(cols, dtype=complex), np.zeros(cols)
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    s_all = np.zeros(cols)
    s_all[: s.size] = s
    keep = s_all > tol
    r = int(keep[: s.size].sum())
    v = vh.conj().T
    return u[:, :r], s[:r], v[:, :r], v[:, r:], s_all


def null_space(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    return _svd_split(np.asarray(a, dtype=complex), tol)[3]


def projector(basis: np.ndarray) -> np.ndarray:
    return basis @ basis.conj().T


def subspace_distance(b1: np.ndarray, b2: np.ndarray) -> float:
    """Spectral-norm distance between orthogonal projections onto two spans."""
    d = projector(b1) - projector(b2)
    return float(np.linalg.norm(d, 2)) if d.size else 0.0


@dataclass(frozen=True, eq=False)
class LinearRelation:
    dim_h: int
    dim_k: int
    span: np.ndarray

    def __post_init__(self):
        span = np.asarray(self.span, dtype=complex)
        if span.ndim == 1:
            span = span[:, None]
        if span.shape[0] != self.dim_h + self.dim_k:
            raise DimensionMismatch(
                f"spanning vectors must have length {self.dim_h + self.dim_k}, got {span.shape[0]}"
            )
        span = span.copy()
        span.setflags(write=False)
        object.__setattr__(self, "span", span)

    @classmethod
    def from_pairs(cls, pairs, dim_h: int, dim_k: int) -> "LinearRelation":
        cols = [np.concatenate([np.asarray(h, dtype=complex), np.asarray(k, dtype=complex)]) for h, k in pairs]
        span = np.array(cols).T if cols else np.zeros((dim_h + dim_k, 0), dtype=complex)
        return cls(dim_h, dim_k, span)

    @cached_property
    def basis(self) -> np.ndarray:
        return orth(self.span)

    @property
    def h_block(self) -> np.ndarray:
        return self.basis[: self.dim_h]

    @property
    def k_block(self) -> np.ndarray:
        return self.basis[self.dim_h :]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return projector(self.basis)

    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(c[: self.dim_h], c[self.dim_h :]) for c in self.span.T]

    def __repr__(self):
        return f"LinearRelation(C^{self.dim_h} -> C^{self.dim_k}, dim {self.dim})"


def graph(matrix: np.ndarray) -> LinearRelation:
    """Graph ``{(h, M h)}`` of a matrix as a relation."""
    m = np.asarray(matrix, dtype=complex)
    q, p = m.shape
    return LinearRelation(p, q, np.vstack([np.eye(p), m]))


def close(t: LinearRelation) -> LinearRelation:
    # every subspace of a finite-dimensional space is closed
    return t


def inverse(t: LinearRelation) -> LinearRelation:
    return LinearRelation(t.dim_k, t.dim_h, np.vstack([t.span[t.dim_h :], t.span[: t.dim_h]]))


def mul_part(t: LinearRelation, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``{k : (0, k) in T}``."""
    t = close(t)
    v_null = _svd_split(t.h_block, tol)[3]
    # columns of k_block @ v_null have norm close to 1; anything tiny is rounding
    return orth(t.k_block @ v_null, atol=0.5)


def ker_part(t: LinearRelation, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``{h : (h, 0) in T}``."""
    return mul_part(inverse(t), tol)


def mul_margin(t: LinearRelation) -> float:
    """Smallest singular value of the H-block of the orthonormal basis.

    This is the distance from ``T`` to the nearest relation containing a unit
    vector ``(0, k)``; ``mul T`` is trivial exactly when it exceeds the
    tolerance.  A zero relation has margin 1.
    """
    s_all = _svd_split(close(t).h_block, 0.0)[4]
    return float(s_all.min()) if s_all.size else 1.0


@dataclass(frozen=True, eq=False)
class OperatorPart:
    """An operator given on an orthonormal basis of its domain.

    ``matrix[:, j]`` is the image of ``domain_basis[:, j]``.
    """

    domain_basis: np.ndarray
    matrix: np.ndarray
    residual: float = 0.0

    @property
    def dim_h(self) -> int:
        return self.domain_basis.shape[0]

    @property
    def dim_k(self) -> int:
        return self.matrix.shape[0]

    def as_matrix(self) -> np.ndarray:
        """The operator as a ``dim_k x dim_h`` matrix, zero off its domain."""
        return self.matrix @ self.domain_basis.conj().T

    def apply(self, h) -> np.ndarray:
        return self.as_matrix() @ np.asarray(h, dtype=complex)

    def graph(self) -> LinearRelation:
        return LinearRelation(self.dim_h, self.dim_k, np.vstack([self.domain_basis, self.matrix]))


def _fit_operator(hs: np.ndarray, ks: np.ndarray, tol: float) -> OperatorPart:
    """Operator sending ``hs[:, j]`` to ``ks[:, j]``; residual measures multivaluedness."""
    u_plus, s_plus, v_plus, v_null, _ = _svd_split(hs, tol)
    matrix = (ks @ v_plus) / s_plus[None, :] if s_plus.size else np.zeros((ks.shape[0], 0), dtype=complex)
    leak = ks @ v_null
    residual = float(np.linalg.norm(leak, 2)) if leak.size else 0.0
    return OperatorPart(u_plus, matrix, residual)


def regular_part(t: LinearRelation, tol: float = DEFAULT_TOL) -> OperatorPart:
    """The operator ``h -> (I - Q) k`` for ``(h, k) in T``, ``Q`` the projection onto ``mul T``."""
    t = close(t)
    ks = projector(complement(mul_part(t, tol))) @ t.k_block
    op = _fit_operator(t.h_block, ks, tol)
    if op.residual > max(10 * tol, 1e-8):
        raise ConsistencyError(f"regular part is not single valued (residual {op.residual:.3e})", op.residual)
    return op


@dataclass(frozen=True, eq=False)
class InjectivePart:
    """The relation ``S = {((I - P) h, (I - Q) k) : (h, k) in T}`` and its diagnostics.

    ``P`` and ``Q`` project onto ``ker T`` and ``mul T``.  ``S`` should be the
    graph of an injective operator: both residuals and both dimensions vanish.
    """

    relation: LinearRelation
    operator: OperatorPart
    single_valued_residual: float
    injectivity_residual: float
    mul_dim: int
    ker_dim: int
    tol: float

    @property
    def holds(self) -> bool:
        return (
            self.mul_dim == 0
            and self.ker_dim == 0
            and self.single_valued_residual <= self.tol
            and self.injectivity_residual <= self.tol
        )


def injective_part(t: LinearRelation, tol: float = DEFAULT_TOL) -> InjectivePart:
    t = close(t)
    # project through complement bases so a full kernel or mul gives exact zeros
    ip = projector(complement(ker_part(t, tol)))
    iq = projector(complement(mul_part(t, tol)))
    hs = ip @ t.h_block
    ks = iq @ t.k_block
    # columns come from an orthonormal basis, so anything below tol is rounding
    s = LinearRelation(t.dim_h, t.dim_k, orth(np.vstack([hs, ks]), atol=tol))
    forward = _fit_operator(hs, ks, tol)
    backward = _fit_operator(ks, hs, tol)
    return InjectivePart(
        relation=s,
        operator=forward,
        single_valued_residual=forward.residual,
        injectivity_residual=backward.residual,
        mul_dim=mul_part(s, tol).shape[1],
        ker_dim=ker_part(s, tol).shape[1],
        tol=tol,
    )
