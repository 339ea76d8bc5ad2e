"""Linear functionals on a finite-dimensional *-algebra.

A functional is stored through its values on the basis.  Positivity and
representability are never assumed: :func:`check_representable` computes a
certificate containing the optimal constant ``C`` in
``|f(a)|^2 <= C f(a*a)`` and the per-basis bounds ``lambda_i`` in
``f(b* a* a b) <= lambda_a f(b* b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionMismatch
from .star_algebra import StarAlgebra, as_element, left_multiplication

__all__ = [
    "DEFAULT_TOL",
    "Functional",
    "GramFactor",
    "RepresentabilityCertificate",
    "evaluate",
    "gram",
    "inner_gram",
    "factor_gram",
    "is_hermitian",
    "check_representable",
    "leq",
    "add",
    "scale",
    "zero",
    "vector_functional",
    "random_representable",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Functional:
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.ndim != 1:
            raise DimensionMismatch("functional values must be a 1-D vector")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def __call__(self, a) -> complex:
        a = np.asarray(a, dtype=complex)
        if a.shape != self.values.shape:
            raise DimensionMismatch(f"element of length {self.dim} expected")
        return complex(a @ self.values)

    def __add__(self, other: "Functional") -> "Functional":
        return add(self, other)

    def __repr__(self):
        return f"Functional({np.array2string(self.values, precision=6)})"


def _check_dim(alg: StarAlgebra, *fs: Functional):
    for f in fs:
        if f.dim != alg.dim:
            raise DimensionMismatch(f"functional of length {f.dim} on algebra of dim {alg.dim}")


def zero(alg: StarAlgebra) -> Functional:
    return Functional(np.zeros(alg.dim))


def evaluate(f: Functional, a) -> complex:
    return f(a)


def inner_gram(alg: StarAlgebra, f: Functional) -> np.ndarray:
    """Matrix ``K`` with ``K[i, j] = f(b_i* b_j)``, so ``f(b* a) = b^H K a``."""
    _check_dim(alg, f)
    return np.einsum("mi,mjk,k->ij", alg.invol, alg.mult, f.values)


def gram(alg: StarAlgebra, f: Functional) -> np.ndarray:
    """Gram matrix ``G[i, j] = f(b_j* b_i)``.

    This is the transpose of :func:`inner_gram`; for a hermitian ``f`` it is
    also its complex conjugate, so both share eigenvalues.
    """
    return inner_gram(alg, f).T


def is_hermitian(alg: StarAlgebra, f: Functional, tol: float = DEFAULT_TOL) -> bool:
    """``f(a*) == conj(f(a))`` on the basis, up to ``tol * max|f(b_i)|``."""
    _check_dim(alg, f)
    v = f.values
    resid = np.abs(v @ alg.invol - np.conj(v))
    return bool(resid.max(initial=0.0) <= tol * max(np.abs(v).max(initial=0.0), 1e-300))


def _canonical_phase(u: np.ndarray) -> np.ndarray:
    if u.size == 0:
        return u
    idx = np.argmax(np.abs(u), axis=0)
    pivot = u[idx, np.arange(u.shape[1])]
    return u * (np.abs(pivot) / pivot)[None, :]


@dataclass(frozen=True, eq=False)
class GramFactor:
    """Spectral factorization ``K = U diag(d) U^H`` split at a relative cutoff.

    ``coords`` (``r x n``) is ``diag(sqrt(d_+)) U_+^H`` and ``right_inverse``
    is ``U_+ diag(d_+^{-1/2})``, so ``coords @ right_inverse = I_r``.
    ``kernel`` holds an orthonormal basis of the discarded eigenspace.
    """

    gram: np.ndarray
    eigvals: np.ndarray
    rank: int
    coords: np.ndarray
    right_inverse: np.ndarray
    kernel: np.ndarray
    cutoff: float
    warnings: tuple[str, ...] = ()


def factor_gram(k: np.ndarray, tol: float = DEFAULT_TOL) -> GramFactor:
    n = k.shape[0]
    k_h = 0.5 * (k + k.conj().T)
    d, u = np.linalg.eigh(k_h)
    d, u = d[::-1], _canonical_phase(u[:, ::-1])
    top = float(d[0]) if n else 0.0
    cutoff = tol * top if top > 0 else 0.0
    keep = d > cutoff if top > 0 else np.zeros(n, dtype=bool)
    r = int(keep.sum())
    notes = []
    if top > 0:
        near = (d > cutoff / 10) & (d < cutoff * 10)
        if near.any():
            notes.append(
                f"rank decision unstable: {int(near.sum())} eigenvalue(s) within a decade of the cutoff {cutoff:.3e}"
            )
    dp, up = d[:r], u[:, :r]
    sq = np.sqrt(dp)
    coords = sq[:, None] * up.conj().T
    right_inverse = up / sq[None, :]
    return GramFactor(
        gram=k,
        eigvals=d,
        rank=r,
        coords=coords,
        right_inverse=right_inverse,
        kernel=u[:, r:],
        cutoff=cutoff,
        warnings=tuple(notes),
    )


@dataclass(frozen=True)
class RepresentabilityCertificate:
    is_hermitian: bool
    is_positive: bool
    vanishes_on_kernel: bool
    C_min: float
    lam: tuple[float, ...]
    min_eigenvalue: float = 0.0
    kernel_residual: float = 0.0
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_bounded(self) -> bool:
        return all(np.isfinite(self.lam))

    @property
    def representable(self) -> bool:
        return self.is_hermitian and self.is_positive and self.vanishes_on_kernel and self.is_bounded

    def __bool__(self):
        return self.representable


def _representation_matrices(alg: StarAlgebra, fac: GramFactor, tol: float) -> tuple[list[np.ndarray], list[float]]:
    """Matrices ``R_i`` with ``R_i Q = Q L_i`` and their well-definedness residuals.

    The residual for ``b_i`` is ``||N^H L_i^H K L_i N||`` over the kernel basis
    ``N``, i.e. how far ``f(x* b_i* b_i x)`` is from vanishing on ``ker K``;
    it is scaled by ``||L_i||^2`` so it compares directly with ``tol * d_max``.
    """
    lmul = left_multiplication(alg)
    reps, resid = [], []
    kernel = fac.kernel
    k = fac.gram
    for li in lmul:
        reps.append(fac.coords @ li @ fac.right_inverse)
        if kernel.shape[1] and fac.rank:
            w = li @ kernel
            leak = np.linalg.norm(w.conj().T @ k @ w, 2)
            resid.append(float(leak / max(np.linalg.norm(li, 2) ** 2, 1.0)))
        else:
            resid.append(0.0)
    return reps, resid


def check_representable(alg: StarAlgebra, f: Functional, tol: float = DEFAULT_TOL) -> RepresentabilityCertificate:
    """Certify that ``f`` is a representable positive functional.

    ``C_min`` is the squared norm of the Riesz vector of ``a -> f(a)`` on the
    GNS space, which is the smallest admissible constant.  ``lam[i]`` is the
    squared operator norm of the GNS operator of ``b_i`` (``inf`` when that
    operator is not well defined on the quotient).
    """
    _check_dim(alg, f)
    n = alg.dim
    herm = is_hermitian(alg, f, tol)
    k = inner_gram(alg, f)
    scale = float(np.abs(k).max(initial=0.0))
    fac = factor_gram(k, tol)
    min_eig = float(fac.eigvals[-1]) if n else 0.0
    positive = bool(herm and min_eig >= -tol * scale)

    v = f.values
    vnorm = float(np.linalg.norm(v))
    kernel_resid = float(np.abs(v @ fac.kernel).max(initial=0.0))
    vanishes = kernel_resid <= tol * max(vnorm, 1e-300) or vnorm == 0.0

    if not (herm and positive and vanishes):
        return RepresentabilityCertificate(
            herm, positive, vanishes, float("inf"), (float("inf"),) * n, min_eig, kernel_resid, fac.warnings
        )

    # Riesz vector: <Q a, zeta> = f(a)  <=>  Q^H zeta = conj(v)
    zeta = fac.right_inverse.conj().T @ np.conj(v)
    c_min = float(np.vdot(zeta, zeta).real)
    reps, leaks = _representation_matrices(alg, fac, tol)
    top = float(fac.eigvals[0]) if n else 0.0
    lam = []
    for rep, leak in zip(reps, leaks):
        if leak > 10 * tol * max(top, 1e-300):
            lam.append(float("inf"))
        else:
            lam.append(float(np.linalg.norm(rep, 2) ** 2) if rep.size else 0.0)
    return RepresentabilityCertificate(herm, positive, vanishes, c_min, tuple(lam), min_eig, kernel_resid, fac.warnings)


def leq(alg: StarAlgebra, h: Functional, g: Functional, tol: float = DEFAULT_TOL) -> bool:
    """Loewner order: ``h(a* a) <= g(a* a)`` for every ``a``."""
    _check_dim(alg, h, g)
    kh, kg = inner_gram(alg, h), inner_gram(alg, g)
    scale = max(float(np.abs(kh).max(initial=0.0)), float(np.abs(kg).max(initial=0.0)))
    diff = kg - kh
    d = np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))
    return bool(d.min(initial=0.0) >= -tol * scale)


def add(f: Functional, g: Functional) -> Functional:
    if f.dim != g.dim:
        raise DimensionMismatch("functionals of different length")
    return Functional(f.values + g.values)


def scale(t: float, f: Functional) -> Functional:
    if t < 0:
        raise ValueError("scale factor must be nonnegative")
    return Functional(t * f.values)


def vector_functional(alg: StarAlgebra, xs: Sequence) -> Functional:
    """``f(a) = sum_j tau(x_j* a x_j)`` for the algebra's canonical trace ``tau``."""
    if alg.trace is None:
        raise ValueError("algebra carries no canonical trace")
    mt = np.einsum("pqk,k->pq", alg.mult, alg.trace)
    values = np.zeros(alg.dim, dtype=complex)
    for x in xs:
        x = as_element(alg, x)
        xstar = alg.invol @ np.conj(x)
        bx = np.einsum("ijq,j->iq", alg.mult, x)  # row i: coeffs of b_i x
        values += bx @ mt.T @ xstar
    return Functional(values)


def random_representable(alg: StarAlgebra, k: int, seed: Optional[int] = None) -> Functional:
    """Random positive functional ``sum_{j<k} tau(x_j* a x_j)`` with complex Gaussian ``x_j``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rng = np.random.default_rng(seed)
    xs = (rng.standard_normal((k, alg.dim)) + 1j * rng.standard_normal((k, alg.dim))) / np.sqrt(2)
    if alg.trace is None:
        raise ValueError("algebra carries no canonical trace")
    return vector_functional(alg, xs)
