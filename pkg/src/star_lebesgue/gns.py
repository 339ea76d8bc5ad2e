"""Concrete GNS triples for representable functionals.

The Hilbert space ``H_f`` is realized as ``C^r`` with ``r = rank K``, where
``K[i, j] = f(b_i* b_j)``.  The coordinate map ``Q`` sends an element ``a`` to
the coordinates of its class, so that ``<Q a, Q b> = f(b* a)`` with the
standard inner product ``<x, y> = y^H x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConsistencyError, RepresentabilityError
from .functional import (
    DEFAULT_TOL,
    Functional,
    RepresentabilityCertificate,
    _representation_matrices,
    check_representable,
    factor_gram,
    inner_gram,
)
from .star_algebra import StarAlgebra, as_element

__all__ = ["GnsSpace", "build_gns", "represent", "vector_of", "reconstruct", "vector_state", "homomorphism_residual"]


@dataclass(frozen=True, eq=False)
class GnsSpace:
    """A realized GNS triple ``(H, pi, zeta)``.

    Attributes
    ----------
    embed : (r, n) array
        Coordinate map ``Q``.
    rep : (n, r, r) array
        ``rep[i]`` is the operator of the basis element ``b_i``.
    cyclic : (r,) array
        Riesz vector with ``f(a) = <Q a, cyclic>``.
    """

    algebra: StarAlgebra
    functional: Functional
    embed: np.ndarray
    rep: np.ndarray
    cyclic: np.ndarray
    source_gram: np.ndarray
    certificate: RepresentabilityCertificate
    rep_residual: float
    cyclic_rank: int
    warnings: tuple[str, ...] = ()

    @property
    def dim_h(self) -> int:
        return self.embed.shape[0]

    @property
    def is_cyclic(self) -> bool:
        return self.cyclic_rank == self.dim_h


def build_gns(alg: StarAlgebra, f: Functional, tol: float = DEFAULT_TOL) -> GnsSpace:
    cert = check_representable(alg, f, tol)
    if not cert.representable:
        raise RepresentabilityError("functional is not representable", cert)
    k = inner_gram(alg, f)
    fac = factor_gram(k, tol)
    r, n = fac.rank, alg.dim
    q = fac.coords
    zeta = fac.right_inverse.conj().T @ np.conj(f.values)
    reps, _ = _representation_matrices(alg, fac, tol)
    rep = np.array(reps).reshape(n, r, r)

    # rep[i] Q = Q L_i must hold exactly on ran Q (relative to |Q|^2)
    lmul = np.transpose(alg.mult, (0, 2, 1))
    qnorm = max(float(np.linalg.norm(q, 2)), 1e-300) if r else 1.0
    resid = 0.0
    for i in range(n):
        diff = rep[i] @ q - q @ lmul[i]
        if diff.size:
            resid = max(resid, float(np.linalg.norm(diff, 2)) / (qnorm * max(np.linalg.norm(lmul[i], 2), 1.0)))
    # the defect on ker K is a square root of a discarded eigenvalue
    if resid > max(10 * np.sqrt(tol), 1e-6):
        raise ConsistencyError(f"representation operators are not well defined (residual {resid:.3e})", resid)

    cyc = np.einsum("irs,s->ri", rep, zeta) if r else np.zeros((0, n))
    cyclic_rank = int(np.linalg.matrix_rank(cyc, tol=np.sqrt(tol) * max(np.abs(cyc).max(initial=0.0), 1e-300))) if r else 0
    notes = list(fac.warnings)
    if cyclic_rank != r:
        notes.append(f"cyclic vector spans {cyclic_rank} of {r} dimensions")
    return GnsSpace(
        algebra=alg,
        functional=f,
        embed=q,
        rep=rep,
        cyclic=zeta,
        source_gram=k.T,
        certificate=cert,
        rep_residual=resid,
        cyclic_rank=cyclic_rank,
        warnings=tuple(notes),
    )


def represent(gns: GnsSpace, a) -> np.ndarray:
    a = as_element(gns.algebra, a)
    return np.einsum("i,irs->rs", a, gns.rep)


def vector_of(gns: GnsSpace, a) -> np.ndarray:
    return gns.embed @ as_element(gns.algebra, a)


def reconstruct(gns: GnsSpace) -> Functional:
    """Values ``<pi(b_i) zeta, zeta>``."""
    z = gns.cyclic
    return Functional(np.einsum("s,irs,r->i", z, gns.rep, z.conj()) if gns.dim_h else np.zeros(gns.algebra.dim))


def vector_state(gns: GnsSpace, xi) -> Functional:
    """The functional ``a -> <pi(a) xi, xi>`` for a vector ``xi`` of the GNS space."""
    xi = np.asarray(xi, dtype=complex)
    if gns.dim_h == 0:
        return Functional(np.zeros(gns.algebra.dim))
    return Functional(np.einsum("s,irs,r->i", xi, gns.rep, xi.conj()))


def homomorphism_residual(gns: GnsSpace) -> float:
    """Worst defect of ``pi(b_i b_j) = pi(b_i) pi(b_j)`` and ``pi(b_i*) = pi(b_i)^H``.

    Relative to ``max(1, max_i |pi(b_i)|)`` (squared for the product identity).
    """
    if gns.dim_h == 0:
        return 0.0
    alg = gns.algebra
    rep = gns.rep
    top = max(1.0, max(float(np.linalg.norm(r, 2)) for r in rep))
    # pi(b_i b_j) = sum_k mult[i, j, k] rep[k]
    prod = np.einsum("ijk,krs->ijrs", alg.mult, rep)
    direct = np.einsum("irt,jts->ijrs", rep, rep)
    mult_err = float(np.abs(prod - direct).max()) / top**2
    # pi(b_i*) = sum_k S[k, i] rep[k]
    star = np.einsum("ki,krs->irs", alg.invol, rep)
    adj_err = float(np.abs(star - np.conj(np.transpose(rep, (0, 2, 1)))).max()) / top
    return max(mult_err, adj_err)
