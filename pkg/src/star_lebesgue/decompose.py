"""Lebesgue decomposition of a representable functional against another.

Given representable ``f`` and ``g`` on the same algebra, the relation
``T = {(A a, B a)}`` between their GNS spaces has multivalued part ``M``.
With ``P`` the projection onto ``M`` and ``zeta`` the cyclic vector of ``g``,

    g_a(a) = <pi_g(a) (I - P) zeta, (I - P) zeta>
    g_s(a) = <pi_g(a) P zeta, P zeta>

``g_a`` is the largest ``f``-absolutely continuous part of ``g`` and ``g_s``
is singular to ``f``.  Everything that theory asserts about the pair is
re-checked numerically and collected in a :class:`DecompositionCertificate`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .exceptions import DimensionMismatch
from .functional import (
    DEFAULT_TOL,
    Functional,
    GramFactor,
    RepresentabilityCertificate,
    check_representable,
    factor_gram,
    inner_gram,
    leq,
)
from .gns import GnsSpace, build_gns, vector_state
from .relation import (
    InjectivePart,
    LinearRelation,
    complement,
    injective_part,
    ker_part,
    mul_margin,
    mul_part,
    null_space,
    orth,
    projector,
    subspace_distance,
)
from .star_algebra import StarAlgebra

__all__ = [
    "Verdict",
    "DecompositionCertificate",
    "DecompositionResult",
    "MutualAcRecord",
    "build_T",
    "decompose",
    "is_absolutely_continuous",
    "is_singular",
    "check_invariance",
    "check_maximality",
    "commutant",
    "commutant_projections",
    "commutant_compressions",
    "mutual_ac",
    "classical_oracle",
    "max_dominated_multiple",
    "singularity_probe",
]


class Verdict(NamedTuple):
    holds: bool
    residual: float


@dataclass(frozen=True)
class DecompositionCertificate:
    additivity_residual: float
    ac_check: Verdict
    sing_check: Verdict
    invariance_residual: float
    kernel_image_residual: float
    rep_a: RepresentabilityCertificate
    rep_s: RepresentabilityCertificate
    tol: float
    warnings: tuple[str, ...] = ()
    mutual_ac: Optional["MutualAcRecord"] = None

    @property
    def ok(self) -> bool:
        return (
            self.additivity_residual <= self.tol
            and self.ac_check.holds
            and self.sing_check.holds
            and self.invariance_residual <= 10 * self.tol
            and self.rep_a.representable
            and self.rep_s.representable
            and (self.mutual_ac is None or self.mutual_ac.ok)
        )


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """Output of :func:`decompose`.

    ``M_basis`` and ``P`` live in the coordinates of the GNS space of ``g``
    (available as ``gns_g``).
    """

    g_a: Functional
    g_s: Functional
    M_basis: np.ndarray
    complement_basis: np.ndarray
    P: np.ndarray
    certificate: Optional[DecompositionCertificate]
    gns_f: GnsSpace
    gns_g: GnsSpace
    relation: LinearRelation

    @property
    def complement_projection(self) -> np.ndarray:
        return projector(self.complement_basis)


def _same_algebra(a1: StarAlgebra, a2: StarAlgebra) -> bool:
    return a1 is a2 or (
        a1.dim == a2.dim and np.array_equal(a1.mult, a2.mult) and np.array_equal(a1.invol, a2.invol)
    )


def build_T(gns_f: GnsSpace, gns_g: GnsSpace) -> LinearRelation:
    """The relation ``{(A b_i, B b_i)}`` spanned over the basis."""
    if not _same_algebra(gns_f.algebra, gns_g.algebra):
        raise DimensionMismatch("GNS spaces come from different algebras")
    return LinearRelation(gns_f.dim_h, gns_g.dim_h, np.vstack([gns_f.embed, gns_g.embed]))


def _relation(alg, f, g, tol):
    gf = build_gns(alg, f, tol)
    gg = build_gns(alg, g, tol)
    return gf, gg, build_T(gf, gg)


def is_absolutely_continuous(alg: StarAlgebra, f: Functional, g: Functional, tol: float = DEFAULT_TOL) -> Verdict:
    """Whether ``g << f``, i.e. ``mul T`` is trivial.

    The residual is :func:`relation.mul_margin`: zero when ``T`` contains a
    vector ``(0, k)``, and bounded away from zero otherwise.
    """
    _, _, t = _relation(alg, f, g, tol)
    m = mul_part(t, tol)
    return Verdict(m.shape[1] == 0, mul_margin(t))


def is_singular(alg: StarAlgebra, f: Functional, g: Functional, tol: float = DEFAULT_TOL) -> Verdict:
    """Whether ``f`` and ``g`` are mutually singular, i.e. ``mul T`` fills the GNS space of ``g``.

    The residual is the dimension of the part of the GNS space of ``g`` not
    covered by ``mul T``.
    """
    _, gg, t = _relation(alg, f, g, tol)
    m = mul_part(t, tol)
    gap = gg.dim_h - m.shape[1]
    return Verdict(gap == 0, float(gap))


def decompose(
    alg: StarAlgebra,
    f: Functional,
    g: Functional,
    tol: float = DEFAULT_TOL,
    certify: bool = True,
) -> DecompositionResult:
    """Split ``g`` into its ``f``-absolutely continuous and ``f``-singular parts.

    Raises :class:`RepresentabilityError` if either input is not representable.
    With ``certify=False`` the (comparatively expensive) certificate is skipped.
    """
    gf, gg, t = _relation(alg, f, g, tol)
    m = mul_part(t, tol)
    if m.shape[1] == gg.dim_h:
        m = np.eye(gg.dim_h, dtype=complex)
    # an explicit complement basis keeps a part exactly zero when M is {0} or everything
    n_basis = complement(m)
    zeta = gg.cyclic
    xi_s = m @ (m.conj().T @ zeta)
    xi_a = n_basis @ (n_basis.conj().T @ zeta)
    result = DecompositionResult(
        g_a=vector_state(gg, xi_a),
        g_s=vector_state(gg, xi_s),
        M_basis=m,
        complement_basis=n_basis,
        P=projector(m),
        certificate=None,
        gns_f=gf,
        gns_g=gg,
        relation=t,
    )
    if certify:
        result = replace(result, certificate=_certify(alg, f, g, result, tol))
    return result


def _kernel_image(result: DecompositionResult, tol: float) -> np.ndarray:
    """``M`` computed as the image of ``ker K_f`` under the coordinates of ``g``."""
    k = inner_gram(result.gns_f.algebra, result.gns_f.functional)
    kernel = factor_gram(k, tol).kernel
    q = result.gns_g.embed
    floor = np.sqrt(tol) * float(np.linalg.norm(q, 2)) if q.size else 0.0
    return orth(q @ kernel, atol=floor)


def _certify(alg, f, g, result: DecompositionResult, tol: float) -> DecompositionCertificate:
    gnorm = max(float(np.abs(g.values).max(initial=0.0)), 1e-300)
    additivity = float(np.abs(g.values - result.g_a.values - result.g_s.values).max(initial=0.0)) / gnorm
    if not np.any(g.values):
        additivity = float(np.abs(result.g_a.values).max(initial=0.0) + np.abs(result.g_s.values).max(initial=0.0))
    return DecompositionCertificate(
        additivity_residual=additivity,
        ac_check=is_absolutely_continuous(alg, f, result.g_a, tol),
        sing_check=is_singular(alg, f, result.g_s, tol),
        invariance_residual=check_invariance(result.gns_g, result),
        kernel_image_residual=subspace_distance(result.M_basis, _kernel_image(result, tol)),
        rep_a=check_representable(alg, result.g_a, tol),
        rep_s=check_representable(alg, result.g_s, tol),
        tol=tol,
        warnings=result.gns_f.warnings + result.gns_g.warnings,
    )


def check_invariance(gns_g: GnsSpace, result: DecompositionResult) -> float:
    """Largest residual of the invariance identities for ``M`` under ``pi_g``.

    Checked for every basis element ``b_i``:

    * ``pi(b_i) P zeta = P pi(b_i) zeta = P (B b_i)``
    * ``pi(b_i) (I - P) zeta = (I - P) pi(b_i) zeta``
    * ``(I - P) pi(b_i) P = 0`` (``M`` is invariant)

    Residuals are relative to ``max(1, |zeta| max_i |pi(b_i)|)``.
    """
    r = gns_g.dim_h
    if r == 0:
        return 0.0
    p = result.P
    ip = result.complement_projection
    z = gns_g.cyclic
    ref = max(1.0, float(np.linalg.norm(z)) * max(float(np.linalg.norm(ri, 2)) for ri in gns_g.rep))
    worst = 0.0
    for i, ri in enumerate(gns_g.rep):
        b_i = gns_g.embed[:, i]
        worst = max(
            worst,
            float(np.linalg.norm(ri @ p @ z - p @ ri @ z)),
            float(np.linalg.norm(p @ ri @ z - p @ b_i)),
            float(np.linalg.norm(ri @ ip @ z - ip @ ri @ z)),
            float(np.linalg.norm(ip @ ri @ p, 2)),
        )
    return worst / ref


def check_maximality(
    alg: StarAlgebra,
    f: Functional,
    g: Functional,
    result: DecompositionResult,
    h: Functional,
    tol: float = DEFAULT_TOL,
) -> Optional[bool]:
    """Test ``h <= g_a`` for an admissible ``h``.

    Returns ``None`` when ``h`` is not admissible (``h <= g`` or ``h << f``
    fails), so the maximality statement says nothing about it.  A ``False``
    return is a genuine violation.
    """
    if not leq(alg, h, g, tol):
        return None
    if not is_absolutely_continuous(alg, f, h, tol).holds:
        return None
    return leq(alg, h, result.g_a, tol)


# --------------------------------------------------------------------------
# commutant compressions


def commutant(gns: GnsSpace, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Basis ``(c, r, r)`` of matrices commuting with every ``pi(b_i)``."""
    r = gns.dim_h
    if r == 0:
        return np.zeros((0, 0, 0), dtype=complex)
    eye = np.eye(r)
    # row-major vec: vec(W R) = (I kron R^T) vec W, vec(R W) = (R kron I) vec W
    blocks = [np.kron(eye, ri.T) - np.kron(ri, eye) for ri in gns.rep]
    system = np.vstack(blocks)
    scale_ = max(float(np.abs(system).max(initial=0.0)), 1.0)
    basis = null_space(system, np.sqrt(tol) * scale_)
    return basis.T.reshape(-1, r, r)


def commutant_projections(
    gns: GnsSpace,
    count: int,
    rng: np.random.Generator,
    tol: float = DEFAULT_TOL,
    basis: Optional[np.ndarray] = None,
) -> list[np.ndarray]:
    """Random orthogonal projections in the commutant of ``pi``.

    Each is a spectral projection of a random hermitian commutant element onto
    a random nonempty subset of its eigenvalue clusters.  ``basis`` may pass a
    precomputed :func:`commutant`.
    """
    r = gns.dim_h
    if basis is None:
        basis = commutant(gns, tol)
    out = []
    for _ in range(count):
        if r == 0:
            out.append(np.zeros((0, 0), dtype=complex))
            continue
        coeff = rng.standard_normal(basis.shape[0]) + 1j * rng.standard_normal(basis.shape[0])
        x = np.einsum("c,crs->rs", coeff, basis)
        x = 0.5 * (x + x.conj().T)
        d, u = np.linalg.eigh(x)
        spread = max(float(np.abs(d).max()), 1e-300)
        labels = np.concatenate([[0], np.cumsum(np.diff(d) > 1e-6 * spread)])
        clusters = np.unique(labels)
        chosen = clusters[rng.random(clusters.size) < 0.5]
        if chosen.size == 0:
            chosen = clusters[[rng.integers(clusters.size)]]
        cols = u[:, np.isin(labels, chosen)]
        out.append(cols @ cols.conj().T)
    return out


def commutant_compressions(result: DecompositionResult, count: int, seed: Optional[int] = None, tol: float = DEFAULT_TOL) -> list[Functional]:
    """Functionals ``<pi_g(.) W xi, W xi>`` with ``xi = (I - P) zeta`` and ``W`` in the commutant.

    These are dominated by ``g_a`` and hence admissible for maximality tests.
    """
    rng = np.random.default_rng(seed)
    gg = result.gns_g
    xi = result.complement_projection @ gg.cyclic
    return [vector_state(gg, w @ xi) for w in commutant_projections(gg, count, rng, tol)]


# --------------------------------------------------------------------------
# mutual absolute continuity of the absolutely continuous parts


@dataclass(frozen=True)
class MutualAcRecord:
    f_a: Functional
    g_a: Functional
    f_a_ll_g_a: Verdict
    g_a_ll_f_a: Verdict
    single_valued_residual: float
    injectivity_residual: float
    injective_dims: tuple[int, int]
    f_a_formula_residual: float
    g_a_formula_residual: float
    tol: float

    @property
    def injective_part_holds(self) -> bool:
        return (
            self.injective_dims == (0, 0)
            and self.single_valued_residual <= 10 * self.tol
            and self.injectivity_residual <= 10 * self.tol
        )

    @property
    def ok(self) -> bool:
        return (
            self.f_a_ll_g_a.holds
            and self.g_a_ll_f_a.holds
            and self.injective_part_holds
            and self.f_a_formula_residual <= 10 * self.tol
            and self.g_a_formula_residual <= 10 * self.tol
        )


def _formula_residual(alg, part: Functional, embed: np.ndarray, proj: np.ndarray) -> float:
    """Distance between ``part(a* a)`` and ``|(I - proj) Q a|^2`` as Gram matrices."""
    k = inner_gram(alg, part)
    c = embed - proj @ embed
    expected = c.conj().T @ c
    denom = max(float(np.abs(embed.conj().T @ embed).max(initial=0.0)), 1e-300)
    return float(np.abs(k - expected).max(initial=0.0)) / denom


def mutual_ac(alg: StarAlgebra, f: Functional, g: Functional, tol: float = DEFAULT_TOL) -> MutualAcRecord:
    """Decompose ``f`` against ``g`` and ``g`` against ``f`` and compare the regular parts."""
    res_g = decompose(alg, f, g, tol, certify=False)
    res_f = decompose(alg, g, f, tol, certify=False)
    f_a, g_a = res_f.g_a, res_g.g_a

    t = build_T(res_g.gns_f, res_g.gns_g)
    inj: InjectivePart = injective_part(t, tol)
    p_ker = projector(ker_part(t, tol))
    q_mul = projector(mul_part(t, tol))
    return MutualAcRecord(
        f_a=f_a,
        g_a=g_a,
        f_a_ll_g_a=is_absolutely_continuous(alg, g_a, f_a, tol),
        g_a_ll_f_a=is_absolutely_continuous(alg, f_a, g_a, tol),
        single_valued_residual=inj.single_valued_residual,
        injectivity_residual=inj.injectivity_residual,
        injective_dims=(inj.mul_dim, inj.ker_dim),
        f_a_formula_residual=_formula_residual(alg, f_a, res_g.gns_f.embed, p_ker),
        g_a_formula_residual=_formula_residual(alg, g_a, res_g.gns_g.embed, q_mul),
        tol=tol,
    )


# --------------------------------------------------------------------------
# commutative ground truth and singularity probe


def classical_oracle(weights_f, weights_g) -> tuple[np.ndarray, np.ndarray]:
    """Lebesgue decomposition of measures on a finite set.

    The absolutely continuous part of ``g`` is ``g`` restricted to the support
    of ``f``; the singular part is the rest.
    """
    wf = np.asarray(weights_f, dtype=float)
    wg = np.asarray(weights_g, dtype=float)
    if wf.shape != wg.shape:
        raise DimensionMismatch("weight vectors differ in length")
    if (wf < 0).any() or (wg < 0).any():
        raise ValueError("weights must be nonnegative")
    support = wf > 0
    return np.where(support, wg, 0.0), np.where(support, 0.0, wg)


def max_dominated_multiple(target, k_dir: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Largest ``t >= 0`` with ``t * k_dir <= target`` in the Loewner order.

    ``target`` is a PSD Gram matrix or its :class:`GramFactor`.  Returns
    ``inf`` when ``k_dir`` is negligible.
    """
    dir_scale = float(np.abs(k_dir).max(initial=0.0))
    if dir_scale == 0.0:
        return float("inf")
    fac = target if isinstance(target, GramFactor) else factor_gram(target, tol)
    nker = fac.kernel
    if nker.shape[1]:
        leak = float(np.linalg.norm(nker.conj().T @ k_dir @ nker, 2))
        if leak > tol * dir_scale:
            return 0.0
    if fac.rank == 0:
        return 0.0
    w = fac.right_inverse
    top = float(np.linalg.eigvalsh(w.conj().T @ k_dir @ w).max())
    return 1.0 / top if top > 0 else float("inf")


def singularity_probe(
    alg: StarAlgebra,
    f: Functional,
    g: Functional,
    n_directions: int = 500,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOL,
) -> float:
    """Randomized search for a nonzero ``h`` with ``h <= f`` and ``h <= g``.

    Candidates ``h = <pi_f(.) C zeta_f, zeta_f>`` with ``0 <= C <= I`` in the
    commutant of ``pi_f`` are exactly the functionals below ``f``; each is
    scaled by the largest factor keeping it below ``g``.  Even draws use a
    random positive commutant element, odd draws a random spectral projection
    of one (these reach functionals supported on a proper central piece).
    Returns the largest mass ``max_i |h(b_i)|`` found, relative to
    ``max_i |g(b_i)|``.
    """
    rng = np.random.default_rng(seed)
    gf = build_gns(alg, f, tol)
    k_g = factor_gram(inner_gram(alg, g), tol)
    gscale = float(np.abs(g.values).max(initial=0.0))
    if gf.dim_h == 0 or gscale == 0.0:
        return 0.0
    basis = commutant(gf, tol)
    z = gf.cyclic
    best = 0.0
    for trial in range(n_directions):
        if trial % 2:
            c = commutant_projections(gf, 1, rng, tol, basis=basis)[0]
        else:
            coeff = rng.standard_normal(basis.shape[0]) + 1j * rng.standard_normal(basis.shape[0])
            x = np.einsum("c,crs->rs", coeff, basis)
            c = x.conj().T @ x
            c /= float(np.linalg.norm(c, 2))
        h = Functional(np.einsum("s,irs,r->i", c @ z, gf.rep, z.conj()))
        t = min(1.0, max_dominated_multiple(k_g, inner_gram(alg, h), tol))
        best = max(best, t * float(np.abs(h.values).max(initial=0.0)))
    return best / gscale
