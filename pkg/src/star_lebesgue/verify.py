"""The full battery of checks for one pair ``(f, g)``.

Each :class:`Check` carries a short statement of the property it tests so a
failing report can be read without the source.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .decompose import (
    DecompositionResult,
    _certify,
    check_maximality,
    commutant_compressions,
    decompose,
    mutual_ac,
)
from .functional import DEFAULT_TOL, Functional, scale
from .gns import homomorphism_residual, reconstruct
from .star_algebra import StarAlgebra

__all__ = ["Check", "run_checks", "all_passed"]


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    passed: bool
    residual: float
    threshold: float

    def to_json(self) -> dict:
        r = float(self.residual)
        return {
            "name": self.name,
            "statement": self.statement,
            "passed": bool(self.passed),
            "residual": r if np.isfinite(r) else None,
            "threshold": float(self.threshold),
        }


def _le(name, statement, residual, threshold) -> Check:
    return Check(name, statement, bool(residual <= threshold), float(residual), float(threshold))


def _flag(name, statement, ok, residual=0.0) -> Check:
    return Check(name, statement, bool(ok), float(residual), 0.0)


def _roundtrip(gns) -> float:
    f = gns.functional.values
    return float(np.abs(reconstruct(gns).values - f).max(initial=0.0)) / max(float(np.abs(f).max(initial=0.0)), 1e-300)


def run_checks(
    alg: StarAlgebra,
    f: Functional,
    g: Functional,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    g_a_override: Optional[Functional] = None,
    n_compressions: int = 3,
) -> tuple[DecompositionResult, list[Check]]:
    """Decompose ``g`` against ``f`` and run every check.

    ``g_a_override`` replaces the computed absolutely continuous part before
    the checks run; it exists to demonstrate that tampering is detected.
    """
    res = decompose(alg, f, g, tol, certify=False)
    if g_a_override is not None:
        res = replace(res, g_a=g_a_override)
    cert = _certify(alg, f, g, res, tol)
    res = replace(res, certificate=cert)

    checks = [
        _le("gns_roundtrip_f", "f(a) = <pi_f(a) zeta_f, zeta_f>", _roundtrip(res.gns_f), tol),
        _le("gns_roundtrip_g", "g(a) = <pi_g(a) zeta_g, zeta_g>", _roundtrip(res.gns_g), tol),
        _le("star_homomorphism_f", "pi_f is a *-representation", homomorphism_residual(res.gns_f), tol),
        _le("star_homomorphism_g", "pi_g is a *-representation", homomorphism_residual(res.gns_g), tol),
        _le("additivity", "g = g_a + g_s", cert.additivity_residual, tol),
        _flag("representable_g_a", "g_a is a representable positive functional", cert.rep_a.representable),
        _flag("representable_g_s", "g_s is a representable positive functional", cert.rep_s.representable),
        _le(
            "invariance",
            "M and its complement are pi_g-invariant; pi_g(a) P zeta = P pi_g(a) zeta = P(Ba)",
            cert.invariance_residual,
            10 * tol,
        ),
        _le("kernel_image", "M equals the image of ker f under the coordinates of g", cert.kernel_image_residual, np.sqrt(tol)),
        _flag("g_a_ac_f", "g_a is absolutely continuous with respect to f", cert.ac_check.holds, cert.ac_check.residual),
        _flag("g_s_singular_f", "g_s and f are mutually singular", cert.sing_check.holds, cert.sing_check.residual),
    ]

    candidates = [scale(t, res.g_a) for t in (0.25, 0.5, 1.0)]
    if g_a_override is None:
        candidates += commutant_compressions(res, n_compressions, seed=seed, tol=tol)
    else:
        # compressions of the genuine regular part
        genuine = decompose(alg, f, g, tol, certify=False)
        candidates += commutant_compressions(genuine, n_compressions, seed=seed, tol=tol)
    verdicts = [check_maximality(alg, f, g, res, h, tol) for h in candidates]
    failures = sum(v is False for v in verdicts)
    checks.append(
        Check(
            "maximality",
            "h <= g and h << f imply h <= g_a",
            failures == 0,
            float(failures),
            0.0,
        )
    )

    rec = mutual_ac(alg, f, g, tol)
    cert = replace(cert, mutual_ac=rec)
    res = replace(res, certificate=cert)
    checks += [
        _flag("f_a_ac_g_a", "f_a is absolutely continuous with respect to g_a", rec.f_a_ll_g_a.holds, rec.f_a_ll_g_a.residual),
        _flag("g_a_ac_f_a", "g_a is absolutely continuous with respect to f_a", rec.g_a_ll_f_a.holds, rec.g_a_ll_f_a.residual),
        _le(
            "injective_part_single_valued",
            "S = {((I-P)Aa, (I-Q)Ba)} is the graph of an operator",
            rec.single_valued_residual if rec.injective_dims[0] == 0 else np.inf,
            10 * tol,
        ),
        _le(
            "injective_part_injective",
            "the operator S is one-to-one",
            rec.injectivity_residual if rec.injective_dims[1] == 0 else np.inf,
            10 * tol,
        ),
        _le("f_a_formula", "f_a(a*a) = |(I-P) Aa|^2", rec.f_a_formula_residual, 10 * tol),
        _le("g_a_formula", "g_a(a*a) = |(I-Q) Ba|^2", rec.g_a_formula_residual, 10 * tol),
    ]
    return res, checks


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)
