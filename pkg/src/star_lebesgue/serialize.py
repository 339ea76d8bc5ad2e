"""JSON encoding of algebras, functionals and reports.

Complex scalars are always ``[re, im]`` pairs.  Non-finite reals (an
unbounded representability constant, say) are written as ``null``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .decompose import DecompositionCertificate, DecompositionResult, MutualAcRecord, Verdict
from .functional import Functional, RepresentabilityCertificate
from .gns import GnsSpace
from .relation import LinearRelation
from .star_algebra import StarAlgebra, ValidationReport

__all__ = [
    "InputError",
    "encode_complex",
    "decode_complex",
    "algebra_to_json",
    "algebra_from_json",
    "functional_to_json",
    "functional_from_json",
    "certificate_to_json",
    "decomposition_to_json",
    "gns_to_json",
    "relation_to_json",
    "validation_to_json",
    "load_json",
    "dumps",
]


class InputError(ValueError):
    """Malformed input file; the message names the offending field or line."""


def encode_complex(a) -> Any:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        z = complex(a)
        return [float(z.real), float(z.imag)]
    return [encode_complex(x) for x in a]


def decode_complex(obj, field: str, shape: tuple[int, ...] | None = None) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"field '{field}': expected nested [re, im] pairs ({exc})") from None
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise InputError(f"field '{field}': complex scalars must be [re, im] pairs")
    out = arr[..., 0] + 1j * arr[..., 1]
    if shape is not None and out.shape != shape:
        raise InputError(f"field '{field}': expected shape {shape}, got {out.shape}")
    return out


def _real(x: float):
    x = float(x)
    return x if math.isfinite(x) else None


def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    if key not in doc:
        raise InputError(f"{where}: missing field '{key}'")
    return doc[key]


def algebra_to_json(alg: StarAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "basis": list(alg.basis_labels),
        "mult": encode_complex(alg.mult),
        "invol": encode_complex(alg.invol),
        "unit": None if alg.unit is None else encode_complex(alg.unit),
        "trace": None if alg.trace is None else encode_complex(alg.trace),
    }


def algebra_from_json(doc: dict) -> StarAlgebra:
    n = _require(doc, "dim", "algebra")
    if not isinstance(n, int) or n < 1:
        raise InputError("algebra: field 'dim' must be a positive integer")
    basis = doc.get("basis") or [f"b{i}" for i in range(n)]
    if len(basis) != n:
        raise InputError(f"algebra: field 'basis' must list {n} labels")
    mult = decode_complex(_require(doc, "mult", "algebra"), "mult", (n, n, n))
    invol = decode_complex(_require(doc, "invol", "algebra"), "invol", (n, n))
    unit = doc.get("unit")
    trace = doc.get("trace")
    return StarAlgebra(
        mult=mult,
        invol=invol,
        basis_labels=tuple(str(b) for b in basis),
        unit=None if unit is None else decode_complex(unit, "unit", (n,)),
        trace=None if trace is None else decode_complex(trace, "trace", (n,)),
    )


def functional_to_json(f: Functional) -> dict:
    return {"values": encode_complex(f.values)}


def functional_from_json(doc: dict, dim: int | None = None) -> Functional:
    values = decode_complex(_require(doc, "values", "functional"), "values")
    if values.ndim != 1:
        raise InputError("functional: field 'values' must be a flat list of [re, im] pairs")
    if dim is not None and values.shape[0] != dim:
        raise InputError(f"functional: field 'values' has {values.shape[0]} entries, algebra has dim {dim}")
    return Functional(values)


def certificate_to_json(cert: RepresentabilityCertificate) -> dict:
    return {
        "representable": cert.representable,
        "is_hermitian": cert.is_hermitian,
        "is_positive": cert.is_positive,
        "vanishes_on_kernel": cert.vanishes_on_kernel,
        "is_bounded": cert.is_bounded,
        "C_min": _real(cert.C_min),
        "lambda": [_real(x) for x in cert.lam],
        "min_eigenvalue": _real(cert.min_eigenvalue),
        "kernel_residual": _real(cert.kernel_residual),
        "warnings": list(cert.warnings),
    }


def _verdict(v: Verdict) -> dict:
    return {"holds": bool(v.holds), "residual": _real(v.residual)}


def mutual_ac_to_json(rec: MutualAcRecord) -> dict:
    return {
        "ok": rec.ok,
        "f_a": encode_complex(rec.f_a.values),
        "g_a": encode_complex(rec.g_a.values),
        "f_a_ll_g_a": _verdict(rec.f_a_ll_g_a),
        "g_a_ll_f_a": _verdict(rec.g_a_ll_f_a),
        "single_valued_residual": _real(rec.single_valued_residual),
        "injectivity_residual": _real(rec.injectivity_residual),
        "injective_part_mul_ker_dims": list(rec.injective_dims),
        "f_a_formula_residual": _real(rec.f_a_formula_residual),
        "g_a_formula_residual": _real(rec.g_a_formula_residual),
    }


def decomposition_certificate_to_json(cert: DecompositionCertificate) -> dict:
    return {
        "ok": cert.ok,
        "additivity_residual": _real(cert.additivity_residual),
        "ac_check": _verdict(cert.ac_check),
        "sing_check": _verdict(cert.sing_check),
        "invariance_residual": _real(cert.invariance_residual),
        "kernel_image_residual": _real(cert.kernel_image_residual),
        "representability_g_a": certificate_to_json(cert.rep_a),
        "representability_g_s": certificate_to_json(cert.rep_s),
        "mutual_ac": None if cert.mutual_ac is None else mutual_ac_to_json(cert.mutual_ac),
        "tolerance": cert.tol,
        "warnings": list(cert.warnings),
    }


def decomposition_to_json(res: DecompositionResult, g: Functional) -> dict:
    return {
        "g": encode_complex(g.values),
        "g_a": encode_complex(res.g_a.values),
        "g_s": encode_complex(res.g_s.values),
        "dim_H_f": res.gns_f.dim_h,
        "dim_H_g": res.gns_g.dim_h,
        "dim_M": int(res.M_basis.shape[1]),
        "M_basis": encode_complex(res.M_basis.T),
        "P": encode_complex(res.P),
        "certificate": None if res.certificate is None else decomposition_certificate_to_json(res.certificate),
    }


def gns_to_json(gns: GnsSpace, roundtrip_residual: float) -> dict:
    return {
        "dim": gns.dim_h,
        "embed": encode_complex(gns.embed),
        "rep": encode_complex(gns.rep),
        "cyclic": encode_complex(gns.cyclic),
        "cyclic_norm_sq": _real(np.vdot(gns.cyclic, gns.cyclic).real),
        "is_cyclic": gns.is_cyclic,
        "rep_residual": _real(gns.rep_residual),
        "roundtrip_residual": _real(roundtrip_residual),
        "certificate": certificate_to_json(gns.certificate),
        "warnings": list(gns.warnings),
    }


def relation_to_json(t: LinearRelation) -> dict:
    return {
        "dim_h": t.dim_h,
        "dim_k": t.dim_k,
        "pairs": [[encode_complex(h), encode_complex(k)] for h, k in t.pairs()],
    }


def validation_to_json(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "tolerance": report.tolerance,
        "violations": [
            {"invariant": v.invariant, "index": list(v.index), "residual": v.residual} for v in report.violations
        ],
    }


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(obj: Any, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=True, allow_nan=False) + "\n"
