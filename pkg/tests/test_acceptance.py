"""Acceptance criteria, one function per criterion.

Run under pytest (``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary) or standalone::

    python tests/test_acceptance.py
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from golden_util import check_case, load_cases  # noqa: E402
from star_lebesgue.corpus import instances  # noqa: E402
from star_lebesgue.decompose import (  # noqa: E402
    check_invariance,
    check_maximality,
    classical_oracle,
    commutant_compressions,
    decompose,
    is_absolutely_continuous,
    is_singular,
    mutual_ac,
    singularity_probe,
)
from star_lebesgue.functional import Functional, scale  # noqa: E402
from star_lebesgue.gns import build_gns, homomorphism_residual, reconstruct  # noqa: E402
from star_lebesgue.relation import (  # noqa: E402
    LinearRelation,
    injective_part,
    inverse,
    ker_part,
    mul_part,
    orth,
    regular_part,
    subspace_distance,
)
from star_lebesgue.star_algebra import function_algebra  # noqa: E402

pytestmark = pytest.mark.acceptance

TOL = 1e-9
N_CORPUS = 500
CORPUS_SEED = 2024


@dataclass
class Outcome:
    criterion: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.criterion}: {self.detail}"


@lru_cache(maxsize=None)
def corpus():
    """The shared random corpus and its decompositions, with the wall time spent."""
    t0 = time.perf_counter()
    items = []
    for inst in instances(N_CORPUS, seed=CORPUS_SEED):
        res = decompose(inst.algebra, inst.f, inst.g, TOL)
        items.append((inst, res))
    return items, time.perf_counter() - t0


def _norm(v):
    return float(np.linalg.norm(v))


def decomposition_identity() -> Outcome:
    items, elapsed = corpus()
    worst = 0.0
    for inst, res in items:
        g = inst.g.values
        err = _norm(g - res.g_a.values - res.g_s.values)
        worst = max(worst, err / _norm(g) if _norm(g) else err)
    nontrivial = sum(1 for _, r in items if 0 < r.M_basis.shape[1] < r.gns_g.dim_h)
    labels = {inst.case.label for inst, _ in items}
    ok = len(items) >= 500 and worst <= 1e-9 and elapsed < 30.0
    return Outcome(
        "decomposition identity",
        ok,
        f"{len(items)} instances over {len(labels)} algebras ({nontrivial} with 0 < dim M < dim H_g), "
        f"max |g - g_a - g_s|/|g| = {worst:.2e} (<= 1e-9), decompose+certify time {elapsed:.1f}s (< 30s)",
    )


def parts_battery() -> Outcome:
    items, _ = corpus()
    failures = []
    worst_inv = 0.0
    for inst, res in items:
        alg, f = inst.algebra, inst.f
        inv = check_invariance(res.gns_g, res)
        worst_inv = max(worst_inv, inv)
        ac = is_absolutely_continuous(alg, f, res.g_a, TOL).holds
        sing = is_singular(alg, f, res.g_s, TOL).holds
        cert = res.certificate
        if not (ac and sing and cert.rep_a.representable and cert.rep_s.representable and inv <= 1e-8):
            failures.append(inst.seed)
    return Outcome(
        "g_a << f, g_s singular to f, both representable, invariance",
        not failures,
        f"{len(items)} instances, {len(failures)} failures {failures[:5]}, max invariance residual {worst_inv:.2e} (<= 1e-8)",
    )


def maximality() -> Outcome:
    items, _ = corpus()
    failures = []
    n_checked = 0
    n_comp = 0
    for inst, res in items:
        alg, f, g = inst.algebra, inst.f, inst.g
        cands = [scale(t, res.g_a) for t in (0.25, 0.5, 1.0)]
        comps = commutant_compressions(res, 3, seed=inst.seed, tol=TOL)
        n_comp += len(comps)
        for h in cands + comps:
            n_checked += 1
            if check_maximality(alg, f, g, res, h, TOL) is not True:
                failures.append(inst.seed)
                break
    return Outcome(
        "maximality of g_a",
        not failures and n_comp >= 3 * len(items),
        f"{n_checked} candidates ({n_comp} commutant compressions) on {len(items)} instances, "
        f"{len(failures)} failures {failures[:5]}",
    )


def classical_agreement() -> Outcome:
    rng = np.random.default_rng(7)
    worst = 0.0
    count = 0
    zeros_f = zeros_g = 0
    for i in range(240):
        n = 1 + i % 12
        wf = rng.random(n) * (rng.random(n) < 0.6)
        wg = rng.random(n) * (rng.random(n) < 0.7)
        zeros_f += int((wf == 0).sum())
        zeros_g += int((wg == 0).sum())
        res = decompose(function_algebra(n), Functional(wf), Functional(wg), TOL, certify=False)
        a, s = classical_oracle(wf, wg)
        worst = max(worst, float(np.abs(res.g_a.values - a).max()), float(np.abs(res.g_s.values - s).max()))
        count += 1
    return Outcome(
        "agreement with the classical decomposition",
        count >= 200 and worst <= 1e-10,
        f"{count} instances on C^1..C^12 ({zeros_f} zero weights in f, {zeros_g} in g), max abs error {worst:.2e} (<= 1e-10)",
    )


def mutual_absolute_continuity() -> Outcome:
    items, _ = corpus()
    failures = []
    worst = 0.0
    for inst, _ in items:
        rec = mutual_ac(inst.algebra, inst.f, inst.g, TOL)
        r = max(rec.single_valued_residual, rec.injectivity_residual)
        worst = max(worst, r)
        if not (rec.f_a_ll_g_a.holds and rec.g_a_ll_f_a.holds and rec.injective_dims == (0, 0) and r <= 1e-8):
            failures.append(inst.seed)
    return Outcome(
        "f_a and g_a mutually absolutely continuous; S injective operator",
        not failures,
        f"{len(items)} instances, {len(failures)} failures {failures[:5]}, max single-valued/injectivity residual {worst:.2e} (<= 1e-8)",
    )


def random_relation(rng: np.random.Generator) -> LinearRelation:
    """Random relation with dims <= 12 and, often, nontrivial kernel and multivalued part."""
    p = int(rng.integers(1, 13))
    q = int(rng.integers(1, 13))
    parts = []
    m = int(rng.integers(0, p + q + 1))
    if m:
        parts.append(rng.standard_normal((p + q, m)) + 1j * rng.standard_normal((p + q, m)))
    for lo, hi, width in ((p, p + q, q), (0, p, p)):
        k = int(rng.integers(0, width + 1))
        if k:
            v = np.zeros((p + q, k), dtype=complex)
            v[lo:hi] = rng.standard_normal((hi - lo, k)) + 1j * rng.standard_normal((hi - lo, k))
            parts.append(v)
    span = np.hstack(parts) if parts else np.zeros((p + q, 0), dtype=complex)
    return LinearRelation(p, q, span)


def relation_identities() -> Outcome:
    rng = np.random.default_rng(11)
    worst = {"mul(T^-1) = ker T": 0.0, "T = T_reg + ({0} x mul T)": 0.0, "S = ((R^-1)_reg)^-1": 0.0}
    n = 320
    nontrivial = 0
    for _ in range(n):
        t = random_relation(rng)
        m = mul_part(t, TOL)
        nontrivial += bool(m.shape[1] and ker_part(t, TOL).shape[1])
        d1 = max(
            subspace_distance(mul_part(inverse(t), TOL), ker_part(t, TOL)),
            subspace_distance(ker_part(inverse(t), TOL), m),
        )
        reg = regular_part(t, TOL).graph().basis
        zero_mul = np.vstack([np.zeros((t.dim_h, m.shape[1])), m])
        d2 = max(
            subspace_distance(orth(np.hstack([reg, zero_mul])), t.basis),
            float(np.linalg.norm(reg.conj().T @ zero_mul)) if zero_mul.size and reg.size else 0.0,
        )
        r = regular_part(t, TOL).graph()
        chain = inverse(regular_part(inverse(r), TOL).graph())
        d3 = subspace_distance(injective_part(t, TOL).relation.basis, chain.basis)
        for key, d in zip(worst, (d1, d2, d3)):
            worst[key] = max(worst[key], d)
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k}: {v:.2e}" for k, v in worst.items())
    return Outcome(
        "relation identities",
        ok,
        f"{n} relations (dims <= 12, {nontrivial} with nonzero ker and mul), max projection distance {detail} (<= 1e-9)",
    )


def gns_roundtrip() -> Outcome:
    items, _ = corpus()
    worst_rt = worst_hom = 0.0
    count = 0
    for inst, res in items:
        for gns in (res.gns_f, res.gns_g):
            fv = gns.functional.values
            scale_ = float(np.abs(fv).max(initial=0.0))
            err = float(np.abs(reconstruct(gns).values - fv).max(initial=0.0))
            worst_rt = max(worst_rt, err / scale_ if scale_ else err)
            worst_hom = max(worst_hom, homomorphism_residual(gns))
            count += 1
    # rebuild one functional from scratch too, independent of decompose
    inst = items[1][0]
    direct = build_gns(inst.algebra, inst.f, TOL)
    worst_rt = max(worst_rt, float(np.abs(reconstruct(direct).values - inst.f.values).max()) / max(float(np.abs(inst.f.values).max()), 1e-300))
    return Outcome(
        "GNS round trip and *-homomorphism",
        worst_rt <= 1e-9 and worst_hom <= 1e-9,
        f"{count} GNS triples, max round-trip error {worst_rt:.2e}, max *-homomorphism residual {worst_hom:.2e} (<= 1e-9)",
    )


def singularity_probes() -> Outcome:
    items, _ = corpus()
    chosen = []
    for inst, res in items:
        if np.abs(res.g_s.values).max() > 1e-6 and is_singular(inst.algebra, inst.f, res.g_s, TOL).holds:
            chosen.append((inst, res))
        if len(chosen) == 50:
            break
    worst = 0.0
    for inst, res in chosen:
        worst = max(worst, singularity_probe(inst.algebra, inst.f, res.g_s, n_directions=500, seed=inst.seed, tol=TOL))
    # the probe must be able to see common mass: feed it the non-singular pairs (f, g)
    sensitivity = [
        singularity_probe(inst.algebra, inst.f, inst.g, n_directions=50, seed=inst.seed, tol=TOL)
        for inst, res in items[:200]
        if np.abs(res.g_a.values).max() > 1e-6
    ][:50]
    found = sum(s > 1e-6 for s in sensitivity)
    return Outcome(
        "no h <= f, h <= g_s found",
        len(chosen) == 50 and worst <= 1e-9,
        f"{len(chosen)} singular pairs (f, g_s) x 500 directions, largest admissible mass {worst:.2e} (<= 1e-9); "
        f"control: probe found mass on {found}/{len(sensitivity)} pairs with g_a != 0",
    )


def cli_golden() -> Outcome:
    cases = load_cases()
    problems = {c["name"]: check_case(c) for c in cases}
    bad = {k: v for k, v in problems.items() if v}
    exits = sorted({c["exit"] for c in cases})
    return Outcome(
        "CLI golden files, determinism, exit codes",
        len(cases) >= 5 and not bad,
        f"{len(cases)} fixtures, exit codes covered {exits}, problems: {bad or 'none'}",
    )


CRITERIA = [
    decomposition_identity,
    parts_battery,
    maximality,
    classical_agreement,
    mutual_absolute_continuity,
    relation_identities,
    gns_roundtrip,
    singularity_probes,
    cli_golden,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion, acceptance_report):
    outcome = criterion()
    acceptance_report.append(outcome.line())
    print(outcome.line())
    assert outcome.passed, outcome.detail


def main() -> int:
    failed = 0
    for criterion in CRITERIA:
        t0 = time.perf_counter()
        outcome = criterion()
        failed += not outcome.passed
        print(f"{outcome.line()}  [{time.perf_counter() - t0:.1f}s]", flush=True)
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
