"""Acceptance suite: twelve criteria, exact arithmetic, one PASS/FAIL line each.

Run directly (python3 tests/test_acceptance.py) or through pytest.
"""

import random
import time
from fractions import Fraction

import pytest

from reflexa.algebra import ArtinianAlgebra
from reflexa.classify import ConsistencyError, classify
from reflexa.corpus import CORPUS_RING_IDS, M2_ZERO_RING_IDS, random_modules, ring_spec
from reflexa.duality import dual, dual_tower, reflexivity_flags
from reflexa.linalg import Subspace
from reflexa.modules import canonical, is_free, max_ideal, residue_field
from reflexa.resolution import betti_bound_checks, ext_display_report, ext_lengths, min_resolution
from reflexa.verdict import CERTIFIED_FALSE, CERTIFIED_TRUE
from reflexa.verification import m2_zero_dual_check, no_free_summand_modules, third_dual_check, third_dual_modules

SEED = 20241017


def ring(rid):
    return ring_spec(rid).build()


def crit_1():
    m = max_ideal(ring("lam"))
    d1, d2 = dual(m).dim, dual(dual(m)).dim
    surj = reflexivity_flags(m).weakly_reflexive
    return (d1, d2, surj) == (4, 8, False), f"l(m*)={d1} l(m**)={d2} phi_m onto={surj}"


def crit_2():
    k = residue_field(ring("lam"))
    f = reflexivity_flags(k)
    ext = ext_lengths(k, 6).lengths
    ok = f.torsionless and not f.reflexive and all(ext[i] != 0 for i in range(2, 7))
    return ok, f"torsionless={f.torsionless} reflexive={f.reflexive} Ext^2..6={ext[2:]}"


def crit_3():
    A = ring("ex56")
    inv = A.invariants()
    expected_socle = Subspace.span(A.field, A.length, [A.element("x"), A.element("y^2")])
    from reflexa.algebra import bnsi_certificate
    bn = bnsi_certificate(A)
    ok = (inv.length == 4 and A.socle() == expected_socle and inv.type == 2
          and max_ideal(A).dim == 3 and bn.status == CERTIFIED_TRUE and bn.reason == "m3=0,soc!=m2")
    return ok, f"length={inv.length} socle=(x,y^2):{A.socle() == expected_socle} type={inv.type} bnsi={bn.summary()}"


def crit_4():
    t0 = time.perf_counter()
    A = ArtinianAlgebra.from_strings(["x^2", "x*y", "y^3"], ["x", "y"])  # fresh caches
    tower = dual_tower(max_ideal(A), 10)
    elapsed = time.perf_counter() - t0
    lengths_ok = tower.lengths[1:] == [2 ** (n + 1) + 1 for n in range(1, 11)]
    ratios_ok = tower.ratios[1:] == [2 + Fraction(1, 2 ** n) for n in range(1, 11)]
    return lengths_ok and ratios_ok and elapsed < 5, f"lengths={tower.lengths[1:4]}... ratios exact={ratios_ok} {elapsed:.2f}s"


def crit_5():
    A = ArtinianAlgebra.from_strings(["x^2", "x*y", "y^2"], ["x", "y"])
    lengths = dual_tower(max_ideal(A), 10).lengths[1:]
    return lengths == [2 ** (n + 1) for n in range(1, 11)], f"lengths={lengths}"


def crit_6():
    A = ring("gor415")
    inv = A.invariants()
    ring_ok = (inv.length, inv.type, inv.mu_m) == (5, 1, 3) and A.max_ideal_power(3).dim == 0
    ring_ok &= inv.length == 1 + max_ideal(A).dim
    mods = [s.build(A) for s in random_modules(A, 50, SEED)]
    refl = sum(classify(M, 3)["reflexive"].status == CERTIFIED_TRUE for M in mods)
    r = classify(residue_field(A), 4)
    k_ok = r["totally_reflexive"].status == CERTIFIED_TRUE and r["free"].status == CERTIFIED_FALSE
    return ring_ok and refl == len(mods) and k_ok, f"ring ok={ring_ok} reflexive {refl}/{len(mods)} k totally reflexive, not free={k_ok}"


def crit_7():
    rows = []
    for rid in CORPUS_RING_IDS:
        A = ring(rid)
        rows.append(reflexivity_flags(canonical(A)).torsionless == (A.invariants().type == 1))
    return all(rows) and len(rows) >= 6, f"{sum(rows)}/{len(rows)} rings"


def crit_8():
    mods = no_free_summand_modules(SEED, 100)
    good = sum(m2_zero_dual_check(M) for _, M in mods)
    return good == len(mods) >= 100, f"{good}/{len(mods)} modules over {', '.join(M2_ZERO_RING_IDS)}"


def crit_9():
    mods = third_dual_modules(SEED, 25)
    good = sum(third_dual_check(M) for M in mods)
    return good == len(mods) >= 200, f"{good}/{len(mods)} identity matrices"


def crit_10():
    lam = min_resolution(residue_field(ring("lam")), 8).betti == [2 ** i for i in range(9)]
    const = all(min_resolution(residue_field(ring(f"kxn:{n}")), 8).betti == [1] * 9 for n in range(2, 7))
    checked = failures = 0
    for j, rid in enumerate(CORPUS_RING_IDS):
        A = ring(rid)
        mods = [residue_field(A), max_ideal(A)] + [s.build(A) for s in random_modules(A, 10, SEED + j)]
        for M in mods:
            if is_free(M):
                continue
            for c in betti_bound_checks(M, 6):
                checked += len(c.results)
                failures += not c.passed
    ok = lam and const and failures == 0
    return ok, f"lam 2^i={lam} k[x]/(x^n) constant={const} bound inequalities checked={checked} failures={failures}"


def crit_11():
    total = 0
    for j, rid in enumerate(CORPUS_RING_IDS):
        A = ring(rid)
        for spec in random_modules(A, 200, SEED + 31 * j):
            try:
                classify(spec.build(A), 3)
            except ConsistencyError as e:
                return False, f"{rid}: {e}"
            total += 1
    return total >= 200 * len(CORPUS_RING_IDS), f"{total} modules, no disagreement"


def crit_12():
    reports = []
    for rid in M2_ZERO_RING_IDS:
        A = ring(rid)
        mods = [residue_field(A), max_ideal(A)] + [s.build(A) for s in random_modules(A, 5, SEED)]
        for M in mods:
            a = ext_display_report(M, budget=10 ** 6)
            b = ext_display_report(M, budget=10 ** 6)
            complete = [r["i"] for r in a["rows"]] == [2, 3, 4, 5, 6]
            stated = isinstance(a["closed_form_agrees"], bool) and all(
                r["deviation"] == r["computed"] - r["closed_form"] for r in a["rows"])
            reports.append((a == b and complete and stated, a["closed_form_agrees"]))
    ok = all(r[0] for r in reports)
    agree = sum(r[1] for r in reports)
    return ok, f"{len(reports)} deterministic reports, closed form agrees on {agree}"


CRITERIA = [crit_1, crit_2, crit_3, crit_4, crit_5, crit_6, crit_7, crit_8, crit_9, crit_10, crit_11, crit_12]


def run_one(n):
    ok, detail = CRITERIA[n - 1]()
    return ok, f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", range(1, 13))
def test_criterion(n, capsys):
    ok, line = run_one(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_one(n) for n in range(1, 13)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
