"""Built-in verification corpus: named rings and modules with expected facts.

Each fact carries a source label ("published", "derived" or "trivial") and a
short claim string.  Entries are looked up by id so worker processes only
receive ids and return plain dicts.
"""

from __future__ import annotations

import fnmatch
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .classify import ConsistencyError, classify, classify_ring
from .corpus import CORPUS_RING_IDS, M2_ZERO_RING_IDS, random_modules, ring_spec
from .duality import (
    aus_transpose, dual, dual_tower, has_free_summand, hom_module, reflexivity_flags,
    third_dual_composite, trace_ideal,
)
from .linalg import Mat
from .modules import canonical, free, is_free, max_ideal, quotient_ring, residue_field
from .resolution import betti_bound_checks, ext_display_report, ext_lengths, min_resolution
from .verdict import CERTIFIED_FALSE, CERTIFIED_TRUE

PUBLISHED, DERIVED, TRIVIAL = "published", "derived", "trivial"


@dataclass
class Fact:
    name: str
    expected: object
    source: str
    claim: str
    compute: object  # zero-argument callable

    def run(self) -> dict:
        try:
            actual = self.compute()
            error = None
        except ConsistencyError as e:
            actual, error = None, f"consistency: {e}"
        ok = error is None and actual == self.expected
        out = {"name": self.name, "expected": _jsonable(self.expected), "actual": _jsonable(actual),
               "source": self.source, "claim": self.claim, "pass": ok}
        if error:
            out["error"] = error
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


@dataclass
class CorpusEntry:
    id: str
    ring: str | None
    claim: str
    build: object  # (seed) -> list[Fact]


def _ring(rid):
    return ring_spec(rid).build()


def _ring_facts(A):
    inv = A.invariants()
    return {"length": inv.length, "type": inv.type, "gorenstein": inv.is_gorenstein,
            "mu_m": inv.mu_m, "loewy": inv.loewy}


def _status(report, pred):
    return report[pred].status


# ---- fixed entries ---------------------------------------------------------

def _lam(seed):
    A = _ring("lam")
    k, m = residue_field(A), max_ideal(A)
    return [
        Fact("ring", {"length": 3, "type": 2, "gorenstein": False, "bnsi": "certified(m2=0)"}, PUBLISHED,
             "(x,y)^2 ring is not Gorenstein and has BNSI",
             lambda: {**{k_: _ring_facts(A)[k_] for k_ in ("length", "type", "gorenstein")},
                      "bnsi": classify_ring(A, 3).bnsi.summary()}),
        Fact("m_dual_lengths", [4, 8], PUBLISHED, "l(m*) = 4 and l(m**) = 8",
             lambda: [dual(m).dim, dual(dual(m)).dim]),
        Fact("m_phi_surjective", False, PUBLISHED, "phi_m is not onto",
             lambda: reflexivity_flags(m).weakly_reflexive),
        Fact("k_torsionless_reflexive", [True, False], PUBLISHED, "k torsion-less but not reflexive",
             lambda: [reflexivity_flags(k).torsionless, reflexivity_flags(k).reflexive]),
        Fact("k_ext_nonzero_2_6", True, PUBLISHED, "Ext^i(k,R) != 0 for 2 <= i <= 6",
             lambda: all(ext_lengths(k, 6).lengths[i] > 0 for i in range(2, 7))),
        Fact("k_ext_lengths", [2, 3, 6, 12, 24, 48, 96], DERIVED, "Ext^i(k,R) lengths, i = 0..6",
             lambda: ext_lengths(k, 6).lengths),
        Fact("k_betti", [2 ** i for i in range(9)], DERIVED, "beta_i(k) = 2^i",
             lambda: min_resolution(k, 8).betti),
        Fact("k_transpose_length", 5, DERIVED, "l(Tr k) = 5", lambda: aus_transpose(k).dim),
        Fact("k_trace_dim", 2, DERIVED, "trace ideal of k is m", lambda: trace_ideal(k).dim),
        Fact("k_tower_ratios", [Fraction(1)] * 6, PUBLISHED, "l(k^{n*}) / type^n = beta_0(k)",
             lambda: dual_tower(k, 5).ratios),
        Fact("k_ext_display_agrees", True, DERIVED, "Ext lengths match the closed form for i = 2..6",
             lambda: ext_display_report(k)["closed_form_agrees"]),
        Fact("k_classify_reflexive", CERTIFIED_FALSE, PUBLISHED, "k is not reflexive",
             lambda: _status(classify(k, 4), "reflexive")),
    ]


def _ex56(seed):
    A = _ring("ex56")
    m = max_ideal(A)
    ratios = [Fraction(2) + Fraction(1, 2 ** n) for n in range(1, 11)]
    return [
        Fact("ring", {"length": 4, "type": 2, "mu_m": 2}, PUBLISHED, "length 4, type 2",
             lambda: {k_: _ring_facts(A)[k_] for k_ in ("length", "type", "mu_m")}),
        Fact("socle", ["x", "y^2"], PUBLISHED, "socle is (x, y^2)",
             lambda: sorted(str(p) for p in A.socle_polys())),
        Fact("m_length", 3, PUBLISHED, "l(m) = 3", lambda: m.dim),
        Fact("bnsi", "certified(m3=0,soc!=m2)", PUBLISHED, "reflexive implies free",
             lambda: classify_ring(A, 3).bnsi.summary()),
        Fact("m_reflexive_routes", [CERTIFIED_FALSE, True, True], PUBLISHED,
             "m not reflexive, by phi rank and by the BNSI rule",
             lambda: (lambda r: [_status(r, "reflexive"),
                                 "direct:phi-rank" in [v.reason for v in r.routes["reflexive"]],
                                 any(v.reason.startswith("rule:bnsi") for v in r.routes["reflexive"])])(
                 classify(m, 6))),
        Fact("tower_lengths", [2 ** (n + 1) + 1 for n in range(1, 11)], PUBLISHED,
             "l(m^{n*}) = 2^{n+1} + 1", lambda: dual_tower(m, 10).lengths[1:]),
        Fact("tower_ratios", ratios, PUBLISHED, "ratios 2 + 2^-n", lambda: dual_tower(m, 10).ratios[1:]),
        Fact("hom_quotient_length", 3, DERIVED, "l(Hom(R/(x,y^2), R)) = 3",
             lambda: hom_module(quotient_ring(A, ["x", "y^2"]), free(A, 1)).dim),
    ]


def _ex57(seed):
    A = _ring("ex57")
    m = max_ideal(A)
    return [
        Fact("tower_lengths", [2 ** (n + 1) for n in range(1, 11)], PUBLISHED, "l(m^{n*}) = 2^{n+1}",
             lambda: dual_tower(m, 10).lengths[1:]),
    ]


def _gor415(seed):
    A = _ring("gor415")
    k = residue_field(A)
    omega = canonical(A)
    phi = [1]
    for _ in range(7):
        phi.append(phi[-1] * 3 - (phi[-2] if len(phi) > 1 else 0))
    return [
        Fact("ring", {"length": 5, "type": 1, "gorenstein": True, "mu_m": 3, "loewy": 3}, PUBLISHED,
             "Gorenstein, l(R) = 1 + l(m), m^3 = 0", lambda: _ring_facts(A)),
        Fact("staircase", ["1", "x", "y", "z", "z^2"], DERIVED, "grevlex standard monomials",
             lambda: [str(A.to_poly({i: A.field.one})) for i in range(A.length)]),
        Fact("k_verdicts", {"totally_reflexive": CERTIFIED_TRUE, "free": CERTIFIED_FALSE}, PUBLISHED,
             "k totally reflexive but not free",
             lambda: (lambda r: {"totally_reflexive": _status(r, "totally_reflexive"),
                                 "free": _status(r, "free")})(classify(k, 4))),
        Fact("omega", {"length": 5, "mu": 1, "torsionless": True}, DERIVED, "omega cyclic of full length",
             lambda: {"length": omega.dim, "mu": omega.mu, "torsionless": reflexivity_flags(omega).torsionless}),
        Fact("k_betti", [1, 3, 8, 21, 55, 144, 377, 987], DERIVED, "beta_i(k) (Hilbert series 1+3t+t^2)",
             lambda: min_resolution(k, 7).betti),
        Fact("k_ext", [1] + [0] * 6, DERIVED, "Ext^i(k,R) = 0 for i > 0", lambda: ext_lengths(k, 6).lengths),
    ]


def _kxn(n):
    def build(seed):
        A = _ring(f"kxn:{n}")
        k, m = residue_field(A), max_ideal(A)
        facts = [
            Fact("ring", {"length": n, "type": 1, "gorenstein": True}, TRIVIAL, "k[x]/(x^n) is Gorenstein",
                 lambda: {k_: _ring_facts(A)[k_] for k_ in ("length", "type", "gorenstein")}),
            Fact("bnsi", CERTIFIED_FALSE, PUBLISHED, "R/(x) has beta_0 = beta_1",
                 lambda: classify_ring(A, 3).bnsi.status),
            Fact("witness_betti", [1] * 7, PUBLISHED, "betti of R/(x) constant",
                 lambda: classify_ring(A, 6).bnsi_witness_betti),
            Fact("k_betti", [1] * 9, PUBLISHED, "beta_i(k) = 1", lambda: min_resolution(k, 8).betti),
        ]
        if n > 1:
            facts.append(Fact("all_reflexive", True, PUBLISHED, "every module is reflexive",
                              lambda: all(_status(classify(M, 3), "reflexive") == CERTIFIED_TRUE
                                          for M in [k, m] + [s.build(A) for s in random_modules(A, 25, seed)])))
        return facts
    return build


def _power(mm, n, rule):
    def build(seed):
        A = _ring(f"power:{mm},{n}")
        return [
            Fact("bnsi", f"certified({rule})", PUBLISHED, "(x_1..x_m)^n rings have BNSI",
                 lambda: classify_ring(A, 3).bnsi.summary()),
            Fact("length_type", [_binom_sum(mm, n), _binom(mm + n - 2, n - 1)], TRIVIAL,
                 "length and type of the power ring",
                 lambda: [A.length, A.invariants().type]),
        ]
    return build


def _binom(a, b):
    from math import comb
    return comb(a, b)


def _binom_sum(mm, n):
    return sum(_binom(mm + d - 1, d) for d in range(n))


def _omega(seed):
    facts = []
    for rid in CORPUS_RING_IDS + ("kxn:1", "power:4,2"):
        A = _ring(rid)
        facts.append(Fact(f"omega_torsionless[{rid}]", A.invariants().type == 1, PUBLISHED,
                          "omega torsion-less iff type 1",
                          lambda A=A: reflexivity_flags(canonical(A)).torsionless))
    return facts


# ---- randomized entries ----------------------------------------------------

def _gor_random(seed):
    A = _ring("gor415")
    mods = [s.build(A) for s in random_modules(A, 30, seed)]
    return [Fact("random_reflexive", len(mods), PUBLISHED, "every module over a Gorenstein artinian ring is reflexive",
                 lambda: sum(reflexivity_flags(M).reflexive for M in mods))]


def no_free_summand_modules(seed, count=100):
    """Random modules without free summands over the m^2 = 0 rings."""
    out = []
    i = 0
    while len(out) < count:
        rid = M2_ZERO_RING_IDS[i % len(M2_ZERO_RING_IDS)]
        A = _ring(rid)
        for s in random_modules(A, 4, seed * 100003 + i):
            M = s.build(A)
            if not has_free_summand(M):
                out.append((rid, M))
        i += 1
    return out[:count]


def m2_zero_dual_check(M, depth=4):
    A = M.algebra
    lm = A.length - 1
    ok = dual(M).dim == lm * M.mu
    mu_dual = dual(M).mu
    tower = dual_tower(M, depth)
    for n in range(1, len(tower.lengths) - 1):
        ok &= tower.lengths[n + 1] == lm ** n * mu_dual
    return ok


def _m2_zero_duals(seed):
    mods = no_free_summand_modules(seed)
    return [Fact("m2_zero_dual_lengths", len(mods), PUBLISHED,
                 "l(M*) = l(m) mu(M) and l(M^{(n+1)*}) = l(m)^n mu(M*)",
                 lambda: sum(m2_zero_dual_check(M) for _, M in mods))]


def third_dual_modules(seed, per_ring=25):
    out = []
    for j, rid in enumerate(CORPUS_RING_IDS):
        A = _ring(rid)
        out += [s.build(A) for s in random_modules(A, per_ring, seed * 7919 + j)]
    return out


def third_dual_check(M) -> bool:
    comp = third_dual_composite(M)
    n = dual(M).dim
    return comp == Mat.identity(M.algebra.field, n)


def _third_dual(seed):
    mods = third_dual_modules(seed)
    return [Fact("third_dual_identity", len(mods), PUBLISHED, "(phi_M)* phi_{M*} = 1",
                 lambda: sum(third_dual_check(M) for M in mods))]


def _consistency(rid):
    def build(seed):
        A = _ring(rid)
        mods = [s.build(A) for s in random_modules(A, 200, seed)]
        return [Fact("classified_without_conflict", len(mods), PUBLISHED,
                     "theorem shortcuts agree with direct computation",
                     lambda: sum(1 for M in mods if classify(M, 3)))]
    return build


def bound_failures(modules, steps=6) -> list:
    bad = []
    for M in modules:
        if is_free(M):
            continue
        for chk in betti_bound_checks(M, steps):
            if not chk.passed:
                bad.append(chk.to_json())
    return bad


def _bounds(seed):
    mods = []
    for j, rid in enumerate(CORPUS_RING_IDS):
        A = _ring(rid)
        mods += [residue_field(A), max_ideal(A)] + [s.build(A) for s in random_modules(A, 10, seed + j)]
    return [Fact("bound_failures", [], PUBLISHED, "published Betti lower bounds hold",
                 lambda: bound_failures(mods))]


def _display_ok(rep) -> bool:
    return rep["closed_form_agrees"] and [r["i"] for r in rep["rows"]] == [2, 3, 4, 5, 6]


def _ext_display(seed):
    facts = []
    for rid in M2_ZERO_RING_IDS:
        A = _ring(rid)
        mods = [residue_field(A), max_ideal(A)] + [s.build(A) for s in random_modules(A, 5, seed)]
        facts.append(Fact(f"closed_form_agrees[{rid}]", True, DERIVED,
                          "(l(R)-1)^(i-2) beta_1 ((l(R)-1)^2 - 1) for i = 2..6",
                          lambda mods=mods: all(_display_ok(ext_display_report(M, budget=10 ** 6)) for M in mods)))
    return facts


ENTRIES = [
    CorpusEntry("lam", "lam", "(x,y)^2 ring: duals, k not reflexive, Ext nonvanishing", _lam),
    CorpusEntry("ex56", "ex56", "(x^2,xy,y^3) ring: BNSI and the dual tower 2^{n+1}+1", _ex56),
    CorpusEntry("ex57", "ex57", "(x^2,xy,y^2) ring: dual tower 2^{n+1}", _ex57),
    CorpusEntry("gor415", "gor415", "Gorenstein ring with m^3 = 0: k totally reflexive", _gor415),
    CorpusEntry("kxn:4", "kxn:4", "k[x]/(x^4): every module reflexive", _kxn(4)),
    CorpusEntry("kxn:5", "kxn:5", "k[x]/(x^5): BNSI fails via R/(x)", _kxn(5)),
    CorpusEntry("power:3,2", "power:3,2", "(x,y,z)^2 ring: BNSI via m^2 = 0", _power(3, 2, "m2=0")),
    CorpusEntry("power:2,3", "power:2,3", "(x,y)^3 ring: BNSI via power of m", _power(2, 3, "power-of-m")),
    CorpusEntry("omega", None, "omega torsion-less iff Gorenstein over the corpus", _omega),
    CorpusEntry("random:gor415", "gor415", "random modules over the Gorenstein ring are reflexive", _gor_random),
    CorpusEntry("random:m2-zero-duals", None, "dual lengths over m^2 = 0 rings", _m2_zero_duals),
    CorpusEntry("random:third-dual", None, "third dual identity on random modules", _third_dual),
    CorpusEntry("random:bounds", None, "Betti lower bounds on corpus modules", _bounds),
    CorpusEntry("random:ext-display", None, "Ext length closed form over m^2 = 0 rings", _ext_display),
] + [CorpusEntry(f"random:consistency:{rid}", rid, "classifier routes agree on random modules", _consistency(rid))
     for rid in CORPUS_RING_IDS]

BY_ID = {e.id: e for e in ENTRIES}


def select(pattern: str | None) -> list:
    ids = sorted(BY_ID)
    if pattern:
        ids = [i for i in ids if fnmatch.fnmatchcase(i, pattern)]
    return ids


def run_entry(entry_id: str, seed: int = 0) -> dict:
    entry = BY_ID[entry_id]
    t = time.perf_counter()
    facts = [f.run() for f in entry.build(seed)]
    return {
        "id": entry.id,
        "ring": ring_spec(entry.ring).to_json() if entry.ring else None,
        "claim": entry.claim,
        "facts": facts,
        "pass": all(f["pass"] for f in facts),
        "_seconds": time.perf_counter() - t,
    }


def _run_star(args):
    return run_entry(*args)


def verify(pattern: str | None = None, seed: int = 0, jobs: int = 1) -> list:
    ids = select(pattern)
    jobs = max(1, min(jobs, len(ids) or 1))
    if jobs == 1:
        results = [run_entry(i, seed) for i in ids]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_star, [(i, seed) for i in ids]))
    return sorted(results, key=lambda r: r["id"])


def default_jobs() -> int:
    return min(8, os.cpu_count() or 1)
