"""Tri-state classification of modules, combining direct computation with
theorem-based shortcuts; every applicable route is run and they must agree."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ArtinianAlgebra, bnsi_certificate
from .duality import dual, reflexivity_flags
from .modules import Module, canonical, is_free, quotient_ring
from .resolution import ext_lengths, min_resolution
from .verdict import CERTIFIED_FALSE, CERTIFIED_TRUE, UNKNOWN, Verdict

PREDICATES = (
    "free",
    "torsionless",
    "weakly_reflexive",
    "reflexive",
    "totally_reflexive",
    "weakly_gorenstein",
    "skew_gorenstein",
)

DEFAULT_BOUND = 6


class ConsistencyError(AssertionError):
    """Two certified routes disagree: either a bug or a false published claim."""


@dataclass
class ClassReport:
    verdicts: dict
    routes: dict  # predicate -> every verdict produced, in rule order
    bound: int
    ext: dict = field(default_factory=dict)

    def __getitem__(self, name) -> Verdict:
        return self.verdicts[name]

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "verdicts": {p: self.verdicts[p].to_json() for p in PREDICATES},
            "provenance": {p: [v.reason for v in self.routes[p]] for p in PREDICATES},
            "ext_lengths": self.ext,
        }


def _first_nonzero(lengths, start=1):
    for i in range(start, len(lengths)):
        if lengths[i]:
            return i
    return None


def _ext_verdict(lengths, computed: int, what: str) -> Verdict:
    i = _first_nonzero(lengths)
    if i is not None:
        return Verdict.false("direct:ext-scan", module=what, index=i, length=lengths[i])
    return Verdict.unknown(computed, "direct:ext-scan", module=what)


def _merge(name: str, routes: list) -> Verdict:
    certified = [v for v in routes if v.certified]
    values = {v.value for v in certified}
    if len(values) > 1:
        detail = "; ".join(f"{v.reason}={v.status}" for v in certified)
        raise ConsistencyError(f"{name}: routes disagree ({detail})")
    if certified:
        return certified[0]
    return max(routes, key=lambda v: v.bound or 0)


def classify(M: Module, B: int = DEFAULT_BOUND, budget: int | None = None) -> ClassReport:
    if B < 2:
        raise ValueError("bound must be >= 2")
    A = M.algebra
    inv = A.invariants()
    routes = {p: [] for p in PREDICATES}

    # (1) direct computation
    free_m = is_free(M)
    routes["free"].append(
        (Verdict.true if free_m else Verdict.false)("direct:length-count", length=M.dim, mu=M.mu, length_R=A.length))
    flags = reflexivity_flags(M)
    wit = dict(phi_rank=flags.phi_rank, dim=flags.dim, bidual_dim=flags.bidual_dim)
    for name, ok in (("torsionless", flags.torsionless),
                     ("weakly_reflexive", flags.weakly_reflexive),
                     ("reflexive", flags.reflexive)):
        routes[name].append((Verdict.true if ok else Verdict.false)("direct:phi-rank", **wit))

    D = dual(M)
    extM = ext_lengths(M, B, budget)
    extD = ext_lengths(D, B, budget)
    routes["weakly_gorenstein"].append(_ext_verdict(extM.lengths, extM.computed_up_to, "M"))
    routes["skew_gorenstein"].append(_ext_verdict(extD.lengths, extD.computed_up_to, "M*"))

    parts = [routes["reflexive"][0], routes["weakly_gorenstein"][0], routes["skew_gorenstein"][0]]
    if any(v.status == CERTIFIED_FALSE for v in parts):
        bad = next(v for v in parts if v.status == CERTIFIED_FALSE)
        routes["totally_reflexive"].append(Verdict.false("direct:components", failing=bad.reason, **bad.witness))
    elif all(v.status == CERTIFIED_TRUE for v in parts):
        routes["totally_reflexive"].append(Verdict.true("direct:components"))
    else:
        routes["totally_reflexive"].append(
            Verdict.unknown(min(extM.computed_up_to, extD.computed_up_to), "direct:components"))

    if free_m:
        for p in PREDICATES:
            routes[p].append(Verdict.true("rule:free"))

    # (2) artinian Gorenstein: every finitely generated module is totally reflexive
    if inv.is_gorenstein:
        for p in ("torsionless", "weakly_reflexive", "reflexive",
                  "totally_reflexive", "weakly_gorenstein", "skew_gorenstein"):
            routes[p].append(Verdict.true("rule:gorenstein-artinian", type=inv.type))

    # (3) BNSI rings: nonfree modules have Ext^i(M,R) != 0 for all i >= 2
    bn = bnsi_certificate(A)
    if bn.status == CERTIFIED_TRUE and not free_m:
        ext2 = extM.lengths[2] if extM.computed_up_to >= 2 else None
        w = dict(bnsi_rule=bn.reason, ext2_length=ext2)
        for p in ("weakly_gorenstein", "totally_reflexive"):
            routes[p].append(Verdict.false("rule:bnsi", claim="Ext^i(M,R) != 0 for all i >= 2", **w))
        if ext2 == 0:
            routes["weakly_gorenstein"].append(Verdict.true("check:bnsi-ext2-vanishes", **w))
        for p in ("weakly_reflexive", "reflexive"):
            routes[p].append(Verdict.false("rule:bnsi", claim="weakly reflexive implies free", bnsi_rule=bn.reason))
        d_free = is_free(D)
        d_ext2 = extD.lengths[2] if extD.computed_up_to >= 2 else None
        routes["skew_gorenstein"].append(
            Verdict.false("rule:bnsi-depth-zero", claim="M nonfree implies M* nonfree",
                          dual_free=d_free, dual_ext2_length=d_ext2))
        if d_free or d_ext2 == 0:
            routes["skew_gorenstein"].append(
                Verdict.true("check:bnsi-dual", dual_free=d_free, dual_ext2_length=d_ext2))

    verdicts = {p: _merge(p, routes[p]) for p in PREDICATES}
    _check_closure(verdicts)
    ext = {"M": extM.lengths, "M*": extD.lengths}
    return ClassReport(verdicts, routes, B, ext)


def _check_closure(v: dict) -> None:
    def implies(a, bs):
        if v[a].status == CERTIFIED_TRUE:
            for b in bs:
                if v[b].status == CERTIFIED_FALSE:
                    raise ConsistencyError(f"{a} is true but {b} is false")

    implies("reflexive", ["torsionless", "weakly_reflexive"])
    implies("totally_reflexive", ["reflexive", "weakly_gorenstein", "skew_gorenstein"])
    implies("free", PREDICATES)
    if v["torsionless"].value is True and v["weakly_reflexive"].value is True and v["reflexive"].value is False:
        raise ConsistencyError("phi injective and surjective but not bijective")


@dataclass
class RingReport:
    gorenstein: bool
    bnsi: Verdict
    omega_torsionless: bool
    bnsi_witness_betti: list | None
    weakly_bnsi_evidence: dict

    def to_json(self) -> dict:
        out = {
            "gorenstein": self.gorenstein,
            "bnsi": self.bnsi.to_json(),
            "bnsi_summary": self.bnsi.summary(),
            "omega_torsionless": self.omega_torsionless,
            "weakly_bnsi_evidence": self.weakly_bnsi_evidence,
        }
        if self.bnsi_witness_betti is not None:
            out["bnsi_witness_betti"] = self.bnsi_witness_betti
        return out


def classify_ring(A: ArtinianAlgebra, B: int = DEFAULT_BOUND) -> RingReport:
    if B < 2:
        raise ValueError("bound must be >= 2")
    inv = A.invariants()
    omega_tl = reflexivity_flags(canonical(A)).torsionless
    if omega_tl != inv.is_gorenstein:
        raise ConsistencyError(f"omega torsion-less = {omega_tl} but Gorenstein = {inv.is_gorenstein}")
    bn = bnsi_certificate(A)
    witness_betti = None
    if bn.status == CERTIFIED_FALSE:
        x = bn.witness["variable"]
        witness_betti = min_resolution(quotient_ring(A, [x]), B).betti
        if witness_betti[0] != witness_betti[1]:
            raise ConsistencyError(f"BNSI witness {bn.witness['witness_module']} has betti {witness_betti}")
    fact_a = 2 * inv.mu_m - inv.length + (inv.loewy - 1) - 1
    evidence = {
        "fact_a_constant": fact_a,
        "gorenstein_m3_zero_mu_gt_2": inv.is_gorenstein and inv.loewy <= 3 and inv.mu_m > 2,
        "note": "per-module evidence only; no ring-level certification",
    }
    return RingReport(inv.is_gorenstein, bn, omega_tl, witness_betti, evidence)
