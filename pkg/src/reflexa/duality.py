"""Hom modules, duals, the natural map M -> M**, Auslander transpose, dual towers."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Mat, Subspace, axpy, shift
from .modules import Module, ModuleError, ModuleMap, free

DEFAULT_BUDGET = 10_000


def default_budget() -> int:
    return int(os.environ.get("REFLEXA_BUDGET", DEFAULT_BUDGET))


class BudgetExceeded(RuntimeError):
    pass


def _power(N: Module, n: int) -> Module:
    d = N.dim
    acts = []
    for X in N.actions:
        cols = []
        for i in range(n):
            cols.extend(shift(c, i * d) for c in X.cols)
        acts.append(Mat(N.field, n * d, n * d, cols))
    return Module(N.algebra, acts, check=False)


class HomModule(Module):
    """Hom_R(source, target) realized as tuples of values on the minimal
    generators of ``source``: a subspace of target^mu."""

    source: Module
    target: Module
    space: Subspace

    def values(self, f: dict) -> list:
        """The images f(g_1), ..., f(g_mu) of the source generators."""
        v = self.space.vector(f)
        d = self.target.dim
        parts = [{} for _ in range(self.source.mu)]
        for k, x in v.items():
            parts[k // d][k % d] = x
        return parts

    def functional_matrix(self, f: dict) -> Mat:
        """Matrix (target.dim x source.dim) of the k-linear map underlying f."""
        M, N = self.source, self.target
        vals = self.values(f)
        ell = self.algebra.length
        orbits = [N.orbit(n) for n in vals]
        sec = M.section() if M.dim else None
        cols = []
        for m in range(M.dim):
            out: dict = {}
            for k, c in sec.cols[m].items():
                axpy(out, c, orbits[k // ell][k % ell])
            cols.append(out)
        return Mat(self.field, N.dim, M.dim, cols)

    def evaluate(self, f: dict, m: dict) -> dict:
        return self.functional_matrix(f).apply(m)

    def element_of(self, fmat: Mat) -> dict:
        """Coordinates of the R-linear map with k-matrix ``fmat``."""
        d = self.target.dim
        v: dict = {}
        for i, g in enumerate(self.source.min_generators()):
            v.update(shift(fmat.apply(g), i * d))
        return self.space.coords(v)


def hom_module(M: Module, N: Module) -> HomModule:
    if M.algebra is not N.algebra:
        raise ModuleError("modules live over different algebras")
    A = M.algebra
    mu, d = M.mu, N.dim
    rels = M.relations()
    ell = A.length
    parts = []
    for rel in rels:
        p = [{} for _ in range(mu)]
        for k, x in rel.items():
            p[k // ell][k % ell] = x
        parts.append(p)
    orbits = [N.orbit(N.unit(t)) for t in range(d)]
    cols = []
    for i in range(mu):
        for t in range(d):
            col: dict = {}
            for r, p in enumerate(parts):
                for s, c in p[i].items():
                    img = orbits[t][s]
                    if img:
                        axpy(col, c, shift(img, r * d))
            cols.append(col)
    L = Mat(A.field, len(rels) * d, mu * d, cols)
    space = L.kernel() if rels else Subspace.whole(A.field, mu * d)
    P = _power(N, mu)
    sub, _ = P.submodule(space, check=False)
    H = HomModule.__new__(HomModule)
    Module.__init__(H, A, sub.actions, check=False, label=f"Hom({M.label or 'M'},{N.label or 'N'})")
    H.source, H.target, H.space = M, N, space
    return H


def dual(M: Module) -> HomModule:
    if "dual" not in M._cache:
        D = hom_module(M, free(M.algebra, 1))
        D.label = f"{M.label or 'M'}*"
        M._cache["dual"] = D
    return M._cache["dual"]


def natural_map(M: Module) -> ModuleMap:
    """phi_M : M -> M**, m |-> (f |-> f(m))."""
    if "phi" in M._cache:
        return M._cache["phi"]
    D = dual(M)
    DD = dual(D)
    ell = M.algebra.length
    gens = D.min_generators()
    fmats = [D.functional_matrix(h) for h in gens]
    cols = []
    for m in range(M.dim):
        v: dict = {}
        for j, F in enumerate(fmats):
            v.update(shift(F.cols[m], j * ell))
        cols.append(DD.space.coords(v))
    phi = ModuleMap(M, DD, Mat(M.field, DD.dim, M.dim, cols), check=False)
    M._cache["phi"] = phi
    return phi


def dual_map(g: ModuleMap) -> ModuleMap:
    """g* : target* -> source*, psi |-> psi o g."""
    DA, DB = dual(g.source), dual(g.target)
    cols = []
    for b in range(DB.dim):
        psi = DB.functional_matrix({b: DB.field.one})
        cols.append(DA.element_of(psi @ g.mat))
    return ModuleMap(DB, DA, Mat(g.source.field, DA.dim, DB.dim, cols), check=False)


@dataclass
class DualTriple:
    dual: HomModule
    bidual: HomModule
    nat: ModuleMap


def dual_triple(M: Module) -> DualTriple:
    phi = natural_map(M)
    return DualTriple(dual(M), dual(dual(M)), phi)


@dataclass(frozen=True)
class ReflexivityFlags:
    torsionless: bool
    weakly_reflexive: bool
    reflexive: bool
    phi_rank: int
    dim: int
    bidual_dim: int


def reflexivity_flags(M: Module) -> ReflexivityFlags:
    phi = natural_map(M)
    r = phi.mat.rank()
    inj = r == M.dim
    surj = r == phi.target.dim
    return ReflexivityFlags(inj, surj, inj and surj, r, M.dim, phi.target.dim)


def third_dual_composite(M: Module) -> Mat:
    """Matrix of (phi_M)* o phi_{M*} on M*; the identity for every M."""
    return dual_map(natural_map(M)).mat @ natural_map(dual(M)).mat


def aus_transpose(M: Module) -> Module:
    """D(M) = coker of the transposed minimal presentation matrix."""
    A = M.algebra
    ell = A.length
    rels = M.relations()
    b = len(rels)
    F1 = free(A, b)
    rows = [{} for _ in range(M.mu)]
    for j, rel in enumerate(rels):
        for k, x in rel.items():
            i, s = divmod(k, ell)
            rows[i][j * ell + s] = x
    S = F1.generated_subspace(rows)
    D, _ = F1.quotient(S, check=False)
    D.label = f"D({M.label or 'M'})"
    return D


def trace_subspace(M: Module) -> Subspace:
    D = dual(M)
    R = free(M.algebra, 1)
    vecs = []
    for h in range(D.dim):
        vecs.extend(D.values({h: D.field.one}))
    return R.generated_subspace(vecs)


def trace_ideal(M: Module) -> Module:
    N, _ = free(M.algebra, 1).submodule(trace_subspace(M), check=False)
    N.label = "tr"
    return N


def has_free_summand(M: Module) -> bool:
    return trace_subspace(M).dim == M.algebra.length


# dual towers: duals distribute over the block decomposition, so towers are
# tracked as multisets of block signatures


def register_blocks(M: Module) -> list:
    reg = M.algebra.cache.setdefault("blockmods", {})
    sigs = []
    for _, B in M.blocks():
        sig = B.signature()
        reg.setdefault(sig, B)
        sigs.append(sig)
    return sigs


def _dual_children(A, sig) -> list:
    memo = A.cache.setdefault("dual_children", {})
    if sig not in memo:
        B = A.cache["blockmods"][sig]
        memo[sig] = register_blocks(dual(B))
    return memo[sig]


@dataclass
class Tower:
    lengths: list
    type: int
    partial: bool = False
    budget: int = DEFAULT_BUDGET
    notes: list = field(default_factory=list)

    @property
    def ratios(self) -> list:
        return [Fraction(l, self.type ** i) for i, l in enumerate(self.lengths)]

    def monotonicity(self) -> dict:
        return {"lengths": _trend(self.lengths), "ratios": _trend(self.ratios)}

    def to_json(self) -> dict:
        return {
            "lengths": self.lengths,
            "ratios": [str(r) for r in self.ratios],
            "type": self.type,
            "computed_depth": len(self.lengths) - 1,
            "partial": self.partial,
            "budget": self.budget,
            "monotonicity": self.monotonicity(),
        }


def _trend(seq) -> str:
    pairs = list(zip(seq, seq[1:]))
    if all(a == b for a, b in pairs):
        return "constant"
    if all(a <= b for a, b in pairs):
        return "nondecreasing"
    if all(a >= b for a, b in pairs):
        return "nonincreasing"
    return "mixed"


def dual_tower(M: Module, depth: int, budget: int | None = None) -> Tower:
    """Lengths of M, M*, M**, ... up to the depth-th dual.

    A stage whose length exceeds ``budget`` is not computed; the tower is then
    marked partial.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    budget = default_budget() if budget is None else budget
    A = M.algebra
    tower = Tower([M.dim], A.invariants().type, budget=budget)
    stage = Counter(register_blocks(M))
    for n in range(1, depth + 1):
        nxt: Counter = Counter()
        for sig, cnt in stage.items():
            for child in _dual_children(A, sig):
                nxt[child] += cnt
        length = sum(sig[0] * c for sig, c in nxt.items())
        if length > budget:
            tower.partial = True
            tower.notes.append(f"stage {n} has length {length} > budget {budget}")
            break
        tower.lengths.append(length)
        stage = nxt
    return tower


def iterated_dual(M: Module, n: int) -> Module:
    for _ in range(n):
        M = dual(M)
    return M
