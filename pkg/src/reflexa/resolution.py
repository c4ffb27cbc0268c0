"""Minimal free resolutions, Betti numbers and lengths of Ext^i(M, R).

A minimal resolution of a direct sum is the direct sum of minimal
resolutions, so syzygies are split into blocks at every step and each block
type is resolved once per algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .duality import default_budget, register_blocks
from .linalg import Mat, shift
from .modules import Module, Presentation, is_free

DEFAULT_STEPS = 8


@dataclass
class _Step:
    mu: int
    relations: list  # vectors in R^mu, grouped by child block
    children: list  # signatures of the blocks of the first syzygy
    dual_rank: int | None = None


def _step(A, sig) -> _Step:
    memo = A.cache.setdefault("syz_steps", {})
    if sig in memo:
        return memo[sig]
    B = A.cache["blockmods"][sig]
    S = B.syzygy_space()
    K = B.syzygy()
    rels, children = [], []
    for idx, C in K.blocks():
        children.append(register_blocks(C)[0] if C is not K else C.signature())
        A.cache["blockmods"].setdefault(C.signature(), C)
        for g in C.min_generators():
            rels.append(S.vector({idx[k]: x for k, x in g.items()}))
    memo[sig] = _Step(B.mu, rels, children)
    return memo[sig]


def _dual_relation_matrix(A, mu: int, rels: list) -> Mat:
    """k-matrix of Hom(d, R): R^mu -> R^b, f |-> (sum_i rel_c[i] f_i)_c."""
    ell = A.length
    cols = []
    for i in range(mu):
        for s in range(ell):
            col: dict = {}
            act = A.mono_actions[s]
            for c, rel in enumerate(rels):
                part = {k - i * ell: x for k, x in rel.items() if i * ell <= k < (i + 1) * ell}
                if part:
                    col.update(shift(act.apply(part), c * ell))
            cols.append(col)
    return Mat(A.field, len(rels) * ell, mu * ell, cols)


def _dual_rank(A, sig) -> int:
    st = _step(A, sig)
    if st.dual_rank is None:
        st.dual_rank = _dual_relation_matrix(A, st.mu, st.relations).rank() if st.relations else 0
    return st.dual_rank


@dataclass
class RMatrix:
    """Matrix over R between free modules; columns are vectors in R^rows."""

    algebra: object
    rows: int
    columns: list

    @property
    def cols(self) -> int:
        return len(self.columns)

    def k_matrix(self) -> Mat:
        """The k-linear map R^cols -> R^rows."""
        A = self.algebra
        ell = A.length
        out = []
        for col in self.columns:
            for s in range(ell):
                out.append(_act_free(A, s, col, self.rows))
        return Mat(A.field, self.rows * ell, self.cols * ell, out)

    def dual_k_matrix(self) -> Mat:
        return _dual_relation_matrix(self.algebra, self.rows, self.columns)

    def entries_in_max_ideal(self) -> bool:
        ell = self.algebra.length
        return all(k % ell != 0 for col in self.columns for k in col)

    def to_presentation(self) -> Presentation:
        A = self.algebra
        ell = A.length
        entries = [[A.ring.zero() for _ in range(self.cols)] for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            parts: dict = {}
            for k, x in col.items():
                parts.setdefault(k // ell, {})[k % ell] = x
            for i, p in parts.items():
                entries[i][j] = A.to_poly(p)
        return Presentation(A, entries)


def _act_free(A, s: int, v: dict, n: int) -> dict:
    ell = A.length
    act = A.mono_actions[s]
    out: dict = {}
    parts: dict = {}
    for k, x in v.items():
        parts.setdefault(k // ell, {})[k % ell] = x
    for i, p in parts.items():
        out.update(shift(act.apply(p), i * ell))
    return out


@dataclass
class Resolution:
    algebra: object
    stages: list  # stage i: block signatures of Syz_i(M) (stage 0: M)
    partial: bool = False
    notes: list = field(default_factory=list)

    @property
    def betti(self) -> list:
        A = self.algebra
        reg = A.cache["blockmods"]
        return [sum(reg[s].mu for s in st) for st in self.stages]

    @property
    def computed_up_to(self) -> int:
        return len(self.stages) - 1

    def differential(self, i: int) -> RMatrix:
        """d_i : F_i -> F_{i-1} for 1 <= i <= computed_up_to."""
        if not 1 <= i <= self.computed_up_to:
            raise IndexError(f"differential {i} not computed")
        A = self.algebra
        ell = A.length
        cols = []
        off = 0
        for sig in self.stages[i - 1]:
            st = _step(A, sig)
            cols.extend(shift(r, off * ell) for r in st.relations)
            off += st.mu
        return RMatrix(A, off, cols)

    def syzygy(self, i: int) -> Module:
        """Syz_i(M) as the direct sum of its blocks."""
        from .modules import direct_sum
        reg = self.algebra.cache["blockmods"]
        mods = [reg[s] for s in self.stages[i]]
        if not mods:
            return Module(self.algebra, [Mat(self.algebra.field, 0, 0) for _ in self.algebra.var_actions], check=False)
        return direct_sum(*mods) if len(mods) > 1 else mods[0]


def min_resolution(M: Module, steps: int = DEFAULT_STEPS, budget: int | None = None) -> Resolution:
    """Betti numbers beta_0..beta_steps with the minimal differentials.

    Stops early (``partial``) when rank F_i * l(R) would exceed ``budget``.
    """
    budget = default_budget() if budget is None else budget
    A = M.algebra
    stage = register_blocks(M) if M.dim else []
    res = Resolution(A, [stage])
    for i in range(1, steps + 1):
        nxt = []
        for sig in stage:
            nxt.extend(_step(A, sig).children)
        reg = A.cache["blockmods"]
        size = sum(reg[s].mu for s in nxt) * A.length
        if size > budget:
            res.partial = True
            res.notes.append(f"F_{i} has k-dimension {size} > budget {budget}")
            break
        res.stages.append(nxt)
        stage = nxt
    return res


@dataclass
class ExtLengths:
    lengths: list  # l(Ext^i(M, R)) for i = 0 .. computed_up_to
    requested: int
    partial: bool = False

    @property
    def computed_up_to(self) -> int:
        return len(self.lengths) - 1


def ext_lengths(M: Module, B: int, budget: int | None = None) -> ExtLengths:
    """l(Ext^i(M,R)) for 0 <= i <= B, as homology of Hom(F, R)."""
    if B < 0:
        raise ValueError("B must be >= 0")
    res = min_resolution(M, B + 1, budget)
    A = M.algebra
    ell = A.length
    betti = res.betti
    # rank of Hom(d_{i+1}, R) is additive over the blocks of stage i
    ranks = [sum(_dual_rank(A, s) for s in st) for st in res.stages[:-1] if True]
    lengths = []
    top = min(B, res.computed_up_to - 1)
    for i in range(top + 1):
        lengths.append(betti[i] * ell - ranks[i] - (ranks[i - 1] if i else 0))
    return ExtLengths(lengths, B, partial=top < B)


def ext_lengths_explicit(res: Resolution, B: int) -> list:
    """Same numbers from the assembled dual differentials (no block shortcut)."""
    ell = res.algebra.length
    betti = res.betti
    ranks = [res.differential(i + 1).dual_k_matrix().rank() for i in range(min(B + 1, res.computed_up_to))]
    return [betti[i] * ell - ranks[i] - (ranks[i - 1] if i else 0) for i in range(len(ranks))]


@dataclass
class BoundCheck:
    name: str
    constant: int | None
    start: int | None
    applicable: bool
    results: list  # (i, beta_i, beta_{i+1}, passed)

    @property
    def passed(self) -> bool:
        return all(r[3] for r in self.results)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "constant": self.constant,
            "from_index": self.start,
            "passed": self.passed,
            "checks": [{"i": i, "beta_i": b0, "beta_i+1": b1, "pass": ok} for i, b0, b1, ok in self.results],
        }


def betti_bound_checks(M: Module, B: int = DEFAULT_STEPS, betti=None) -> list:
    """Evaluate the two published lower bounds beta_{i+1} >= c * beta_i.

    ``socle+m2``: c = dim ((0:m) + m^2)/m^2 for i >= 1, evaluated when m^2 = 0.
    ``fact-A``: c = 2 mu(m) - l(R) + h - 1 (h = loewy - 1) for i >= mu(M).
    """
    A = M.algebra
    inv = A.invariants()
    if betti is None:
        betti = min_resolution(M, B).betti
    free_m = is_free(M)
    m2 = A.max_ideal_power(2)
    from .linalg import Subspace
    soc_plus = Subspace.span(A.field, A.length, list(A.socle().rows) + list(m2.rows))
    c1 = soc_plus.dim - m2.dim
    ok1 = m2.dim == 0 and not free_m
    h = inv.loewy - 1
    c2 = 2 * inv.mu_m - inv.length + h - 1
    ok2 = not free_m

    def run(c, start, applicable):
        if not applicable:
            return []
        return [(i, betti[i], betti[i + 1], betti[i + 1] >= c * betti[i])
                for i in range(start, len(betti) - 1)]

    return [
        BoundCheck("socle+m2", c1, 1, ok1, run(c1, 1, ok1)),
        BoundCheck("fact-A", c2, M.mu, ok2, run(c2, M.mu, ok2)),
    ]


def ext_display_report(M: Module, lo: int = 2, hi: int = 6, budget: int | None = None) -> dict:
    """Compare l(Ext^i(M,R)) with (l(R)-1)^(i-2) beta_1 ((l(R)-1)^2 - 1) on m^2 = 0 rings."""
    A = M.algebra
    ell = A.length
    betti = min_resolution(M, 2).betti
    ext = ext_lengths(M, hi, budget)
    b1 = betti[1] if len(betti) > 1 else 0
    rows = []
    for i in range(lo, min(hi, ext.computed_up_to) + 1):
        closed = (ell - 1) ** (i - 2) * b1 * ((ell - 1) ** 2 - 1)
        rows.append({
            "i": i,
            "computed": ext.lengths[i],
            "closed_form": closed,
            "deviation": ext.lengths[i] - closed,
            "computed_over_lR^i": str(Fraction(ext.lengths[i], ell ** i)),
        })
    agree = all(r["deviation"] == 0 for r in rows)
    return {
        "applicable": A.max_ideal_power(2).dim == 0 and not A.invariants().is_gorenstein,
        "beta_1": b1,
        "length_R": ell,
        "rows": rows,
        "closed_form_agrees": agree,
        "limit_note": (
            "closed form / l(R)^i tends to 0 since l(R)-1 < l(R); "
            "the published limit beta_1(M) is not asserted (suspected misprint)"
        ),
    }
