"""Artinian local quotient algebras R = k[x_1..x_n]/I as finite-dimensional objects."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .fields import QQ, Field
from .groebner import GroebnerBasis, buchberger
from .linalg import Mat, Subspace
from .poly import Poly, PolyRing, mono_divides, order_key, parse_poly
from .verdict import Verdict


class NotFiniteDimensional(ValueError):
    def __init__(self, variable: str):
        super().__init__(f"quotient is not finite-dimensional: no pure power of {variable!r} is a leading term")
        self.variable = variable


class NotLocal(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraInvariants:
    length: int
    socle_dim: int
    mu_m: int
    loewy: int
    is_gorenstein: bool
    hilbert: tuple  # dim m^i / m^(i+1), i = 0 .. loewy-1

    @property
    def type(self) -> int:
        return self.socle_dim


class ArtinianAlgebra:
    """A local artinian algebra realized on its standard-monomial basis.

    ``var_actions[j]`` is the matrix of multiplication by the j-th variable,
    ``std[0]`` is the monomial 1.
    """

    def __init__(self, gb: GroebnerBasis, ideal=None):
        self.gb = gb
        self.ring: PolyRing = gb.ring
        self.field: Field = gb.ring.field
        self.order = gb.order
        self.ideal = tuple(ideal) if ideal is not None else gb.generators
        self.std = _standard_monomials(gb)
        self.index = {m: i for i, m in enumerate(self.std)}
        self.length = len(self.std)
        n = self.ring.nvars
        # each non-unit standard monomial s = x_j * t with t standard
        self.parent = [None]
        for s in self.std[1:]:
            j = next(j for j in range(n) if s[j] > 0)
            t = tuple(e - (k == j) for k, e in enumerate(s))
            self.parent.append((self.index[t], j))
        self.var_actions = [self._action_of(self.ring.var(j)) for j in range(n)]
        for j, X in enumerate(self.var_actions):
            P = X
            for _ in range(self.length):
                P = X @ P
            if not P.is_zero():
                raise NotLocal(f"multiplication by {self.ring.names[j]} is not nilpotent; the quotient is not local at the origin")
        self.mono_actions = [Mat.identity(self.field, self.length)]
        for i in range(1, self.length):
            t, j = self.parent[i]
            self.mono_actions.append(self.var_actions[j] @ self.mono_actions[t])
        self.cache: dict = {}
        self.key = (repr(self.field), self.ring.names, self.order, tuple(str(g) for g in gb.generators))
        self._invariants = None

    @classmethod
    def from_strings(cls, gens, vars, field: Field = QQ, order: str = "grevlex") -> ArtinianAlgebra:
        ring = PolyRing(field, vars)
        polys = [parse_poly(g, ring) for g in gens]
        return cls(buchberger(polys, order), polys)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal)
        return f"{self.field.name}[{','.join(self.ring.names)}]/({gens})"

    # elements are dicts over the standard-monomial basis

    def _action_of(self, f: Poly) -> Mat:
        cols = []
        for s in self.std:
            cols.append(self.element(f * self.ring.monomial(s)))
        return Mat(self.field, self.length, self.length, cols)

    def element(self, f) -> dict:
        if isinstance(f, str):
            f = parse_poly(f, self.ring)
        r = self.gb.normal_form(f)
        return {self.index[m]: c for m, c in r.terms.items()}

    def to_poly(self, v: dict) -> Poly:
        return Poly(self.ring, {self.std[i]: c for i, c in v.items()})

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for s, c in a.items():
            for t, x in self.mono_actions[s].apply(b).items():
                v = out.get(t)
                v = c * x if v is None else v + c * x
                if v:
                    out[t] = v
                else:
                    del out[t]
        return out

    def is_unit(self, v: dict) -> bool:
        return 0 in v

    def degree(self, i: int) -> int:
        return sum(self.std[i])

    def var_index_name(self, j: int) -> str:
        return self.ring.names[j]

    # local structure

    def max_ideal(self) -> Subspace:
        return Subspace(self.field, self.length, [{i: self.field.one} for i in range(1, self.length)])

    def max_ideal_power(self, n: int) -> Subspace:
        if "mpow" not in self.cache:
            powers = [Subspace.whole(self.field, self.length), self.max_ideal()]
            while powers[-1].dim:
                prev = powers[-1]
                powers.append(Subspace.span(
                    self.field, self.length,
                    (X.apply(r) for r in prev.rows for X in self.var_actions)))
            self.cache["mpow"] = powers
        powers = self.cache["mpow"]
        return powers[n] if n < len(powers) else powers[-1]

    def socle(self) -> Subspace:
        if "socle" not in self.cache:
            ell = self.length
            stacked = Mat(self.field, ell * len(self.var_actions), ell, [
                {k + j * ell: x for j, X in enumerate(self.var_actions) for k, x in X.cols[c].items()}
                for c in range(ell)
            ])
            self.cache["socle"] = stacked.kernel()
        return self.cache["socle"]

    def invariants(self) -> AlgebraInvariants:
        if self._invariants is None:
            hilbert = []
            n = 0
            while self.max_ideal_power(n).dim:
                hilbert.append(self.max_ideal_power(n).dim - self.max_ideal_power(n + 1).dim)
                n += 1
            soc = self.socle().dim
            self._invariants = AlgebraInvariants(
                length=self.length,
                socle_dim=soc,
                mu_m=hilbert[1] if len(hilbert) > 1 else 0,
                loewy=n,
                is_gorenstein=soc == 1,
                hilbert=tuple(hilbert),
            )
        return self._invariants

    def socle_polys(self) -> list:
        return [self.to_poly(r) for r in self.socle().rows]

    def is_max_ideal_power(self):
        """n if the defining ideal is (x_1..x_m)^n, else None."""
        gens = self.gb.generators
        if any(len(g.terms) != 1 for g in gens):
            return None
        degs = {g.degree() for g in gens}
        if len(degs) != 1:
            return None
        n = degs.pop()
        m = self.ring.nvars
        return n if len(gens) == comb(n + m - 1, m - 1) else None


def _standard_monomials(gb: GroebnerBasis) -> list:
    lead = gb.leading_monomials
    n = gb.ring.nvars
    for j in range(n):
        if not any(m[j] > 0 and sum(m) == m[j] for m in lead):
            raise NotFiniteDimensional(gb.ring.names[j])
    one = gb.ring.one_mono()
    if any(mono_divides(m, one) for m in lead):
        raise ValueError("the ideal is the whole ring; the quotient is zero")
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for m in frontier:
            for j in range(n):
                u = tuple(e + (k == j) for k, e in enumerate(m))
                if u not in seen and not any(mono_divides(l, u) for l in lead):
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    key = order_key(gb.order)
    # 1 first, then by degree, larger monomials first within a degree
    return sorted(seen, key=lambda m: (sum(m), _neg(key(m))))


def _neg(k):
    if isinstance(k, tuple):
        return tuple(_neg(x) for x in k)
    return -k


def algebra_invariants(A: ArtinianAlgebra) -> AlgebraInvariants:
    return A.invariants()


def quotient_basis(gb: GroebnerBasis) -> ArtinianAlgebra:
    return ArtinianAlgebra(gb)


def bnsi_certificate(A: ArtinianAlgebra) -> Verdict:
    """Sufficient conditions for BNSI (strictly increasing Betti numbers).

    Rules, first match wins: ``m2=0`` (m^2 = 0, mu(m) > 1); ``m3=0,soc!=m2``
    (m^3 = 0, mu(m) > 1, socle != m^2); ``power-of-m`` (ideal (x_1..x_m)^n,
    m > 1).  A principal maximal ideal of a non-field is refuted by R/xR.
    """
    inv = A.invariants()
    if A.length == 1:
        return Verdict.true("field", note="every module is free")
    m2 = A.max_ideal_power(2)
    if inv.mu_m > 1 and m2.dim == 0:
        return Verdict.true("m2=0", mu_m=inv.mu_m)
    if inv.mu_m > 1 and A.max_ideal_power(3).dim == 0 and m2 != A.socle():
        return Verdict.true("m3=0,soc!=m2", mu_m=inv.mu_m, socle_dim=inv.socle_dim, m2_dim=m2.dim)
    n = A.is_max_ideal_power()
    if n is not None and A.ring.nvars > 1:
        return Verdict.true("power-of-m", m=A.ring.nvars, n=n)
    if inv.mu_m == 1:
        j = next(j for j, X in enumerate(A.var_actions)
                 if not m2.contains(X.cols[0]))
        x = A.ring.names[j]
        return Verdict.false("principal-m", witness_module=f"R/({x})", variable=x, betti_0=1, betti_1=1)
    return Verdict.unknown(0, "no-rule")
