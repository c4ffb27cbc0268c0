"""Finitely generated modules over an artinian algebra, realized as k-spaces
with commuting nilpotent variable actions."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ArtinianAlgebra
from .linalg import Echelon, Mat, Subspace, axpy, shift
from .poly import Poly, parse_poly


class ModuleError(ValueError):
    pass


class Module:
    """An R-module M given by a k-basis and one action matrix per variable.

    ``gens`` are optional distinguished vectors (images of a free basis) used
    first when picking minimal generators.
    """

    def __init__(self, algebra: ArtinianAlgebra, actions, gens=None, check: bool = True, label: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.actions = list(actions)
        if len(self.actions) != algebra.ring.nvars:
            raise ModuleError("need one action matrix per variable")
        self.dim = self.actions[0].nrows if self.actions else 0
        self.gens = list(gens) if gens is not None else None
        self.label = label
        self._cache: dict = {}
        if check:
            self.validate()

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<Module{name} dim={self.dim} over {self.algebra}>"

    def validate(self) -> None:
        d = self.dim
        for X in self.actions:
            if X.shape != (d, d):
                raise ModuleError(f"action matrix has shape {X.shape}, expected {(d, d)}")
        for i, X in enumerate(self.actions):
            for Y in self.actions[i + 1:]:
                if X @ Y != Y @ X:
                    raise ModuleError("variable actions do not commute")
        for g in self.algebra.gb.generators:
            for b in range(d):
                if self.apply_poly(g, {b: self.field.one}):
                    raise ModuleError(f"relation {g} does not act as zero")
        loewy = self.algebra.invariants().loewy
        for X in self.actions:
            for b in range(d):
                v = {b: self.field.one}
                for _ in range(loewy):
                    v = X.apply(v)
                if v:
                    raise ModuleError("variable action is not nilpotent")

    # actions

    def apply_poly(self, f: Poly, v: dict) -> dict:
        out: dict = {}
        for m, c in f.terms.items():
            w = v
            for j, e in enumerate(m):
                for _ in range(e):
                    w = self.actions[j].apply(w)
            axpy(out, c, w)
        return out

    def orbit(self, v: dict) -> list:
        """[s*v for s in the standard monomials of R]."""
        imgs = [v]
        for t, j in self.algebra.parent[1:]:
            imgs.append(self.actions[j].apply(imgs[t]))
        return imgs

    def act(self, r: dict, v: dict) -> dict:
        out: dict = {}
        if not r:
            return out
        orb = self.orbit(v)
        for s, c in r.items():
            axpy(out, c, orb[s])
        return out

    def unit(self, i: int) -> dict:
        return {i: self.field.one}

    # structure

    def signature(self):
        if "sig" not in self._cache:
            self._cache["sig"] = (self.dim, tuple(
                tuple(sorted((j, i, x) for j, col in enumerate(X.cols) for i, x in col.items()))
                for X in self.actions))
        return self._cache["sig"]

    def m_times(self) -> Subspace:
        """The subspace mM."""
        if "mM" not in self._cache:
            self._cache["mM"] = Subspace.span(self.field, self.dim, (c for X in self.actions for c in X.cols))
        return self._cache["mM"]

    def min_generators(self) -> list:
        if "mgens" not in self._cache:
            mM = self.m_times()
            ech = Echelon(self.field)
            for r in mM.rows:
                ech.add(r)
            need = self.dim - mM.dim
            chosen = []
            candidates = list(self.gens or []) + [self.unit(i) for i in range(self.dim)]
            for v in candidates:
                if len(chosen) == need:
                    break
                if v and ech.add(v) is not None:
                    chosen.append(dict(v))
            self._cache["mgens"] = chosen
        return self._cache["mgens"]

    @property
    def mu(self) -> int:
        return self.dim - self.m_times().dim

    def cover_matrix(self) -> Mat:
        """k-matrix of the minimal cover R^mu -> M; column i*l+s is s*g_i."""
        if "cover" not in self._cache:
            cols = []
            for g in self.min_generators():
                cols.extend(self.orbit(g))
            self._cache["cover"] = Mat(self.field, self.dim, len(cols), cols)
        return self._cache["cover"]

    def section(self) -> Mat:
        """A k-linear right inverse M -> R^mu of the minimal cover."""
        if "section" not in self._cache:
            self._cache["section"] = self.cover_matrix().right_inverse()
        return self._cache["section"]

    def syzygy_space(self) -> Subspace:
        """Kernel of the minimal cover, as a subspace of R^mu."""
        if "syz" not in self._cache:
            self._cache["syz"] = self.cover_matrix().kernel()
        return self._cache["syz"]

    def syzygy(self) -> Module:
        """First syzygy module, realized inside the free cover R^mu."""
        if "syzmod" not in self._cache:
            F = free(self.algebra, self.mu)
            self._cache["syzmod"] = F.submodule(self.syzygy_space(), check=False)[0]
        return self._cache["syzmod"]

    def relations(self) -> list:
        """Minimal relations: generators of the syzygy, as vectors in R^mu."""
        if "rels" not in self._cache:
            S = self.syzygy_space()
            K = self.syzygy()
            self._cache["rels"] = [S.vector(g) for g in K.min_generators()]
        return self._cache["rels"]

    def blocks(self) -> list:
        """Split M along the connected components of the action supports.

        Returns a list of (indices, Module); M is the direct sum of the blocks.
        """
        if "blocks" in self._cache:
            return self._cache["blocks"]
        parent = list(range(self.dim))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for X in self.actions:
            for j, col in enumerate(X.cols):
                for i in col:
                    ra, rb = find(i), find(j)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        comps: dict[int, list] = {}
        for i in range(self.dim):
            comps.setdefault(find(i), []).append(i)
        out = []
        if len(comps) == 1:
            out = [(list(range(self.dim)), self)]
        else:
            for idx in sorted(comps.values()):
                pos = {b: k for k, b in enumerate(idx)}
                acts = [Mat(self.field, len(idx), len(idx), [{pos[i]: x for i, x in X.cols[b].items()} for b in idx])
                        for X in self.actions]
                out.append((idx, Module(self.algebra, acts, check=False)))
        self._cache["blocks"] = out
        return out

    # sub and quotient modules

    def is_submodule(self, S: Subspace) -> bool:
        return all(S.contains(X.apply(r)) for X in self.actions for r in S.rows)

    def submodule(self, S: Subspace, check: bool = True):
        """(N, inclusion) for an action-stable subspace S."""
        if check and not self.is_submodule(S):
            raise ModuleError("subspace is not closed under the variable actions")
        acts = [Mat(self.field, S.dim, S.dim, [S.coords(X.apply(r), check=False) for r in S.rows])
                for X in self.actions]
        N = Module(self.algebra, acts, check=False)
        inc = ModuleMap(N, self, Mat(self.field, self.dim, S.dim, [dict(r) for r in S.rows]), check=False)
        return N, inc

    def quotient(self, S: Subspace, check: bool = True):
        """(M/S, projection) for an action-stable subspace S."""
        if check and not self.is_submodule(S):
            raise ModuleError("subspace is not closed under the variable actions")
        keep = S.complement()
        pos = {c: k for k, c in enumerate(keep)}

        def proj(v):
            return {pos[i]: x for i, x in S.reduce(v).items()}

        acts = [Mat(self.field, len(keep), len(keep), [proj(X.cols[c]) for c in keep]) for X in self.actions]
        gens = [proj(g) for g in self.gens] if self.gens is not None else None
        Q = Module(self.algebra, acts, gens=gens, check=False)
        P = ModuleMap(self, Q, Mat(self.field, len(keep), self.dim, [proj({i: self.field.one}) for i in range(self.dim)]),
                      check=False)
        return Q, P

    def generated_subspace(self, vectors) -> Subspace:
        """The R-submodule generated by ``vectors``, as a subspace."""
        return Subspace.span(self.field, self.dim, (w for v in vectors for w in self.orbit(v)))


class ModuleMap:
    """R-linear map; ``mat`` sends source coordinates to target coordinates."""

    def __init__(self, source: Module, target: Module, mat: Mat, check: bool = True):
        if mat.shape != (target.dim, source.dim):
            raise ModuleError(f"map matrix shape {mat.shape} != {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.mat = mat
        if check and not self.is_linear():
            raise ModuleError("matrix does not intertwine the variable actions")

    def is_linear(self) -> bool:
        return all(self.mat @ X == Y @ self.mat for X, Y in zip(self.source.actions, self.target.actions))

    def __call__(self, v: dict) -> dict:
        return self.mat.apply(v)

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(other.source, self.target, self.mat @ other.mat, check=False)

    def is_injective(self) -> bool:
        return self.mat.is_injective()

    def is_surjective(self) -> bool:
        return self.mat.is_surjective()

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.mat.is_injective()

    @classmethod
    def identity(cls, M: Module) -> ModuleMap:
        return cls(M, M, Mat.identity(M.field, M.dim), check=False)


def kernel(f: ModuleMap):
    return f.source.submodule(f.mat.kernel())


def image(f: ModuleMap):
    return f.target.submodule(f.mat.image())


def cokernel(f: ModuleMap):
    return f.target.quotient(f.mat.image())


def direct_sum(*modules: Module) -> Module:
    if not modules:
        raise ModuleError("direct_sum needs at least one module")
    A = modules[0].algebra
    field = A.field
    d = sum(M.dim for M in modules)
    acts = []
    for j in range(A.ring.nvars):
        cols = []
        off = 0
        for M in modules:
            cols.extend(shift(c, off) for c in M.actions[j].cols)
            off += M.dim
        acts.append(Mat(field, d, d, cols))
    gens = []
    off = 0
    for M in modules:
        gens.extend(shift(g, off) for g in (M.gens if M.gens is not None else M.min_generators()))
        off += M.dim
    return Module(A, acts, gens=gens, check=False)


def min_generators(M: Module):
    """(mu, minimal cover R^mu -> M)."""
    cover = ModuleMap(free(M.algebra, M.mu), M, M.cover_matrix(), check=False)
    return M.mu, cover


def is_free(M: Module) -> bool:
    return M.dim == M.mu * M.algebra.length


# builders


def free(A: ArtinianAlgebra, n: int) -> Module:
    key = ("free", n)
    if key in A.cache:
        return A.cache[key]
    ell = A.length
    acts = []
    for X in A.var_actions:
        cols = []
        for i in range(n):
            cols.extend(shift(c, i * ell) for c in X.cols)
        acts.append(Mat(A.field, n * ell, n * ell, cols))
    M = Module(A, acts, gens=[{i * ell: A.field.one} for i in range(n)], check=False, label=f"R^{n}")
    A.cache[key] = M
    return M


def residue_field(A: ArtinianAlgebra) -> Module:
    acts = [Mat(A.field, 1, 1) for _ in A.var_actions]
    return Module(A, acts, gens=[{0: A.field.one}], check=False, label="k")


def _as_element(A: ArtinianAlgebra, g) -> dict:
    if isinstance(g, dict):
        return g
    if isinstance(g, str):
        g = parse_poly(g, A.ring)
    return A.element(g)


def ideal(A: ArtinianAlgebra, gens) -> Module:
    """The submodule sum g_i R of R; generators must lie in m."""
    elems = [_as_element(A, g) for g in gens]
    for g, e in zip(gens, elems):
        if A.is_unit(e):
            raise ModuleError(f"generator {g} is a unit; the ideal is R (use free(A, 1))")
    R = free(A, 1)
    S = R.generated_subspace(elems)
    N, _ = R.submodule(S, check=False)
    N.gens = [S.coords(e) for e in elems if e]
    N.label = "(" + ", ".join(str(g) for g in gens) + ")"
    return N


def max_ideal(A: ArtinianAlgebra) -> Module:
    M = ideal(A, [A.ring.var(j) for j in range(A.ring.nvars)])
    M.label = "m"
    return M


def canonical(A: ArtinianAlgebra) -> Module:
    """omega_R = Hom_k(R, k) with the transposed actions."""
    return Module(A, [X.transpose() for X in A.var_actions], check=False, label="omega")


@dataclass
class Presentation:
    """Matrix over R whose columns are relations on the rows (F_1 -> F_0)."""

    algebra: ArtinianAlgebra
    entries: list  # rows x cols of Poly

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_strings(cls, A: ArtinianAlgebra, rows) -> Presentation:
        return cls(A, [[parse_poly(s, A.ring) if isinstance(s, str) else s for s in row] for row in rows])

    def column_vectors(self) -> list:
        ell = self.algebra.length
        out = []
        for j in range(self.cols):
            v: dict = {}
            for i in range(self.rows):
                v.update(shift(self.algebra.element(self.entries[i][j]), i * ell))
            out.append(v)
        return out

    def to_strings(self) -> list:
        return [[str(self.algebra.to_poly(self.algebra.element(p))) for p in row] for row in self.entries]


def realize(p: Presentation) -> Module:
    """coker(F_1 -> F_0) with the images of the free basis as generator markers."""
    widths = {len(r) for r in p.entries}
    if len(widths) > 1:
        raise ModuleError("presentation rows have different lengths")
    F = free(p.algebra, p.rows)
    S = F.generated_subspace(p.column_vectors())
    M, _ = F.quotient(S, check=False)
    return M


def quotient_ring(A: ArtinianAlgebra, gens) -> Module:
    """R/(gens) as a cyclic module."""
    M = realize(Presentation.from_strings(A, [list(gens)]))
    M.label = "R/(" + ", ".join(str(g) for g in gens) + ")"
    return M


def minimal_presentation(M: Module) -> Presentation:
    A = M.algebra
    ell = A.length
    entries = [[None] * len(M.relations()) for _ in range(M.mu)]
    for j, rel in enumerate(M.relations()):
        for i in range(M.mu):
            part = {k - i * ell: x for k, x in rel.items() if i * ell <= k < (i + 1) * ell}
            entries[i][j] = A.to_poly(part)
    return Presentation(A, entries)


def syzygy(M: Module, n: int = 1) -> Module:
    for _ in range(n):
        M = M.syzygy()
    return M
