"""Independent reference computations used only by the tests.

Nothing here calls into reflexa's linear algebra or Groebner code: rings are
rebuilt from sympy Groebner bases and all ranks use dense Fraction elimination.
"""

from fractions import Fraction
from itertools import product

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

_TRANSFORMS = standard_transformations + (convert_xor,)


def dense_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def nullspace(rows, ncols):
    """Basis of {v : rows v = 0} as lists of Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [a * inv for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class SympyRing:
    """k[x]/I rebuilt from a sympy grevlex Groebner basis."""

    def __init__(self, gens, names):
        self.syms = tuple(sympy.symbols(list(names)))
        local = {str(s): s for s in self.syms}
        exprs = [parse_expr(g, local_dict=local, transformations=_TRANSFORMS) if isinstance(g, str) else g
                 for g in gens]
        self.G = sympy.groebner(exprs, *self.syms, order="grevlex")
        leads = [sympy.Poly(g, *self.syms).monoms(order="grevlex")[0] for g in self.G.exprs]
        self.leads = leads
        bound = max(max(l) for l in leads) + 1
        std = [e for e in product(range(bound), repeat=len(self.syms))
               if not any(all(a >= b for a, b in zip(e, l)) for l in leads)]
        self.std = sorted(std, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
        self.std.sort(key=sum)
        self.index = {e: i for i, e in enumerate(self.std)}
        self.length = len(self.std)
        self.var_mats = [self._mult_matrix(s) for s in self.syms]

    def mono(self, e):
        out = sympy.Integer(1)
        for s, k in zip(self.syms, e):
            out *= s ** k
        return out

    def vector(self, expr):
        _, r = self.G.reduce(sympy.expand(expr))
        v = [Fraction(0)] * self.length
        if r != 0:
            for e, c in sympy.Poly(r, *self.syms).terms():
                v[self.index[e]] = Fraction(int(c.p), int(c.q))
        return v

    def _mult_matrix(self, f):
        cols = [self.vector(f * self.mono(e)) for e in self.std]
        return [[cols[j][i] for j in range(self.length)] for i in range(self.length)]

    def cyclic(self, extra):
        """Action matrices of R/(extra) as a k-space."""
        Q = SympyRing(list(self.G.exprs) + list(extra), [str(s) for s in self.syms])
        return Q.var_mats


def hom_dim(src_actions, tgt_actions) -> int:
    """dim_k Hom_R(M, N) for modules given by variable action matrices (dense rows)."""
    m = len(src_actions[0])
    n = len(tgt_actions[0])
    eqs = []
    for X, Y in zip(src_actions, tgt_actions):
        # (Y F - F X)[i][j] = 0, unknown F[a][b] at index a*m + b
        for i in range(n):
            for j in range(m):
                row = [Fraction(0)] * (n * m)
                for a in range(n):
                    row[a * m + j] += Y[i][a]
                for b in range(m):
                    row[i * m + b] -= X[b][j]
                eqs.append(row)
    return n * m - dense_rank(eqs)


def _mono_action(var_mats, e):
    n = len(var_mats[0])
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for X, k in zip(var_mats, e):
        for _ in range(k):
            out = matmul(X, out)
    return out


def tor_dims(ring: SympyRing, actions, top: int) -> list:
    """dim Tor_i(M, k) for i <= top via a non-minimal resolution whose i-th
    module has one free generator per k-basis vector of the previous kernel."""
    std_actions = None
    gens_vectors = None  # generators of the current free module, as vectors in the previous space
    cur_actions = actions
    cur_dim = len(actions[0])
    gens_vectors = [[Fraction(int(i == j)) for i in range(cur_dim)] for j in range(cur_dim)]
    reductions = []  # d_i tensor k, as dense matrices
    ranks_n = []
    for _ in range(top + 1):
        n_gens = len(gens_vectors)
        ranks_n.append(n_gens)
        monos = [_mono_action(cur_actions, e) for e in ring.std]
        # map from F = R^{n_gens} (basis: gen g, std monomial s) to current space
        cols = []
        for g in gens_vectors:
            for S in monos:
                cols.append([sum(S[i][k] * g[k] for k in range(cur_dim)) for i in range(cur_dim)])
        rows = [[cols[c][i] for c in range(len(cols))] for i in range(cur_dim)]
        reductions.append(None)
        ker = nullspace(rows, len(cols))
        F_dim = n_gens * ring.length
        # action of variables on F
        F_actions = []
        for X in ring.var_mats:
            A = [[Fraction(0)] * F_dim for _ in range(F_dim)]
            for g in range(n_gens):
                for i in range(ring.length):
                    for j in range(ring.length):
                        A[g * ring.length + i][g * ring.length + j] = X[i][j]
            F_actions.append(A)
        # next generators: kernel vectors; reduction mod m reads the coefficient of 1
        reductions[-1] = [[v[g * ring.length] for v in ker] for g in range(n_gens)]
        gens_vectors = ker
        cur_actions = F_actions
        cur_dim = F_dim
        if not ker:
            break
    dims = []
    for i in range(top + 1):
        n_i = ranks_n[i]
        r_in = dense_rank(reductions[i]) if i < len(reductions) and reductions[i] and reductions[i][0] else 0
        r_out = 0
        if i > 0:
            r_out = dense_rank(reductions[i - 1]) if reductions[i - 1] and reductions[i - 1][0] else 0
        # Tor_i = ker(d_i bar) / im(d_{i+1} bar); d_i bar: k^{n_i} -> k^{n_{i-1}}
        d_i = r_out
        d_next = r_in
        dims.append(n_i - d_i - d_next)
    return dims
