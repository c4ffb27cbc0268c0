"""Sparse exact linear algebra over a field.

Vectors are dicts ``{index: value}`` holding only nonzero entries.  Matrices
are stored by column: ``cols[j]`` is the image of the j-th basis vector.
Subspaces are kept in reduced row echelon form whose pivot is the smallest
index of each row, so every subspace has a unique basis.
"""

from __future__ import annotations

import heapq

from .fields import Field


def axpy(v: dict, c, w: dict) -> None:
    """v += c * w, in place."""
    for k, x in w.items():
        s = v.get(k)
        s = c * x if s is None else s + c * x
        if s:
            v[k] = s
        else:
            v.pop(k, None)


def scaled(c, w: dict) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in w.items()}


def vec_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, x in b.items():
        s = out.get(k)
        s = x if s is None else s + x
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def shift(v: dict, offset: int) -> dict:
    return {k + offset: x for k, x in v.items()}


class Echelon:
    """Incremental echelon form; ``rows[p]`` has leading index p with entry 1."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        rows = self.rows
        v = dict(v)
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            coef = v.get(c)
            if coef is None:
                continue
            for k, x in rows[c].items():
                s = v.get(k)
                if s is None:
                    v[k] = -coef * x
                    if k in rows:
                        heapq.heappush(heap, k)
                else:
                    s = s - coef * x
                    if s:
                        v[k] = s
                    else:
                        del v[k]
        return v

    def add(self, v: dict):
        """Insert v; returns the new pivot or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        lead = r[p]
        if lead != self.field.one:
            inv = self.field.one / lead
            r = {k: x * inv for k, x in r.items()}
        self.rows[p] = r
        return p

    def reduced_rows(self) -> list:
        """Fully reduced rows sorted by pivot (back substitution)."""
        rows = self.rows
        done: dict[int, dict] = {}
        for p in sorted(rows, reverse=True):
            row = rows[p]
            hits = [k for k in row if k != p and k in done]
            if hits:
                row = dict(row)
                for k in hits:
                    c = row.get(k)
                    if c:
                        axpy(row, -c, done[k])
            done[p] = row
        self.rows = done
        return [done[p] for p in sorted(done)]


class Subspace:
    """Subspace of k^n with its canonical reduced echelon basis."""

    def __init__(self, field: Field, ambient: int, rows: list):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = [min(r) for r in rows]
        self._pos = {p: i for i, p in enumerate(self.pivots)}

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> Subspace:
        ech = Echelon(field)
        for v in vectors:
            if v:
                ech.add(v)
        return cls(field, ambient, ech.reduced_rows())

    @classmethod
    def whole(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        hits = [(self._pos[k], c) for k, c in v.items() if k in self._pos]
        if not hits:
            return dict(v)
        v = dict(v)
        for i, c in hits:
            axpy(v, -c, self.rows[i])
        return v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coords(self, v: dict, check: bool = True) -> dict:
        """Coordinates of v (assumed in the subspace) in the echelon basis."""
        out = {self._pos[k]: c for k, c in v.items() if k in self._pos}
        if check and not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return out

    def complement(self) -> list:
        """Indices of non-pivot coordinates: a basis of the quotient."""
        piv = self._pos
        return [i for i in range(self.ambient) if i not in piv]

    def vector(self, coords: dict) -> dict:
        out: dict = {}
        for i, c in coords.items():
            axpy(out, c, self.rows[i])
        return out

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.rows == other.rows

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


class Mat:
    """Sparse matrix stored by columns."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field: Field, nrows: int, ncols: int, cols=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    @classmethod
    def identity(cls, field: Field, n: int) -> Mat:
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> Mat:
        return cls(field, nrows, ncols)

    @classmethod
    def from_rows(cls, field: Field, rows) -> Mat:
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                x = field(x)
                if x:
                    cols[j][i] = x
        return cls(field, nrows, ncols, cols)

    def to_rows(self) -> list:
        z = self.field.zero
        rows = [[z] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def apply(self, v: dict) -> dict:
        out: dict = {}
        cols = self.cols
        for j, c in v.items():
            col = cols[j]
            for i, x in col.items():
                s = out.get(i)
                s = c * x if s is None else s + c * x
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat(self.field, self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(self.field, self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: Mat) -> Mat:
        return self + other.scale(-self.field.one)

    def scale(self, c) -> Mat:
        return Mat(self.field, self.nrows, self.ncols, [scaled(c, col) for col in self.cols])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and self.cols == other.cols

    def is_zero(self) -> bool:
        return not any(self.cols)

    def row_dicts(self) -> list:
        rows = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def transpose(self) -> Mat:
        return Mat(self.field, self.ncols, self.nrows, self.row_dicts())

    T = property(transpose)

    def rank(self) -> int:
        ech = Echelon(self.field)
        # eliminate along the shorter side
        vecs = self.cols if self.ncols <= self.nrows else self.row_dicts()
        for v in vecs:
            if v:
                ech.add(v)
        return len(ech)

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.nrows, self.cols)

    def kernel(self) -> Subspace:
        ech = Echelon(self.field)
        for r in self.row_dicts():
            if r:
                ech.add(r)
        rows = ech.reduced_rows()
        pivots = {min(r): r for r in rows}
        free = [j for j in range(self.ncols) if j not in pivots]
        by_col: dict[int, list] = {}
        for p, r in pivots.items():
            for k, x in r.items():
                if k != p:
                    by_col.setdefault(k, []).append((p, x))
        one = self.field.one
        basis = []
        for f in free:
            v = {f: one}
            for p, x in by_col.get(f, ()):
                v[p] = -x
            basis.append(v)
        return Subspace.span(self.field, self.ncols, basis)

    def is_injective(self) -> bool:
        return self.rank() == self.ncols

    def is_surjective(self) -> bool:
        return self.rank() == self.nrows

    def right_inverse(self) -> Mat:
        """A matrix S with self @ S == identity; self must be surjective."""
        n = self.ncols
        ech = Echelon(self.field)
        one = self.field.one
        for i, r in enumerate(self.row_dicts()):
            aug = dict(r)
            aug[n + i] = one
            ech.add(aug)
        rows = ech.reduced_rows()
        if len(rows) != self.nrows or any(min(r) >= n for r in rows):
            raise ValueError("matrix is not surjective")
        cols = [{} for _ in range(self.nrows)]
        for r in rows:
            p = min(r)
            for k, x in r.items():
                if k >= n:
                    cols[k - n][p] = x
        return Mat(self.field, n, self.nrows, cols)

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"
