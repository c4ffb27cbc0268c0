"""Buchberger's algorithm and normal forms."""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, PolyRing, mono_div, mono_divides, mono_lcm, order_key


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: str
    generators: tuple  # reduced, monic, sorted by leading monomial

    @property
    def leading_monomials(self):
        return [g.leading(self.order)[0] for g in self.generators]

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self.generators, self.order).is_zero()


def normal_form(f: Poly, basis, order: str = "grevlex") -> Poly:
    """Fully reduce f modulo ``basis`` (remainder has no divisible term)."""
    key = order_key(order)
    ring = f.ring
    zero = ring.field.zero
    leads = []
    for g in basis:
        m, c = g.leading(order)
        tail = {t: v for t, v in g.terms.items() if t != m}
        leads.append((m, c, tail))
    work = dict(f.terms)
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, tail in leads:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / lc
                for t, v in tail.items():
                    tm = tuple(a + b for a, b in zip(t, q))
                    s = work.get(tm, zero) - factor * v
                    if s:
                        work[tm] = s
                    else:
                        work.pop(tm, None)
                break
        else:
            rem[m] = c
    return Poly(ring, rem)


def s_polynomial(f: Poly, g: Poly, order: str) -> Poly:
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_div(lcm, mf), ring_one(f) / cf) - g.mul_term(mono_div(lcm, mg), ring_one(g) / cg)


def ring_one(f: Poly):
    return f.ring.field.one


def buchberger(gens, order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties
    broken by index) so the run is deterministic.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    key = order_key(order)

    basis = []
    for g in gens:
        r = normal_form(g, basis, order) if basis else g
        if not r.is_zero():
            basis.append(r.monic(order))
    lead = [b.leading(order)[0] for b in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    def pair_key(p):
        i, j = p
        lcm = mono_lcm(lead[i], lead[j])
        return (key(lcm), j, i)

    while pairs:
        p = min(pairs, key=pair_key)
        pairs.discard(p)
        i, j = p
        if all(a == 0 or b == 0 for a, b in zip(lead[i], lead[j])):
            continue  # coprime leading monomials
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        basis.append(r.monic(order))
        lead.append(basis[-1].leading(order)[0])
        n = len(basis) - 1
        pairs.update((k, n) for k in range(n))

    return GroebnerBasis(ring, order, tuple(_reduce_basis(basis, order)))


def _reduce_basis(basis, order):
    key = order_key(order)
    # drop generators whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda g: key(g.leading(order)[0]))
    minimal = []
    for g in basis:
        lm = g.leading(order)[0]
        if not any(mono_divides(h.leading(order)[0], lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lm, _ = g.leading(order)
        tail = Poly(g.ring, {m: c for m, c in g.terms.items() if m != lm})
        tail = normal_form(tail, others, order)
        reduced.append((Poly(g.ring, {lm: g.ring.field.one}) + tail).monic(order))
    return sorted(reduced, key=lambda g: key(g.leading(order)[0]))


def is_groebner(gb: GroebnerBasis) -> bool:
    gens = gb.generators
    for j in range(len(gens)):
        for i in range(j):
            if not normal_form(s_polynomial(gens[i], gens[j], gb.order), gens, gb.order).is_zero():
                return False
    return True
