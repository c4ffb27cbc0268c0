"""Named rings from the reference examples and a seeded random-module generator."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .fields import QQ
from .specs import ModuleSpec, RingSpec, SpecError

NAMED = {
    "lam": RingSpec(QQ, ("x", "y"), ("x^2", "x*y", "y^2")),
    "ex56": RingSpec(QQ, ("x", "y"), ("x^2", "x*y", "y^3")),
    "ex57": RingSpec(QQ, ("x", "y"), ("x^2", "x*y", "y^2")),
    "gor415": RingSpec(QQ, ("x", "y", "z"), ("x^2 - y^2", "y^2 - z^2", "x*y", "y*z", "z*x")),
}

# rings used by the randomized property runs and the omega check
CORPUS_RING_IDS = ("lam", "ex56", "ex57", "gor415", "kxn:3", "kxn:4", "power:3,2", "power:2,3")
M2_ZERO_RING_IDS = ("lam", "power:3,2", "power:4,2")


def ring_spec(ring_id: str) -> RingSpec:
    if ring_id in NAMED:
        return NAMED[ring_id]
    if ring_id.startswith("kxn:"):
        n = _int(ring_id[4:], ring_id)
        if n < 1:
            raise SpecError("kxn:n needs n >= 1")
        return RingSpec(QQ, ("x",), (f"x^{n}",))
    if ring_id.startswith("power:"):
        try:
            m, n = (int(t) for t in ring_id[6:].split(","))
        except ValueError:
            raise SpecError(f"bad ring id {ring_id!r}; expected power:m,n") from None
        if m < 1 or n < 1:
            raise SpecError("power:m,n needs m, n >= 1")
        names = ("x", "y", "z", "w", "u", "v")[:m] if m <= 6 else tuple(f"x{i}" for i in range(1, m + 1))
        gens = []
        for combo in combinations_with_replacement(range(m), n):
            gens.append("*".join(names[i] for i in combo))
        return RingSpec(QQ, names, tuple(gens))
    raise SpecError(f"unknown ring id {ring_id!r}")


def _int(text, ring_id):
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"bad ring id {ring_id!r}") from None


def random_element_of_m(A, rng: random.Random, density: float = 0.5) -> str:
    terms = []
    for s in A.std[1:]:
        if rng.random() < density:
            c = rng.choice((-2, -1, 1, 1, 2, 3))
            terms.append((c, A.to_poly({A.index[s]: A.field.one})))
    if not terms:
        return "0"
    poly = A.ring.zero()
    for c, t in terms:
        poly = poly + t.scale(c)
    return str(poly)


def random_presentation(A, rng: random.Random, max_rows: int = 2, max_cols: int = 3) -> ModuleSpec:
    """A presentation matrix with random entries in m (so mu(M) = rows)."""
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    matrix = [[random_element_of_m(A, rng) for _ in range(cols)] for _ in range(rows)]
    return ModuleSpec("presentation", {"matrix": matrix})


def random_modules(A, count: int, seed: int = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_presentation(A, rng, **kw) for _ in range(count)]
