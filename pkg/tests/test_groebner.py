import random

import pytest
import sympy
from hypothesis import given, strategies as st

from reflexa.algebra import ArtinianAlgebra
from reflexa.fields import QQ
from reflexa.groebner import buchberger, is_groebner, s_polynomial
from reflexa.poly import PolyRing, parse_poly

from oracles import SympyRing

IDEALS = [
    (["x^2", "x*y", "y^2"], ["x", "y"]),
    (["x^2", "x*y", "y^3"], ["x", "y"]),
    (["x^2 - y^2", "y^2 - z^2", "x*y", "y*z", "z*x"], ["x", "y", "z"]),
    (["x^5"], ["x"]),
    (["x^3 - y^2", "x*y", "y^3"], ["x", "y"]),
    (["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"], ["x", "y", "z"]),
    (["x^2 - 2*y", "y^2", "x*y"], ["x", "y"]),
]


def _sympy_reduced(gens, names, order):
    syms = sympy.symbols(names)
    local = {str(s): s for s in syms}
    exprs = [sympy.parse_expr(g.replace("^", "**"), local_dict=local) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order)
    return sorted(str(sympy.expand(g)).replace("**", "^").replace(" ", "") for g in G.exprs)


@pytest.mark.parametrize("gens,names", IDEALS)
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_reduced_basis_matches_sympy(gens, names, order):
    R = PolyRing(QQ, names)
    gb = buchberger([parse_poly(g, R) for g in gens], order)
    ours = []
    for g in gb.generators:
        e = sympy.expand(sympy.parse_expr(str(g).replace("^", "**"), local_dict={n: sympy.Symbol(n) for n in names}))
        ours.append(str(e).replace("**", "^").replace(" ", ""))
    assert sorted(ours) == _sympy_reduced(gens, names, order)
    assert is_groebner(gb)


@pytest.mark.parametrize("gens,names", IDEALS)
def test_length_matches_sympy_staircase(gens, names):
    A = ArtinianAlgebra.from_strings(gens, names, QQ, "grevlex")
    assert A.length == SympyRing(gens, names).length


@pytest.mark.parametrize("gens,names", IDEALS)
def test_length_is_order_independent(gens, names):
    lengths = {ArtinianAlgebra.from_strings(gens, names, QQ, o).length for o in ("grevlex", "deglex", "lex")}
    assert len(lengths) == 1


@given(st.integers(0, 10_000), st.sampled_from(IDEALS))
def test_normal_form_properties(seed, ideal):
    gens, names = ideal
    R = PolyRing(QQ, names)
    gb = buchberger([parse_poly(g, R) for g in gens])
    rng = random.Random(seed)
    f = R.zero()
    for _ in range(4):
        e = tuple(rng.randint(0, 3) for _ in names)
        f = f + R.monomial(e, QQ(rng.randint(-3, 3)))
    r = gb.normal_form(f)
    assert gb.normal_form(r) == r
    assert gb.contains(f - r)
    leads = gb.leading_monomials
    for m in r.terms:
        assert not any(all(a >= b for a, b in zip(m, l)) for l in leads)
    # membership of multiples of generators
    g = gb.generators[seed % len(gb.generators)]
    assert gb.contains(g * f)


def test_s_polynomial_reduces_to_zero():
    R = PolyRing(QQ, ["x", "y", "z"])
    gb = buchberger([parse_poly(g, R) for g in IDEALS[2][0]])
    for a in gb.generators:
        for b in gb.generators:
            assert gb.normal_form(s_polynomial(a, b, "grevlex")).is_zero()


def test_unit_ideal_collapses():
    R = PolyRing(QQ, ["x", "y"])
    gb = buchberger([parse_poly("x - 1", R), parse_poly("x", R)])
    assert [str(g) for g in gb.generators] == ["1"]
