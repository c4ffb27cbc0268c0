import pytest
from hypothesis import given, strategies as st

from reflexa.corpus import CORPUS_RING_IDS
from reflexa.linalg import Mat, Subspace
from reflexa.modules import (
    Module, ModuleError, ModuleMap, Presentation, canonical, cokernel, direct_sum, free, ideal,
    image, is_free, kernel, max_ideal, min_generators, minimal_presentation, quotient_ring, realize,
    residue_field, syzygy,
)
from reflexa.duality import hom_module

from helpers import dense_actions, random_module, ring
from oracles import SympyRing, hom_dim

rings = st.sampled_from(CORPUS_RING_IDS)
seeds = st.integers(0, 10 ** 6)


def test_canonical_gor415():
    w = canonical(ring("gor415"))
    assert (w.dim, w.mu) == (5, 1)


@pytest.mark.parametrize("rid", CORPUS_RING_IDS)
def test_builders(rid):
    A = ring(rid)
    inv = A.invariants()
    assert (free(A, 1).dim, free(A, 1).mu) == (A.length, 1)
    assert free(A, 3).dim == 3 * A.length
    assert (residue_field(A).dim, residue_field(A).mu) == (1, 1)
    m = max_ideal(A)
    assert (m.dim, m.mu) == (A.length - 1, inv.mu_m)
    w = canonical(A)
    assert (w.dim, w.mu) == (A.length, inv.type)


@given(rings, seeds)
def test_min_generators_and_syzygy(rid, seed):
    A = ring(rid)
    M = random_module(A, seed)
    mu, cover = min_generators(M)
    assert cover.is_surjective()
    assert mu == M.dim - M.m_times().dim
    S = M.syzygy()
    assert S.dim == mu * A.length - M.dim
    assert is_free(M) == (S.dim == 0)


@given(rings, seeds)
def test_hom_length_matches_bruteforce(rid, seed):
    A = ring(rid)
    M = random_module(A, seed, max_rows=2, max_cols=2)
    N = random_module(A, seed + 1, max_rows=1, max_cols=2)
    assert hom_module(M, N).dim == hom_dim(dense_actions(M), dense_actions(N))
    assert hom_module(M, free(A, 1)).dim == hom_dim(dense_actions(M), dense_actions(free(A, 1)))


@given(rings, seeds)
def test_matlis_duality_length(rid, seed):
    A = ring(rid)
    M = random_module(A, seed)
    assert hom_module(M, canonical(A)).dim == M.dim


@given(rings, seeds)
def test_presentation_round_trip(rid, seed):
    A = ring(rid)
    M = random_module(A, seed)
    P = minimal_presentation(M)
    assert P.rows == M.mu
    N = realize(Presentation.from_strings(A, P.to_strings()))
    assert (N.dim, N.mu) == (M.dim, M.mu)
    assert hom_module(M, N).dim == hom_module(M, M).dim


@given(rings, seeds)
def test_kernel_image_cokernel(rid, seed):
    A = ring(rid)
    M = random_module(A, seed)
    _, cover = min_generators(M)
    K, _ = kernel(cover)
    I, _ = image(cover)
    C, _ = cokernel(cover)
    assert K.dim + I.dim == cover.source.dim
    assert I.dim == M.dim and C.dim == 0


@given(rings, seeds, seeds)
def test_direct_sum_additive(rid, s1, s2):
    A = ring(rid)
    M, N = random_module(A, s1), random_module(A, s2)
    S = direct_sum(M, N)
    assert (S.dim, S.mu) == (M.dim + N.dim, M.mu + N.mu)
    assert hom_module(S, free(A, 1)).dim == hom_module(M, free(A, 1)).dim + hom_module(N, free(A, 1)).dim


def test_quotient_ring_matches_sympy():
    A = ring("gor415")
    for gens in (["x"], ["x", "y"], ["x + y", "z^2"]):
        M = quotient_ring(A, gens)
        oracle = SympyRing(["x^2 - y^2", "y^2 - z^2", "x*y", "y*z", "z*x"] + gens, ["x", "y", "z"])
        assert M.dim == oracle.length


def test_ideal_rejects_unit():
    with pytest.raises(ModuleError):
        ideal(ring("lam"), ["1 + x"])


def test_ideal_and_syzygy_of_k():
    A = ring("ex56")
    J = ideal(A, ["x", "y"])
    assert J.dim == max_ideal(A).dim
    assert syzygy(residue_field(A), 1).dim == max_ideal(A).dim
    assert syzygy(residue_field(A), 2).dim == 2 * A.length - 3


def test_invalid_actions_rejected():
    A = ring("lam")
    F = A.field
    X = Mat.from_rows(F, [[0, 0], [F.one, 0]])
    Y = Mat.from_rows(F, [[0, F.one], [0, 0]])
    with pytest.raises(ModuleError):
        Module(A, [X, Y])  # x and y do not commute
    Z = Mat.identity(F, 2)
    with pytest.raises(ModuleError):
        Module(A, [Z, Mat.zero(F, 2, 2)])  # x acts invertibly


def test_module_map_checks_linearity():
    A = ring("lam")
    k = residue_field(A)
    R = free(A, 1)
    bad = Mat(A.field, 3, 1, [{0: A.field.one}])  # 1 -> 1 is not R-linear on k
    with pytest.raises(ModuleError):
        ModuleMap(k, R, bad)
    good = Mat(A.field, 3, 1, [{1: A.field.one}])
    assert ModuleMap(k, R, good).is_injective()


def test_submodule_and_quotient():
    A = ring("lam")
    R = free(A, 1)
    m = A.max_ideal()
    N, inc = R.submodule(m)
    Q, proj = R.quotient(m)
    assert (N.dim, Q.dim) == (2, 1)
    assert inc.is_injective() and proj.is_surjective()
    with pytest.raises(ModuleError):
        R.submodule(Subspace.span(A.field, 3, [{0: A.field.one}]))
