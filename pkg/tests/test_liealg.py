import random

import pytest

from minktype.liealg import (
    EmbeddingShape,
    NonCompactGeneratorError,
    ad_action_on_p,
    bracket_compact,
    compact_generators,
    embedding_basis_map,
    minus,
    p_basis,
    parabolic_from_dominant,
    plus,
)
from minktype.shapes import (
    DominantElement,
    GroupShape,
    NotDominantError,
    cohomological_degree,
    iter_dominant,
    partitions_from_dominant,
)

from oracles import ad_on_p


def test_basis_order_and_positions():
    s = GroupShape(2, 3)
    basis = p_basis(s)
    assert len(basis) == 12
    assert basis[0] == plus(1, 1) and basis[5] == plus(2, 3) and basis[6] == minus(1, 1)
    assert [v.position(s) for v in basis] == list(range(12))
    assert plus(1, 2).matrix_entry(s) == (1, 4)
    assert minus(2, 1).matrix_entry(s) == (3, 2)


def test_parabolic_u12():
    par = parabolic_from_dominant(DominantElement((0,), (1, -1)))
    assert set(par.p_cap_u) == {plus(1, 2), minus(1, 1)}
    assert par.R == 2 and par.bidegree == (1, 1)


def test_parabolic_zero():
    par = parabolic_from_dominant(DominantElement((0, 0), (0, 0, 0)))
    assert par.p_cap_u == () and par.R == 0 and par.compact_u == ()


def test_parabolic_u23():
    par = parabolic_from_dominant(DominantElement((2, 0), (1, 0, -1)))
    assert par.R == 5 and par.bidegree == (4, 1)
    # compact roots: x1 > x2, y1 > y2 > y3
    assert set(par.compact_u) == {(1, 2), (3, 4), (3, 5), (4, 5)}


def test_parabolic_rejects_non_dominant():
    with pytest.raises(NotDominantError):
        parabolic_from_dominant(DominantElement((0, 1), (0,)))


@pytest.mark.parametrize("a, b", [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)])
def test_R_equals_closed_form_exhaustive(a, b):
    shape = GroupShape(a, b)
    for H in iter_dominant(shape):
        par = parabolic_from_dominant(H)
        deg = cohomological_degree(partitions_from_dominant(H))
        assert (par.R, par.bidegree) == (deg.R, deg.bidegree)


def test_embedding_map_examples():
    m = embedding_basis_map(EmbeddingShape(1, 1, 1))
    assert m.p_cap_r == (plus(1, 2), minus(1, 2))
    G = EmbeddingShape(1, 1, 1).g_shape
    assert [v.matrix_entry(G) for v in m.p_cap_r] == [(1, 3), (3, 1)]

    m = embedding_basis_map(EmbeddingShape(1, 1, 0))
    assert m.p_cap_r == ()
    assert len(m.inclusion) == 2 and set(m.inclusion.values()) == set(p_basis(GroupShape(1, 1)))

    e = EmbeddingShape(2, 2, 1)
    assert len(embedding_basis_map(e).p_cap_r) == 2 * e.p * e.r


def test_ad_action_examples():
    s = GroupShape(1, 2)
    assert ad_action_on_p(3, 2, plus(1, 2), s) == [(-1, plus(1, 1))]
    assert ad_action_on_p(3, 2, minus(1, 1), s) == [(1, minus(1, 2))]
    with pytest.raises(NonCompactGeneratorError):
        ad_action_on_p(1, 2, plus(1, 1), s)


@pytest.mark.parametrize("a, b", [(1, 2), (2, 2), (2, 3)])
def test_ad_action_matches_matrix_commutators(a, b):
    shape = GroupShape(a, b)
    basis = p_basis(shape)
    for s, t in compact_generators(shape, diagonal=True):
        oracle = ad_on_p(a, b, s, t)
        for k, v in enumerate(basis):
            got = [(c, w.position(shape)) for c, w in ad_action_on_p(s, t, v, shape)]
            assert sorted(got) == sorted(oracle.get(k, []))


@pytest.mark.parametrize("a, b", [(2, 3), (3, 2)])
def test_diagonal_action_is_weight(a, b):
    shape = GroupShape(a, b)
    for s in range(1, a + b + 1):
        for v in p_basis(shape):
            w = v.weight(shape)[s - 1]
            out = ad_action_on_p(s, s, v, shape)
            assert out == ([(w, v)] if w else [])


@pytest.mark.parametrize("a, b", [(2, 2), (2, 3)])
def test_k_preserves_plus_minus(a, b):
    shape = GroupShape(a, b)
    for s, t in compact_generators(shape, diagonal=True):
        for v in p_basis(shape):
            for _, w in ad_action_on_p(s, t, v, shape):
                assert w.sign == v.sign


def _act(z, vec, shape):
    out = {}
    for v, c in vec.items():
        for d, w in ad_action_on_p(*z, v, shape):
            out[w] = out.get(w, 0) + c * d
    return {k: v for k, v in out.items() if v}


def test_jacobi_on_samples():
    shape = GroupShape(2, 3)
    gens = compact_generators(shape, diagonal=True)
    rng = random.Random(7)
    for _ in range(200):
        Z, W = rng.choice(gens), rng.choice(gens)
        v = {rng.choice(p_basis(shape)): 1}
        lhs = _act(Z, _act(W, v, shape), shape)
        rhs2 = _act(W, _act(Z, v, shape), shape)
        for k, c in rhs2.items():
            lhs[k] = lhs.get(k, 0) - c
        lhs = {k: c for k, c in lhs.items() if c}
        rhs = {}
        for c, e in bracket_compact(Z, W):
            for k, d in _act(e, v, shape).items():
                rhs[k] = rhs.get(k, 0) + c * d
        rhs = {k: c for k, c in rhs.items() if c}
        assert lhs == rhs
