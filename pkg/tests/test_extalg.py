from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from minktype.extalg import (
    Multivector,
    coproduct_component,
    graded_basis,
    graded_dimension,
    inner_product,
    k_action,
    mask_of,
    positions_of,
    push_forward,
    tensor_pairing,
    wedge,
)
from minktype.liealg import (
    EmbeddingShape,
    NonCompactGeneratorError,
    compact_generators,
    minus,
    plus,
)
from minktype.shapes import GroupShape

from oracles import naive_act_monomial, naive_wedge

U12 = GroupShape(1, 2)


def test_wedge_basics():
    s = GroupShape(2, 2)
    e1, e2, e3 = (Multivector.basis_vector(s, k) for k in (1, 2, 3))
    m12 = Multivector(s, (2, 0), {mask_of([1, 2]): 1})
    assert e1 ^ e2 == m12
    assert e2 ^ e1 == -m12
    assert not (e1 ^ e1)
    assert (e1 ^ e3) ^ e2 == -Multivector(s, (3, 0), {mask_of([1, 2, 3]): 1})


def test_constructor_rejects_mixed_bidegree_and_floats():
    with pytest.raises(ValueError):
        Multivector(U12, (1, 0), {mask_of([0]): 1, mask_of([2]): 1})
    with pytest.raises(TypeError):
        Multivector(U12, (1, 0), {mask_of([0]): 0.5})


def test_inner_product_examples():
    A = Multivector(U12, (1, 1), {mask_of([0, 2]): 1})
    B = Multivector(U12, (1, 1), {mask_of([1, 3]): 1})
    assert inner_product(A, A) == 1
    assert inner_product(A, B) == 0
    assert ((A - B) * Fraction(1, 2)).norm2() == Fraction(1, 2)
    assert inner_product(A, Multivector.one(U12)) == 0


def test_coproduct_examples():
    s = GroupShape(2, 2)
    v = Multivector(s, (2, 0), {mask_of([1, 2]): 1})
    assert coproduct_component(v, 1, 1) == {(1 << 1, 1 << 2): 1, (1 << 2, 1 << 1): -1}
    assert coproduct_component(v, 2, 0) == {(mask_of([1, 2]), 0): 1}
    with pytest.raises(ValueError):
        coproduct_component(v, 2, 1)


def test_k_action_examples():
    gen = Multivector.wedge_of(U12, [plus(1, 2), minus(1, 1)])
    once = k_action(3, 2, gen)
    expect = -Multivector.wedge_of(U12, [plus(1, 1), minus(1, 1)]) + Multivector.wedge_of(
        U12, [plus(1, 2), minus(1, 2)]
    )
    assert once == expect
    assert str(once) == "-E12∧E21 + E13∧E31"
    twice = k_action(3, 2, once)
    assert twice == -2 * Multivector.wedge_of(U12, [plus(1, 1), minus(1, 2)])
    assert not k_action(3, 2, Multivector.one(U12))
    with pytest.raises(NonCompactGeneratorError):
        k_action(1, 2, gen)


def all_monomials(n, deg):
    return [mask_of(c) for c in combinations(range(n), deg)]


@pytest.mark.parametrize("shape", [GroupShape(1, 2), GroupShape(2, 2), GroupShape(1, 4)])
def test_wedge_matches_naive_exhaustive(shape):
    n = 2 * shape.area
    for d1 in range(0, 3):
        for d2 in range(0, 3):
            for m1 in all_monomials(n, d1):
                for m2 in all_monomials(n, d2):
                    x = Multivector.monomial(shape, positions_of(m1))
                    y = Multivector.monomial(shape, positions_of(m2))
                    sign, key = naive_wedge(positions_of(m1), positions_of(m2))
                    got = wedge(x, y)
                    if sign == 0:
                        assert not got
                    else:
                        assert got.terms == {mask_of(key): sign}


@pytest.mark.parametrize("shape", [GroupShape(1, 2), GroupShape(2, 2)])
def test_adjunction_exhaustive_to_degree_four(shape):
    """<x ∧ y, z> = <x ⊗ y, Δ_{|x|,|y|} z> for all monomials, total degree <= 4."""
    n = 2 * shape.area
    mono = lambda m: Multivector.monomial(shape, positions_of(m))
    for total in range(0, 5):
        zs = [mono(m) for m in all_monomials(n, total)]
        cop = {}
        for z in zs:
            for k in range(total + 1):
                cop[(next(iter(z.terms)), k)] = coproduct_component(z, k, total - k)
        for k in range(total + 1):
            for mx in all_monomials(n, k):
                for my in all_monomials(n, total - k):
                    x, y = mono(mx), mono(my)
                    xy = wedge(x, y)
                    for z in zs:
                        mz = next(iter(z.terms))
                        lhs = inner_product(xy, z)
                        assert lhs == tensor_pairing(x, y, cop[(mz, k)])


SHAPES = [GroupShape(1, 2), GroupShape(2, 2), GroupShape(2, 3)]


@st.composite
def multivectors(draw, shape=None, bidegree=None, max_terms=6):
    if shape is None:
        shape = draw(st.sampled_from(SHAPES))
    n = shape.area
    if bidegree is None:
        bidegree = (draw(st.integers(0, min(n, 3))), draw(st.integers(0, min(n, 3))))
    k, l = bidegree
    plus_sets = st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True)
    minus_sets = st.lists(st.integers(n, 2 * n - 1), min_size=l, max_size=l, unique=True)
    coef = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    terms = draw(
        st.dictionaries(
            st.tuples(plus_sets, minus_sets).map(lambda pm: mask_of(pm[0] + pm[1])),
            coef,
            max_size=max_terms,
        )
    )
    return Multivector(shape, bidegree, terms)


@st.composite
def triples(draw):
    shape = draw(st.sampled_from(SHAPES))
    return tuple(draw(multivectors(shape=shape, max_terms=4)) for _ in range(3))


@given(triples())
def test_wedge_associative(t):
    x, y, z = t
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))


@given(triples())
def test_wedge_graded_anticommutative(t):
    x, y, _ = t
    sign = -1 if (x.degree * y.degree) % 2 else 1
    assert wedge(x, y) == wedge(y, x) * sign


@given(st.data())
def test_wedge_bilinear(data):
    shape = data.draw(st.sampled_from(SHAPES))
    x = data.draw(multivectors(shape=shape, max_terms=4))
    y = data.draw(multivectors(shape=shape, bidegree=x.bidegree, max_terms=4))
    z = data.draw(multivectors(shape=shape, max_terms=4))
    assert wedge(x + y * 3, z) == wedge(x, z) + wedge(y, z) * 3


@settings(max_examples=50)
@given(st.data())
def test_adjunction_random_high_degree(data):
    shape = GroupShape(2, 3)
    k1 = data.draw(st.integers(2, 3))
    k2 = data.draw(st.integers(2, 3))
    x = data.draw(multivectors(shape=shape, bidegree=(k1, 1), max_terms=3))
    y = data.draw(multivectors(shape=shape, bidegree=(1, k2), max_terms=3))
    z = data.draw(multivectors(shape=shape, bidegree=(k1 + 1, k2 + 1), max_terms=5))
    assert inner_product(wedge(x, y), z) == tensor_pairing(
        x, y, coproduct_component(z, x.degree, y.degree)
    )


@given(st.data())
def test_derivation_law(data):
    shape = data.draw(st.sampled_from(SHAPES))
    Z = data.draw(st.sampled_from(compact_generators(shape, diagonal=True)))
    x = data.draw(multivectors(shape=shape, max_terms=4))
    y = data.draw(multivectors(shape=shape, max_terms=4))
    lhs = k_action(*Z, wedge(x, y))
    rhs = wedge(k_action(*Z, x), y) + wedge(x, k_action(*Z, y))
    assert lhs == rhs
    assert lhs.bidegree == wedge(x, y).bidegree


@given(st.data())
def test_k_action_matches_naive(data):
    shape = data.draw(st.sampled_from(SHAPES))
    Z = data.draw(st.sampled_from(compact_generators(shape, diagonal=True)))
    v = data.draw(multivectors(shape=shape, max_terms=1))
    assume(v)
    (m, c), = v.terms.items()
    expect = {
        mask_of(key): c * val
        for key, val in naive_act_monomial(shape.a, shape.b, *Z, positions_of(m)).items()
    }
    assert k_action(*Z, v).terms == expect


@pytest.mark.parametrize("shape", SHAPES)
def test_torus_acts_by_integer_weights(shape):
    for bideg in [(1, 1), (2, 1)]:
        for m in graded_basis(shape, bideg):
            v = Multivector(shape, bideg, {m: 1})
            for s in range(1, shape.a + shape.b + 1):
                out = k_action(s, s, v)
                assert not out or (set(out.terms) == {m} and out.terms[m].denominator == 1)


def test_graded_basis_size():
    s = GroupShape(2, 3)
    assert len(graded_basis(s, (2, 2))) == graded_dimension(s, (2, 2)) == 225


@given(multivectors())
def test_serialization_round_trip(v):
    data = v.to_json()
    assert Multivector.from_json(data) == v
    for positions, coef in data["terms"]:
        assert positions == sorted(positions) and "/" in coef


def test_serialization_rejects_bad_input():
    good = Multivector.monomial(U12, [0, 2]).to_json()
    bad = dict(good, version=99)
    with pytest.raises(ValueError):
        Multivector.from_json(bad)
    bad = dict(good, terms=[[[2, 0], "1/1"]])
    with pytest.raises(ValueError):
        Multivector.from_json(bad)


def test_push_forward_relabels_without_sign():
    e_ = EmbeddingShape(1, 1, 1)
    v = Multivector.wedge_of(e_.h_shape, [plus(1, 1), minus(1, 1)])
    w = push_forward(v, e_)
    assert w == Multivector.wedge_of(e_.g_shape, [plus(1, 1), minus(1, 1)])
