import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twcoend.finset import (
    BijectionWitness,
    FinFn,
    FinSet,
    ShapeError,
    UnionFind,
    WitnessError,
    coequalizer,
    coproduct,
    curry,
    equalizer,
    evaluate,
    exponential,
    exponential_product,
    exponential_swap,
    format_label,
    hom_set,
    label_key,
    product,
    product_associator,
    product_braiding,
    sort_labels,
    two_variable_adjunction,
)

small_sets = st.integers(0, 3).map(lambda n: FinSet(range(n)))
tiny_sets = st.integers(0, 2).map(lambda n: FinSet(range(n)))


def test_canonical_order_mixes_kinds():
    assert sort_labels(["b", 2, ("a", 1), 0, "a"]) == [0, 2, "a", "b", ("a", 1)]
    assert FinSet([3, 1, 2]).elements == (1, 2, 3)


def test_booleans_are_not_labels():
    with pytest.raises(TypeError):
        label_key(True)


def test_format_nested():
    assert format_label(((0, 1), "f", ())) == "((0,1),f,())"


def test_finfn_rejects_partial_and_out_of_range():
    X, Y = FinSet([0, 1]), FinSet(["a"])
    with pytest.raises(ShapeError):
        FinFn(X, Y, {0: "a"})
    with pytest.raises(ShapeError):
        FinFn(X, Y, {0: "a", 1: "b"})


def test_composition_and_inverse():
    X = FinSet(range(3))
    f = FinFn(X, X, lambda x: (x + 1) % 3)
    assert (f @ f @ f).label == FinFn.identity(X).label
    assert (f.inverse() @ f).label == FinFn.identity(X).label


@given(small_sets, small_sets)
def test_hom_set_size(X, Y):
    assert len(hom_set(X, Y)) == len(Y) ** len(X)
    assert len(exponential(X, Y)) == len(Y) ** len(X)


@given(small_sets, small_sets)
def test_product_and_coproduct_universal_sizes(X, Y):
    P = product(X, Y)
    C = coproduct(X, Y)
    assert len(P.apex) == len(X) * len(Y)
    assert len(C.apex) == len(X) + len(Y)
    assert all(P.first((x, y)) == x and P.second((x, y)) == y for x, y in P.apex)


def test_equalizer_and_coequalizer_against_brute_force():
    X, Y = FinSet(range(4)), FinSet(range(3))
    f = FinFn(X, Y, lambda x: x % 3)
    g = FinFn(X, Y, lambda x: min(x, 2))
    E = equalizer(f, g)
    assert set(E.apex) == {x for x in X if f(x) == g(x)}
    Q = coequalizer(f, g)
    # brute force: finest partition of Y identifying f(x) ~ g(x)
    parts = {y: {y} for y in Y}
    for x in X:
        a, b = parts[f(x)], parts[g(x)]
        if a is not b:
            a |= b
            for y in b:
                parts[y] = a
    assert len(Q.apex) == len({frozenset(p) for p in parts.values()})
    assert all(Q.projection(f(x)) == Q.projection(g(x)) for x in X)


def test_union_find_root_is_least():
    uf = UnionFind()
    for x in [5, 3, 9]:
        uf.add(x)
    uf.union(9, 5)
    uf.union(5, 3)
    assert uf.find(9) == 3


def test_witness_rejects_non_inverse():
    X = FinSet([0, 1])
    swap = FinFn(X, X, {0: 1, 1: 0})
    with pytest.raises(WitnessError):
        BijectionWitness(swap, FinFn.identity(X))
    w = BijectionWitness(swap, swap)
    assert w.round_trips() and w.then(w.inverse()).round_trips()


@given(tiny_sets, tiny_sets, tiny_sets)
def test_coherence_witnesses_round_trip(X, Y, Z):
    for w in (product_associator(X, Y, Z), product_braiding(X, Y), curry(X, Y, Z), exponential_product(X, Y, Z), exponential_swap(X, Y, Z)):
        assert w.round_trips()


def test_curry_agrees_with_evaluation():
    X, Y, Z = FinSet([0, 1]), FinSet(["a", "b"]), FinSet([0, 1])
    w = curry(X, Y, Z)
    for phi in hom_set(product(X, Y).apex, Z):
        psi = w.forward(phi)
        for x, y in itertools.product(X, Y):
            assert evaluate(evaluate(psi, x), y) == evaluate(phi, (x, y))


def test_two_variable_adjunction_sizes():
    X, D, D2 = FinSet([0, 1]), FinSet(["p"]), FinSet([0, 1, 2])
    a, b = two_variable_adjunction(X, D, D2)
    assert a.round_trips() and b.round_trips()
    assert len(a.forward.dom) == 3 ** 2
