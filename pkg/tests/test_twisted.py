import pytest

from twcoend.corpus import full_corpus
from twcoend.fincat import chain, check_category, cyclic_monoid, idempotent_monoid
from twcoend.twisted import (
    check_discrete_fibration,
    count_composable_triples,
    fiber_transport,
    tw_category,
    tw_fiber,
    tw_product_iso,
)

CORPUS = full_corpus()


def test_tw_of_arrow_is_a_span():
    T = tw_category(chain(1)).tw
    assert len(T.objects) == 3
    assert len(T.morphisms) == 5
    # f -> g iff f = t∘g∘s, so both arrows leave 0<=1 for the identities
    plain = [m for m in T.morphisms if not T.is_identity(m)]
    assert {T.src[m] for m in plain} == {(0, 1)}
    assert {T.tgt[m] for m in plain} == {(0, 0), (1, 1)}


def test_tw_of_two_chain_counts():
    T = tw_category(chain(2)).tw
    assert (len(T.objects), len(T.morphisms)) == (6, 15)


@pytest.mark.parametrize("name,A", CORPUS, ids=[n for n, _ in CORPUS])
def test_tw_is_category_with_triple_count(name, A):
    T = tw_category(A)
    check_category(T.tw)
    T.sigma.check()
    assert len(T.tw.morphisms) == count_composable_triples(A)


@pytest.mark.parametrize("name,A", CORPUS, ids=[n for n, _ in CORPUS])
def test_sigma_is_discrete_fibration(name, A):
    T = tw_category(A)
    assert check_discrete_fibration(T)
    P = T.sigma.target
    for u in P.morphisms:
        x, y = u
        tr = fiber_transport(T, u)
        for g in tr.dom:
            assert tr(g) == A.compose(x, g, y)


def test_fibres_are_hom_sets():
    A = cyclic_monoid(3)
    T = tw_category(A)
    assert tw_fiber(T, ("*", "*")) == A.hom("*", "*")


def test_non_fibration_is_reported():
    # reroute Σ so that it forgets the twist: no longer a discrete fibration
    from dataclasses import replace

    from twcoend.fincat import Functor

    T = tw_category(chain(1))
    P = T.sigma.target
    bogus = Functor(T.tw, P, {f: P.objects[0] for f in T.tw.objects}, {m: P.identity[P.objects[0]] for m in T.tw.morphisms})
    verdict = check_discrete_fibration(replace(T, sigma=bogus))
    assert not verdict and "lifts" in verdict.counterexample


@pytest.mark.parametrize("A,B", [(chain(1), chain(1)), (chain(1), cyclic_monoid(2)), (idempotent_monoid(), chain(2))])
def test_tw_commutes_with_products(A, B):
    iso = tw_product_iso(A, B)
    assert iso.objects.round_trips() and iso.morphisms.round_trips()
