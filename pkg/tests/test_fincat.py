import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twcoend.corpus import full_corpus, monoid_corpus, poset_corpus, posets_up_to_iso
from twcoend.fincat import (
    CategoryError,
    Functor,
    FunctorError,
    NatTransf,
    SetValuedFunctor,
    chain,
    check_category,
    comma_category,
    constant_set_functor,
    coslice_category,
    cyclic_monoid,
    free_category,
    grothendieck,
    idempotent_monoid,
    identity_functor,
    initial_objects,
    iter_natural_transformations,
    monoid_category,
    natural_transformations,
    opposite,
    pi0,
    poset_category,
    product_category,
    product_projections,
    random_poset,
    slice_category,
    terminal_objects,
    twosided,
    validate_category,
    walking_arrow,
)
from twcoend.finset import FinFn, FinSet
from twcoend.setfun import random_set_functor

CORPUS = full_corpus()


def test_corpus_sizes():
    # posets up to isomorphism on 1..4 points
    assert [len(posets_up_to_iso(n)) for n in range(1, 5)] == [1, 2, 5, 16]
    assert len(poset_corpus()) == 24
    assert [name for name, _ in monoid_corpus()] == ["Z2", "Z3", "idem"]
    assert all(len(A.morphisms) <= 10 for name, A in CORPUS if name.startswith("free"))


@pytest.mark.parametrize("name,A", CORPUS, ids=[n for n, _ in CORPUS])
def test_corpus_categories_are_valid(name, A):
    check_category(A)
    check_category(opposite(A))
    assert opposite(opposite(A)) == A


def test_walking_arrow_shape():
    A = walking_arrow()
    assert len(A.objects) == 2 and len(A.morphisms) == 3
    assert A.hom(0, 1).elements == ((0, 1),)
    assert len(A.hom(1, 0)) == 0


def test_validation_reports_every_problem():
    with pytest.raises(CategoryError) as exc:
        validate_category(
            ["a"], ["1", "f"], {"1": "a", "f": "a"}, {"1": "a", "f": "a"}, {"a": "1"},
            {("1", "1"): "1", ("1", "f"): "f", ("f", "1"): "f"},
        )
    assert any("missing composite (f,f)" in v for v in exc.value.violations)


def test_monoid_associativity_checked():
    # subtraction mod 3 is not associative
    with pytest.raises(CategoryError):
        monoid_category(range(3), {(x, y): (x - y) % 3 for x in range(3) for y in range(3)}, 0)


def test_poset_rejects_cycle():
    with pytest.raises(CategoryError):
        poset_category("ab", [("a", "b"), ("b", "a")])


def test_free_category_path_count():
    # two parallel edges followed by a third: two paths from 0 to 2
    A = free_category(range(3), [("f", 0, 1), ("g", 0, 1), ("h", 1, 2)])
    assert len(A.hom(0, 2)) == 2
    assert len(A.morphisms) == 3 + 3 + 2


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_random_posets_are_categories(n, seed):
    A = random_poset(n, seed)
    check_category(A)
    assert all(len(A.hom(a, b)) <= 1 for a in A.objects for b in A.objects)


def test_product_counts_and_projections():
    A, B = chain(1), cyclic_monoid(2)
    P = product_category(A, B)
    check_category(P)
    assert len(P.morphisms) == len(A.morphisms) * len(B.morphisms)
    for p in product_projections(A, B):
        p.check()


def test_twosided_hom_is_contravariant_first():
    P = twosided(chain(1))
    # a morphism (0,0) -> (0,1) in A^op x A is (id, 0<=1); (0,0) -> (1,0) needs 1 -> 0 in A^op
    assert len(P.hom((0, 0), (0, 1))) == 1
    assert len(P.hom((1, 0), (0, 0))) == 1
    assert len(P.hom((0, 0), (1, 0))) == 0


def test_functor_violations():
    A = chain(1)
    F = Functor(A, A, {0: 0, 1: 1}, {(0, 0): (0, 0), (1, 1): (1, 1), (0, 1): (0, 0)})
    with pytest.raises(FunctorError):
        F.check()
    identity_functor(A).check()


def _all_transformations_brute(F, G):
    A = F.source
    found = []
    for choice in itertools.product(*[list(itertools.product(G.at(a), repeat=len(F.at(a)))) for a in A.objects]):
        comps = {a: FinFn(F.at(a), G.at(a), dict(zip(F.at(a), c))) for a, c in zip(A.objects, choice)}
        alpha = NatTransf(F, G, comps)
        if alpha.is_natural():
            found.append(alpha.label)
    return sorted(found)


@pytest.mark.parametrize("seed", range(12))
def test_natural_transformation_search_matches_brute_force(seed):
    rng = random.Random(seed)
    A = [chain(1), chain(2), cyclic_monoid(2), idempotent_monoid()][seed % 4]
    F = random_set_functor(A, rng, max_size=2)
    G = random_set_functor(A, rng, max_size=2)
    fast = sorted(a.label for a in iter_natural_transformations(F, G))
    assert fast == _all_transformations_brute(F, G)
    assert len(natural_transformations(F, G)) == len(fast)


def test_slice_of_poset_is_down_set():
    A = chain(2)
    S = slice_category(A, 1).category
    assert len(S.objects) == 2
    assert len(terminal_objects(S)) == 1
    C = coslice_category(A, 1).category
    assert len(C.objects) == 2
    assert len(initial_objects(C)) == 1


def test_comma_objects_are_arrows():
    A = cyclic_monoid(3)
    K = comma_category(identity_functor(A), identity_functor(A)).category
    check_category(K)
    assert len(K.objects) == 3


def test_grothendieck_is_valid():
    A = chain(1)
    F = SetValuedFunctor(A, {0: FinSet("ab"), 1: FinSet("c")}, {(0, 0): FinFn.identity(FinSet("ab")), (1, 1): FinFn.identity(FinSet("c")), (0, 1): FinFn(FinSet("ab"), FinSet("c"), lambda x: "c")})
    E, proj = grothendieck(F)
    check_category(E)
    proj.check()
    assert len(pi0(E)) == 1


@pytest.mark.parametrize("name,A", CORPUS, ids=[n for n, _ in CORPUS])
def test_pi0_matches_search(name, A):
    seen, comps = set(), 0
    for a in A.objects:
        if a in seen:
            continue
        comps += 1
        stack = [a]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack += [A.tgt[m] for m in A.out_of(x)] + [A.src[m] for m in A.into(x)]
    assert len(pi0(A)) == comps


def test_constant_functor_is_functorial():
    assert not constant_set_functor(cyclic_monoid(3), FinSet([0, 1])).violations()
