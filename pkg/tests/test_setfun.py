import itertools
import random

import pytest

from twcoend.fincat import (
    Functor,
    chain,
    cyclic_monoid,
    discrete,
    idempotent_monoid,
    identity_functor,
    poset_category,
    terminal,
    twosided,
)
from twcoend.finset import FinFn, FinSet
from twcoend.setfun import (
    colimit,
    free_functor,
    lan_adjunction,
    lan_identity_iso,
    lan_pointwise,
    limit,
    quotient_functor,
    random_quotient,
    random_set_functor,
    ran_adjunction,
    ran_identity_iso,
    ran_pointwise,
)

SHAPES = [chain(1), chain(2), cyclic_monoid(2), idempotent_monoid(), discrete([0, 1]), twosided(chain(1))]


def brute_limit(F):
    J = F.source
    fams = []
    for choice in itertools.product(*(F.at(j) for j in J.objects)):
        x = dict(zip(J.objects, choice))
        if all(F.on(u)(x[J.src[u]]) == x[J.tgt[u]] for u in J.morphisms):
            fams.append(choice)
    return sorted(fams)


def brute_colimit_size(F):
    J = F.source
    nodes = [(j, x) for j in J.objects for x in F.at(j)]
    adj = {n: set() for n in nodes}
    for u in J.morphisms:
        for x in F.at(J.src[u]):
            a, b = (J.src[u], x), (J.tgt[u], F.on(u)(x))
            adj[a].add(b)
            adj[b].add(a)
    seen, count = set(), 0
    for n in nodes:
        if n not in seen:
            count += 1
            stack = [n]
            while stack:
                m = stack.pop()
                if m not in seen:
                    seen.add(m)
                    stack.extend(adj[m])
    return count


@pytest.mark.parametrize("seed", range(30))
def test_limit_and_colimit_match_brute_force(seed):
    rng = random.Random(seed)
    J = SHAPES[seed % len(SHAPES)]
    F = random_set_functor(J, rng)
    assert sorted(limit(F).apex) == brute_limit(F)
    C = colimit(F)
    assert len(C.apex) == brute_colimit_size(F)
    for u in J.morphisms:
        for x in F.at(J.src[u]):
            assert C.cls(J.src[u], x) == C.cls(J.tgt[u], F.on(u)(x))


@pytest.mark.parametrize("seed", range(10))
def test_random_functors_respect_bounds(seed):
    rng = random.Random(seed)
    J = SHAPES[seed % len(SHAPES)]
    F = random_set_functor(J, rng, max_size=2)
    assert not F.violations()
    assert all(len(F.at(j)) <= 2 for j in J.objects)


def test_constant_limit_and_colimit_over_disconnected_shape():
    # limit of constant D is D^{π0}, colimit is D × π0
    from twcoend.fincat import constant_set_functor

    J = poset_category(range(3), [(0, 1)])
    D = FinSet("xy")
    F = constant_set_functor(J, D)
    assert len(limit(F).apex) == 4
    assert len(colimit(F).apex) == 4


def test_factorisation_through_colimit():
    J = chain(1)
    F = free_functor(J, [0])
    C = colimit(F)
    T = FinSet(["t"])
    cocone = {j: FinFn(F.at(j), T, lambda x: "t") for j in J.objects}
    assert len(C.factor(cocone, T).dom) == len(C.apex)


def test_quotient_is_functorial_and_projection_natural():
    J = chain(2)
    F = free_functor(J, [0, 0])
    Q, proj = quotient_functor(F, [(0, (0, (0, 0)), (1, (0, 0)))])
    assert not Q.violations() and proj.is_natural()
    assert all(len(Q.at(j)) == 1 for j in J.objects)


def test_random_quotient_projection_is_natural():
    rng = random.Random(3)
    F = random_set_functor(twosided(chain(1)), rng)
    Q, proj = random_quotient(F, rng, merges=2)
    assert proj.is_natural()


@pytest.mark.parametrize("seed", range(6))
def test_kan_extensions_along_identity(seed):
    rng = random.Random(seed)
    H = random_set_functor(SHAPES[seed % 4], rng)
    for alpha in (ran_identity_iso(H), lan_identity_iso(H)):
        assert alpha.is_natural()
        assert all(alpha[a].is_bijection() for a in H.source.objects)


def test_ran_along_inclusion_of_endpoint():
    # [0] -> [1] at 1: Ran H (0) = lim over (0 ↓ G) = H(1), Ran H (1) = H(1)
    A, B = terminal(), chain(1)
    G = Functor(A, B, {0: 1}, {(0, 0): (1, 1)})
    H = free_functor(A, [0, 0])
    R = ran_pointwise(G, H)
    assert [len(R.at(b)) for b in B.objects] == [2, 2]
    L = lan_pointwise(G, H)
    assert [len(L.at(b)) for b in B.objects] == [0, 2]


@pytest.mark.parametrize("seed", range(6))
def test_kan_adjunctions(seed):
    rng = random.Random(seed)
    A, B = chain(1), chain(2)
    G = Functor(A, B, {0: 0, 1: 2}, {(0, 0): (0, 0), (1, 1): (2, 2), (0, 1): (0, 2)})
    H = random_set_functor(A, rng, max_size=2)
    P = random_set_functor(B, rng, max_size=2)
    assert ran_adjunction(P, G, H).round_trips()
    assert lan_adjunction(H, G, P).round_trips()


def test_identity_kan_adjunction_sizes():
    A = cyclic_monoid(2)
    H = free_functor(A, ["*"])
    w = ran_adjunction(H, identity_functor(A), H)
    # Nat(Hom(*, -), Hom(*, -)) on Z/2 is the monoid itself
    assert len(w.forward.dom) == 2
