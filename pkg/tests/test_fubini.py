import random

import pytest

from twcoend.coend import coend_tw, end_tw, hom_functor
from twcoend.fincat import FunctorError, SetValuedFunctor, chain, cyclic_monoid, discrete, product_category, terminal
from twcoend.finset import FinSet
from twcoend.fubini import (
    FourVariableFunctor,
    adjoint_collapse,
    adjoint_functors,
    constant_four,
    fourfold,
    fubini_check,
    hom_four,
    iterated_coend,
    iterated_end,
    product_coend,
    product_end,
    random_instance,
    random_transformation,
    reindex_to_product,
)


def test_hom_example_sizes():
    F = hom_four(chain(1), chain(1))
    rep = fubini_check(F, "coend")
    assert rep and rep.sizes == (4, 4, 4)
    assert rep.to_ce.round_trips() and rep.to_ec.round_trips()
    assert fubini_check(F, "end").sizes == (1, 1, 1)


def test_product_coend_of_hom_is_coend_over_product():
    C, E = chain(1), cyclic_monoid(2)
    F = hom_four(C, E)
    CE = product_category(C, E)
    assert reindex_to_product(F).on_objects == hom_functor(CE).on_objects
    assert len(product_coend(F).apex) == len(coend_tw(CE, hom_functor(CE)).apex)
    assert len(product_end(F).apex) == len(end_tw(CE, hom_functor(CE)).apex)


def test_constant_connected_is_point():
    F = constant_four(chain(1), chain(2), FinSet(["*"]))
    assert fubini_check(F, "coend").sizes == (1, 1, 1)
    assert fubini_check(F, "end").sizes == (1, 1, 1)


def test_constant_disconnected_counts_components():
    F = constant_four(discrete([0, 1]), chain(1), FinSet(["*"]))
    assert fubini_check(F, "coend").sizes == (2, 2, 2)


def test_iterated_orders_differ_only_in_labels():
    F = hom_four(chain(1), terminal())
    assert len(iterated_coend(F, "CE").apex) == len(iterated_coend(F, "EC").apex) == 2
    assert len(iterated_end(F, "CE").apex) == len(iterated_end(F, "EC").apex) == 1


def test_rejects_wrong_source():
    with pytest.raises(FunctorError):
        FourVariableFunctor(chain(1), chain(1), SetValuedFunctor(fourfold(chain(1), terminal()), {}, {}))


@pytest.mark.parametrize("seed", range(15))
def test_random_instances_with_naturality(seed):
    rng = random.Random(seed)
    F = random_instance(rng, max_objects=2)
    G, alpha = random_transformation(F, rng)
    for kind in ("coend", "end"):
        rep = fubini_check(F, kind, transformations=[(G, alpha)])
        assert rep, rep.failure
        assert rep.naturality_checked == 1


@pytest.mark.parametrize("C,E", [(chain(1), chain(1)), (chain(1), terminal()), (cyclic_monoid(2), chain(1))])
@pytest.mark.parametrize("d", [0, 1, 2])
def test_adjoint_collapse(C, E, d):
    D = FinSet(range(d))
    R = adjoint_functors(C, E, D)
    assert all(not F.violations() for F in R.values())
    out = adjoint_collapse(C, E, D)
    assert all(w.round_trips() for side in out.values() for w in side.values())
