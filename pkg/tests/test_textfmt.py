from pathlib import Path

import pytest

from twcoend.coend import hom_functor
from twcoend.fincat import Functor, chain, cyclic_monoid, walking_arrow
from twcoend.textfmt import InputError, parse_input, parse_text, print_bundle, same_bundle

DATA = Path(__file__).parent / "data"
GOOD = ["arrow.txt", "hom.txt", "explicit_functor.txt", "monoid.txt", "empty.txt"]


def test_walking_arrow_matches_constructor():
    A = parse_input(DATA / "arrow.txt").categories["A"]
    W = walking_arrow()
    obj = {0: 0, 1: 1}
    mor = {"id_0": (0, 0), "id_1": (1, 1), "f": (0, 1)}
    Functor(A, W, obj, mor).check()
    Functor(W, A, {v: k for k, v in obj.items()}, {v: k for k, v in mor.items()}).check()


def test_explicit_hom_matches_library_hom():
    b = parse_input(DATA / "explicit_functor.txt")
    G = b.functors["G"]
    H = hom_functor(b.categories["A"])
    assert G.on_objects == H.on_objects
    assert all(G.on(m).label == H.on(m).label for m in H.source.morphisms)


def test_derived_categories():
    b = parse_input(DATA / "hom.txt")
    assert b.categories["C"] == chain(2)
    assert b.functor_shapes["H"] == ("twosided", "A")
    assert b.functor_shapes["H4"] == ("fourfold", "A", "A")


def test_monoid_file():
    b = parse_input(DATA / "monoid.txt")
    Z = b.categories["Z"]
    assert len(Z.morphisms) == 2 and len(Z.objects) == len(cyclic_monoid(2).objects)
    assert list(b.ssets["E"].dims()) == [2, 8]
    assert list(b.ssets["V"].dims()) == [2, 2]


def test_empty_file_is_empty_bundle():
    b = parse_input(DATA / "empty.txt")
    assert not b.names() and print_bundle(b) == ""


@pytest.mark.parametrize("name", GOOD)
def test_print_parse_round_trip(name):
    b = parse_input(DATA / name)
    text = print_bundle(b)
    again = parse_text(text)
    assert same_bundle(b, again)
    assert print_bundle(again) == text


@pytest.mark.parametrize(
    "name,semantic,line,col,fragment",
    [
        ("bad_unknown_object.txt", True, 3, 21, "unknown object 'b'"),
        ("bad_syntax.txt", False, 3, 19, "unexpected character"),
        ("bad_missing_composite.txt", True, 1, 10, "missing composite"),
        ("bad_identity.txt", True, 3, 12, "identities are implicit"),
        ("bad_functor.txt", True, 5, 6, "not total"),
        ("bad_stray.txt", False, 1, 1, "expected 'category'"),
    ],
)
def test_diagnostics_carry_location(name, semantic, line, col, fragment):
    with pytest.raises(InputError) as exc:
        parse_input(DATA / name)
    e = exc.value
    assert (e.semantic, e.line, e.col) == (semantic, line, col)
    assert fragment in str(e)
    assert str(e).startswith(str(DATA / name))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("category A = chain", "expected a size"),
        ("category A = nonsense", "unknown construction"),
        ("category A\n  object a\ncategory A = arrow", "duplicate name"),
        ("setfunctor F = hom B", "unknown category"),
        ("category A = arrow\nsetfunctor F on A\n  at 0 = {x\n", "expected ',' or '}'"),
        ("category A = arrow\nsset N = nerve A level 1\nsset E = esd N level 1", "need dimension 3"),
        ("sset V level 1\n  simplices 0 = {a}\n  simplices 1 = {s}\n  face 1 0 : s -> a\n", "missing face"),
        ("category A\n  object a b\n  morphism f : a -> b\n  compose f . f = f", "not composable"),
    ],
)
def test_more_diagnostics(text, fragment):
    with pytest.raises(InputError, match=fragment):
        parse_text(text)
