"""Acceptance criteria 1-7, each an exact check (no tolerance).

Run under pytest, or directly with ``python3 tests/test_acceptance.py``;
either way one PASS/FAIL line is printed per criterion.
"""
from __future__ import annotations

import io
import random
import sys
import tempfile
import time
from pathlib import Path

import pytest

from twcoend.cli import run
from twcoend.coend import (
    adjunction_check,
    coend_route_witness,
    coend_tw,
    constant_coend_witness,
    coyoneda_witness,
    end_route_witness,
    end_tw,
    hom_end_witness,
    hom_functor,
    induced_map_on_coend,
    induced_map_on_end,
    ran_sigma_const_compare,
    yoneda_witness,
)
from twcoend.corpus import full_corpus
from twcoend.fincat import NatTransf, chain, twosided
from twcoend.finset import FinFn, FinSet
from twcoend.fubini import fubini_check, hom_four, random_instance, random_transformation
from twcoend.setfun import random_quotient, random_set_functor
from twcoend.simplicial import edgewise_subdivision, nerve, sset_iso_check
from twcoend.textfmt import parse_input, parse_text, print_bundle, same_bundle
from twcoend.twisted import check_discrete_fibration, fiber_transport, tw_category

CORPUS = full_corpus()
DATA = Path(__file__).parent / "data"
RESULTS: dict[int, str] = {}


def _timed(n: int, budget: float, body):
    start = time.perf_counter()
    try:
        detail = body()
    except Exception as exc:
        RESULTS[n] = f"criterion {n}: FAIL ({type(exc).__name__}: {exc})"
        raise
    took = time.perf_counter() - start
    ok = took < budget
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail}; {took:.1f}s of {budget:.0f}s)"
    assert ok, RESULTS[n]


# 1 -------------------------------------------------------------------------------


def dual_route() -> str:
    functors = 0
    for name, A in CORPUS:
        rng = random.Random(f"dual:{name}")
        sampled = [random_set_functor(twosided(A), rng, max_size=3) for _ in range(3)]
        assert all(len(F.at(o)) <= 3 for F in sampled for o in F.source.objects)
        for F in [hom_functor(A)] + sampled:
            a, b = coend_route_witness(A, F), end_route_witness(A, F)
            assert a.round_trips() and b.round_trips(), name
        functors += len(sampled)
    assert functors >= 100
    return f"{len(CORPUS)} categories, {functors} random functors plus Hom"


# 2 -------------------------------------------------------------------------------


def nerve_comparison() -> str:
    assert list(nerve(tw_category(chain(1)).tw, 1).dims()) == [3, 5]
    assert list(nerve(tw_category(chain(2)).tw, 1).dims()) == [6, 15]
    checks = 0
    for name, A in CORPUS:
        T = tw_category(A).tw
        for k in range(4):
            res = sset_iso_check(nerve(T, k), edgewise_subdivision(nerve(A, 2 * k + 1), k))
            assert res, f"{name}, k={k}: {res.reason}"
            checks += 1
    return f"{checks} isomorphisms"


# 3 -------------------------------------------------------------------------------


def fibration_shadow() -> str:
    transports = 0
    for name, A in CORPUS:
        T = tw_category(A)
        verdict = check_discrete_fibration(T)
        assert verdict, f"{name}: {verdict.counterexample}"
        for u in T.sigma.target.morphisms:
            t, s = u
            tr = fiber_transport(T, u)
            assert all(tr(h) == A.compose(t, h, s) for h in tr.dom), name
            transports += 1
    return f"{transports} transports"


# 4 -------------------------------------------------------------------------------


def adjoint_suite() -> str:
    adj = 0
    for name, A in CORPUS:
        rng = random.Random(f"adj:{name}")
        F = random_set_functor(twosided(A), rng, max_size=2)
        for d in range(4):
            D = FinSet(f"d{i}" for i in range(d))
            rep = adjunction_check(A, F, D)
            assert rep.coend.round_trips() and rep.end.round_trips()
            assert all(w.round_trips() for w in ran_sigma_const_compare(A, D).values())
            adj += 1
    pairs = 0
    rng = random.Random("pairs")
    while pairs < 60:
        name, A = CORPUS[pairs % len(CORPUS)]
        F = random_set_functor(twosided(A), rng, max_size=3)
        G, a = random_quotient(F, rng, rng.randint(0, 2))
        _, b = random_quotient(G, rng, rng.randint(0, 2))
        for induced, apex in ((induced_map_on_coend, coend_tw), (induced_map_on_end, end_tw)):
            assert induced(A, a.then(b)).label == (induced(A, b) @ induced(A, a)).label, name
            ident = induced(A, NatTransf.identity(F))
            assert ident.label == FinFn.identity(apex(A, F).apex).label
        pairs += 1
    return f"{adj} adjunction instances, {pairs} composable pairs"


# 5 -------------------------------------------------------------------------------


def fubini_suite() -> str:
    rep = fubini_check(hom_four(chain(1), chain(1)), "coend", adjoint_sizes=(0, 1, 2, 3))
    assert rep and rep.sizes == (4, 4, 4)
    for i in range(200):
        rng = random.Random(f"fubini:{i}")
        F = random_instance(rng, max_objects=3, max_size=2)
        G, alpha = random_transformation(F, rng)
        for kind in ("coend", "end"):
            r = fubini_check(F, kind, transformations=[(G, alpha)], adjoint_sizes=(0, 1, 2, 3) if kind == "coend" else ())
            assert r, f"instance {i} ({kind}): {r.failure}"
            assert r.to_ce.round_trips() and r.to_ec.round_trips()
            assert r.naturality_checked == 1
    return "Hom example 4,4,4 and 200 instances"


# 6 -------------------------------------------------------------------------------


def sanity_identities() -> str:
    yon = 0
    for name, A in CORPUS:
        assert hom_end_witness(A).round_trips(), name
        assert constant_coend_witness(A).round_trips(), name
        G = random_set_functor(A, random.Random(f"yoneda:{name}"), max_size=3)
        for a in A.objects:
            assert yoneda_witness(A, G, a).round_trips(), name
            assert coyoneda_witness(A, G, a).round_trips(), name
            yon += 1
    return f"{len(CORPUS)} categories, {yon} Yoneda pairs"


# 7 -------------------------------------------------------------------------------


def _call(*argv):
    out, err = io.StringIO(), io.StringIO()
    return run([str(a) for a in argv], out, err), out.getvalue()


def cli_contract() -> str:
    good = ["arrow.txt", "hom.txt", "explicit_functor.txt", "monoid.txt", "empty.txt"]
    for name in good:
        b = parse_input(DATA / name)
        text = print_bundle(b)
        assert same_bundle(b, parse_text(text)) and print_bundle(parse_text(text)) == text
    first = _call("suite", "--cases", "30", "--seed", "11")
    assert first == _call("suite", "--cases", "30", "--seed", "11") and first[0] == 0
    with tempfile.TemporaryDirectory() as tmp:
        matrix = [
            (("validate", DATA / "arrow.txt"), 0),
            (("validate", DATA / "empty.txt"), 0),
            (("coend", DATA / "hom.txt", "--functor", "H", "--method", "both"), 0),
            (("fubini", DATA / "hom.txt", "--functor", "H4"), 0),
            (("tw", DATA / "hom.txt", "--category", "C", "--dot", Path(tmp) / "t.dot"), 0),
            (("validate", DATA / "bad_unknown_object.txt"), 1),
            (("validate", DATA / "bad_missing_composite.txt"), 1),
            (("validate", DATA / "bad_functor.txt"), 1),
            (("validate", DATA / "bad_syntax.txt"), 3),
            (("validate", DATA / "missing.txt"), 3),
            (("tw", DATA / "hom.txt", "--category", "A", "--dot", Path(tmp) / "no" / "t.dot"), 3),
        ]
        for argv, code in matrix:
            assert _call(*argv)[0] == code, argv
    assert _call("coend", DATA / "hom.txt", "--functor", "H")[1].strip() == "2 elements; routes agree"
    return f"{len(good)} round-trips, {len(matrix)} exit codes"


CRITERIA = [
    (1, 60, dual_route),
    (2, 60, nerve_comparison),
    (3, 30, fibration_shadow),
    (4, 120, adjoint_suite),
    (5, 180, fubini_suite),
    (6, 60, sanity_identities),
    (7, 10, cli_contract),
]


@pytest.mark.parametrize("n,budget,body", CRITERIA, ids=[f"criterion{n}" for n, _, _ in CRITERIA])
def test_criterion(n, budget, body):
    _timed(n, budget, body)


if __name__ == "__main__":
    failed = 0
    for n, budget, body in CRITERIA:
        try:
            _timed(n, budget, body)
        except Exception:
            failed += 1
        print(RESULTS[n])
    sys.exit(1 if failed else 0)
