import json

from twcoend.export import category_dot, dumps, sset_dot, witness_json
from twcoend.fincat import chain
from twcoend.finset import BijectionWitness, FinFn, FinSet
from twcoend.simplicial import nerve
from twcoend.twisted import tw_category


def test_dot_of_tw_arrow():
    T = tw_category(chain(1))
    text = category_dot(T.tw, "tw", T.sigma)
    edges = [ln for ln in text.splitlines() if "->" in ln]
    nodes = [ln for ln in text.splitlines() if "[label=" in ln and "->" not in ln]
    assert (len(nodes), len(edges)) == (3, 2)
    assert category_dot(T.tw, "tw", T.sigma) == text


def test_dot_of_nerve_skeleton():
    text = sset_dot(nerve(chain(2), 1))
    # three vertices, three nondegenerate edges
    assert sum("->" in ln for ln in text.splitlines()) == 3


def test_witness_json():
    X = FinSet([0, 1])
    swap = FinFn(X, X, {0: 1, 1: 0})
    report = witness_json(BijectionWitness(swap, swap))
    assert report == {"forward": [["0", "1"], ["1", "0"]], "backward": [["0", "1"], ["1", "0"]], "round_trip": True}
    assert json.loads(dumps(report)) == report
