"""Finite sets of canonical labels, total maps, and set-level (co)limits.

A label is an ``int`` or ``str`` atom, or a tuple of labels.  Pairs, tags
(``("inl", x)``), class representatives (the least member itself) and map
encodings (``("fn", ((x, y), ...))``) are all tuples, so nested
constructions never need a renaming pass.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product as _cartesian
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple

Label = Hashable


class ShapeError(ValueError):
    """Maps whose domains or codomains do not line up."""


class WitnessError(ValueError):
    """A claimed bijection failed one of its round trips."""


@lru_cache(maxsize=None)
def label_key(label):
    """Sort key realizing the fixed total order on labels."""
    if isinstance(label, bool):
        raise TypeError("booleans are not labels")
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    raise TypeError(f"not a label: {label!r}")


def sort_labels(labels: Iterable[Label]) -> list:
    return sorted(labels, key=label_key)


def format_label(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(format_label(x) for x in label) + ")"
    return str(label)


class FinSet:
    """An immutable finite set whose elements are kept in canonical order."""

    __slots__ = ("elements", "_index", "_hash")

    def __init__(self, labels: Iterable[Label] = ()):
        elems = tuple(sort_labels(set(labels)))
        self.elements = elems
        self._index = {x: i for i, x in enumerate(elems)}
        self._hash = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x) -> int:
        return self._index[x]

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.elements)
        return self._hash

    def __repr__(self):
        return "{" + ", ".join(format_label(x) for x in self.elements) + "}"


EMPTY = FinSet()


class FinFn:
    """A total map between finite sets, checked on construction."""

    __slots__ = ("dom", "cod", "_map", "_hash")

    def __init__(self, dom: FinSet, cod: FinSet, assignment: Mapping | Callable):
        if callable(assignment) and not isinstance(assignment, Mapping):
            mapping = {x: assignment(x) for x in dom}
        else:
            mapping = dict(assignment)
        if len(mapping) != len(dom) or any(x not in mapping for x in dom):
            missing = [x for x in dom if x not in mapping]
            extra = [x for x in mapping if x not in dom]
            raise ShapeError(f"not total on domain: missing {missing}, extra {extra}")
        for x, y in mapping.items():
            if y not in cod:
                raise ShapeError(f"image {format_label(y)} of {format_label(x)} not in codomain")
        self.dom = dom
        self.cod = cod
        self._map = mapping
        self._hash = None

    @classmethod
    def identity(cls, X: FinSet) -> "FinFn":
        return cls(X, X, {x: x for x in X})

    @classmethod
    def from_label(cls, dom: FinSet, cod: FinSet, label) -> "FinFn":
        return cls(dom, cod, dict(decode_map(label)))

    def __call__(self, x):
        return self._map[x]

    def items(self):
        return ((x, self._map[x]) for x in self.dom)

    def __matmul__(self, other: "FinFn") -> "FinFn":
        """``f @ g`` is the composite f∘g."""
        if other.cod != self.dom:
            raise ShapeError("composite of non-composable maps")
        return FinFn(other.dom, self.cod, {x: self._map[other._map[x]] for x in other.dom})

    @property
    def label(self):
        return encode_map(self.items())

    def is_injective(self):
        return len(set(self._map.values())) == len(self.dom)

    def is_surjective(self):
        return len(set(self._map.values())) == len(self.cod)

    def is_bijection(self):
        return len(self.dom) == len(self.cod) and self.is_injective()

    def inverse(self) -> "FinFn":
        if not self.is_bijection():
            raise ShapeError("map is not invertible")
        return FinFn(self.cod, self.dom, {y: x for x, y in self._map.items()})

    def __eq__(self, other):
        return (
            isinstance(other, FinFn)
            and self.dom == other.dom
            and self.cod == other.cod
            and all(self._map[x] == other._map[x] for x in self.dom)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, tuple(self._map[x] for x in self.dom)))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{format_label(x)}->{format_label(y)}" for x, y in self.items())
        return f"FinFn({body})"


def encode_map(pairs: Iterable[tuple]) -> tuple:
    return ("fn", tuple(sorted(pairs, key=lambda p: label_key(p[0]))))


def decode_map(label) -> dict:
    tag, pairs = label
    if tag != "fn":
        raise ValueError(f"not a map label: {label!r}")
    return dict(pairs)


class BijectionWitness:
    """An explicit invertible map; both round trips are verified eagerly."""

    __slots__ = ("forward", "backward")

    def __init__(self, forward: FinFn, backward: FinFn):
        if forward.dom != backward.cod or forward.cod != backward.dom:
            raise WitnessError("forward and backward maps do not have opposite types")
        for x in forward.dom:
            if backward(forward(x)) != x:
                raise WitnessError(f"backward(forward({format_label(x)})) != {format_label(x)}")
        for y in backward.dom:
            if forward(backward(y)) != y:
                raise WitnessError(f"forward(backward({format_label(y)})) != {format_label(y)}")
        self.forward = forward
        self.backward = backward

    @classmethod
    def from_maps(cls, dom: FinSet, cod: FinSet, fwd: Callable, bwd: Callable) -> "BijectionWitness":
        return cls(FinFn(dom, cod, fwd), FinFn(cod, dom, bwd))

    @classmethod
    def identity(cls, X: FinSet) -> "BijectionWitness":
        f = FinFn.identity(X)
        return cls(f, f)

    @property
    def dom(self):
        return self.forward.dom

    @property
    def cod(self):
        return self.forward.cod

    def __call__(self, x):
        return self.forward(x)

    def inverse(self) -> "BijectionWitness":
        return BijectionWitness(self.backward, self.forward)

    def then(self, other: "BijectionWitness") -> "BijectionWitness":
        return BijectionWitness(other.forward @ self.forward, self.backward @ other.backward)

    def round_trips(self) -> bool:
        return all(self.backward(self.forward(x)) == x for x in self.dom) and all(
            self.forward(self.backward(y)) == y for y in self.cod
        )


# -- (co)limit primitives --------------------------------------------------


class Product(NamedTuple):
    apex: FinSet
    first: FinFn
    second: FinFn


class Coproduct(NamedTuple):
    apex: FinSet
    left: FinFn
    right: FinFn


class Equalizer(NamedTuple):
    apex: FinSet
    inclusion: FinFn


class Coequalizer(NamedTuple):
    apex: FinSet
    projection: FinFn


def product(X: FinSet, Y: FinSet) -> Product:
    P = FinSet(_cartesian(X, Y))
    return Product(P, FinFn(P, X, lambda p: p[0]), FinFn(P, Y, lambda p: p[1]))


def coproduct(X: FinSet, Y: FinSet) -> Coproduct:
    S = FinSet([("inl", x) for x in X] + [("inr", y) for y in Y])
    return Coproduct(S, FinFn(X, S, lambda x: ("inl", x)), FinFn(Y, S, lambda y: ("inr", y)))


def _check_parallel(f: FinFn, g: FinFn):
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeError("maps are not parallel")


def equalizer(f: FinFn, g: FinFn) -> Equalizer:
    _check_parallel(f, g)
    E = FinSet(x for x in f.dom if f(x) == g(x))
    return Equalizer(E, FinFn(E, f.dom, lambda x: x))


class UnionFind:
    """Union-find whose class roots are always the least label of the class."""

    def __init__(self, elements: Iterable[Label] = ()):
        self.parent = {x: x for x in elements}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if label_key(ry) < label_key(rx):
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def coequalizer(f: FinFn, g: FinFn) -> Coequalizer:
    _check_parallel(f, g)
    uf = UnionFind(f.cod)
    for x in f.dom:
        uf.union(f(x), g(x))
    Q = FinSet(uf.find(y) for y in f.cod)
    return Coequalizer(Q, FinFn(f.cod, Q, uf.find))


def hom_set(X: FinSet, Y: FinSet) -> FinSet:
    """All total maps X -> Y, as map-encoding labels."""
    return FinSet(
        encode_map(zip(X.elements, images)) for images in _cartesian(Y.elements, repeat=len(X))
    )


def exponential(X: FinSet, D: FinSet) -> FinSet:
    """The cotensor ``X ⋔ D = D^X``."""
    return hom_set(X, D)


def evaluate(map_label, x):
    return decode_map(map_label)[x]


# -- coherence bijections for product and exponential --------------------


def product_associator(X: FinSet, Y: FinSet, Z: FinSet) -> BijectionWitness:
    """(X×Y)×Z ≅ X×(Y×Z)."""
    left = product(product(X, Y).apex, Z).apex
    right = product(X, product(Y, Z).apex).apex
    return BijectionWitness.from_maps(
        left, right, lambda p: (p[0][0], (p[0][1], p[1])), lambda p: ((p[0], p[1][0]), p[1][1])
    )


def product_braiding(X: FinSet, Y: FinSet) -> BijectionWitness:
    """X×Y ≅ Y×X."""
    return BijectionWitness.from_maps(
        product(X, Y).apex, product(Y, X).apex, lambda p: (p[1], p[0]), lambda p: (p[1], p[0])
    )


def curry(X: FinSet, Y: FinSet, Z: FinSet) -> BijectionWitness:
    """Fn(X×Y, Z) ≅ Fn(X, Fn(Y, Z))."""
    XY = product(X, Y).apex
    YZ = hom_set(Y, Z)
    src = hom_set(XY, Z)
    tgt = hom_set(X, YZ)

    def fwd(label):
        m = decode_map(label)
        return encode_map((x, encode_map((y, m[(x, y)]) for y in Y)) for x in X)

    def bwd(label):
        m = {x: decode_map(inner) for x, inner in decode_map(label).items()}
        return encode_map(((x, y), m[x][y]) for x in X for y in Y)

    return BijectionWitness.from_maps(src, tgt, fwd, bwd)


def exponential_product(V: FinSet, W: FinSet, D: FinSet) -> BijectionWitness:
    """D^(V×W) ≅ (D^W)^V."""
    return curry(V, W, D)


def exponential_swap(V: FinSet, W: FinSet, D: FinSet) -> BijectionWitness:
    """(D^W)^V ≅ (D^V)^W."""
    return curry(V, W, D).inverse().then(
        BijectionWitness.from_maps(
            hom_set(product(V, W).apex, D),
            hom_set(product(W, V).apex, D),
            lambda lab: encode_map(((w, v), d) for (v, w), d in decode_map(lab).items()),
            lambda lab: encode_map(((v, w), d) for (w, v), d in decode_map(lab).items()),
        )
    ).then(curry(W, V, D))


def two_variable_adjunction(X: FinSet, D: FinSet, D2: FinSet) -> tuple[BijectionWitness, BijectionWitness]:
    """Fn(X×D, D') ≅ Fn(X, Fn(D, D')) and Fn(X×D, D') ≅ Fn(D, D'^X)."""
    first = curry(X, D, D2)
    swap = BijectionWitness.from_maps(
        hom_set(product(X, D).apex, D2),
        hom_set(product(D, X).apex, D2),
        lambda lab: encode_map(((d, x), v) for (x, d), v in decode_map(lab).items()),
        lambda lab: encode_map(((x, d), v) for (d, x), v in decode_map(lab).items()),
    )
    return first, swap.then(curry(D, X, D2))


def postcompose(X: FinSet, g: FinFn) -> FinFn:
    """The map D^X -> D'^X induced by g: D -> D'."""
    return FinFn(
        hom_set(X, g.dom),
        hom_set(X, g.cod),
        lambda lab: encode_map((x, g(d)) for x, d in decode_map(lab).items()),
    )
