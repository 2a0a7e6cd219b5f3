"""Finite categories given by explicit composition tables, with functors,
set-valued functors and natural transformations over them."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping

from .finset import FinFn, FinSet, format_label, label_key


class CategoryError(ValueError):
    """A table that breaks one or more category laws.

    ``violations`` lists every problem found, each with its witnesses.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations[:5]) + (" ..." if len(self.violations) > 5 else ""))


class FunctorError(ValueError):
    pass


class Category:
    """A finite category.

    ``comp`` maps ``(g, f)`` to ``g∘f`` and is defined exactly on the pairs
    with ``src(g) == tgt(f)``.  Construct through :func:`validate_category`
    when the table comes from outside; library constructions skip the check.
    """

    def __init__(self, objects, morphisms, src: Mapping, tgt: Mapping, identity: Mapping, comp: Mapping):
        self.objects = objects if isinstance(objects, FinSet) else FinSet(objects)
        self.morphisms = morphisms if isinstance(morphisms, FinSet) else FinSet(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.comp = dict(comp)
        homs: dict = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            homs[(self.src[m], self.tgt[m])].append(m)
        self._homs = {k: FinSet(v) for k, v in homs.items()}
        self._out: dict = {a: [] for a in self.objects}
        self._in: dict = {a: [] for a in self.objects}
        for m in self.morphisms:
            self._out[self.src[m]].append(m)
            self._in[self.tgt[m]].append(m)
        self._identities = frozenset(self.identity.values())
        self._hash = None

    def hom(self, a, b) -> FinSet:
        return self._homs[(a, b)]

    def out_of(self, a) -> list:
        return self._out[a]

    def into(self, b) -> list:
        return self._in[b]

    def id(self, a):
        return self.identity[a]

    def is_identity(self, m) -> bool:
        return m in self._identities

    def compose(self, *ms):
        """``compose(h, g, f)`` is h∘g∘f."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.comp[(m, out)]
        return out

    def composable_pairs(self) -> Iterator[tuple]:
        for f in self.morphisms:
            for g in self._out[self.tgt[f]]:
                yield g, f

    def table(self):
        return (
            self.objects,
            self.morphisms,
            tuple((m, self.src[m], self.tgt[m]) for m in self.morphisms),
            tuple((a, self.identity[a]) for a in self.objects),
            tuple(sorted(self.comp.items(), key=lambda kv: label_key(kv[0]))),
        )

    def __eq__(self, other):
        if not isinstance(other, Category):
            return NotImplemented
        if self is other:
            return True
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.src == other.src
            and self.tgt == other.tgt
            and self.identity == other.identity
            and self.comp == other.comp
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.objects, self.morphisms))
        return self._hash

    def __repr__(self):
        return f"<Category: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


def law_violations(objects, morphisms, src, tgt, identity, comp) -> list[str]:
    objects = list(objects)
    morphisms = list(morphisms)
    obj_set = set(objects)
    mor_set = set(morphisms)
    bad: list[str] = []
    for m in morphisms:
        for end, table in (("source", src), ("target", tgt)):
            if m not in table:
                bad.append(f"morphism {format_label(m)} has no {end}")
            elif table[m] not in obj_set:
                bad.append(f"unknown object {format_label(table[m])} as {end} of {format_label(m)}")
    for a in objects:
        i = identity.get(a)
        if i is None or i not in mor_set:
            bad.append(f"missing identity for {format_label(a)}")
        elif src.get(i) != a or tgt.get(i) != a:
            bad.append(f"identity {format_label(i)} is not an endomorphism of {format_label(a)}")
    if bad:
        return bad
    for (g, f), h in comp.items():
        if g not in mor_set or f not in mor_set:
            bad.append(f"composite ({format_label(g)},{format_label(f)}) uses an unknown morphism")
        elif src[g] != tgt[f]:
            bad.append(f"composite ({format_label(g)},{format_label(f)}) defined on a non-composable pair")
        elif h not in mor_set:
            bad.append(f"composite ({format_label(g)},{format_label(f)}) = {format_label(h)} is unknown")
        elif src[h] != src[f] or tgt[h] != tgt[g]:
            bad.append(f"composite ({format_label(g)},{format_label(f)}) = {format_label(h)} has wrong endpoints")
    out: dict = {a: [] for a in objects}
    for m in morphisms:
        out[src[m]].append(m)
    pairs = [(g, f) for f in morphisms for g in out[tgt[f]]]
    for g, f in pairs:
        if (g, f) not in comp:
            bad.append(f"missing composite ({format_label(g)},{format_label(f)})")
    if bad:
        return bad
    for f in morphisms:
        if comp[(identity[tgt[f]], f)] != f:
            bad.append(f"left identity law fails for {format_label(f)}")
        if comp[(f, identity[src[f]])] != f:
            bad.append(f"right identity law fails for {format_label(f)}")
    for g, f in pairs:
        gf = comp[(g, f)]
        for h in out[tgt[g]]:
            if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                bad.append(
                    f"non-associative triple ({format_label(h)},{format_label(g)},{format_label(f)})"
                )
    return bad


def validate_category(objects, morphisms, src, tgt, identity, comp) -> Category:
    """Check every law and return the canonical category, or raise
    :class:`CategoryError` listing all violations."""
    bad = law_violations(objects, morphisms, src, tgt, identity, comp)
    if bad:
        raise CategoryError(bad)
    return Category(objects, morphisms, src, tgt, identity, comp)


def check_category(A: Category) -> Category:
    return validate_category(A.objects, A.morphisms, A.src, A.tgt, A.identity, A.comp)


# -- constructions -----------------------------------------------------------


@lru_cache(maxsize=256)
def opposite(A: Category) -> Category:
    return Category(
        A.objects,
        A.morphisms,
        A.tgt,
        A.src,
        A.identity,
        {(f, g): h for (g, f), h in A.comp.items()},
    )


@lru_cache(maxsize=256)
def product_category(*cats: Category) -> Category:
    """Cartesian product; objects and morphisms are tuples, one slot per factor."""
    objects = list(_cartesian(*(c.objects for c in cats)))
    morphisms = list(_cartesian(*(c.morphisms for c in cats)))
    src = {m: tuple(c.src[x] for c, x in zip(cats, m)) for m in morphisms}
    tgt = {m: tuple(c.tgt[x] for c, x in zip(cats, m)) for m in morphisms}
    identity = {o: tuple(c.identity[x] for c, x in zip(cats, o)) for o in objects}
    comp = {}
    for f in morphisms:
        for g in _cartesian(*(c.out_of(c.tgt[x]) for c, x in zip(cats, f))):
            comp[(g, f)] = tuple(c.comp[(y, x)] for c, x, y in zip(cats, f, g))
    return Category(objects, morphisms, src, tgt, identity, comp)


def twosided(A: Category) -> Category:
    """A^op × A, with the first coordinate contravariant."""
    return product_category(opposite(A), A)


def product_projections(*cats: Category) -> list["Functor"]:
    P = product_category(*cats)
    return [
        Functor(P, c, {o: o[i] for o in P.objects}, {m: m[i] for m in P.morphisms})
        for i, c in enumerate(cats)
    ]


def poset_category(elements: Iterable, relation: Iterable[tuple]) -> Category:
    """Category of a partial order; ``relation`` lists pairs ``a <= b``.

    Reflexive pairs are added; transitivity and antisymmetry are checked.
    """
    elements = list(elements)
    le = set(relation) | {(a, a) for a in elements}
    bad = []
    for a, b in le:
        if a not in elements or b not in elements:
            bad.append(f"relation mentions unknown element in ({format_label(a)},{format_label(b)})")
    for a, b in le:
        if a != b and (b, a) in le:
            bad.append(f"antisymmetry fails for {format_label(a)}, {format_label(b)}")
        for c in elements:
            if (b, c) in le and (a, c) not in le:
                bad.append(f"transitivity fails: {format_label(a)}<={format_label(b)}<={format_label(c)}")
    if bad:
        raise CategoryError(sorted(set(bad)))
    morphisms = list(le)
    comp = {((b, c), (a, b)): (a, c) for (a, b) in le for (b2, c) in le if b2 == b}
    return Category(
        elements,
        morphisms,
        {m: m[0] for m in morphisms},
        {m: m[1] for m in morphisms},
        {a: (a, a) for a in elements},
        comp,
    )


def chain(n: int) -> Category:
    """The ordinal [n] = {0 < 1 < ... < n}."""
    return poset_category(range(n + 1), [(i, j) for i in range(n + 1) for j in range(i, n + 1)])


def terminal() -> Category:
    return chain(0)


def walking_arrow() -> Category:
    return chain(1)


def discrete(labels: Iterable) -> Category:
    return poset_category(labels, [])


def monoid_category(elements: Iterable, mult: Mapping, unit, obj="*") -> Category:
    """One-object category of a monoid; ``mult[(x, y)]`` is x·y, read as x∘y."""
    elements = list(elements)
    bad = []
    if unit not in elements:
        bad.append(f"unit {format_label(unit)} is not an element")
    for x in elements:
        for y in elements:
            if mult.get((x, y)) not in elements:
                bad.append(f"product ({format_label(x)},{format_label(y)}) missing or unknown")
    if not bad:
        for x in elements:
            if mult[(unit, x)] != x or mult[(x, unit)] != x:
                bad.append(f"unit law fails for {format_label(x)}")
            for y in elements:
                for z in elements:
                    if mult[(mult[(x, y)], z)] != mult[(x, mult[(y, z)])]:
                        bad.append(
                            f"non-associative triple ({format_label(x)},{format_label(y)},{format_label(z)})"
                        )
    if bad:
        raise CategoryError(bad)
    return Category(
        [obj],
        elements,
        {x: obj for x in elements},
        {x: obj for x in elements},
        {obj: unit},
        {(x, y): mult[(x, y)] for x in elements for y in elements},
    )


def cyclic_monoid(n: int) -> Category:
    return monoid_category(range(n), {(x, y): (x + y) % n for x in range(n) for y in range(n)}, 0)


def idempotent_monoid() -> Category:
    """The two-element monoid {1, e} with e∘e = e."""
    mult = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return monoid_category(["1", "e"], mult, "1")


def free_category(vertices: Iterable, edges: Iterable[tuple]) -> Category:
    """Free category on an acyclic graph; ``edges`` are ``(name, src, tgt)``.

    A morphism is a path ``(start, (e1, e2, ...))``; the identity at ``v``
    is ``(v, ())``.
    """
    vertices = list(vertices)
    edges = list(edges)
    out: dict = {v: [] for v in vertices}
    for name, s, t in edges:
        out[s].append((name, t))
    paths = []
    ends = {}
    frontier = [((v, ()), v) for v in vertices]
    while frontier:
        nxt = []
        for path, end in frontier:
            paths.append(path)
            ends[path] = end
            if len(path[1]) > len(edges):
                raise CategoryError(["graph has a cycle"])
            for name, t in out[end]:
                nxt.append(((path[0], path[1] + (name,)), t))
        frontier = nxt
    comp = {}
    for f in paths:
        for g in paths:
            if g[0] == ends[f]:
                comp[(g, f)] = (f[0], f[1] + g[1])
    return Category(
        vertices,
        paths,
        {p: p[0] for p in paths},
        ends,
        {v: (v, ()) for v in vertices},
        comp,
    )


def random_poset(n: int, seed) -> Category:
    """Reflexive-transitive closure of a random DAG on ``0..n-1``."""
    if n < 1:
        raise ValueError("need at least one element")
    rng = random.Random(seed)
    p = rng.random()
    le = {(i, i) for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                le.add((i, j))
    changed = True
    while changed:
        changed = False
        for a, b in list(le):
            for c, d in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    return poset_category(range(n), le)


# -- functors ------------------------------------------------------------------


class Functor:
    def __init__(self, source: Category, target: Category, obj_map: Mapping, mor_map: Mapping):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)

    def __call__(self, x):
        """Apply to a morphism."""
        return self.mor_map[x]

    def on_object(self, a):
        return self.obj_map[a]

    def violations(self) -> list[str]:
        S, T = self.source, self.target
        bad = []
        for a in S.objects:
            if self.obj_map.get(a) not in T.objects:
                bad.append(f"object {format_label(a)} has no valid image")
        for m in S.morphisms:
            if self.mor_map.get(m) not in T.morphisms:
                bad.append(f"morphism {format_label(m)} has no valid image")
        if bad:
            return bad
        for m in S.morphisms:
            fm = self.mor_map[m]
            if T.src[fm] != self.obj_map[S.src[m]] or T.tgt[fm] != self.obj_map[S.tgt[m]]:
                bad.append(f"endpoints of {format_label(m)} not preserved")
        for a in S.objects:
            if self.mor_map[S.identity[a]] != T.identity[self.obj_map[a]]:
                bad.append(f"identity of {format_label(a)} not preserved")
        for (g, f), h in S.comp.items():
            if T.comp.get((self.mor_map[g], self.mor_map[f])) != self.mor_map[h]:
                bad.append(f"composite ({format_label(g)},{format_label(f)}) not preserved")
        return bad

    def check(self) -> "Functor":
        bad = self.violations()
        if bad:
            raise FunctorError("; ".join(bad[:5]))
        return self

    def then(self, other: "Functor") -> "Functor":
        return Functor(
            self.source,
            other.target,
            {a: other.obj_map[b] for a, b in self.obj_map.items()},
            {m: other.mor_map[n] for m, n in self.mor_map.items()},
        )


def identity_functor(A: Category) -> Functor:
    return Functor(A, A, {a: a for a in A.objects}, {m: m for m in A.morphisms})


def constant_functor(A: Category, B: Category, b) -> Functor:
    return Functor(A, B, {a: b for a in A.objects}, {m: B.identity[b] for m in A.morphisms})


def object_functor(B: Category, b) -> Functor:
    """The functor terminal() -> B picking ``b``."""
    return constant_functor(terminal(), B, b)


class SetValuedFunctor:
    """A functor ``source -> FinSet``."""

    def __init__(self, source: Category, on_objects: Mapping, on_morphisms: Mapping):
        self.source = source
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)

    def at(self, a) -> FinSet:
        return self.on_objects[a]

    def on(self, m) -> FinFn:
        return self.on_morphisms[m]

    def violations(self) -> list[str]:
        A = self.source
        bad = []
        for a in A.objects:
            if not isinstance(self.on_objects.get(a), FinSet):
                bad.append(f"no set at {format_label(a)}")
        for m in A.morphisms:
            fm = self.on_morphisms.get(m)
            if not isinstance(fm, FinFn):
                bad.append(f"no map at {format_label(m)}")
            elif not bad and (fm.dom != self.on_objects[A.src[m]] or fm.cod != self.on_objects[A.tgt[m]]):
                bad.append(f"map at {format_label(m)} has the wrong type")
        if bad:
            return bad
        for a in A.objects:
            if self.on_morphisms[A.identity[a]] != FinFn.identity(self.on_objects[a]):
                bad.append(f"identity at {format_label(a)} not sent to an identity")
        for (g, f), h in A.comp.items():
            Fg, Ff, Fh = self.on_morphisms[g], self.on_morphisms[f], self.on_morphisms[h]
            if any(Fg(Ff(x)) != Fh(x) for x in Ff.dom):
                bad.append(f"composite ({format_label(g)},{format_label(f)}) not preserved")
        return bad

    def check(self) -> "SetValuedFunctor":
        bad = self.violations()
        if bad:
            raise FunctorError("; ".join(bad[:5]))
        return self

    def pullback(self, G: Functor) -> "SetValuedFunctor":
        """The composite self∘G."""
        return SetValuedFunctor(
            G.source,
            {a: self.on_objects[G.obj_map[a]] for a in G.source.objects},
            {m: self.on_morphisms[G.mor_map[m]] for m in G.source.morphisms},
        )

    def __eq__(self, other):
        return (
            isinstance(other, SetValuedFunctor)
            and self.source == other.source
            and self.on_objects == other.on_objects
            and self.on_morphisms == other.on_morphisms
        )

    __hash__ = None


def constant_set_functor(A: Category, X: FinSet) -> SetValuedFunctor:
    ident = FinFn.identity(X)
    return SetValuedFunctor(A, {a: X for a in A.objects}, {m: ident for m in A.morphisms})


class NatTransf:
    def __init__(self, source: SetValuedFunctor, target: SetValuedFunctor, components: Mapping):
        if source.source != target.source:
            raise FunctorError("natural transformation between functors on different categories")
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, a) -> FinFn:
        return self.components[a]

    def violations(self) -> list[str]:
        A = self.source.source
        bad = []
        for a in A.objects:
            c = self.components.get(a)
            if not isinstance(c, FinFn) or c.dom != self.source.at(a) or c.cod != self.target.at(a):
                bad.append(f"component at {format_label(a)} has the wrong type")
        if bad:
            return bad
        for m in A.morphisms:
            a, b = A.src[m], A.tgt[m]
            Fm, Gm = self.source.on(m), self.target.on(m)
            if any(self.components[b](Fm(x)) != Gm(self.components[a](x)) for x in Fm.dom):
                bad.append(f"naturality square at {format_label(m)} does not commute")
        return bad

    def is_natural(self) -> bool:
        return not self.violations()

    def check(self) -> "NatTransf":
        bad = self.violations()
        if bad:
            raise FunctorError("; ".join(bad[:5]))
        return self

    def then(self, other: "NatTransf") -> "NatTransf":
        """Vertical composite other∘self."""
        return NatTransf(
            self.source,
            other.target,
            {a: other.components[a] @ self.components[a] for a in self.components},
        )

    @property
    def label(self):
        A = self.source.source
        return tuple(self.components[a].label for a in A.objects)

    @classmethod
    def from_label(cls, F: SetValuedFunctor, G: SetValuedFunctor, label) -> "NatTransf":
        A = F.source
        return cls(F, G, {a: FinFn.from_label(F.at(a), G.at(a), lab) for a, lab in zip(A.objects, label)})

    @classmethod
    def identity(cls, F: SetValuedFunctor) -> "NatTransf":
        return cls(F, F, {a: FinFn.identity(F.at(a)) for a in F.source.objects})


def _search_order(A: Category) -> list:
    """Objects ordered so that each one is linked to as many earlier ones as possible."""
    remaining = list(A.objects)
    order: list = []
    placed = set()
    links = {a: 0 for a in remaining}
    while remaining:
        best = max(remaining, key=lambda a: (links[a], -A.objects.index(a)))
        remaining.remove(best)
        order.append(best)
        placed.add(best)
        for m in A.out_of(best):
            links[A.tgt[m]] += 1
        for m in A.into(best):
            links[A.src[m]] += 1
    return order


def iter_natural_transformations(
    F: SetValuedFunctor, G: SetValuedFunctor, rng: random.Random | None = None
) -> Iterator[NatTransf]:
    """Enumerate Nat(F, G) by backtracking over components.

    With ``rng`` the candidate order is shuffled, so the first result is a
    random natural transformation.
    """
    A = F.source
    if A != G.source:
        raise FunctorError("functors have different source categories")
    order = _search_order(A)
    pos = {a: i for i, a in enumerate(order)}
    # constraints[a]: morphisms linking a to objects placed no later than a
    constraints = {a: [] for a in order}
    for m in A.morphisms:
        s, t = A.src[m], A.tgt[m]
        constraints[order[max(pos[s], pos[t])]].append(m)
    chosen: dict = {}

    def candidates(a):
        X, Y = F.at(a), G.at(a)
        ys = list(Y.elements)
        if not X:
            yield {}
            return
        if not ys:
            return
        # assign elements one by one, pruning with squares that touch only a
        xs = list(X.elements)
        partial: dict = {}

        def consistent():
            comp = chosen
            for m in constraints[a]:
                s, t = A.src[m], A.tgt[m]
                Fm, Gm = F.on(m), G.on(m)
                for x in Fm.dom:
                    if s == a and x not in partial:
                        continue
                    src_val = partial[x] if s == a else comp[s][x]
                    fx = Fm(x)
                    if t == a:
                        if fx not in partial:
                            continue
                        tgt_val = partial[fx]
                    else:
                        tgt_val = comp[t][fx]
                    if tgt_val != Gm(src_val):
                        return False
            return True

        def go(i):
            if i == len(xs):
                yield dict(partial)
                return
            opts = ys[:]
            if rng is not None:
                rng.shuffle(opts)
            for y in opts:
                partial[xs[i]] = y
                if consistent():
                    yield from go(i + 1)
                del partial[xs[i]]

        yield from go(0)

    def go(i):
        if i == len(order):
            yield NatTransf(F, G, {a: FinFn(F.at(a), G.at(a), chosen[a]) for a in A.objects})
            return
        a = order[i]
        for comp_map in candidates(a):
            chosen[a] = comp_map
            yield from go(i + 1)
            del chosen[a]

    yield from go(0)


def natural_transformations(F: SetValuedFunctor, G: SetValuedFunctor) -> FinSet:
    """All natural transformations F => G, as labels (see :meth:`NatTransf.from_label`)."""
    return FinSet(a.label for a in iter_natural_transformations(F, G))


def random_natural_transformation(F, G, rng: random.Random) -> NatTransf | None:
    return next(iter_natural_transformations(F, G, rng), None)


# -- comma categories and elements ------------------------------------------------


class Comma:
    """The comma category (G ↓ H) with its two projections."""

    def __init__(self, category: Category, left: Functor, right: Functor):
        self.category = category
        self.left = left
        self.right = right


def comma_category(G: Functor, H: Functor) -> Comma:
    """Objects ``(a, b, h)`` with ``h: G a -> H b``; a morphism
    ``(a,b,h) -> (a',b',h')`` is ``(source, u, v, target)`` with
    ``H(v)∘h = h'∘G(u)``."""
    if G.target != H.target:
        raise FunctorError("comma category of functors with different targets")
    A, B, C = G.source, H.source, G.target
    objects = [
        (a, b, h)
        for a in A.objects
        for b in B.objects
        for h in C.hom(G.obj_map[a], H.obj_map[b])
    ]
    by_ab: dict = {}
    for o in objects:
        by_ab.setdefault((o[0], o[1]), []).append(o)
    morphisms = []
    for o in objects:
        a, b, h = o
        for u in A.out_of(a):
            for v in B.out_of(b):
                lhs = C.comp[(H.mor_map[v], h)]
                for o2 in by_ab.get((A.tgt[u], B.tgt[v]), ()):
                    if C.comp[(o2[2], G.mor_map[u])] == lhs:
                        morphisms.append((o, u, v, o2))
    src = {m: m[0] for m in morphisms}
    tgt = {m: m[3] for m in morphisms}
    identity = {o: (o, A.identity[o[0]], B.identity[o[1]], o) for o in objects}
    outgoing: dict = {o: [] for o in objects}
    for m in morphisms:
        outgoing[m[0]].append(m)
    comp = {}
    for f in morphisms:
        for g in outgoing[f[3]]:
            comp[(g, f)] = (f[0], A.comp[(g[1], f[1])], B.comp[(g[2], f[2])], g[3])
    K = Category(objects, morphisms, src, tgt, identity, comp)
    left = Functor(K, A, {o: o[0] for o in objects}, {m: m[1] for m in morphisms})
    right = Functor(K, B, {o: o[1] for o in objects}, {m: m[2] for m in morphisms})
    return Comma(K, left, right)


def slice_category(A: Category, x) -> Comma:
    """A_{/x}: arrows into x."""
    return comma_category(identity_functor(A), object_functor(A, x))


def coslice_category(A: Category, x) -> Comma:
    """A_{x/}: arrows out of x."""
    return comma_category(object_functor(A, x), identity_functor(A))


def initial_objects(A: Category) -> list:
    return [a for a in A.objects if all(len(A.hom(a, b)) == 1 for b in A.objects)]


def terminal_objects(A: Category) -> list:
    return [b for b in A.objects if all(len(A.hom(a, b)) == 1 for a in A.objects)]


def grothendieck(F: SetValuedFunctor) -> tuple[Category, Functor]:
    """Category of elements of F and its projection (a discrete opfibration)."""
    A = F.source
    objects = [(a, x) for a in A.objects for x in F.at(a)]
    morphisms = [((A.src[m], x), m) for m in A.morphisms for x in F.at(A.src[m])]
    src = {mm: mm[0] for mm in morphisms}
    tgt = {mm: (A.tgt[mm[1]], F.on(mm[1])(mm[0][1])) for mm in morphisms}
    identity = {o: (o, A.identity[o[0]]) for o in objects}
    comp = {}
    for f in morphisms:
        b, y = tgt[f]
        for g in A.out_of(b):
            comp[(((b, y), g), f)] = (f[0], A.comp[(g, f[1])])
    E = Category(objects, morphisms, src, tgt, identity, comp)
    proj = Functor(E, A, {o: o[0] for o in objects}, {mm: mm[1] for mm in morphisms})
    return E, proj


def connected_components(A: Category) -> dict:
    """Map each object to the least object of its connected component."""
    from .finset import UnionFind

    uf = UnionFind(A.objects)
    for m in A.morphisms:
        uf.union(A.src[m], A.tgt[m])
    return {a: uf.find(a) for a in A.objects}


def pi0(A: Category) -> FinSet:
    return FinSet(connected_components(A).values())
