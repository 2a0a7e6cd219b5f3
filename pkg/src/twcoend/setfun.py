"""Limits, colimits and pointwise Kan extensions of set-valued functors."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fincat import (
    Category,
    Functor,
    NatTransf,
    SetValuedFunctor,
    comma_category,
    identity_functor,
    object_functor,
    _search_order,
)
from .finset import BijectionWitness, FinFn, FinSet, UnionFind, format_label


@dataclass(eq=False)
class Limit:
    """Compatible families, encoded as tuples in the canonical object order."""

    shape: Category
    apex: FinSet
    projections: dict

    def component(self, family, j):
        return family[self.shape.objects.index(j)]

    def factor(self, cone: dict, T: FinSet) -> FinFn:
        """The unique map T -> apex through which ``cone`` (j -> FinFn T -> F(j)) factors."""
        return FinFn(T, self.apex, lambda t: tuple(cone[j](t) for j in self.shape.objects))


@dataclass(eq=False)
class Colimit:
    """Quotient of ``∐_j F(j)``; each class is labelled by its least ``(j, x)``."""

    shape: Category
    apex: FinSet
    injections: dict
    classes: dict = field(default_factory=dict)

    def cls(self, j, x):
        return self.injections[j](x)

    def factor(self, cocone: dict, T: FinSet) -> FinFn:
        """The map apex -> T induced by a cocone (j -> FinFn F(j) -> T).

        Raises ValueError if the cocone is not constant on some class.
        """
        out = {}
        for rep, members in self.classes.items():
            values = {cocone[j](x) for j, x in members}
            if len(values) != 1:
                raise ValueError(f"cocone is not constant on the class of {format_label(rep)}")
            out[rep] = values.pop()
        return FinFn(self.apex, T, out)


def limit(F: SetValuedFunctor) -> Limit:
    J = F.source
    order = _search_order(J)
    pos = {j: i for i, j in enumerate(order)}
    checks = {j: [] for j in order}
    for u in J.morphisms:
        s, t = J.src[u], J.tgt[u]
        checks[order[max(pos[s], pos[t])]].append((u, s, t))
    families = []
    chosen: dict = {}

    def go(i):
        if i == len(order):
            families.append(tuple(chosen[j] for j in J.objects))
            return
        j = order[i]
        cands = None
        for u, s, t in checks[j]:
            if t == j and s != j:
                forced = F.on(u)(chosen[s])
                cands = [forced] if cands is None or forced in cands else []
        if cands is None:
            cands = list(F.at(j))
        for x in cands:
            chosen[j] = x
            ok = True
            for u, s, t in checks[j]:
                if F.on(u)(chosen[s]) != chosen[t]:
                    ok = False
                    break
            if ok:
                go(i + 1)
        chosen.pop(j, None)

    go(0)
    apex = FinSet(families)
    projections = {
        j: FinFn(apex, F.at(j), lambda fam, k=k: fam[k]) for k, j in enumerate(J.objects)
    }
    return Limit(J, apex, projections)


def colimit(F: SetValuedFunctor) -> Colimit:
    J = F.source
    uf = UnionFind((j, x) for j in J.objects for x in F.at(j))
    for u in J.morphisms:
        s, t = J.src[u], J.tgt[u]
        Fu = F.on(u)
        for x in Fu.dom:
            uf.union((s, x), (t, Fu(x)))
    classes = uf.classes()
    apex = FinSet(classes)
    injections = {
        j: FinFn(F.at(j), apex, lambda x, j=j: uf.find((j, x))) for j in J.objects
    }
    return Colimit(J, apex, injections, classes)


# -- Kan extensions -------------------------------------------------------------


def ran_pointwise(G: Functor, H: SetValuedFunctor) -> SetValuedFunctor:
    """(Ran_G H)(b) = lim over (b ↓ G) of H∘proj."""
    B = G.target
    commas = {}
    limits = {}
    for b in B.objects:
        K = comma_category(object_functor(B, b), G)
        commas[b] = K
        limits[b] = limit(H.pullback(K.right))
    on_morphisms = {}
    for u in B.morphisms:
        b, b2 = B.src[u], B.tgt[u]
        src_objs = commas[b].category.objects
        tgt_objs = commas[b2].category.objects

        def act(fam, u=u, src_objs=src_objs, tgt_objs=tgt_objs):
            # component at (*, a, h': b2 -> G a) is the component at (*, a, h'∘u)
            return tuple(fam[src_objs.index((o[0], o[1], B.comp[(o[2], u)]))] for o in tgt_objs)

        on_morphisms[u] = FinFn(limits[b].apex, limits[b2].apex, act)
    return SetValuedFunctor(B, {b: limits[b].apex for b in B.objects}, on_morphisms)


def lan_pointwise(G: Functor, H: SetValuedFunctor) -> SetValuedFunctor:
    """(Lan_G H)(b) = colim over (G ↓ b) of H∘proj."""
    B = G.target
    colimits = {}
    for b in B.objects:
        K = comma_category(G, object_functor(B, b))
        colimits[b] = colimit(H.pullback(K.left))
    on_morphisms = {}
    for u in B.morphisms:
        b, b2 = B.src[u], B.tgt[u]
        src_col, tgt_col = colimits[b], colimits[b2]

        def act(rep, u=u, tgt_col=tgt_col):
            (a, star, h), x = rep
            return tgt_col.cls((a, star, B.comp[(u, h)]), x)

        on_morphisms[u] = FinFn(src_col.apex, tgt_col.apex, act)
        for rep, members in src_col.classes.items():
            images = {act(m) for m in members}
            if len(images) != 1:
                raise ValueError(f"Lan action of {format_label(u)} depends on the representative")
    return SetValuedFunctor(B, {b: colimits[b].apex for b in B.objects}, on_morphisms)


def ran_identity_iso(H: SetValuedFunctor) -> NatTransf:
    """The natural isomorphism Ran_id H => H (evaluation at the identity)."""
    A = H.source
    R = ran_pointwise(identity_functor(A), H)
    comps = {}
    for a in A.objects:
        objs = comma_category(object_functor(A, a), identity_functor(A)).category.objects
        k = objs.index((0, a, A.identity[a]))
        comps[a] = FinFn(R.at(a), H.at(a), lambda fam, k=k: fam[k])
    return NatTransf(R, H, comps)


def lan_identity_iso(H: SetValuedFunctor) -> NatTransf:
    """The natural isomorphism H => Lan_id H (inclusion at the identity)."""
    A = H.source
    L = lan_pointwise(identity_functor(A), H)
    comps = {}
    for a in A.objects:
        K = comma_category(identity_functor(A), object_functor(A, a))
        col = colimit(H.pullback(K.left))
        comps[a] = FinFn(H.at(a), L.at(a), lambda x, a=a, col=col: col.cls((a, 0, A.identity[a]), x))
    return NatTransf(H, L, comps)


def ran_adjunction(P: SetValuedFunctor, G: Functor, H: SetValuedFunctor) -> BijectionWitness:
    """Nat(P∘G, H) ≅ Nat(P, Ran_G H), with both sides enumerated."""
    from .fincat import iter_natural_transformations

    A, B = G.source, G.target
    R = ran_pointwise(G, H)
    PG = P.pullback(G)
    commas = {b: comma_category(object_functor(B, b), G).category.objects for b in B.objects}
    left = {a.label: a for a in iter_natural_transformations(PG, H)}
    right = {b.label: b for b in iter_natural_transformations(P, R)}

    def fwd(label):
        alpha = left[label]
        comps = {
            b: FinFn(P.at(b), R.at(b), lambda p, b=b: tuple(alpha[o[1]](P.on(o[2])(p)) for o in commas[b]))
            for b in B.objects
        }
        return NatTransf(P, R, comps).label

    def bwd(label):
        beta = right[label]
        comps = {}
        for a in A.objects:
            k = commas[G.obj_map[a]].index((0, a, B.identity[G.obj_map[a]]))
            comps[a] = FinFn(PG.at(a), H.at(a), lambda p, a=a, k=k: beta[G.obj_map[a]](p)[k])
        return NatTransf(PG, H, comps).label

    return BijectionWitness.from_maps(FinSet(left), FinSet(right), fwd, bwd)


def lan_adjunction(H: SetValuedFunctor, G: Functor, P: SetValuedFunctor) -> BijectionWitness:
    """Nat(Lan_G H, P) ≅ Nat(H, P∘G), with both sides enumerated."""
    from .fincat import iter_natural_transformations

    A, B = G.source, G.target
    L = lan_pointwise(G, H)
    PG = P.pullback(G)
    cols = {}
    for b in B.objects:
        K = comma_category(G, object_functor(B, b))
        cols[b] = colimit(H.pullback(K.left))
    left = {a.label: a for a in iter_natural_transformations(L, P)}
    right = {b.label: b for b in iter_natural_transformations(H, PG)}

    def fwd(label):
        alpha = left[label]
        comps = {
            a: FinFn(
                H.at(a),
                PG.at(a),
                lambda x, a=a: alpha[G.obj_map[a]](cols[G.obj_map[a]].cls((a, 0, B.identity[G.obj_map[a]]), x)),
            )
            for a in A.objects
        }
        return NatTransf(H, PG, comps).label

    def bwd(label):
        beta = right[label]

        def comp_at(b):
            def f(rep):
                (a, _, h), x = rep
                return P.on(h)(beta[a](x))

            return FinFn(L.at(b), P.at(b), f)

        return NatTransf(L, P, {b: comp_at(b) for b in B.objects}).label

    return BijectionWitness.from_maps(FinSet(left), FinSet(right), fwd, bwd)


# -- random functors ------------------------------------------------------------------


def quotient_functor(F: SetValuedFunctor, pairs) -> tuple[SetValuedFunctor, NatTransf]:
    """Smallest quotient of F identifying each ``(j, x, y)``, with the projection."""
    J = F.source
    uf = UnionFind((j, x) for j in J.objects for x in F.at(j))
    pending = [((j, x), (j, y)) for j, x, y in pairs]
    while pending:
        p, q = pending.pop()
        if uf.union(p, q):
            j = p[0]
            for u in J.out_of(j):
                Fu = F.on(u)
                pending.append(((J.tgt[u], Fu(p[1])), (J.tgt[u], Fu(q[1]))))
    # class labels: the least element of each class
    sets = {j: FinSet(uf.find((j, x))[1] for x in F.at(j)) for j in J.objects}
    maps = {
        u: FinFn(sets[J.src[u]], sets[J.tgt[u]], lambda x, u=u: uf.find((J.tgt[u], F.on(u)(x)))[1])
        for u in J.morphisms
    }
    Q = SetValuedFunctor(J, sets, maps)
    proj = NatTransf(F, Q, {j: FinFn(F.at(j), sets[j], lambda x, j=j: uf.find((j, x))[1]) for j in J.objects})
    return Q, proj


def free_functor(J: Category, generators) -> SetValuedFunctor:
    """∐ Hom(j_i, -) over the listed generator objects."""
    sets = {
        k: FinSet((i, h) for i, j in enumerate(generators) for h in J.hom(j, k)) for k in J.objects
    }
    maps = {
        u: FinFn(sets[J.src[u]], sets[J.tgt[u]], lambda e, u=u: (e[0], J.comp[(u, e[1])]))
        for u in J.morphisms
    }
    return SetValuedFunctor(J, sets, maps)


_NAMES = "abcdefghijklmnopqrstuvwxyz"


def relabel(F: SetValuedFunctor) -> SetValuedFunctor:
    """Rename the elements of each F(j) to ``a, b, c, ...`` in canonical order."""
    J = F.source
    names = {j: {x: _NAMES[i] for i, x in enumerate(F.at(j))} for j in J.objects}
    sets = {j: FinSet(names[j].values()) for j in J.objects}
    maps = {}
    for u in J.morphisms:
        s, t = J.src[u], J.tgt[u]
        Fu = F.on(u)
        maps[u] = FinFn(sets[s], sets[t], {names[s][x]: names[t][Fu(x)] for x in F.at(s)})
    return SetValuedFunctor(J, sets, maps)


def source_objects(J: Category) -> list:
    """Objects that no other object maps to."""
    return [a for a in J.objects if all(J.src[m] == a for m in J.into(a))]


def random_set_functor(J: Category, rng: random.Random, max_size: int = 3, max_generators: int = 3) -> SetValuedFunctor:
    """A random functor J -> FinSet with every value of size at most ``max_size``.

    Built as a random quotient of a free functor on random generators, so it
    is functorial by construction.  Usually every source object carries a
    generator; otherwise objects out of reach of the generators get the
    empty set.
    """
    count = rng.randint(1, max_generators)
    gens = [rng.choice(J.objects.elements) for _ in range(count)]
    if rng.random() < 0.75:
        gens += source_objects(J)
    F = free_functor(J, gens)
    pairs = []
    for j in J.objects:
        elems = list(F.at(j))
        if len(elems) > 1 and rng.random() < 0.3:
            x, y = rng.sample(elems, 2)
            pairs.append((j, x, y))
    F, _ = quotient_functor(F, pairs)
    while True:
        big = [j for j in J.objects if len(F.at(j)) > max_size]
        if not big:
            break
        j = rng.choice(big)
        x, y = rng.sample(list(F.at(j)), 2)
        F, _ = quotient_functor(F, [(j, x, y)])
    return relabel(F)


def random_quotient(F: SetValuedFunctor, rng: random.Random, merges: int = 1) -> tuple[SetValuedFunctor, NatTransf]:
    """A random quotient of F together with the projection F => F/~."""
    J = F.source
    pairs = []
    candidates = [j for j in J.objects if len(F.at(j)) > 1]
    for _ in range(merges):
        if not candidates:
            break
        j = rng.choice(candidates)
        x, y = rng.sample(list(F.at(j)), 2)
        pairs.append((j, x, y))
    return quotient_functor(F, pairs)
