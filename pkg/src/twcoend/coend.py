"""Ends and coends of functors A^op × A -> FinSet.

Two routes are provided.  The twisted-arrow route computes the coend as
the colimit over Tw(A) of ``f: a -> b  ↦  F(b, a)`` and the end as the
limit over Tw(A)^op of ``f: a -> b  ↦  F(a, b)``.  The classical route
uses the (co)wedge condition directly and serves as an oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    Category,
    Functor,
    NatTransf,
    SetValuedFunctor,
    comma_category,
    connected_components,
    constant_set_functor,
    iter_natural_transformations,
    object_functor,
    opposite,
    pi0,
    twosided,
)
from .finset import (
    BijectionWitness,
    FinFn,
    FinSet,
    decode_map,
    encode_map,
    format_label,
    hom_set,
    product,
)
from .setfun import Colimit, Limit, colimit, lan_pointwise, limit, ran_pointwise
from .twisted import tw_category


class CoendError(ValueError):
    pass


def _check_source(A: Category, F: SetValuedFunctor):
    if F.source != twosided(A):
        raise CoendError("functor is not defined on the canonical A^op × A")


def hom_functor(A: Category) -> SetValuedFunctor:
    """Hom(c, c') on A^op × A; ``(u, v)`` acts by ``h ↦ v∘h∘u``."""
    P = twosided(A)
    sets = {(c, c2): A.hom(c, c2) for c, c2 in P.objects}
    maps = {}
    for m in P.morphisms:
        u, v = m
        (c, c2), (d, d2) = P.src[m], P.tgt[m]
        maps[m] = FinFn(sets[(c, c2)], sets[(d, d2)], lambda h, u=u, v=v: A.compose(v, h, u))
    return SetValuedFunctor(P, sets, maps)


def tw_diagram(A: Category, F: SetValuedFunctor) -> SetValuedFunctor:
    """F∘Σ on Tw(A): ``f: a -> b`` goes to F(b, a), ``(s, g, t)`` to F(t, s)."""
    T = tw_category(A)
    return F.pullback(T.sigma)


def tw_op_diagram(A: Category, F: SetValuedFunctor) -> SetValuedFunctor:
    """The end diagram on Tw(A)^op: ``f: a -> b`` goes to F(a, b), ``(s, g, t)`` to F(s, t)."""
    T = tw_category(A)
    J = opposite(T.tw)
    return SetValuedFunctor(
        J,
        {f: F.at((A.src[f], A.tgt[f])) for f in J.objects},
        {m: F.on((m[0], m[2])) for m in J.morphisms},
    )


def coend_tw(A: Category, F: SetValuedFunctor) -> Colimit:
    _check_source(A, F)
    return colimit(tw_diagram(A, F))


def end_tw(A: Category, F: SetValuedFunctor) -> Limit:
    _check_source(A, F)
    return limit(tw_op_diagram(A, F))


def coend_classical(A: Category, F: SetValuedFunctor) -> Colimit:
    """Coequalizer of ∐_{u: c->c'} F(c', c) ⇒ ∐_c F(c, c).

    Injections are indexed by the objects c of A.
    """
    from .finset import UnionFind

    _check_source(A, F)
    uf = UnionFind((c, x) for c in A.objects for x in F.at((c, c)))
    for u in A.morphisms:
        c, c2 = A.src[u], A.tgt[u]
        left = F.on((u, A.identity[c]))  # F(c', c) -> F(c, c)
        right = F.on((A.identity[c2], u))  # F(c', c) -> F(c', c')
        for x in F.at((c2, c)):
            uf.union((c, left(x)), (c2, right(x)))
    classes = uf.classes()
    apex = FinSet(classes)
    injections = {
        c: FinFn(F.at((c, c)), apex, lambda x, c=c: uf.find((c, x))) for c in A.objects
    }
    return Colimit(A, apex, injections, classes)


def end_classical(A: Category, F: SetValuedFunctor) -> Limit:
    """Families (x_c ∈ F(c, c)) with F(id, u)(x_c) = F(u, id)(x_c') for all u: c -> c'."""
    _check_source(A, F)
    objs = list(A.objects)
    families = []
    chosen = {}

    def wedge_ok():
        for u in A.morphisms:
            c, c2 = A.src[u], A.tgt[u]
            if c in chosen and c2 in chosen:
                if F.on((A.identity[c], u))(chosen[c]) != F.on((u, A.identity[c2]))(chosen[c2]):
                    return False
        return True

    def go(i):
        if i == len(objs):
            families.append(tuple(chosen[c] for c in objs))
            return
        c = objs[i]
        for x in F.at((c, c)):
            chosen[c] = x
            if wedge_ok():
                go(i + 1)
            del chosen[c]

    go(0)
    apex = FinSet(families)
    projections = {c: FinFn(apex, F.at((c, c)), lambda fam, k=k: fam[k]) for k, c in enumerate(objs)}
    return Limit(A, apex, projections)


def _on_classes(col: Colimit, cod: FinSet, fn, what: str) -> FinFn:
    """Map defined on representatives; every member of a class must agree."""
    out = {}
    for rep, members in col.classes.items():
        images = {fn(j, x) for j, x in members}
        if len(images) != 1:
            raise CoendError(f"{what} depends on the representative of {format_label(rep)}")
        out[rep] = images.pop()
    return FinFn(col.apex, cod, out)


def coend_route_witness(A: Category, F: SetValuedFunctor) -> BijectionWitness:
    """Bijection between the twisted-arrow coend and the classical one."""
    tw = coend_tw(A, F)
    cl = coend_classical(A, F)
    # (f: a -> b, x ∈ F(b, a)) goes to F(f, id_a)(x) ∈ F(a, a)
    fwd = _on_classes(
        tw, cl.apex, lambda f, x: cl.cls(A.src[f], F.on((f, A.identity[A.src[f]]))(x)), "tw -> classical"
    )
    bwd = _on_classes(cl, tw.apex, lambda c, x: tw.cls(A.identity[c], x), "classical -> tw")
    return BijectionWitness(fwd, bwd)


def end_route_witness(A: Category, F: SetValuedFunctor) -> BijectionWitness:
    """Bijection between the twisted-arrow end and the classical one."""
    tw = end_tw(A, F)
    cl = end_classical(A, F)
    ids = [A.identity[c] for c in A.objects]
    fwd = FinFn(tw.apex, cl.apex, lambda fam: tuple(tw.component(fam, i) for i in ids))

    def bwd(fam):
        x = dict(zip(A.objects, fam))
        return tuple(F.on((A.identity[A.src[f]], f))(x[A.src[f]]) for f in tw.shape.objects)

    return BijectionWitness(fwd, FinFn(cl.apex, tw.apex, bwd))


# -- functoriality -----------------------------------------------------------------


def induced_map_on_coend(A: Category, alpha: NatTransf, source: Colimit | None = None, target: Colimit | None = None) -> FinFn:
    """∫^A F -> ∫^A F' induced by alpha: F => F'; checked on every class member."""
    F, G = alpha.source, alpha.target
    src = source or coend_tw(A, F)
    tgt = target or coend_tw(A, G)
    sigma = tw_category(A).sigma
    return _on_classes(
        src, tgt.apex, lambda f, x: tgt.cls(f, alpha[sigma.obj_map[f]](x)), "induced map"
    )


def induced_map_on_end(A: Category, alpha: NatTransf, source: Limit | None = None, target: Limit | None = None) -> FinFn:
    F, G = alpha.source, alpha.target
    src = source or end_tw(A, F)
    tgt = target or end_tw(A, G)
    objs = src.shape.objects
    return FinFn(
        src.apex,
        tgt.apex,
        lambda fam: tuple(alpha[(A.src[f], A.tgt[f])](x) for f, x in zip(objs, fam)),
    )


# -- adjoints --------------------------------------------------------------------------


def right_adjoint_R(A: Category, D: FinSet) -> SetValuedFunctor:
    """R D(c, c') = D^{Hom(c', c)}; ``(u, v)`` acts by ``φ ↦ (h ↦ φ(u∘h∘v))``."""
    P = twosided(A)
    sets = {(c, c2): hom_set(A.hom(c2, c), D) for c, c2 in P.objects}
    maps = {}
    for m in P.morphisms:
        u, v = m
        (c, c2), (d, d2) = P.src[m], P.tgt[m]
        homs = A.hom(d2, d)

        def act(phi, u=u, v=v, homs=homs):
            p = decode_map(phi)
            return encode_map((h, p[A.compose(u, h, v)]) for h in homs)

        maps[m] = FinFn(sets[(c, c2)], sets[(d, d2)], act)
    return SetValuedFunctor(P, sets, maps)


def left_adjoint_L(A: Category, D: FinSet) -> SetValuedFunctor:
    """L D(c, c') = Hom(c, c') × D; ``(u, v)`` acts by ``(h, x) ↦ (v∘h∘u, x)``."""
    P = twosided(A)
    sets = {(c, c2): product(A.hom(c, c2), D).apex for c, c2 in P.objects}
    maps = {}
    for m in P.morphisms:
        u, v = m
        maps[m] = FinFn(
            sets[P.src[m]], sets[P.tgt[m]], lambda p, u=u, v=v: (A.compose(v, p[0], u), p[1])
        )
    return SetValuedFunctor(P, sets, maps)


@dataclass
class AdjunctionReport:
    coend: BijectionWitness  # hom_set(∫^A F, D) -> Nat(F, R D)
    end: BijectionWitness  # hom_set(D, ∫_A F) -> Nat(L D, F)


def coend_adjunction(A: Category, F: SetValuedFunctor, D: FinSet) -> BijectionWitness:
    """Set(∫^A F, D) ≅ Nat(F, R D), as explicit mutually inverse maps."""
    co = coend_tw(A, F)
    R = right_adjoint_R(A, D)
    nats = {a.label: a for a in iter_natural_transformations(F, R)}
    P = twosided(A)

    def fwd(phi_label):
        phi = decode_map(phi_label)
        # x ∈ F(c, c') and h: c' -> c is an object of Tw over (c, c')
        comps = {
            (c, c2): FinFn(
                F.at((c, c2)),
                R.at((c, c2)),
                lambda x, c=c, c2=c2: encode_map((h, phi[co.cls(h, x)]) for h in A.hom(c2, c)),
            )
            for c, c2 in P.objects
        }
        alpha = NatTransf(F, R, comps)
        if alpha.label not in nats:
            raise CoendError(f"map {format_label(phi_label)} does not give a natural transformation")
        return alpha.label

    def bwd(alpha_label):
        alpha = nats[alpha_label]
        out = _on_classes(
            co,
            D,
            lambda f, x: decode_map(alpha[(A.tgt[f], A.src[f])](x))[f],
            "adjunct of a natural transformation",
        )
        return out.label

    return BijectionWitness.from_maps(hom_set(co.apex, D), FinSet(nats), fwd, bwd)


def end_adjunction(A: Category, F: SetValuedFunctor, D: FinSet) -> BijectionWitness:
    """Set(D, ∫_A F) ≅ Nat(L D, F)."""
    en = end_tw(A, F)
    L = left_adjoint_L(A, D)
    nats = {a.label: a for a in iter_natural_transformations(L, F)}
    P = twosided(A)

    def fwd(psi_label):
        psi = decode_map(psi_label)
        comps = {
            (c, c2): FinFn(L.at((c, c2)), F.at((c, c2)), lambda p: en.component(psi[p[1]], p[0]))
            for c, c2 in P.objects
        }
        alpha = NatTransf(L, F, comps)
        if alpha.label not in nats:
            raise CoendError(f"map {format_label(psi_label)} does not give a natural transformation")
        return alpha.label

    def bwd(alpha_label):
        alpha = nats[alpha_label]
        objs = en.shape.objects

        def family(d):
            return tuple(alpha[(A.src[f], A.tgt[f])]((f, d)) for f in objs)

        fam = {d: family(d) for d in D}
        for d, v in fam.items():
            if v not in en.apex:
                raise CoendError(f"family at {format_label(d)} is not a wedge")
        return encode_map(fam.items())

    return BijectionWitness.from_maps(hom_set(D, en.apex), FinSet(nats), fwd, bwd)


def adjunction_check(A: Category, F: SetValuedFunctor, D: FinSet) -> AdjunctionReport:
    """Both adjunctions of the co/end functors at (F, D); raises on any failure."""
    _check_source(A, F)
    return AdjunctionReport(coend_adjunction(A, F, D), end_adjunction(A, F, D))


# -- the adjoints as Kan extensions along Σ ------------------------------------------


def _check_natural(components: dict, S: SetValuedFunctor, T: SetValuedFunctor):
    bad = NatTransf(S, T, {k: w.forward for k, w in components.items()}).violations()
    if bad:
        raise CoendError(bad[0])


def ran_sigma_const_compare(A: Category, D: FinSet) -> dict:
    """Natural isomorphism Ran_Σ(const D) ≅ R D, one witness per object of A^op×A.

    The family over the comma category ((c, c') ↓ Σ) at the object
    ``(g, (u, v))`` is read off as φ(u∘g∘v), which also checks that π0 of
    each comma category is the hom-set Hom(c', c).
    """
    T = tw_category(A)
    Ran = ran_pointwise(T.sigma, constant_set_functor(T.tw, D))
    R = right_adjoint_R(A, D)
    witnesses = {}
    for c, c2 in twosided(A).objects:
        K = comma_category(object_functor(T.sigma.target, (c, c2)), T.sigma).category
        if len(pi0(K)) != len(A.hom(c2, c)):
            raise CoendError(f"components of the comma category at {format_label((c, c2))} != |Hom|")
        objs = K.objects
        k_of = {h: objs.index((0, h, (A.identity[c], A.identity[c2]))) for h in A.hom(c2, c)}

        def fwd(phi, objs=objs):
            p = decode_map(phi)
            return tuple(p[A.compose(o[2][0], o[1], o[2][1])] for o in objs)

        def bwd(fam, k_of=k_of):
            return encode_map((h, fam[k]) for h, k in k_of.items())

        witnesses[(c, c2)] = BijectionWitness.from_maps(R.at((c, c2)), Ran.at((c, c2)), fwd, bwd)
    _check_natural(witnesses, R, Ran)
    return witnesses


def lan_sigma_const_compare(A: Category, D: FinSet) -> dict:
    """Natural isomorphism L D ≅ Lan_Σ'(const D) for the end diagram's projection."""
    T = tw_category(A)
    J = opposite(T.tw)
    P = twosided(A)
    sigma_op = Functor(
        J, P, {f: (A.src[f], A.tgt[f]) for f in J.objects}, {m: (m[0], m[2]) for m in J.morphisms}
    )
    Lan = lan_pointwise(sigma_op, constant_set_functor(J, D))
    L = left_adjoint_L(A, D)
    witnesses = {}
    for c, c2 in P.objects:
        K = comma_category(sigma_op, object_functor(P, (c, c2)))
        col = colimit(constant_set_functor(J, D).pullback(K.left))

        def fwd(p, col=col, c=c, c2=c2):
            h, d = p
            return col.cls((h, 0, (A.identity[c], A.identity[c2])), d)

        def bwd(rep):
            (f, _, (u, v)), d = rep
            return (A.compose(v, f, u), d)

        witnesses[(c, c2)] = BijectionWitness(
            FinFn(L.at((c, c2)), Lan.at((c, c2)), fwd),
            _on_classes(col, L.at((c, c2)), lambda j, d: bwd((j, d)), "Lan comparison"),
        )
    _check_natural(witnesses, L, Lan)
    return witnesses


# -- sanity identities ---------------------------------------------------------------


def identity_endotransformations(A: Category) -> FinSet:
    """Nat(Id_A, Id_A) as families (x_c: c -> c) in object order, by direct search."""
    objs = list(A.objects)
    out = []

    def go(i, chosen):
        if i == len(objs):
            out.append(tuple(chosen))
            return
        c = objs[i]
        for x in A.hom(c, c):
            fam = dict(zip(objs, chosen + [x]))
            if all(
                A.comp[(u, fam[A.src[u]])] == A.comp[(fam[A.tgt[u]], u)]
                for u in A.morphisms
                if A.src[u] in fam and A.tgt[u] in fam
            ):
                go(i + 1, chosen + [x])

    go(0, [])
    return FinSet(out)


def hom_end_witness(A: Category) -> BijectionWitness:
    """∫_A Hom ≅ Nat(Id, Id): keep the components at identities."""
    en = end_tw(A, hom_functor(A))
    nats = identity_endotransformations(A)
    ids = [A.identity[c] for c in A.objects]

    def bwd(fam):
        x = dict(zip(A.objects, fam))
        return tuple(A.comp[(f, x[A.src[f]])] for f in en.shape.objects)

    return BijectionWitness.from_maps(
        en.apex, nats, lambda fam: tuple(en.component(fam, i) for i in ids), bwd
    )


def yoneda_functor(A: Category, G: SetValuedFunctor, a) -> SetValuedFunctor:
    """(c, c') ↦ Set(Hom(a, c), G(c')); ``(u, v)`` acts by ``φ ↦ G(v)∘φ∘(u∘-)``."""
    P = twosided(A)
    sets = {(c, c2): hom_set(A.hom(a, c), G.at(c2)) for c, c2 in P.objects}
    maps = {}
    for m in P.morphisms:
        u, v = m
        (d, d2) = P.tgt[m]

        def act(phi, u=u, v=v, d=d):
            p = decode_map(phi)
            return encode_map((h, G.on(v)(p[A.comp[(u, h)]])) for h in A.hom(a, d))

        maps[m] = FinFn(sets[P.src[m]], sets[P.tgt[m]], act)
    return SetValuedFunctor(P, sets, maps)


def coyoneda_functor(A: Category, G: SetValuedFunctor, a) -> SetValuedFunctor:
    """(c, c') ↦ Hom(c, a) × G(c'); ``(u, v)`` acts by ``(h, x) ↦ (h∘u, G(v)(x))``."""
    P = twosided(A)
    sets = {(c, c2): product(A.hom(c, a), G.at(c2)).apex for c, c2 in P.objects}
    maps = {
        m: FinFn(
            sets[P.src[m]], sets[P.tgt[m]], lambda p, u=m[0], v=m[1]: (A.comp[(p[0], u)], G.on(v)(p[1]))
        )
        for m in P.morphisms
    }
    return SetValuedFunctor(P, sets, maps)


def yoneda_witness(A: Category, G: SetValuedFunctor, a) -> BijectionWitness:
    """∫_c Set(Hom(a, c), G(c)) ≅ G(a): evaluate at the identity of a."""
    Y = yoneda_functor(A, G, a)
    en = end_tw(A, Y)
    ida = A.identity[a]

    def bwd(y):
        return tuple(
            encode_map((h, G.on(A.comp[(f, h)])(y)) for h in A.hom(a, A.src[f])) for f in en.shape.objects
        )

    return BijectionWitness.from_maps(en.apex, G.at(a), lambda fam: decode_map(en.component(fam, ida))[ida], bwd)


def coyoneda_witness(A: Category, G: SetValuedFunctor, a) -> BijectionWitness:
    """∫^c Hom(c, a) × G(c) ≅ G(a): act on the element by the arrow."""
    co = coend_tw(A, coyoneda_functor(A, G, a))
    fwd = _on_classes(co, G.at(a), lambda f, p: G.on(A.comp[(p[0], f)])(p[1]), "co-Yoneda map")
    ida = A.identity[a]
    bwd = FinFn(G.at(a), co.apex, lambda y: co.cls(ida, (ida, y)))
    return BijectionWitness(fwd, bwd)


def constant_coend_witness(A: Category) -> BijectionWitness:
    """∫^A {*} ≅ π0(A), sending a class to the component of its arrows."""
    co = coend_tw(A, constant_set_functor(twosided(A), FinSet(["*"])))
    comp = connected_components(A)
    fwd = _on_classes(co, pi0(A), lambda f, x: comp[A.src[f]], "component map")
    bwd = FinFn(pi0(A), co.apex, lambda r: co.cls(A.identity[r], "*"))
    return BijectionWitness(fwd, bwd)
