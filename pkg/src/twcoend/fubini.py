"""Iterated co/ends over C × E and the comparison with the co/end over the product.

A four-variable functor lives on ``C^op × C × E^op × E`` with objects
``(c, c', e, e')``.  The product route reindexes it to
``(C×E)^op × (C×E)``; the iterated routes integrate one pair of variables
at a time, in either order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coend import (
    CoendError,
    _on_classes,
    coend_tw,
    end_tw,
    induced_map_on_coend,
    induced_map_on_end,
    right_adjoint_R,
)
from .fincat import (
    Category,
    FunctorError,
    NatTransf,
    SetValuedFunctor,
    opposite,
    product_category,
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
from .setfun import Colimit, Limit, colimit
from .twisted import tw_category, tw_product_iso


def fourfold(C: Category, E: Category) -> Category:
    return product_category(opposite(C), C, opposite(E), E)


@dataclass(eq=False)
class FourVariableFunctor:
    catC: Category
    catE: Category
    inner: SetValuedFunctor

    def __post_init__(self):
        if self.inner.source != fourfold(self.catC, self.catE):
            raise FunctorError("functor is not defined on C^op × C × E^op × E")

    def at(self, c, c2, e, e2) -> FinSet:
        return self.inner.at((c, c2, e, e2))

    def on(self, u, v, w, z) -> FinFn:
        return self.inner.on((u, v, w, z))


def hom_four(C: Category, E: Category) -> FourVariableFunctor:
    """Hom_{C×E} pulled back along the product decomposition."""
    P = fourfold(C, E)
    sets = {o: product(C.hom(o[0], o[1]), E.hom(o[2], o[3])).apex for o in P.objects}
    maps = {}
    for m in P.morphisms:
        u, v, w, z = m
        maps[m] = FinFn(
            sets[P.src[m]],
            sets[P.tgt[m]],
            lambda hk, u=u, v=v, w=w, z=z: (C.compose(v, hk[0], u), E.compose(z, hk[1], w)),
        )
    return FourVariableFunctor(C, E, SetValuedFunctor(P, sets, maps))


def constant_four(C: Category, E: Category, X: FinSet) -> FourVariableFunctor:
    P = fourfold(C, E)
    ident = FinFn.identity(X)
    return FourVariableFunctor(C, E, SetValuedFunctor(P, {o: X for o in P.objects}, {m: ident for m in P.morphisms}))


# -- slicing the four variables ---------------------------------------------------


def _place(order: str, outer, inner):
    """Arrange (outer pair, inner pair) as (c, c', e, e')."""
    if order == "CE":
        return (outer[0], outer[1], inner[0], inner[1])
    return (inner[0], inner[1], outer[0], outer[1])


def _cats(F: FourVariableFunctor, order: str):
    if order == "CE":
        return F.catC, F.catE
    if order == "EC":
        return F.catE, F.catC
    raise ValueError(f"order must be 'CE' or 'EC', not {order!r}")


def inner_functor(F: FourVariableFunctor, order: str, outer_obj) -> SetValuedFunctor:
    """Fix the outer pair of variables at ``outer_obj``."""
    X, Y = _cats(F, order)
    PY = twosided(Y)
    ido = (X.identity[outer_obj[0]], X.identity[outer_obj[1]])
    return SetValuedFunctor(
        PY,
        {o: F.inner.at(_place(order, outer_obj, o)) for o in PY.objects},
        {m: F.inner.on(_place(order, ido, m)) for m in PY.morphisms},
    )


def _outer_action(F, order, outer_morphism, ido_inner):
    return F.inner.on(_place(order, outer_morphism, ido_inner))


@dataclass(eq=False)
class Iterated:
    """Result of an iterated co/end: the inner results, the induced outer
    functor, and the outer result."""

    order: str
    inner: dict
    outer_functor: SetValuedFunctor
    outer: Colimit | Limit

    @property
    def apex(self) -> FinSet:
        return self.outer.apex


def iterated_coend(F: FourVariableFunctor, order: str = "CE") -> Iterated:
    X, Y = _cats(F, order)
    PX = twosided(X)
    inner = {o: coend_tw(Y, inner_functor(F, order, o)) for o in PX.objects}
    maps = {}
    for m in PX.morphisms:
        s, t = PX.src[m], PX.tgt[m]
        src_col, tgt_col = inner[s], inner[t]

        def act(g, x, m=m, tgt_col=tgt_col):
            ido = (Y.identity[Y.tgt[g]], Y.identity[Y.src[g]])
            return tgt_col.cls(g, _outer_action(F, order, m, ido)(x))

        maps[m] = _on_classes(src_col, tgt_col.apex, act, f"outer action of {format_label(m)}")
    Q = SetValuedFunctor(PX, {o: inner[o].apex for o in PX.objects}, maps)
    return Iterated(order, inner, Q, coend_tw(X, Q))


def iterated_end(F: FourVariableFunctor, order: str = "CE") -> Iterated:
    X, Y = _cats(F, order)
    PX = twosided(X)
    inner = {o: end_tw(Y, inner_functor(F, order, o)) for o in PX.objects}
    maps = {}
    for m in PX.morphisms:
        s, t = PX.src[m], PX.tgt[m]
        objs = inner[s].shape.objects

        def act(fam, m=m, objs=objs):
            return tuple(
                _outer_action(F, order, m, (Y.identity[Y.src[g]], Y.identity[Y.tgt[g]]))(x)
                for g, x in zip(objs, fam)
            )

        maps[m] = FinFn(inner[s].apex, inner[t].apex, act)
    Q = SetValuedFunctor(PX, {o: inner[o].apex for o in PX.objects}, maps)
    return Iterated(order, inner, Q, end_tw(X, Q))


def reindex_to_product(F: FourVariableFunctor) -> SetValuedFunctor:
    """Transport F along (C×E)^op × (C×E) ≅ C^op × C × E^op × E."""
    C, E = F.catC, F.catE
    P = twosided(product_category(C, E))
    return SetValuedFunctor(
        P,
        {o: F.inner.at((o[0][0], o[1][0], o[0][1], o[1][1])) for o in P.objects},
        {m: F.inner.on((m[0][0], m[1][0], m[0][1], m[1][1])) for m in P.morphisms},
    )


def product_coend(F: FourVariableFunctor, cross_check: bool = True) -> Colimit:
    CE = product_category(F.catC, F.catE)
    G = reindex_to_product(F)
    result = coend_tw(CE, G)
    if cross_check:
        # same colimit computed over Tw(C) × Tw(E); class labels coincide
        iso = tw_product_iso(F.catC, F.catE)
        TC, TE = tw_category(F.catC), tw_category(F.catE)
        J = product_category(TC.tw, TE.tw)
        TCE = tw_category(CE)
        diagram = G.pullback(TCE.sigma)
        moved = SetValuedFunctor(
            J,
            {o: diagram.at(iso.objects.backward(o)) for o in J.objects},
            {m: diagram.on(iso.morphisms.backward(m)) for m in J.morphisms},
        )
        if colimit(moved).apex != result.apex:
            raise CoendError("coend over Tw(C×E) and over Tw(C)×Tw(E) disagree")
    return result


def product_end(F: FourVariableFunctor) -> Limit:
    return end_tw(product_category(F.catC, F.catE), reindex_to_product(F))


# -- comparison -----------------------------------------------------------------------


@dataclass
class FubiniReport:
    ok: bool
    sizes: tuple = ()
    to_ce: BijectionWitness | None = None
    to_ec: BijectionWitness | None = None
    failure: str = ""
    naturality_checked: int = 0
    adjoint_checked: int = 0
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def coend_comparison(F: FourVariableFunctor, P: Colimit, it: Iterated) -> BijectionWitness:
    """∫^{(C,E)} F ≅ iterated coend, built from the colimit universal property.

    A product class of ``((f, g), x)`` goes to the outer class of
    ``(f, inner class of (g, x))`` (roles of f and g swap for order EC).
    Both directions are checked for independence of representatives.
    """
    swap = it.order == "EC"

    def fwd(fg, x):
        f, g = fg
        outer_arrow, inner_arrow = (g, f) if swap else (f, g)
        X, _ = _cats(F, it.order)
        outer_obj = (X.tgt[outer_arrow], X.src[outer_arrow])
        return it.outer.cls(outer_arrow, it.inner[outer_obj].cls(inner_arrow, x))

    forward = _on_classes(P, it.apex, fwd, "product -> iterated")
    back = {}
    X, _ = _cats(F, it.order)
    for rep, members in it.outer.classes.items():
        images = set()
        for outer_arrow, q in members:
            outer_obj = (X.tgt[outer_arrow], X.src[outer_arrow])
            for inner_arrow, x in it.inner[outer_obj].classes[q]:
                fg = (inner_arrow, outer_arrow) if swap else (outer_arrow, inner_arrow)
                images.add(P.cls(fg, x))
        if len(images) != 1:
            raise CoendError(f"iterated -> product depends on the representative of {format_label(rep)}")
        back[rep] = images.pop()
    return BijectionWitness(forward, FinFn(it.apex, P.apex, back))


def end_comparison(F: FourVariableFunctor, P: Limit, it: Iterated) -> BijectionWitness:
    """∫_{(C,E)} F ≅ iterated end by reindexing families."""
    swap = it.order == "EC"
    outer_objs = it.outer.shape.objects
    X, _ = _cats(F, it.order)

    def fwd(fam):
        def inner_family(a):
            obj = (X.src[a], X.tgt[a])
            objs = it.inner[obj].shape.objects
            return tuple(P.component(fam, (b, a) if swap else (a, b)) for b in objs)

        return tuple(inner_family(a) for a in outer_objs)

    def bwd(fam):
        def value(fg):
            a, b = (fg[1], fg[0]) if swap else fg
            obj = (X.src[a], X.tgt[a])
            inner_fam = it.outer.component(fam, a)
            return it.inner[obj].component(inner_fam, b)

        return tuple(value(fg) for fg in P.shape.objects)

    return BijectionWitness.from_maps(P.apex, it.apex, fwd, bwd)


def induced_on_iterated(F: FourVariableFunctor, G: FourVariableFunctor, alpha: NatTransf, itF: Iterated, itG: Iterated, kind: str) -> FinFn:
    """Map between iterated co/ends induced by alpha: F => G."""
    order = itF.order
    X, Y = _cats(F, order)
    PX = twosided(X)
    inner_maps = {}
    for o in PX.objects:
        Fi, Gi = inner_functor(F, order, o), inner_functor(G, order, o)
        comps = {p: alpha[_place(order, o, p)] for p in Fi.source.objects}
        a = NatTransf(Fi, Gi, comps)
        if kind == "coend":
            inner_maps[o] = induced_map_on_coend(Y, a, itF.inner[o], itG.inner[o])
        else:
            inner_maps[o] = induced_map_on_end(Y, a, itF.inner[o], itG.inner[o])
    outer_alpha = NatTransf(itF.outer_functor, itG.outer_functor, inner_maps)
    bad = outer_alpha.violations()
    if bad:
        raise CoendError(f"inner induced maps are not natural: {bad[0]}")
    if kind == "coend":
        return induced_map_on_coend(X, outer_alpha, itF.outer, itG.outer)
    return induced_map_on_end(X, outer_alpha, itF.outer, itG.outer)


def induced_on_product(F: FourVariableFunctor, G: FourVariableFunctor, alpha: NatTransf, PF, PG, kind: str) -> FinFn:
    CE = product_category(F.catC, F.catE)
    RF, RG = reindex_to_product(F), reindex_to_product(G)
    comps = {o: alpha[(o[0][0], o[1][0], o[0][1], o[1][1])] for o in RF.source.objects}
    a = NatTransf(RF, RG, comps)
    if kind == "coend":
        return induced_map_on_coend(CE, a, PF, PG)
    return induced_map_on_end(CE, a, PF, PG)


def _compute(F: FourVariableFunctor, kind: str):
    if kind == "coend":
        P = product_coend(F)
        ce, ec = iterated_coend(F, "CE"), iterated_coend(F, "EC")
        return P, ce, ec, coend_comparison(F, P, ce), coend_comparison(F, P, ec)
    P = product_end(F)
    ce, ec = iterated_end(F, "CE"), iterated_end(F, "EC")
    return P, ce, ec, end_comparison(F, P, ce), end_comparison(F, P, ec)


def fubini_check(
    F: FourVariableFunctor,
    kind: str = "coend",
    transformations: list[tuple[FourVariableFunctor, NatTransf]] = (),
    adjoint_sizes: tuple[int, ...] = (),
) -> FubiniReport:
    """Compare the product co/end with both iterated co/ends.

    ``transformations`` lists pairs ``(G, alpha: F => G)`` whose induced
    maps must commute with the comparisons.  For each size in
    ``adjoint_sizes`` the right adjoints of the three coend functors are
    compared through the exponential collapse.
    """
    try:
        P, ce, ec, to_ce, to_ec = _compute(F, kind)
    except (CoendError, ValueError) as exc:
        return FubiniReport(False, failure=str(exc))
    report = FubiniReport(True, (len(P.apex), len(ce.apex), len(ec.apex)), to_ce, to_ec)
    for G, alpha in transformations:
        try:
            PG, ceG, ecG, to_ceG, to_ecG = _compute(G, kind)
            on_p = induced_on_product(F, G, alpha, P, PG, kind)
            for it_F, it_G, w_F, w_G in ((ce, ceG, to_ce, to_ceG), (ec, ecG, to_ec, to_ecG)):
                on_it = induced_on_iterated(F, G, alpha, it_F, it_G, kind)
                for x in P.apex:
                    if w_G(on_p(x)) != on_it(w_F(x)):
                        report.ok = False
                        report.failure = (
                            f"naturality square for order {it_F.order} fails at {format_label(x)}"
                        )
                        return report
        except (CoendError, ValueError) as exc:
            report.ok = False
            report.failure = str(exc)
            return report
        report.naturality_checked += 1
    for size in adjoint_sizes:
        D = FinSet(f"d{i}" for i in range(size))
        try:
            adjoint_collapse(F.catC, F.catE, D)
        except (CoendError, ValueError) as exc:
            report.ok = False
            report.failure = f"adjoint side, |D|={size}: {exc}"
            return report
        report.adjoint_checked += 1
    return report


# -- the adjoint side ------------------------------------------------------------------


def _exp_nested(outer_homs: FinSet, inner_homs: FinSet, D: FinSet) -> FinSet:
    return hom_set(outer_homs, hom_set(inner_homs, D))


def adjoint_functors(C: Category, E: Category, D: FinSet) -> dict:
    """Right adjoints of the three coend functors at D, as functors on the
    four-fold product.

    ``"CE"``: (c,c',e,e') ↦ (D^{Hom_E(e',e)})^{Hom_C(c',c)};
    ``"EC"``: (c,c',e,e') ↦ (D^{Hom_C(c',c)})^{Hom_E(e',e)};
    ``"product"``: (c,c',e,e') ↦ D^{Hom_{C×E}((c',e'),(c,e))}.
    """
    P4 = fourfold(C, E)
    CE = product_category(C, E)
    RP = right_adjoint_R(CE, D)
    sets_ce, sets_ec, sets_p = {}, {}, {}
    for o in P4.objects:
        c, c2, e, e2 = o
        hc, he = C.hom(c2, c), E.hom(e2, e)
        sets_ce[o] = _exp_nested(hc, he, D)
        sets_ec[o] = _exp_nested(he, hc, D)
        sets_p[o] = RP.at(((c, e), (c2, e2)))
    maps_ce, maps_ec, maps_p = {}, {}, {}
    for m in P4.morphisms:
        u, v, w, z = m
        (c, c2, e, e2), (d, d2, f, f2) = P4.src[m], P4.tgt[m]
        hc_new, he_new = C.hom(d2, d), E.hom(f2, f)

        def act_ce(phi, u=u, v=v, w=w, z=z, hc_new=hc_new, he_new=he_new):
            p = decode_map(phi)
            return encode_map(
                (h, encode_map((k, decode_map(p[C.compose(u, h, v)])[E.compose(w, k, z)]) for k in he_new))
                for h in hc_new
            )

        def act_ec(psi, u=u, v=v, w=w, z=z, hc_new=hc_new, he_new=he_new):
            p = decode_map(psi)
            return encode_map(
                (k, encode_map((h, decode_map(p[E.compose(w, k, z)])[C.compose(u, h, v)]) for h in hc_new))
                for k in he_new
            )

        maps_ce[m] = FinFn(sets_ce[P4.src[m]], sets_ce[P4.tgt[m]], act_ce)
        maps_ec[m] = FinFn(sets_ec[P4.src[m]], sets_ec[P4.tgt[m]], act_ec)
        maps_p[m] = RP.on(((u, w), (v, z)))
    return {
        "CE": SetValuedFunctor(P4, sets_ce, maps_ce),
        "EC": SetValuedFunctor(P4, sets_ec, maps_ec),
        "product": SetValuedFunctor(P4, sets_p, maps_p),
    }


def adjoint_collapse(C: Category, E: Category, D: FinSet) -> dict:
    """Natural isomorphisms (D^{Hom_E})^{Hom_C} ≅ D^{Hom_C×Hom_E} ≅ D^{Hom_{C×E}}
    and likewise for the EC nesting, one witness per object; raises on failure."""
    from .finset import curry

    R = adjoint_functors(C, E, D)
    out = {"CE": {}, "EC": {}}
    for o in R["product"].source.objects:
        c, c2, e, e2 = o
        hc, he = C.hom(c2, c), E.hom(e2, e)
        # D^{Hom_C × Hom_E} and D^{Hom_{C×E}} have the same labels: pairs (h, k)
        out["CE"][o] = curry(hc, he, D).inverse()
        out["EC"][o] = curry(he, hc, D).inverse().then(
            BijectionWitness.from_maps(
                hom_set(product(he, hc).apex, D),
                hom_set(product(hc, he).apex, D),
                lambda lab: encode_map(((h, k), d) for (k, h), d in decode_map(lab).items()),
                lambda lab: encode_map(((k, h), d) for (h, k), d in decode_map(lab).items()),
            )
        )
    for key in ("CE", "EC"):
        if any(w.cod != R["product"].at(o) for o, w in out[key].items()):
            raise CoendError(f"{key} collapse does not land in the product adjoint")
        bad = NatTransf(R[key], R["product"], {o: w.forward for o, w in out[key].items()}).violations()
        if bad:
            raise CoendError(f"{key} collapse is not natural: {bad[0]}")
    return out


# -- random instances -----------------------------------------------------------------


def random_instance(rng: random.Random, max_objects: int = 3, max_size: int = 2) -> FourVariableFunctor:
    from .fincat import random_poset
    from .setfun import random_set_functor

    C = random_poset(rng.randint(1, max_objects), rng.random())
    E = random_poset(rng.randint(1, max_objects), rng.random())
    F = random_set_functor(fourfold(C, E), rng, max_size=max_size)
    return FourVariableFunctor(C, E, F)


def random_transformation(F: FourVariableFunctor, rng: random.Random) -> tuple[FourVariableFunctor, NatTransf]:
    from .setfun import random_quotient

    Q, alpha = random_quotient(F.inner, rng, merges=rng.randint(0, 2))
    return FourVariableFunctor(F.catC, F.catE, Q), alpha
