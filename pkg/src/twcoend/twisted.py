"""Twisted arrow categories and their projection to A^op × A.

Orientation: there is a morphism ``f -> g`` for every factorization
``f = t∘g∘s``; it is labelled by the composable triple ``(s, g, t)``.
The projection sends ``f: a -> b`` to ``(b, a)`` and ``(s, g, t)`` to
``(t, s)``, so the fibre over ``(b, a)`` is ``Hom(a, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fincat import Category, Functor, product_category, twosided
from .finset import BijectionWitness, FinFn, FinSet, format_label


@dataclass(frozen=True, eq=False)
class TwistedArrowCategory:
    base: Category
    tw: Category
    sigma: Functor


@lru_cache(maxsize=128)
def tw_category(A: Category) -> TwistedArrowCategory:
    objects = list(A.morphisms)
    morphisms = []
    src, tgt = {}, {}
    for g in A.morphisms:
        c, d = A.src[g], A.tgt[g]
        for s in A.into(c):
            gs = A.comp[(g, s)]
            for t in A.out_of(d):
                m = (s, g, t)
                morphisms.append(m)
                src[m] = A.comp[(t, gs)]
                tgt[m] = g
    identity = {f: (A.identity[A.src[f]], f, A.identity[A.tgt[f]]) for f in objects}
    out: dict = {f: [] for f in objects}
    for m in morphisms:
        out[src[m]].append(m)
    comp = {}
    for m in morphisms:
        s, g, t = m
        for m2 in out[g]:
            s2, h, t2 = m2
            comp[(m2, m)] = (A.comp[(s2, s)], h, A.comp[(t, t2)])
    tw = Category(objects, morphisms, src, tgt, identity, comp)
    base2 = twosided(A)
    sigma = Functor(
        tw,
        base2,
        {f: (A.tgt[f], A.src[f]) for f in objects},
        {m: (m[2], m[0]) for m in morphisms},
    )
    return TwistedArrowCategory(A, tw, sigma)


def sigma_projection(T: TwistedArrowCategory) -> Functor:
    return T.sigma


def tw_fiber(T: TwistedArrowCategory, obj) -> FinSet:
    """Objects of Tw over ``(b, a)``; these are exactly the arrows a -> b."""
    return FinSet(f for f in T.tw.objects if T.sigma.obj_map[f] == obj)


@dataclass
class FibrationVerdict:
    ok: bool
    counterexample: str = ""

    def __bool__(self):
        return self.ok


def check_discrete_fibration(T: TwistedArrowCategory) -> FibrationVerdict:
    """Every morphism of A^op×A ending at Σ(g) has exactly one lift ending at g."""
    P = T.sigma.target
    lifts: dict = {}
    for m in T.tw.morphisms:
        key = (T.tw.tgt[m], T.sigma.mor_map[m])
        lifts[key] = lifts.get(key, 0) + 1
    for g in T.tw.objects:
        for u in P.into(T.sigma.obj_map[g]):
            n = lifts.get((g, u), 0)
            if n != 1:
                return FibrationVerdict(
                    False, f"{n} lifts of {format_label(u)} ending at {format_label(g)}"
                )
    return FibrationVerdict(True)


def fiber_transport(T: TwistedArrowCategory, u) -> FinFn:
    """Transport along ``u: (b, a) -> (d, c)`` in A^op×A, from the fibre over
    ``(d, c)`` to the fibre over ``(b, a)``: the source of the unique lift."""
    P = T.sigma.target
    start, end = P.src[u], P.tgt[u]
    lift_source = {}
    for m in T.tw.morphisms:
        if T.sigma.mor_map[m] == u:
            lift_source[T.tw.tgt[m]] = T.tw.src[m]
    return FinFn(tw_fiber(T, end), tw_fiber(T, start), lift_source)


@dataclass(frozen=True, eq=False)
class CategoryIso:
    objects: BijectionWitness
    morphisms: BijectionWitness

    def is_functorial(self, A: Category, B: Category) -> bool:
        F = Functor(A, B, dict(self.objects.forward.items()), dict(self.morphisms.forward.items()))
        G = Functor(B, A, dict(self.objects.backward.items()), dict(self.morphisms.backward.items()))
        return not F.violations() and not G.violations()


def tw_product_iso(A: Category, B: Category) -> CategoryIso:
    """Tw(A×B) ≅ Tw(A)×Tw(B), compatible with the two projections.

    Raises ValueError if the comparison is not a functor or does not commute
    with Σ (after the coordinate shuffle of (A×B)^op×(A×B)).
    """
    TAB = tw_category(product_category(A, B))
    TA, TB = tw_category(A), tw_category(B)
    prod = product_category(TA.tw, TB.tw)
    objects = BijectionWitness.from_maps(TAB.tw.objects, prod.objects, lambda fg: fg, lambda fg: fg)

    def fwd(m):
        (s1, s2), (g1, g2), (t1, t2) = m
        return ((s1, g1, t1), (s2, g2, t2))

    def bwd(m):
        (s1, g1, t1), (s2, g2, t2) = m
        return ((s1, s2), (g1, g2), (t1, t2))

    morphisms = BijectionWitness.from_maps(TAB.tw.morphisms, prod.morphisms, fwd, bwd)
    iso = CategoryIso(objects, morphisms)
    if not iso.is_functorial(TAB.tw, prod):
        raise ValueError("Tw(A×B) -> Tw(A)×Tw(B) is not an isomorphism of categories")
    for m in TAB.tw.morphisms:
        (ta, sa) = TA.sigma.mor_map[fwd(m)[0]]
        (tb, sb) = TB.sigma.mor_map[fwd(m)[1]]
        if TAB.sigma.mor_map[m] != ((ta, tb), (sa, sb)):
            raise ValueError(f"projections disagree on {format_label(m)}")
    return iso


def count_composable_triples(A: Category) -> int:
    """Independent count of triples (s, g, t) with t∘g∘s defined."""
    return sum(len(A.into(A.src[g])) * len(A.out_of(A.tgt[g])) for g in A.morphisms)
