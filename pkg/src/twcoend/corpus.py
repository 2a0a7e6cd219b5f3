"""Deterministic test corpus: small posets up to isomorphism, small monoids,
and free categories on small acyclic multigraphs."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .fincat import Category, cyclic_monoid, free_category, idempotent_monoid, poset_category


def _is_partial_order(n: int, rel: frozenset) -> bool:
    for a, b in rel:
        if (b, a) in rel:
            return False
        for c in range(n):
            if (b, c) in rel and (a, c) not in rel:
                return False
    return True


def _canonical(n: int, rel) -> tuple:
    return min(tuple(sorted((p[a], p[b]) for a, b in rel)) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def posets_up_to_iso(n: int) -> tuple[tuple, ...]:
    """Strict order relations on ``0..n-1``, one per isomorphism class."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not _is_partial_order(n, rel):
            continue
        key = _canonical(n, rel)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return tuple(sorted(out, key=lambda r: (len(r), r)))


def poset_corpus(max_elements: int = 4) -> list[tuple[str, Category]]:
    out = []
    for n in range(1, max_elements + 1):
        for i, rel in enumerate(posets_up_to_iso(n)):
            out.append((f"poset{n}_{i}", poset_category(range(n), rel)))
    return out


def monoid_corpus() -> list[tuple[str, Category]]:
    return [("Z2", cyclic_monoid(2)), ("Z3", cyclic_monoid(3)), ("idem", idempotent_monoid())]


def _path_count(n: int, mult: dict) -> int:
    # paths in a DAG whose edges go from lower to higher vertex
    count = n
    ways = {(i, i): 1 for i in range(n)}
    for length in range(1, n):
        for i in range(n - length):
            j = i + length
            ways[(i, j)] = sum(ways[(i, k)] * mult.get((k, j), 0) for k in range(i, j))
            count += ways[(i, j)]
    return count


def _graph_key(n: int, mult: dict) -> tuple:
    best = None
    for p in permutations(range(n)):
        edges = tuple(sorted((p[a], p[b], k) for (a, b), k in mult.items() if k))
        best = edges if best is None or edges < best else best
    return best


def free_corpus(max_vertices: int = 3, max_multiplicity: int = 3, max_morphisms: int = 10) -> list[tuple[str, Category]]:
    """Free categories on acyclic multigraphs that are not posets."""
    out = []
    seen = set()
    for n in range(2, max_vertices + 1):
        slots = list(combinations(range(n), 2))
        for ks in product(range(max_multiplicity + 1), repeat=len(slots)):
            mult = dict(zip(slots, ks))
            if _path_count(n, mult) > max_morphisms:
                continue
            if all(_path_count_between(n, mult, a, b) <= 1 for a, b in slots):
                continue
            key = _graph_key(n, mult)
            if key in seen:
                continue
            seen.add(key)
            edges = [
                (f"e{a}{b}_{i}", a, b) for (a, b), k in sorted(mult.items()) for i in range(k)
            ]
            out.append((f"free{n}_" + "".join(str(k) for k in ks), free_category(range(n), edges)))
    return out


def _path_count_between(n, mult, a, b) -> int:
    ways = {a: 1}
    for j in range(a + 1, b + 1):
        ways[j] = sum(ways.get(k, 0) * mult.get((k, j), 0) for k in range(a, j))
    return ways.get(b, 0)


def full_corpus() -> list[tuple[str, Category]]:
    return poset_corpus() + monoid_corpus() + free_corpus()
