"""Truncated simplicial sets, nerves and edgewise subdivision.

Simplicial operators act contravariantly: for ``alpha: [m] -> [n]`` and an
n-simplex ``x``, ``X.act(alpha, x)`` is an m-simplex.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .fincat import Category
from .finset import BijectionWitness, FinFn, FinSet, format_label


class SimplicialError(ValueError):
    pass


class MonotoneMap:
    """A weakly increasing map ``[m] -> [n]``."""

    __slots__ = ("values", "cod_dim")

    def __init__(self, values: Iterable[int], cod_dim: int):
        values = tuple(values)
        if not values:
            raise SimplicialError("a monotone map needs a nonempty domain")
        if any(b < a for a, b in zip(values, values[1:])):
            raise SimplicialError(f"{values} is not weakly increasing")
        if values[0] < 0 or values[-1] > cod_dim:
            raise SimplicialError(f"{values} leaves [0, {cod_dim}]")
        self.values = values
        self.cod_dim = cod_dim

    @property
    def dom_dim(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def after(self, other: "MonotoneMap") -> "MonotoneMap":
        """self∘other."""
        if other.cod_dim != self.dom_dim:
            raise SimplicialError("monotone maps are not composable")
        return MonotoneMap((self.values[j] for j in other.values), self.cod_dim)

    def is_identity(self) -> bool:
        return self.cod_dim == self.dom_dim and self.values == tuple(range(self.cod_dim + 1))

    def __eq__(self, other):
        return isinstance(other, MonotoneMap) and (self.values, self.cod_dim) == (other.values, other.cod_dim)

    def __hash__(self):
        return hash((self.values, self.cod_dim))

    def __repr__(self):
        return f"MonotoneMap({list(self.values)} -> [{self.cod_dim}])"

    @classmethod
    def identity(cls, n: int) -> "MonotoneMap":
        return cls(range(n + 1), n)


def coface(n: int, j: int) -> MonotoneMap:
    """δ_j: [n-1] -> [n], skipping j."""
    return MonotoneMap([i if i < j else i + 1 for i in range(n)], n)


def codegeneracy(n: int, j: int) -> MonotoneMap:
    """σ_j: [n+1] -> [n], hitting j twice."""
    return MonotoneMap([i if i <= j else i - 1 for i in range(n + 2)], n)


@lru_cache(maxsize=None)
def monotone_maps(m: int, n: int) -> tuple[MonotoneMap, ...]:
    return tuple(MonotoneMap(v, n) for v in combinations_with_replacement(range(n + 1), m + 1))


def epsilon(alpha: MonotoneMap) -> MonotoneMap:
    """The join reindexing ``[m]⋆[m]^op -> [n]⋆[n]^op``.

    Positions ``0..m`` carry alpha; positions ``m+1..2m+1`` carry the
    order-reversed copy, so position ``2m+1-i`` goes to ``2n+1-alpha(i)``.
    """
    m, n = alpha.dom_dim, alpha.cod_dim
    head = list(alpha.values)
    tail = [2 * n + 1 - alpha(m - j) for j in range(m + 1)]
    return MonotoneMap(head + tail, 2 * n + 1)


class TruncatedSimplicialSet:
    """Simplices in dimensions ``0..level`` with an operator action.

    Subclasses provide :meth:`act`; the default implementation reduces every
    operator to faces and degeneracies held in ``faces[n][j]`` (an
    n-simplex to its j-th face) and ``degeneracies[n][j]``.
    """

    def __init__(self, simplices: list[FinSet], faces=None, degeneracies=None, name: str = ""):
        self.simplices = list(simplices)
        self.faces = faces
        self.degeneracies = degeneracies
        self.name = name

    @property
    def level(self) -> int:
        return len(self.simplices) - 1

    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def act(self, alpha: MonotoneMap, x):
        # alpha = δ_j∘alpha' when j is missed; alpha = alpha'∘σ_i when i, i+1 collide
        n = alpha.cod_dim
        vals = alpha.values
        image = set(vals)
        for j in range(n + 1):
            if j not in image:
                rest = MonotoneMap([v if v < j else v - 1 for v in vals], n - 1)
                return self.act(rest, self.faces[n][j][x])
        for i in range(len(vals) - 1):
            if vals[i] == vals[i + 1]:
                rest = MonotoneMap(vals[: i + 1] + vals[i + 2 :], n)
                return self.degeneracies[rest.dom_dim][i][self.act(rest, x)]
        return x

    def face(self, n: int, j: int, x):
        return self.act(coface(n, j), x)

    def degeneracy(self, n: int, j: int, x):
        return self.act(codegeneracy(n, j), x)

    def operator_map(self, alpha: MonotoneMap) -> FinFn:
        return FinFn(
            self.simplices[alpha.cod_dim],
            self.simplices[alpha.dom_dim],
            lambda x: self.act(alpha, x),
        )

    def violations(self, max_dim: int | None = None) -> list[str]:
        """Check the action: identities act trivially, and composites of
        faces and degeneracies act as the composite operator."""
        top = self.level if max_dim is None else min(max_dim, self.level)
        bad = []
        gens = {}
        for n in range(top + 1):
            gens[n] = [coface(n, j) for j in range(n + 1)] if n > 0 else []
            if n < top:
                gens[n] += [codegeneracy(n, j) for j in range(n + 1)]
        for n in range(top + 1):
            for x in self.simplices[n]:
                if self.act(MonotoneMap.identity(n), x) != x:
                    bad.append(f"identity moves {format_label(x)}")
        for n in range(top + 1):
            for a in gens[n]:
                m = a.dom_dim
                if m > top:
                    continue
                for x in self.simplices[n]:
                    y = self.act(a, x)
                    if y not in self.simplices[m]:
                        bad.append(f"{a} sends {format_label(x)} outside dimension {m}")
                        continue
                    for b in gens.get(m, []):
                        if b.dom_dim > top:
                            continue
                        if self.act(b, y) != self.act(a.after(b), x):
                            bad.append(f"action of {a.after(b)} is not {b} after {a} on {format_label(x)}")
        return bad


class Nerve(TruncatedSimplicialSet):
    """N(A) truncated at ``level``.

    An n-simplex is a functor ``[n] -> A`` stored as the tuple of its values
    on all pairs ``i <= j`` in lexicographic order.
    """

    def __init__(self, A: Category, level: int):
        self.category = A
        simplices = [[(A.identity[a],) for a in A.objects]]
        for n in range(1, level + 1):
            old = _pair_index(n - 1)
            layer = []
            for x in simplices[-1]:
                last = A.tgt[x[old[(0, n - 1)]]]
                for g in A.out_of(last):
                    entries = {}
                    for (i, j), k in old.items():
                        entries[(i, j)] = x[k]
                    for i in range(n):
                        entries[(i, n)] = A.comp[(g, x[old[(i, n - 1)]])]
                    entries[(n, n)] = A.identity[A.tgt[g]]
                    layer.append(tuple(entries[p] for p in _pairs(n)))
            simplices.append(layer)
        super().__init__([FinSet(s) for s in simplices], name="nerve")

    def act(self, alpha: MonotoneMap, x):
        idx = _pair_index(alpha.cod_dim)
        v = alpha.values
        return tuple(x[idx[(v[i], v[j])]] for i, j in _pairs(alpha.dom_dim))

    def vertex(self, x, i: int):
        n = _dim_of(len(x))
        return self.category.src[x[_pair_index(n)[(i, i)]]]


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple:
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict:
    return {p: k for k, p in enumerate(_pairs(n))}


def _dim_of(length: int) -> int:
    n = 0
    while (n + 1) * (n + 2) // 2 < length:
        n += 1
    return n


def nerve(A: Category, level: int = 3) -> Nerve:
    if level < 0:
        raise SimplicialError("truncation level must be nonnegative")
    return Nerve(A, level)


def chain_count(A: Category, m: int) -> int:
    """Number of composable strings of m morphisms, counted by dynamic programming."""
    if m == 0:
        return len(A.objects)
    ending = {a: len(A.into(a)) for a in A.objects}
    for _ in range(m - 1):
        ending = {b: sum(ending[A.src[g]] for g in A.into(b)) for b in A.objects}
    return sum(ending.values())


class EdgewiseSubdivision(TruncatedSimplicialSet):
    """esd(X): n-simplices are the (2n+1)-simplices of X, reindexed along epsilon."""

    def __init__(self, X: TruncatedSimplicialSet, level: int):
        if X.level < 2 * level + 1:
            raise SimplicialError(
                f"need dimension {2 * level + 1} to subdivide up to level {level}, input has {X.level}"
            )
        self.base = X
        super().__init__([X.simplices[2 * n + 1] for n in range(level + 1)], name="esd")

    def act(self, alpha: MonotoneMap, x):
        return self.base.act(epsilon(alpha), x)


def edgewise_subdivision(X: TruncatedSimplicialSet, level: int = 1) -> EdgewiseSubdivision:
    return EdgewiseSubdivision(X, level)


class ProductSSet(TruncatedSimplicialSet):
    def __init__(self, X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet):
        level = min(X.level, Y.level)
        self.left, self.right = X, Y
        super().__init__(
            [FinSet((x, y) for x in X.simplices[n] for y in Y.simplices[n]) for n in range(level + 1)],
            name="product",
        )

    def act(self, alpha, x):
        return (self.left.act(alpha, x[0]), self.right.act(alpha, x[1]))


def sset_product(X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet) -> ProductSSet:
    return ProductSSet(X, Y)


def tabulated_sset(simplices: list[Iterable], faces: Mapping, degeneracies: Mapping) -> TruncatedSimplicialSet:
    """Build from explicit tables ``faces[(n, j)][x]`` and ``degeneracies[(n, j)][x]``."""
    sets = [FinSet(s) for s in simplices]
    level = len(sets) - 1
    fa = {n: {j: dict(faces[(n, j)]) for j in range(n + 1)} for n in range(1, level + 1)}
    de = {n: {j: dict(degeneracies[(n, j)]) for j in range(n + 1)} for n in range(level)}
    return TruncatedSimplicialSet(sets, fa, de, name="tabulated")


def tabulate(X: TruncatedSimplicialSet) -> tuple[dict, dict]:
    """Face and degeneracy tables of X, keyed by ``(n, j)``."""
    faces, degens = {}, {}
    for n in range(X.level + 1):
        for j in range(n + 1):
            if n > 0:
                faces[(n, j)] = {x: X.act(coface(n, j), x) for x in X.simplices[n]}
            if n < X.level:
                degens[(n, j)] = {x: X.act(codegeneracy(n, j), x) for x in X.simplices[n]}
    return faces, degens


def nondegenerate(X: TruncatedSimplicialSet, n: int) -> list:
    if n == 0:
        return list(X.simplices[0])
    images = {X.act(codegeneracy(n - 1, j), y) for j in range(n) for y in X.simplices[n - 1]}
    return [x for x in X.simplices[n] if x not in images]


# -- isomorphism search --------------------------------------------------------


class IsoResult:
    """Outcome of :func:`sset_iso_check`: per-dimension witnesses or a reason."""

    def __init__(self, witnesses: list[BijectionWitness] | None, reason: str = ""):
        self.witnesses = witnesses
        self.reason = reason

    def __bool__(self):
        return self.witnesses is not None

    def __repr__(self):
        return "IsoResult(ok)" if self else f"IsoResult(failed: {self.reason})"


class _Structure:
    def __init__(self, X: TruncatedSimplicialSet):
        self.level = X.level
        self.elems = [list(s) for s in X.simplices]
        self.offset = []
        total = 0
        for s in self.elems:
            self.offset.append(total)
            total += len(s)
        self.size = total
        self.ident = {}
        for n, s in enumerate(self.elems):
            for i, x in enumerate(s):
                self.ident[(n, x)] = self.offset[n] + i
        faces, degens = tabulate(X)
        # ops: list of (name, [source ids], [target ids])
        self.ops = []
        for (n, j), table in sorted(faces.items()):
            self.ops.append(
                (("d", n, j), [self.ident[(n, x)] for x in self.elems[n]], [self.ident[(n - 1, table[x])] for x in self.elems[n]])
            )
        for (n, j), table in sorted(degens.items()):
            self.ops.append(
                (("s", n, j), [self.ident[(n, x)] for x in self.elems[n]], [self.ident[(n + 1, table[x])] for x in self.elems[n]])
            )
        self.dim_of = [n for n, s in enumerate(self.elems) for _ in s]


def _refine(structs, colors):
    """Jointly refine colorings of several structures until stable."""
    while True:
        sigs = []
        for st, col in zip(structs, colors):
            out = [[c] for c in col]
            incoming = [[] for _ in col]
            for k, (_, srcs, tgts) in enumerate(st.ops):
                for s, t in zip(srcs, tgts):
                    out[s].append(col[t])
                    incoming[t].append((k, col[s]))
            sigs.append([(tuple(o), tuple(sorted(inc))) for o, inc in zip(out, incoming)])
        palette = {sig: i for i, sig in enumerate(sorted({s for sg in sigs for s in sg}))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if all(len(set(n)) == len(set(c)) for n, c in zip(new, colors)):
            return new
        colors = new


def _histogram(col):
    h: dict = {}
    for c in col:
        h[c] = h.get(c, 0) + 1
    return h


def sset_iso_check(X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet, check_all_operators: bool = True) -> IsoResult:
    """Search for a dimension-wise bijection X -> Y commuting with all operators.

    Colour refinement over faces and degeneracies prunes the search;
    individualisation-refinement backtracks over the remaining choices.
    """
    if X.level != Y.level:
        return IsoResult(None, f"truncation levels differ ({X.level} vs {Y.level})")
    for n, (a, b) in enumerate(zip(X.dims(), Y.dims())):
        if a != b:
            return IsoResult(None, f"dimension {n} counts differ ({a} vs {b})")
    sx, sy = _Structure(X), _Structure(Y)
    cx = [st_dim for st_dim in sx.dim_of]
    cy = [st_dim for st_dim in sy.dim_of]
    cx, cy = _refine([sx, sy], [cx, cy])

    def search(cx, cy):
        if _histogram(cx) != _histogram(cy):
            return None
        classes: dict = {}
        for i, c in enumerate(cx):
            classes.setdefault(c, []).append(i)
        open_classes = [c for c, members in classes.items() if len(members) > 1]
        if not open_classes:
            where = {c: j for j, c in enumerate(cy)}
            mapping = [where[c] for c in cx]
            return mapping if _commutes(sx, sy, mapping) else None
        target = min(open_classes, key=lambda c: (len(classes[c]), c))
        x = classes[target][0]
        fresh = max(max(cx), max(cy)) + 1
        for y in [j for j, c in enumerate(cy) if c == target]:
            nx, ny = list(cx), list(cy)
            nx[x] = fresh
            ny[y] = fresh
            nx, ny = _refine([sx, sy], [nx, ny])
            found = search(nx, ny)
            if found is not None:
                return found
        return None

    mapping = search(cx, cy)
    if mapping is None:
        return IsoResult(None, "no isomorphism exists (exhausted search)")
    witnesses = []
    for n in range(X.level + 1):
        fwd = {}
        for i, x in enumerate(sx.elems[n]):
            j = mapping[sx.offset[n] + i]
            fwd[x] = sy.elems[n][j - sy.offset[n]]
        dom, cod = X.simplices[n], Y.simplices[n]
        witnesses.append(BijectionWitness(FinFn(dom, cod, fwd), FinFn(cod, dom, {v: k for k, v in fwd.items()})))
    if check_all_operators and not commutes_with_operators(X, Y, witnesses):
        return IsoResult(None, "candidate bijection fails to commute with an operator")
    return IsoResult(witnesses)


def _commutes(sx, sy, mapping) -> bool:
    for (name, srcs, tgts), (name2, srcs2, tgts2) in zip(sx.ops, sy.ops):
        table = dict(zip(srcs2, tgts2))
        for s, t in zip(srcs, tgts):
            if table[mapping[s]] != mapping[t]:
                return False
    return True


def commutes_with_operators(X, Y, witnesses: list[BijectionWitness]) -> bool:
    """Check ``w_m(X(alpha) x) == Y(alpha) w_n(x)`` for every operator in range."""
    for m in range(X.level + 1):
        for n in range(X.level + 1):
            for alpha in monotone_maps(m, n):
                for x in X.simplices[n]:
                    if witnesses[m](X.act(alpha, x)) != Y.act(alpha, witnesses[n](x)):
                        return False
    return True
