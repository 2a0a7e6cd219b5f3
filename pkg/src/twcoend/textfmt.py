"""Line-oriented text format for categories, set-valued functors and
truncated simplicial sets, with a canonical printer.

Blocks start with ``category``, ``setfunctor`` or ``sset``; indented or
not, the following lines belong to the most recent block.  ``#`` starts a
comment.  Labels are identifiers, integers, or parenthesised tuples.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .fincat import (
    Category,
    CategoryError,
    SetValuedFunctor,
    chain,
    constant_set_functor,
    cyclic_monoid,
    idempotent_monoid,
    opposite,
    product_category,
    terminal,
    twosided,
    validate_category,
    walking_arrow,
)
from .finset import FinFn, FinSet, ShapeError, format_label, label_key
from .simplicial import (
    SimplicialError,
    TruncatedSimplicialSet,
    edgewise_subdivision,
    nerve,
    tabulate,
    tabulated_sset,
)


class InputError(Exception):
    """A diagnostic tied to a source position.

    ``semantic`` separates well-formed input that fails validation from
    input that does not parse at all.
    """

    def __init__(self, message: str, line: int = 0, col: int = 0, token: str = "", semantic: bool = False, path: str = ""):
        self.message = message
        self.line = line
        self.col = col
        self.token = token
        self.semantic = semantic
        self.path = path
        super().__init__(message)

    def __str__(self):
        return self.render()

    def render(self) -> str:
        where = f"{self.path or '<input>'}:{self.line}:{self.col}"
        near = f" (at '{self.token}')" if self.token else ""
        return f"{where}: error: {self.message}{near}"


_TOKEN = re.compile(r"\s*(?:(->)|([:=,{}().])|([A-Za-z0-9_'*^+]+))")


@dataclass
class Token:
    text: str
    line: int
    col: int


def tokenize(line: str, lineno: int) -> list[Token]:
    code = line.split("#", 1)[0].rstrip()
    out = []
    pos = 0
    while pos < len(code):
        if code[pos:].strip() == "":
            break
        m = _TOKEN.match(code, pos)
        if not m or m.end() == pos:
            start = pos + len(code[pos:]) - len(code[pos:].lstrip())
            raise InputError("unexpected character", lineno, start + 1, code[start])
        text = m.group(1) or m.group(2) or m.group(3)
        col = m.start(m.lastindex) + 1
        out.append(Token(text, lineno, col))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[Token], lineno: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def error(self, message: str, tok: Token | None = None) -> InputError:
        tok = tok or self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            col = last.col + len(last.text) if last else 1
            return InputError(message + " before end of line", self.lineno, col, "")
        return InputError(message, tok.line, tok.col, tok.text)

    def next(self, what: str = "token") -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}")
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise self.error(f"expected '{text}'")
        self.i += 1
        return tok

    def ident(self, what: str = "name") -> Token:
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z0-9_'*^+]+", tok.text):
            raise self.error(f"expected {what}")
        self.i += 1
        return tok

    def integer(self, what: str = "integer") -> int:
        tok = self.peek()
        if tok is None or not tok.text.isdigit():
            raise self.error(f"expected {what}")
        self.i += 1
        return int(tok.text)

    def label(self):
        """Parse a label; returns ``(value, first_token)``."""
        tok = self.peek()
        if tok is None:
            raise self.error("expected a label")
        if tok.text == "(":
            self.i += 1
            items = []
            if self.peek() is not None and self.peek().text == ")":
                self.i += 1
                return (), tok
            while True:
                items.append(self.label()[0])
                sep = self.next("',' or ')'")
                if sep.text == ")":
                    return tuple(items), tok
                if sep.text != ",":
                    raise self.error("expected ',' or ')'", sep)
        ident = self.ident("a label")
        return (int(ident.text) if ident.text.isdigit() else ident.text), ident

    def label_set(self) -> list:
        self.expect("{")
        items = []
        if self.peek() is not None and self.peek().text == "}":
            self.i += 1
            return items
        while True:
            items.append(self.label())
            sep = self.next("',' or '}'")
            if sep.text == "}":
                return items
            if sep.text != ",":
                raise self.error("expected ',' or '}'", sep)

    def assignment_set(self) -> list:
        """``{x->y, ...}`` as a list of ``((x, tok), (y, tok))``."""
        self.expect("{")
        items = []
        if self.peek() is not None and self.peek().text == "}":
            self.i += 1
            return items
        while True:
            x = self.label()
            self.expect("->")
            y = self.label()
            items.append((x, y))
            sep = self.next("',' or '}'")
            if sep.text == "}":
                return items
            if sep.text != ",":
                raise self.error("expected ',' or '}'", sep)

    def done(self):
        if not self.at_end():
            raise self.error("unexpected trailing input")


# -- the bundle -----------------------------------------------------------------


@dataclass
class Declaration:
    kind: str  # "category" | "setfunctor" | "sset"
    name: str
    derivation: tuple | None  # None for an explicit table
    line: int
    target: tuple = ()  # category words after 'on' for explicit functors


@dataclass
class InputBundle:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    ssets: dict = field(default_factory=dict)
    declarations: list = field(default_factory=list)
    # category name -> ("twosided", A) or ("fourfold", C, E) when known
    shapes: dict = field(default_factory=dict)
    # functor name -> ("twosided", A) | ("fourfold", C, E) | ("plain", CAT)
    functor_shapes: dict = field(default_factory=dict)

    def names(self) -> set:
        return set(self.categories) | set(self.functors) | set(self.ssets)


_BLOCKS = ("category", "setfunctor", "sset")


def _identity_label(obj) -> str:
    return "id_" + format_label(obj)


def parse_text(text: str, path: str = "") -> InputBundle:
    try:
        return _Parser(text).run()
    except InputError as exc:
        exc.path = path
        raise


def parse_input(path: str) -> InputBundle:
    """Read and validate a bundle file; I/O errors propagate as OSError."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, path)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.bundle = InputBundle()

    def run(self) -> InputBundle:
        blocks = []
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            tokens = tokenize(raw, lineno)
            if not tokens:
                continue
            if tokens[0].text in _BLOCKS:
                blocks.append((tokens, []))
            elif not blocks:
                raise InputError("expected 'category', 'setfunctor' or 'sset'", lineno, tokens[0].col, tokens[0].text)
            else:
                blocks[-1][1].append(tokens)
        for head, body in blocks:
            getattr(self, "_" + head[0].text)(head, body)
        return self.bundle

    # -- shared helpers

    def _new_name(self, cur: _Cursor) -> Token:
        tok = cur.ident("a name")
        if tok.text in self.bundle.names():
            raise InputError(f"duplicate name '{tok.text}'", tok.line, tok.col, tok.text, semantic=True)
        return tok

    def _category_ref(self, cur: _Cursor) -> tuple[str, Category]:
        tok = cur.ident("a category name")
        if tok.text not in self.bundle.categories:
            raise InputError(f"unknown category '{tok.text}'", tok.line, tok.col, tok.text, semantic=True)
        return tok.text, self.bundle.categories[tok.text]

    def _target(self, cur: _Cursor):
        """``NAME`` | ``twosided NAME`` | ``product C E``; returns
        (derivation words, category, shape)."""
        tok = cur.peek()
        if tok is not None and tok.text == "twosided":
            cur.next()
            a, A = self._category_ref(cur)
            return ("twosided", a), twosided(A), ("twosided", a)
        if tok is not None and tok.text == "product":
            cur.next()
            c, C = self._category_ref(cur)
            e, E = self._category_ref(cur)
            from .fubini import fourfold

            return ("product", c, e), fourfold(C, E), ("fourfold", c, e)
        name, A = self._category_ref(cur)
        shape = self.bundle.shapes.get(name, ("plain", name))
        return (name,), A, shape

    def _no_body(self, body, what):
        if body:
            tok = body[0][0]
            raise InputError(f"a derived {what} takes no body lines", tok.line, tok.col, tok.text)

    # -- categories

    def _category(self, head, body):
        cur = _Cursor(head, head[0].line)
        cur.next()
        name = self._new_name(cur)
        if cur.peek() is not None and cur.peek().text == "=":
            cur.next()
            self._no_body(body, "category")
            deriv, A, shape = self._derived_category(cur)
            cur.done()
            self.bundle.categories[name.text] = A
            if shape:
                self.bundle.shapes[name.text] = shape
            self.bundle.declarations.append(Declaration("category", name.text, deriv, name.line))
            return
        cur.done()
        self.bundle.categories[name.text] = self._explicit_category(name, body)
        self.bundle.declarations.append(Declaration("category", name.text, None, name.line))

    def _derived_category(self, cur: _Cursor):
        kind = cur.ident("a construction")
        k = kind.text
        if k in ("chain", "cyclic"):
            n = cur.integer("a size")
            if k == "cyclic" and n < 1:
                raise cur.error("cyclic monoid needs order at least 1")
            return (k, n), chain(n) if k == "chain" else cyclic_monoid(n), None
        if k == "terminal":
            return (k,), terminal(), None
        if k == "arrow":
            return (k,), walking_arrow(), None
        if k == "idempotent":
            return (k,), idempotent_monoid(), None
        if k == "op":
            a, A = self._category_ref(cur)
            return (k, a), opposite(A), None
        if k == "twosided":
            a, A = self._category_ref(cur)
            return (k, a), twosided(A), ("twosided", a)
        if k == "tw":
            from .twisted import tw_category

            a, A = self._category_ref(cur)
            return (k, a), tw_category(A).tw, None
        if k == "fourfold":
            from .fubini import fourfold

            c, C = self._category_ref(cur)
            e, E = self._category_ref(cur)
            return (k, c, e), fourfold(C, E), ("fourfold", c, e)
        if k == "product":
            names, cats = [], []
            while not cur.at_end():
                n, A = self._category_ref(cur)
                names.append(n)
                cats.append(A)
            if len(cats) < 2:
                raise cur.error("product needs at least two categories")
            return (k, *names), product_category(*cats), None
        raise InputError(f"unknown construction '{k}'", kind.line, kind.col, k)

    def _explicit_category(self, name: Token, body) -> Category:
        objects: dict = {}
        morphisms: dict = {}
        src, tgt = {}, {}
        comp = {}
        compose_lines = []
        for tokens in body:
            cur = _Cursor(tokens, tokens[0].line)
            word = cur.next()
            if word.text == "object":
                if cur.at_end():
                    raise cur.error("expected at least one object")
                while not cur.at_end():
                    obj, tok = cur.label()
                    if obj in objects:
                        raise InputError(f"duplicate object '{tok.text}'", tok.line, tok.col, tok.text, semantic=True)
                    objects[obj] = tok
            elif word.text == "morphism":
                m, mtok = cur.label()
                cur.expect(":")
                s, stok = cur.label()
                cur.expect("->")
                t, ttok = cur.label()
                cur.done()
                if isinstance(m, str) and m.startswith("id_"):
                    raise InputError("identities are implicit and must not be declared", mtok.line, mtok.col, mtok.text, semantic=True)
                if m in morphisms:
                    raise InputError(f"duplicate morphism '{format_label(m)}'", mtok.line, mtok.col, mtok.text, semantic=True)
                for o, otok in ((s, stok), (t, ttok)):
                    if o not in objects:
                        raise InputError(f"unknown object '{format_label(o)}'", otok.line, otok.col, otok.text, semantic=True)
                morphisms[m] = mtok
                src[m], tgt[m] = s, t
            elif word.text == "compose":
                g = cur.label()
                cur.expect(".")
                f = cur.label()
                cur.expect("=")
                h = cur.label()
                cur.done()
                compose_lines.append((g, f, h))
            else:
                raise InputError(f"unexpected '{word.text}' in category block", word.line, word.col, word.text)
        identity = {}
        for o, otok in objects.items():
            i = _identity_label(o)
            if i in morphisms:
                tok = morphisms[i]
                raise InputError("identities are implicit and must not be declared", tok.line, tok.col, tok.text, semantic=True)
            identity[o] = i
            src[i] = tgt[i] = o
        all_morphisms = list(morphisms) + list(identity.values())
        known = set(all_morphisms)
        for m in all_morphisms:
            comp[(identity[tgt[m]], m)] = m
            comp[(m, identity[src[m]])] = m
        for (g, gt), (f, ft), (h, ht) in compose_lines:
            for x, xt in ((g, gt), (f, ft), (h, ht)):
                if x not in known:
                    raise InputError(f"unknown morphism '{format_label(x)}'", xt.line, xt.col, xt.text, semantic=True)
            for x, xt in ((g, gt), (f, ft)):
                if x in identity.values():
                    raise InputError("composites with identities are implicit", xt.line, xt.col, xt.text, semantic=True)
            if src[g] != tgt[f]:
                raise InputError(
                    f"'{format_label(g)}' and '{format_label(f)}' are not composable", gt.line, gt.col, gt.text, semantic=True
                )
            if src[h] != src[f] or tgt[h] != tgt[g]:
                raise InputError(f"'{format_label(h)}' has the wrong endpoints for this composite", ht.line, ht.col, ht.text, semantic=True)
            if (g, f) in comp and comp[(g, f)] != h:
                raise InputError("conflicting composite", gt.line, gt.col, gt.text, semantic=True)
            comp[(g, f)] = h
        try:
            return validate_category(list(objects), all_morphisms, src, tgt, identity, comp)
        except CategoryError as exc:
            raise InputError(
                f"category '{name.text}' is invalid: {exc.violations[0]}", name.line, name.col, name.text, semantic=True
            ) from None

    # -- set-valued functors

    def _setfunctor(self, head, body):
        cur = _Cursor(head, head[0].line)
        cur.next()
        name = self._new_name(cur)
        word = cur.next("'on' or '='")
        if word.text == "=":
            self._no_body(body, "functor")
            deriv, F, shape = self._derived_functor(cur)
            cur.done()
        elif word.text == "on":
            target_words, A, shape = self._target(cur)
            cur.done()
            F = self._explicit_functor(name, A, body)
            self.bundle.declarations.append(Declaration("setfunctor", name.text, None, name.line, target_words))
            self.bundle.functors[name.text] = F
            self.bundle.functor_shapes[name.text] = shape
            return
        else:
            raise cur.error("expected 'on' or '='", word)
        self.bundle.functors[name.text] = F
        self.bundle.functor_shapes[name.text] = shape
        self.bundle.declarations.append(Declaration("setfunctor", name.text, deriv, name.line))

    def _derived_functor(self, cur: _Cursor):
        kind = cur.ident("a construction")
        if kind.text == "hom":
            a, A = self._category_ref(cur)
            if cur.at_end():
                from .coend import hom_functor

                return ("hom", a), hom_functor(A), ("twosided", a)
            e, E = self._category_ref(cur)
            from .fubini import hom_four

            return ("hom", a, e), hom_four(A, E).inner, ("fourfold", a, e)
        if kind.text == "const":
            target_words, A, shape = self._target(cur)
            items = cur.label_set()
            X = FinSet(x for x, _ in items)
            return ("const", *target_words, tuple(X.elements)), constant_set_functor(A, X), shape
        raise InputError(f"unknown construction '{kind.text}'", kind.line, kind.col, kind.text)

    def _explicit_functor(self, name: Token, A: Category, body) -> SetValuedFunctor:
        sets: dict = {}
        maps: dict = {}
        for tokens in body:
            cur = _Cursor(tokens, tokens[0].line)
            word = cur.next()
            if word.text == "at":
                o, otok = cur.label()
                cur.expect("=")
                items = cur.label_set()
                cur.done()
                if o not in A.objects:
                    raise InputError(f"unknown object '{format_label(o)}'", otok.line, otok.col, otok.text, semantic=True)
                if o in sets:
                    raise InputError(f"value at '{format_label(o)}' given twice", otok.line, otok.col, otok.text, semantic=True)
                sets[o] = (FinSet(x for x, _ in items), otok)
            elif word.text == "on":
                m, mtok = cur.label()
                cur.expect("=")
                pairs = cur.assignment_set()
                cur.done()
                if m not in A.src:
                    raise InputError(f"unknown morphism '{format_label(m)}'", mtok.line, mtok.col, mtok.text, semantic=True)
                if A.is_identity(m):
                    raise InputError("identities act trivially and must not be declared", mtok.line, mtok.col, mtok.text, semantic=True)
                if m in maps:
                    raise InputError(f"action of '{format_label(m)}' given twice", mtok.line, mtok.col, mtok.text, semantic=True)
                maps[m] = (pairs, mtok)
            else:
                raise InputError(f"unexpected '{word.text}' in setfunctor block", word.line, word.col, word.text)
        for o in A.objects:
            if o not in sets:
                raise InputError(f"no value given at object '{format_label(o)}'", name.line, name.col, name.text, semantic=True)
        out = {}
        for m in A.morphisms:
            X, Y = sets[A.src[m]][0], sets[A.tgt[m]][0]
            if A.is_identity(m):
                out[m] = FinFn.identity(X)
                continue
            if m not in maps:
                raise InputError(f"no action given for morphism '{format_label(m)}'", name.line, name.col, name.text, semantic=True)
            pairs, mtok = maps[m]
            table = {}
            for (x, xt), (y, yt) in pairs:
                if x in table:
                    raise InputError(f"'{format_label(x)}' assigned twice", xt.line, xt.col, xt.text, semantic=True)
                table[x] = y
            try:
                out[m] = FinFn(X, Y, table)
            except ShapeError as exc:
                raise InputError(f"action of '{format_label(m)}': {exc}", mtok.line, mtok.col, mtok.text, semantic=True) from None
        F = SetValuedFunctor(A, {o: s for o, (s, _) in sets.items()}, out)
        bad = F.violations()
        if bad:
            raise InputError(f"functor '{name.text}' is invalid: {bad[0]}", name.line, name.col, name.text, semantic=True)
        return F

    # -- simplicial sets

    def _sset(self, head, body):
        cur = _Cursor(head, head[0].line)
        cur.next()
        name = self._new_name(cur)
        word = cur.next("'level' or '='")
        if word.text == "=":
            self._no_body(body, "simplicial set")
            kind = cur.ident("'nerve' or 'esd'")
            if kind.text == "nerve":
                a, A = self._category_ref(cur)
                cur.expect("level")
                k = cur.integer("a level")
                cur.done()
                X, deriv = nerve(A, k), ("nerve", a, "level", k)
            elif kind.text == "esd":
                ref = cur.ident("a simplicial set name")
                if ref.text not in self.bundle.ssets:
                    raise InputError(f"unknown simplicial set '{ref.text}'", ref.line, ref.col, ref.text, semantic=True)
                cur.expect("level")
                k = cur.integer("a level")
                cur.done()
                try:
                    X = edgewise_subdivision(self.bundle.ssets[ref.text], k)
                except SimplicialError as exc:
                    raise InputError(str(exc), ref.line, ref.col, ref.text, semantic=True) from None
                deriv = ("esd", ref.text, "level", k)
            else:
                raise InputError(f"unknown construction '{kind.text}'", kind.line, kind.col, kind.text)
            self.bundle.ssets[name.text] = X
            self.bundle.declarations.append(Declaration("sset", name.text, deriv, name.line))
            return
        if word.text != "level":
            raise cur.error("expected 'level' or '='", word)
        level = cur.integer("a level")
        cur.done()
        self.bundle.ssets[name.text] = self._explicit_sset(name, level, body)
        self.bundle.declarations.append(Declaration("sset", name.text, None, name.line))

    def _explicit_sset(self, name: Token, level: int, body) -> TruncatedSimplicialSet:
        simplices: dict = {}
        tables = {"face": {}, "degen": {}}
        for tokens in body:
            cur = _Cursor(tokens, tokens[0].line)
            word = cur.next()
            if word.text == "simplices":
                ntok = cur.peek()
                n = cur.integer("a dimension")
                cur.expect("=")
                items = cur.label_set()
                cur.done()
                if n > level:
                    raise InputError(f"dimension {n} exceeds level {level}", ntok.line, ntok.col, ntok.text, semantic=True)
                if n in simplices:
                    raise InputError(f"dimension {n} given twice", ntok.line, ntok.col, ntok.text, semantic=True)
                simplices[n] = FinSet(x for x, _ in items)
            elif word.text in tables:
                ntok = cur.peek()
                n = cur.integer("a dimension")
                j = cur.integer("an index")
                cur.expect(":")
                x, xt = cur.label()
                cur.expect("->")
                y, yt = cur.label()
                cur.done()
                if j > n or (word.text == "face" and (n < 1 or n > level)) or (word.text == "degen" and n >= level):
                    raise InputError(f"no {word.text} operator ({n}, {j}) at level {level}", ntok.line, ntok.col, ntok.text, semantic=True)
                dom, cod = (n, n - 1) if word.text == "face" else (n, n + 1)
                for z, zt, d in ((x, xt, dom), (y, yt, cod)):
                    if z not in simplices.get(d, ()):
                        raise InputError(f"unknown {d}-simplex '{format_label(z)}'", zt.line, zt.col, zt.text, semantic=True)
                table = tables[word.text].setdefault((n, j), {})
                if x in table:
                    raise InputError(f"{word.text} ({n}, {j}) of '{format_label(x)}' given twice", xt.line, xt.col, xt.text, semantic=True)
                table[x] = y
            else:
                raise InputError(f"unexpected '{word.text}' in sset block", word.line, word.col, word.text)
        for n in range(level + 1):
            if n not in simplices:
                raise InputError(f"no simplices given in dimension {n}", name.line, name.col, name.text, semantic=True)
        for kind, dims in (("face", range(1, level + 1)), ("degen", range(level))):
            for n in dims:
                for j in range(n + 1):
                    table = tables[kind].get((n, j), {})
                    for x in simplices[n]:
                        if x not in table:
                            raise InputError(
                                f"missing {kind} ({n}, {j}) of '{format_label(x)}'", name.line, name.col, name.text, semantic=True
                            )
        X = tabulated_sset([simplices[n] for n in range(level + 1)], tables["face"], tables["degen"])
        bad = X.violations()
        if bad:
            raise InputError(f"simplicial set '{name.text}' is invalid: {bad[0]}", name.line, name.col, name.text, semantic=True)
        X.name = name.text
        return X


# -- printing ---------------------------------------------------------------------


def _words(items) -> str:
    return " ".join(format_label(x) for x in items)


def _braces(items) -> str:
    return "{" + ", ".join(format_label(x) for x in items) + "}"


def _print_category(A: Category) -> list[str]:
    lines = ["  object " + _words(A.objects)]
    plain = [m for m in A.morphisms if not A.is_identity(m)]
    for m in plain:
        lines.append(f"  morphism {format_label(m)} : {format_label(A.src[m])} -> {format_label(A.tgt[m])}")
    comps = sorted(
        ((g, f) for (g, f) in A.comp if not A.is_identity(g) and not A.is_identity(f)),
        key=lambda p: (label_key(p[0]), label_key(p[1])),
    )
    for g, f in comps:
        lines.append(f"  compose {format_label(g)} . {format_label(f)} = {format_label(A.comp[(g, f)])}")
    return lines


def _print_functor(F: SetValuedFunctor) -> list[str]:
    A = F.source
    lines = [f"  at {format_label(o)} = {_braces(F.at(o).elements)}" for o in A.objects]
    for m in A.morphisms:
        if A.is_identity(m):
            continue
        pairs = ", ".join(f"{format_label(x)}->{format_label(y)}" for x, y in F.on(m).items())
        lines.append(f"  on {format_label(m)} = {{{pairs}}}")
    return lines


def _print_sset(X: TruncatedSimplicialSet) -> list[str]:
    faces, degens = tabulate(X)
    lines = [f"  simplices {n} = {_braces(X.simplices[n].elements)}" for n in range(X.level + 1)]
    for kind, table in (("face", faces), ("degen", degens)):
        for (n, j) in sorted(table):
            for x in X.simplices[n]:
                lines.append(f"  {kind} {n} {j} : {format_label(x)} -> {format_label(table[(n, j)][x])}")
    return lines


def _derivation_text(deriv: tuple) -> str:
    parts = []
    for w in deriv:
        if isinstance(w, tuple):
            parts.append(_braces(w))
        else:
            parts.append(str(w))
    return " ".join(parts)


def print_bundle(bundle: InputBundle) -> str:
    """Canonical text: declarations in source order, explicit tables in
    canonical label order."""
    out = []
    for d in bundle.declarations:
        if d.kind == "category":
            if d.derivation is not None:
                out.append(f"category {d.name} = {_derivation_text(d.derivation)}")
            else:
                out.append(f"category {d.name}")
                out.extend(_print_category(bundle.categories[d.name]))
        elif d.kind == "setfunctor":
            if d.derivation is not None:
                out.append(f"setfunctor {d.name} = {_derivation_text(d.derivation)}")
            else:
                out.append(f"setfunctor {d.name} on {' '.join(d.target)}")
                out.extend(_print_functor(bundle.functors[d.name]))
        else:
            if d.derivation is not None:
                out.append(f"sset {d.name} = {_derivation_text(d.derivation)}")
            else:
                X = bundle.ssets[d.name]
                out.append(f"sset {d.name} level {X.level}")
                out.extend(_print_sset(X))
    return "\n".join(out) + ("\n" if out else "")


def same_bundle(a: InputBundle, b: InputBundle) -> bool:
    """Structural equality: same names, equal category tables, equal functor
    values and actions, equal simplicial tables."""
    if a.categories.keys() != b.categories.keys() or a.functors.keys() != b.functors.keys():
        return False
    if a.ssets.keys() != b.ssets.keys():
        return False
    if any(a.categories[k] != b.categories[k] for k in a.categories):
        return False
    for k, F in a.functors.items():
        G = b.functors[k]
        if F.source != G.source or F.on_objects != G.on_objects:
            return False
        if any(F.on(m).label != G.on(m).label for m in F.source.morphisms):
            return False
    for k, X in a.ssets.items():
        Y = b.ssets[k]
        if [s.elements for s in X.simplices] != [s.elements for s in Y.simplices]:
            return False
        if tabulate(X) != tabulate(Y):
            return False
    return True


__all__ = [
    "InputBundle",
    "InputError",
    "parse_input",
    "parse_text",
    "print_bundle",
    "same_bundle",
]
