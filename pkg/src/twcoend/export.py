"""DOT and JSON renderings of categories, simplicial sets and witnesses."""
from __future__ import annotations

import json

from .fincat import Category, Functor
from .finset import BijectionWitness, format_label
from .simplicial import TruncatedSimplicialSet, coface, nondegenerate


def _quote(s: str) -> str:
    # backslash escapes such as \n are left for DOT to interpret
    return '"' + s.replace('"', '\\"') + '"'


def category_dot(A: Category, name: str = "C", sigma: Functor | None = None) -> str:
    """Objects as nodes, non-identity morphisms as labelled edges.

    With ``sigma`` each node and edge also carries its image under the
    projection.
    """
    lines = [f"digraph {_quote(name)} {{"]
    for a in A.objects:
        label = format_label(a)
        if sigma is not None:
            label += "\\nΣ=" + format_label(sigma.obj_map[a])
        lines.append(f"  {_quote(format_label(a))} [label={_quote(label)}];")
    for m in A.morphisms:
        if A.is_identity(m):
            continue
        label = format_label(m)
        if sigma is not None:
            label += "\\nΣ=" + format_label(sigma.mor_map[m])
        lines.append(
            f"  {_quote(format_label(A.src[m]))} -> {_quote(format_label(A.tgt[m]))} [label={_quote(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def sset_dot(X: TruncatedSimplicialSet, name: str = "X") -> str:
    """The 1-skeleton: vertices and nondegenerate edges from d1 to d0."""
    lines = [f"digraph {_quote(name)} {{"]
    for v in X.simplices[0]:
        lines.append(f"  {_quote(format_label(v))};")
    if X.level >= 1:
        for e in nondegenerate(X, 1):
            s = X.act(coface(1, 1), e)
            t = X.act(coface(1, 0), e)
            lines.append(
                f"  {_quote(format_label(s))} -> {_quote(format_label(t))} [label={_quote(format_label(e))}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_json(w: BijectionWitness) -> dict:
    return {
        "forward": [[format_label(x), format_label(y)] for x, y in w.forward.items()],
        "backward": [[format_label(x), format_label(y)] for x, y in w.backward.items()],
        "round_trip": w.round_trips(),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
