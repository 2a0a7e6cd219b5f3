"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 property-check failure,
3 parse or I/O error.
"""
from __future__ import annotations

import argparse
import random
import sys

from . import export
from .coend import (
    CoendError,
    adjunction_check,
    coend_classical,
    coend_route_witness,
    coend_tw,
    end_classical,
    end_route_witness,
    end_tw,
    lan_sigma_const_compare,
    ran_sigma_const_compare,
)
from .fincat import random_poset, twosided
from .finset import FinSet, format_label
from .fubini import FourVariableFunctor, fubini_check, random_instance, random_transformation
from .setfun import random_set_functor
from .simplicial import SimplicialError, edgewise_subdivision, nerve, sset_iso_check
from .textfmt import InputError, parse_input, print_bundle
from .twisted import tw_category

OK, INVALID, PROPERTY, IO = 0, 1, 2, 3


class Failure(Exception):
    """A command outcome other than success, with its exit code and report."""

    def __init__(self, code: int, message: str, report: dict | None = None):
        super().__init__(message)
        self.code = code
        self.report = report or {}


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none"
        raise Failure(INVALID, f"unknown {what} '{name}' (declared: {known})")
    return table[name]


def _category(bundle, name):
    return _lookup(bundle.categories, name, "category")


def _twosided(bundle, name):
    F = _lookup(bundle.functors, name, "functor")
    shape = bundle.functor_shapes[name]
    if shape[0] != "twosided":
        raise Failure(INVALID, f"functor '{name}' is not declared on a category of the form A^op x A")
    return bundle.categories[shape[1]], F


def _fourfold(bundle, name):
    F = _lookup(bundle.functors, name, "functor")
    shape = bundle.functor_shapes[name]
    if shape[0] != "fourfold":
        raise Failure(INVALID, f"functor '{name}' is not declared on 'product C E'")
    return FourVariableFunctor(bundle.categories[shape[1]], bundle.categories[shape[2]], F)


def _labels(xs) -> list:
    return [format_label(x) for x in xs]


# -- commands ---------------------------------------------------------------------


def cmd_print(args, bundle):
    return {"text": print_bundle(bundle)}, print_bundle(bundle).rstrip("\n")


def cmd_validate(args, bundle):
    report = {"categories": {}, "functors": {}, "ssets": {}}
    lines = []
    for d in bundle.declarations:
        if d.kind == "category":
            A = bundle.categories[d.name]
            report["categories"][d.name] = {"objects": len(A.objects), "morphisms": len(A.morphisms)}
            lines.append(f"category {d.name}: {len(A.objects)} objects, {len(A.morphisms)} morphisms")
        elif d.kind == "setfunctor":
            F = bundle.functors[d.name]
            sizes = [len(F.at(o)) for o in F.source.objects]
            report["functors"][d.name] = {"sizes": sizes}
            lines.append(f"setfunctor {d.name}: {len(sizes)} values, total size {sum(sizes)}")
        else:
            X = bundle.ssets[d.name]
            report["ssets"][d.name] = {"dims": list(X.dims())}
            lines.append(f"sset {d.name}: dims {','.join(map(str, X.dims()))}")
    lines.append("valid")
    report["valid"] = True
    return report, "\n".join(lines)


def cmd_tw(args, bundle):
    A = _category(bundle, args.category)
    T = tw_category(A)
    n, m = len(T.tw.objects), len(T.tw.morphisms)
    if args.dot:
        _write(args.dot, export.category_dot(T.tw, f"tw_{args.category}", T.sigma))
    return {"objects": n, "morphisms": m}, f"{n} objects, {m} morphisms"


def cmd_nerve(args, bundle):
    A = _category(bundle, args.category)
    X = nerve(A, args.level)
    if args.dot:
        _write(args.dot, export.sset_dot(X, f"nerve_{args.category}"))
    dims = list(X.dims())
    return {"dims": dims, "level": args.level}, "dims " + ",".join(map(str, dims))


def cmd_esd(args, bundle):
    k = args.level
    if args.sset:
        X = _lookup(bundle.ssets, args.sset, "simplicial set")
        try:
            Y = edgewise_subdivision(X, k)
        except SimplicialError as exc:
            raise Failure(INVALID, str(exc))
        report = {"dims": list(Y.dims()), "level": k}
    else:
        if not args.category:
            raise Failure(INVALID, "esd needs --category or --sset")
        A = _category(bundle, args.category)
        Y = edgewise_subdivision(nerve(A, 2 * k + 1), k)
        iso = sset_iso_check(nerve(tw_category(A).tw, k), Y)
        report = {"dims": list(Y.dims()), "level": k, "iso_to_nerve_of_tw": bool(iso)}
        if not iso:
            raise Failure(PROPERTY, f"not isomorphic to the nerve of tw: {iso.reason}", report)
    if args.dot:
        _write(args.dot, export.sset_dot(Y, "esd"))
    text = "dims " + ",".join(map(str, report["dims"]))
    if "iso_to_nerve_of_tw" in report:
        text += "; isomorphic to the nerve of tw"
    return report, text


def _dual(args, bundle, kind):
    A, F = _twosided(bundle, args.functor)
    tw_fn, cl_fn, witness_fn = (
        (coend_tw, coend_classical, coend_route_witness) if kind == "coend" else (end_tw, end_classical, end_route_witness)
    )
    report = {"method": args.method}
    try:
        if args.method in ("tw", "both"):
            R = tw_fn(A, F)
        else:
            R = cl_fn(A, F)
        report["size"] = len(R.apex)
        report["elements"] = _labels(R.apex)
        text = f"{len(R.apex)} element" + ("" if len(R.apex) == 1 else "s")
        if args.method == "both":
            w = witness_fn(A, F)
            report["witness"] = export.witness_json(w)
            report["routes_agree"] = w.round_trips()
            if not w.round_trips():
                raise Failure(PROPERTY, "route witness does not round-trip", report)
            text += "; routes agree"
    except CoendError as exc:
        report["counterexample"] = str(exc)
        raise Failure(PROPERTY, f"routes disagree: {exc}", report)
    return report, text


def cmd_coend(args, bundle):
    return _dual(args, bundle, "coend")


def cmd_end(args, bundle):
    return _dual(args, bundle, "end")


def cmd_adjunction(args, bundle):
    A, F = _twosided(bundle, args.functor)
    D = FinSet(f"d{i}" for i in range(args.set_size))
    try:
        rep = adjunction_check(A, F, D)
        ran_sigma_const_compare(A, D)
        lan_sigma_const_compare(A, D)
    except (CoendError, ValueError) as exc:
        raise Failure(PROPERTY, f"adjunction check failed: {exc}", {"counterexample": str(exc)})
    report = {
        "set_size": args.set_size,
        "coend_side": len(rep.coend.forward.dom),
        "end_side": len(rep.end.forward.dom),
        "kan_comparisons": True,
    }
    text = f"pass; coend side {report['coend_side']}, end side {report['end_side']}"
    return report, text


def cmd_fubini(args, bundle):
    F = _fourfold(bundle, args.functor)
    rep = fubini_check(F, kind=args.kind, adjoint_sizes=tuple(range(args.adjoint_sizes + 1)) if args.adjoint_sizes else ())
    report = {"kind": args.kind, "sizes": list(rep.sizes), "ok": rep.ok, "adjoint_checked": rep.adjoint_checked}
    if not rep:
        report["counterexample"] = rep.failure
        raise Failure(PROPERTY, f"fail; {rep.failure}", report)
    return report, "pass; size " + ",".join(map(str, rep.sizes))


def _suite_case(i: int, seed: int, max_objects: int) -> dict:
    rng = random.Random(f"{seed}:{i}")
    kind = ("dual", "adjunction", "fubini")[i % 3]
    if kind == "fubini":
        F = random_instance(rng, max_objects=min(max_objects, 3), max_size=2)
        G, alpha = random_transformation(F, rng)
        rep = fubini_check(F, kind=rng.choice(("coend", "end")), transformations=[(G, alpha)])
        return {"case": i, "kind": kind, "ok": rep.ok, "detail": list(rep.sizes) if rep else rep.failure}
    A = random_poset(rng.randint(1, max_objects), rng.random())
    F = random_set_functor(twosided(A), rng, max_size=3)
    try:
        if kind == "dual":
            a = coend_route_witness(A, F)
            b = end_route_witness(A, F)
            return {"case": i, "kind": kind, "ok": True, "detail": [len(a.forward.dom), len(b.forward.dom)]}
        D = FinSet(f"d{j}" for j in range(rng.randint(0, 2)))
        rep = adjunction_check(A, F, D)
        return {"case": i, "kind": kind, "ok": True, "detail": [len(rep.coend.forward.dom), len(rep.end.forward.dom)]}
    except (CoendError, ValueError) as exc:
        return {"case": i, "kind": kind, "ok": False, "detail": str(exc)}


def cmd_suite(args, bundle=None):
    cases = [_suite_case(i, args.seed, args.max_objects) for i in range(args.cases)]
    failed = [c for c in cases if not c["ok"]]
    report = {"seed": args.seed, "cases": cases, "passed": len(cases) - len(failed), "failed": len(failed)}
    lines = [
        f"case {c['case']:04d} {c['kind']:<10} {'ok' if c['ok'] else 'FAIL'} {c['detail']}" for c in cases
    ]
    lines.append(f"{len(cases)} cases, {len(cases) - len(failed)} passed, {len(failed)} failed")
    if failed:
        raise Failure(PROPERTY, "\n".join(lines), report)
    return report, "\n".join(lines)


# -- plumbing ------------------------------------------------------------------------


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise Failure(IO, f"cannot write {path}: {exc.strerror or exc}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twcoend", description="Ends and coends of finite categories via twisted arrows.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file")
        return sp

    with_file("validate", "parse and validate a bundle")
    with_file("print", "print a bundle in canonical form")
    sp = with_file("tw", "twisted arrow category")
    sp.add_argument("--category", required=True)
    sp.add_argument("--dot")
    sp = with_file("nerve", "truncated nerve")
    sp.add_argument("--category", required=True)
    sp.add_argument("--level", type=int, default=3)
    sp.add_argument("--dot")
    sp = with_file("esd", "edgewise subdivision")
    sp.add_argument("--category")
    sp.add_argument("--sset")
    sp.add_argument("--level", type=int, default=3)
    sp.add_argument("--dot")
    for name in ("coend", "end"):
        sp = with_file(name, f"{name} of a functor on A^op x A")
        sp.add_argument("--functor", required=True)
        sp.add_argument("--method", choices=("tw", "classical", "both"), default="both")
    sp = with_file("adjunction", "adjunctions of the co/end functors at one set")
    sp.add_argument("--functor", required=True)
    sp.add_argument("--set-size", type=int, default=2)
    sp = with_file("fubini", "compare product and iterated co/ends")
    sp.add_argument("--functor", required=True)
    sp.add_argument("--kind", choices=("coend", "end"), default="coend")
    sp.add_argument("--adjoint-sizes", type=int, default=0, help="also check the adjoint side for |D| up to this")
    sp = sub.add_parser("suite", parents=[common], help="seeded random property suite")
    sp.add_argument("--max-objects", type=int, default=4)
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {
    "validate": cmd_validate,
    "print": cmd_print,
    "tw": cmd_tw,
    "nerve": cmd_nerve,
    "esd": cmd_esd,
    "coend": cmd_coend,
    "end": cmd_end,
    "adjunction": cmd_adjunction,
    "fubini": cmd_fubini,
    "suite": cmd_suite,
}


def _emit(args, report: dict, text: str, stream):
    body = export.dumps(report) if args.format == "json" else text + "\n"
    if args.output:
        _write(args.output, body)
    else:
        stream.write(body)


def run(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else IO
    try:
        bundle = None
        if args.command != "suite":
            try:
                bundle = parse_input(args.file)
            except InputError as exc:
                stderr.write(str(exc) + "\n")
                return INVALID if exc.semantic else IO
            except (OSError, UnicodeDecodeError) as exc:
                stderr.write(f"{args.file}: error: cannot read input: {exc}\n")
                return IO
        report, text = COMMANDS[args.command](args, bundle)
        _emit(args, report, text, stdout)
        return OK
    except Failure as exc:
        if exc.code == PROPERTY and exc.report:
            try:
                _emit(args, exc.report, str(exc), stdout)
            except Failure as io:
                stderr.write(str(io) + "\n")
                return IO
        stderr.write(f"error: {exc}\n" if exc.code != PROPERTY else f"property check failed: {str(exc).splitlines()[-1]}\n")
        return exc.code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
