"""Command line front end.

Exit status: 0 success, 1 a check failed, 2 usage or parse error,
3 semantically invalid input (inconsistent equations, unmet hypotheses).
"""
from __future__ import annotations

import argparse
import sys
from itertools import product as cartesian

from .algebra import order_by_name
from .documents import (
    DocumentError,
    dumps,
    is_variety_doc,
    loads,
    staircase_from_doc,
    staircase_to_doc,
    variety_from_doc,
    variety_to_doc,
)
from .planes import InconsistentEquations, NoStabilization, ideal_of_variety
from .staircase import InfinitePlaneCount, StandardSet
from .verify import CHECKS, FUZZ_CHECKS, InstanceGenerator, PreconditionError, check_finiteness, fuzz, run_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


ALIASES = {
    "number": "theorem_number", "decompose": "lemma_decompose", "stack": "theorem_stack",
    "recursive": "corollary_recursive", "corlex": "corlex_formulas", "hyperplane": "hyperplane_formula",
    "inherit": "theorem_inherit", "general": "corollary_general", "strong": "inequality_strong",
    "iff": "prop_iff_reduction", "hilbert": "hilbert_slope",
}


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _variety(args, doc=None):
    doc = doc if doc is not None else _read(args.input)
    V, order = variety_from_doc(doc)
    if args.order:
        order = order_by_name(args.order, V.n)
    return V, order


def _staircase(args):
    """Staircase of the input, from a variety or a staircase document."""
    doc = _read(args.input)
    if is_variety_doc(doc):
        V, order = _variety(args, doc)
        G = ideal_of_variety(V, order)
        return StandardSet(V.n, G.leads), G
    return staircase_from_doc(doc), None


def cmd_standard_set(args):
    V, order = _variety(args)
    G = ideal_of_variety(V, order)
    print(dumps(staircase_to_doc(StandardSet(V.n, G.leads), G)))
    return EXIT_OK


def artifacts(D: StandardSet):
    """Members of D outside the union of its top-dimensional planes.

    Returns ``(points, finite)``; when the difference is infinite the points
    are those inside the box where membership can still change.
    """
    E = D.top_part()
    M = [max(a, b) for a, b in zip(D.bounds, E.bounds)]
    pts, finite = [], True
    for a in cartesian(*(range(m + 1) for m in M)):
        if a in D and a not in E:
            if any(x == m for x, m in zip(a, M)):
                finite = False
            else:
                pts.append(list(a))
    return pts, finite


def cmd_d_planes(args):
    D, G = _staircase(args)
    doc = staircase_to_doc(D, G)
    d = D.top_dimension()
    doc["top_dimension"] = d
    planes = []
    if d is not None:
        for P in D.top_planes():
            planes.append({"J": list(P.J), "base": list(P.base)})
        counts = {}
        for P in planes:
            key = ",".join(map(str, P["J"]))
            counts[key] = counts.get(key, 0) + 1
        doc["counts"] = counts
    doc["planes"] = planes
    pts, finite = artifacts(D)
    doc["artifacts"] = pts
    doc["artifacts_finite"] = finite
    print(dumps(doc))
    return EXIT_OK


def cmd_verify(args):
    name = ALIASES.get(args.check, args.check)
    if name not in FUZZ_CHECKS:
        raise UsageError(f"unknown check {name!r}; choose from {', '.join(FUZZ_CHECKS)}")
    kwargs = {"b": args.b} if args.b is not None and name in ("corollary_recursive", "corlex_formulas") else {}
    if args.input:
        V, order = _variety(args)
        if name == "finiteness":
            if any(P.dim for P in V):
                raise PreconditionError("finiteness needs a variety of points")
            reports = [check_finiteness([P.parametrization()[0] for P in V], order)]
        else:
            reports = [run_check(name, V, order, **kwargs)]
    else:
        if args.count < 0:
            raise UsageError("--count must be non-negative")
        reports = fuzz(InstanceGenerator(args.seed), [name], args.count)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        print(dumps(r.to_doc()) if args.verbose else f"{r.name} {r.verdict} {r.details.get('seed', '')}".rstrip())
    if failed:
        print(f"first failure witness: {dumps(failed[0].to_doc())}", file=sys.stderr)
        return EXIT_FAIL
    print(f"{len(reports)} passed", file=sys.stderr)
    return EXIT_OK


def render(D: StandardSet, bound: int) -> str:
    """Layer-by-layer picture of a staircase in at most three variables.

    ``#`` member on a top-dimensional plane, ``o`` other member,
    ``+`` corner, ``.`` non-member.  The first coordinate runs left to right,
    the second bottom to top, one block per value of the third.
    """
    if D.n > 3:
        raise UsageError("rendering needs at most three variables")
    E = D.top_part() if not D.is_empty() else D
    corners = set(D.corners)

    def cell(a):
        if a in corners:
            return "+"
        if a in D:
            return "#" if a in E and D.top_dimension() else "o"
        return "."

    n = D.n
    if n == 0:
        return "o" if not D.is_empty() else "."
    layers = range(bound + 1) if n == 3 else [None]
    rows_y = range(bound, -1, -1) if n >= 2 else [None]
    out = []
    for z in layers:
        if z is not None:
            out.append(f"level {z}:")
        for y in rows_y:
            line = []
            for x in range(bound + 1):
                a = (x,) + ((y,) if y is not None else ()) + ((z,) if z is not None else ())
                line.append(cell(a))
            out.append(" ".join(line))
    return "\n".join(out)


def cmd_render(args):
    D, _ = _staircase(args)
    if args.bounds < 0:
        raise UsageError("--bounds must be non-negative")
    print(render(D, args.bounds))
    return EXIT_OK


def cmd_random(args):
    if not (0 <= args.d < args.n) or args.m < 1:
        raise UsageError("need 0 <= d < n and m >= 1")
    gen = InstanceGenerator(args.seed)
    rng = gen.rng("cli-random", 0)
    V = gen.variety(rng, args.n, args.d, args.m)
    if len(V) < args.m:
        raise UsageError(f"could not draw {args.m} distinct components")
    order = order_by_name(args.order or "lex", args.n)
    print(dumps(variety_to_doc(V, order)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="escalier", description="Standard sets of unions of affine planes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("standard-set", help="corners and reduced basis of a variety's ideal")
    s.add_argument("input", help="variety document (JSON), or - for stdin")
    s.add_argument("--order", help="lex, grlex or product(...); overrides the document")
    s.set_defaults(func=cmd_standard_set)

    s = sub.add_parser("d-planes", help="top-dimensional planes, counts and artifacts")
    s.add_argument("input", help="variety or staircase document, or -")
    s.add_argument("--order")
    s.set_defaults(func=cmd_d_planes)

    s = sub.add_parser("verify", help="run a check on a document or on random instances")
    s.add_argument("check", help=", ".join(FUZZ_CHECKS) + "; short names like 'stack' also work")
    s.add_argument("input", nargs="?", help="variety document; omit to fuzz")
    s.add_argument("--order")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--b", type=int, help="slicing depth for the recursive checks")
    s.add_argument("-v", "--verbose", action="store_true", help="print full JSON reports")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="ASCII picture of a staircase (n <= 3)")
    s.add_argument("input", help="variety or staircase document, or -")
    s.add_argument("--order")
    s.add_argument("--bounds", type=int, default=4)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("random", help="random variety document in canonical form")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--order")
    s.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DocumentError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        # unknown order names surface as plain ValueError from order_by_name
        if isinstance(e, (InconsistentEquations, PreconditionError)):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_SEMANTIC
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NoStabilization, InfinitePlaneCount) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
