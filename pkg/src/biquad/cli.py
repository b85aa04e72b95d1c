"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 search exhausted,
3 usage or data error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import catalog
from .compose import Decomposition, decompose, expand_weighted, verify_identity
from .curve import build_curve
from .derive import iter_solutions
from .errors import BiquadError, DataIntegrityError, DegenerateParameter, DomainError, TrivialIdentity
from .numeric import parse_rational
from .pointsearch import SearchBounds, default_registry_path, load_registry, search_points
from .reproduce import run_examples

EXIT_OK, EXIT_FAIL, EXIT_EXHAUSTED, EXIT_USAGE = 0, 1, 2, 3
CATALOG_ENV = "BIQUAD_CATALOG"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text):
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _add_search_args(p):
    p.add_argument("--t", type=_rational, help="fixed scale t (solve on E(h t^4)); default tries 1, 2, 1/2, ...")
    p.add_argument("--multiple", type=int, help="use this multiple of the generator; default: first useful one")
    p.add_argument("--search-num", type=_positive, default=1000, help="bound on |r| for X = r/s^2")
    p.add_argument("--search-den", type=_positive, default=1, help="bound on s / den(h)")
    p.add_argument("--workers", type=_positive, default=1)


def _bounds(args):
    return SearchBounds(args.search_num, args.search_den)


def _registry(args):
    path = args.registry or default_registry_path()
    if not os.path.exists(path):
        raise DataIntegrityError(f"generator registry not found: {path}")
    return load_registry(path)


def _solutions(args, h):
    return iter_solutions(
        h,
        t=args.t,
        multiple=args.multiple,
        bounds=_bounds(args),
        registry=_registry(args),
        workers=args.workers,
    )


def _describe(quad) -> str:
    prov = quad.provenance
    return (
        f"# h={quad.h} t={prov.get('t')} point={prov.get('multiple')}*{prov.get('generator')}"
        f" = {prov.get('point')} on E({prov.get('effective_h')})"
    )


def cmd_solve(args) -> int:
    for quad in _solutions(args, args.h):
        a, b, c, d = quad.integral
        verdict = verify_identity((a, b), (c, d), ((1, quad.h), (1, quad.h)))
        if not verdict.valid:  # pragma: no cover - SolutionQuadruple already checks this
            return EXIT_FAIL
        print(_describe(quad))
        print(f"(A, B, C, D) = ({a}, {b}, {c}, {d})")
        print(quad.equation())
        if quad.is_trivial:
            print("# note: this quadruple is trivial (the sides are a permutation)", file=sys.stderr)
        return EXIT_OK
    print(f"no usable point found for h={args.h} under the search bounds", file=sys.stderr)
    return EXIT_EXHAUSTED


def cmd_expand(args) -> int:
    if args.h == 0:
        raise DegenerateParameter(args.h, "h = 0 stays degenerate under every scale t")
    if args.dec:
        dec = Decomposition.parse(args.dec, args.h)
        if args.n is not None and args.n != dec.n:
            raise UsageError(f"--n {args.n} disagrees with --dec ({dec.n} terms per side)")
        decs = [dec]
    else:
        if args.n is None:
            raise UsageError("either --n or --dec is required")
        if args.n < 2:
            raise UsageError("--n must be >= 2")
        decs = decompose(args.h, args.n, args.bound)
        if not decs:
            print(f"no decomposition of {args.h} into {args.n - 1} fourth powers with bound {args.bound}",
                  file=sys.stderr)
            return EXIT_EXHAUSTED

    for quad in _solutions(args, args.h):
        for dec in decs:
            try:
                ident = expand_weighted(quad, dec, cancel=args.cancel)
            except TrivialIdentity:
                continue
            verdict = verify_identity(ident.left, ident.right, ident.weights)
            if not (verdict.valid and verdict.nontrivial):  # pragma: no cover
                return EXIT_FAIL
            print(_describe(quad))
            print(f"# h = {dec}")
            print(ident.line)
            if not args.no_catalog:
                path = args.catalog or os.environ.get(CATALOG_ENV, "identities.jsonl")
                catalog.append_record(path, catalog.IdentityRecord.from_identity(ident))
            return EXIT_OK
    print(f"no nontrivial identity found for h={args.h}", file=sys.stderr)
    return EXIT_EXHAUSTED


def cmd_verify(args) -> int:
    total = failed = 0
    items = []
    for line in args.line or []:
        items.append((f"--line {line}", catalog.parse_equation_line(line)))
    if args.file:
        for lineno, item in catalog.iter_catalog(args.file):
            items.append((f"{args.file}:{lineno}", item))
    for where, item in items:
        total += 1
        if isinstance(item, catalog.InvalidRecord):
            failed += 1
            print(f"FAIL {where}: {item}")
            continue
        if isinstance(item, catalog.IdentityRecord):
            verdict = catalog.verify_record(item)
            text = item.line
        else:
            verdict = catalog.verify_equation(item)
            text = catalog.format_side(item[0], item[2][0] if item[2] else None)
        if verdict.ok:
            if args.verbose:
                print(f"ok   {where}")
        else:
            failed += 1
            short = text if len(text) <= 60 else text[:57] + "..."
            print(f"FAIL {where}: {'; '.join(verdict.problems)} [{short}]")
    print(f"{total} records, {failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_reproduce(args) -> int:
    registry = _registry(args)
    records = [] if args.catalog else None
    checks = run_examples(registry, args.only, records)
    if not checks:
        raise UsageError(f"no worked example numbered {args.only}")
    width = max(len(str(c.h)) for c in checks)
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        print(f"{status}  example {c.example}  h={str(c.h):<{width}}  {c.name}")
        if not c.ok:
            for line in c.detail.splitlines():
                print(f"      {line}")
    bad = sum(not c.ok for c in checks)
    print(f"{len(checks) - bad}/{len(checks)} checks passed")
    if records is not None:
        catalog.write_catalog(args.catalog, records)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_search(args) -> int:
    ctx = build_curve(args.h)
    bounds = SearchBounds(args.search_num, args.search_den, args.max_results)
    points = search_points(ctx, bounds, args.workers)
    print(f"# {ctx}")
    for p in points:
        print(f"{p.x} {p.y}")
    return EXIT_OK if points else EXIT_EXHAUSTED


def cmd_decompose(args) -> int:
    decs = decompose(args.h, args.n, args.bound)
    for d in decs:
        print(d)
    return EXIT_OK if decs else EXIT_EXHAUSTED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biquad", description="Equal sums of fourth powers from the curves E(h).")
    parser.add_argument("--registry", help="generator registry JSON (default: $BIQUAD_REGISTRY or bundled)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="one solution of A^4 + h B^4 = C^4 + h D^4")
    p.add_argument("--h", type=_rational, required=True)
    _add_search_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("expand", help="an n-term identity sum a_i^4 = sum b_i^4")
    p.add_argument("--h", type=_rational, required=True)
    p.add_argument("--n", type=int, help="terms per side")
    p.add_argument("--dec", help="decomposition of h, e.g. '(5^4-1^4-4^4)/2^4'")
    p.add_argument("--bound", type=_positive, default=8, help="decomposition search bound")
    p.add_argument("--cancel", action="store_true", help="cancel terms equal on both sides")
    p.add_argument("--catalog", help="JSON Lines file to append to (default: $BIQUAD_CATALOG or identities.jsonl)")
    p.add_argument("--no-catalog", action="store_true", help="do not persist the identity")
    _add_search_args(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="verify identities in a catalog or given inline")
    p.add_argument("file", nargs="?", help="JSON Lines catalog or file of equation lines")
    p.add_argument("--line", action="append", help="equation such as '9^4+105^4=...'; repeatable")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="regenerate the published worked examples")
    p.add_argument("--only", type=int, action="append", help="example number; repeatable")
    p.add_argument("--catalog", help="also write the regenerated identities here")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("search", help="list rational points on E(h)")
    p.add_argument("--h", type=_rational, required=True)
    p.add_argument("--search-num", type=_positive, default=1000)
    p.add_argument("--search-den", type=_positive, default=1)
    p.add_argument("--max-results", type=_positive, default=64)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("decompose", help="write h as signed sums of fourth powers")
    p.add_argument("--h", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=_positive, default=8)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "verify" and not args.file and not args.line:
        parser.error("verify needs a FILE or --line")
    try:
        return args.func(args)
    except DegenerateParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except catalog.RecordParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DataIntegrityError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BiquadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
