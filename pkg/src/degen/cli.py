"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (axioms, equivariance), 2 input failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .arith import GaloisElement, PrimeContext
from .degdata import encode
from .fiber import RealizationError, conservation_check, realize_double, realize_global, realize_simple
from .galois import (
    CoverDescription,
    enum_double,
    enum_simple,
    equivariance_check,
    extract_degdata,
    orbit,
    random_cover,
)
from .render import fiber_dot, tree_dot
from .serialize import ParseError, dumps, parse
from .validate import check


class InputError(Exception):
    pass


def _load(path: str):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _sigma(ctx: PrimeContext, q: int | None) -> GaloisElement:
    if q is None:
        return GaloisElement(ctx.p, 1, 1)
    n, x = 0, q
    while x > 1 and x % ctx.p == 0:
        x //= ctx.p
        n += 1
    if x != 1 or n < 1:
        raise InputError(f"--frobenius {q} is not a power of p={ctx.p}")
    return GaloisElement(ctx.p, n, 1)


def cmd_validate(args) -> int:
    ctx, kind, d = _load(args.path)
    if kind == "cover":
        raise InputError("validate expects a simple, double or global datum")
    rep = check(ctx, d)
    if args.json:
        _emit_json({"valid": rep.ok, "axioms": rep.to_json()})
    else:
        print(rep.to_text())
        print("valid" if rep.ok else f"invalid: {' '.join(rep.failed())}")
    return 0 if rep.ok else 1


def _realize(ctx, kind, d):
    if kind == "simple":
        return realize_simple(ctx, d)
    if kind == "double":
        return realize_double(ctx, d)
    if kind == "global":
        return realize_global(ctx, d)
    raise InputError("realize expects a simple, double or global datum")


def cmd_realize(args) -> int:
    ctx, kind, d = _load(args.path)
    if kind == "cover":
        raise InputError("realize expects a simple, double or global datum")
    rep = check(ctx, d)
    if not rep.ok:
        print(rep.to_text(), file=sys.stderr)
        print(f"invalid: {' '.join(rep.failed())}", file=sys.stderr)
        return 1
    try:
        frag = _realize(ctx, kind, d)
    except RealizationError as exc:
        print(f"realization failed: {exc}", file=sys.stderr)
        return 1
    status = 0
    if args.dot:
        sys.stdout.write(fiber_dot(frag, Path(args.path).stem))
    else:
        doc = json.loads(dumps(ctx, frag))
        if kind == "global":
            cons = conservation_check(ctx, d)
            doc["conservation"] = {"expected": cons.expected, "realized": cons.realized, "ok": cons.ok,
                                   "diagnostics": list(cons.diagnostics)}
            status = 0 if cons.ok else 1
        _emit_json(doc)
    if args.figure:
        from .plotting import plot_fiber

        plot_fiber(frag, args.figure)
    return status


def cmd_render(args) -> int:
    ctx, kind, d = _load(args.path)
    if kind == "cover":
        raise InputError("render expects a simple, double or global datum")
    sys.stdout.write(tree_dot(d, Path(args.path).stem))
    if args.figure:
        if kind == "global":
            from .plotting import plot_fiber

            try:
                plot_fiber(realize_global(ctx, d, validate=False), args.figure)
            except RealizationError as exc:
                print(f"cannot draw: {exc}", file=sys.stderr)
                return 1
        else:
            from .plotting import plot_tree

            plot_tree(d, args.figure)
    return 0


def cmd_enumerate(args) -> int:
    if args.vertices < 0 or args.max_m < 0 or args.max_t < 1 or args.max_marked < 0:
        raise InputError("bounds must satisfy vertices >= 0, max-m >= 0, max-t >= 1, max-marked >= 0")
    try:
        ctx = PrimeContext(args.p, args.vkp if args.vkp is not None else 2 * (args.p - 1))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fn = enum_double if args.double else enum_simple
    data = fn(ctx, args.vertices, args.max_m, args.max_t, max_marked=args.max_marked) if args.vertices else []
    if args.count:
        print(len(data))
        return 0
    for d in data:
        print(dumps(ctx, d, indent=None))
    return 0


def _orbit_target(ctx, kind, d):
    if kind == "cover":
        return extract_degdata(ctx, d)
    return d


def cmd_orbit(args) -> int:
    ctx, kind, d = _load(args.path)
    sigma = _sigma(ctx, args.frobenius)
    encs = orbit(sigma, _orbit_target(ctx, kind, d))
    if args.json:
        _emit_json({"size": len(encs), "orbit": [json.loads(e) for e in encs]})
    else:
        print(f"orbit size {len(encs)}")
        for e in encs:
            print(e.decode())
    return 0


def cmd_equivariance(args) -> int:
    results = []
    if args.path:
        ctx, kind, cover = _load(args.path)
        if kind != "cover":
            raise InputError("equivariance expects a cover document")
        sigma = _sigma(ctx, args.frobenius)
        results.append((args.path, equivariance_check(ctx, sigma, cover)))
    if args.random:
        if args.p is None:
            raise InputError("--random needs --p")
        try:
            ctx = PrimeContext(args.p, 2 * (args.p - 1))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        rng = random.Random(args.seed)
        sigma = _sigma(ctx, args.frobenius)
        for k in range(args.random):
            cover = random_cover(ctx.p, rng, degree=args.degree)
            results.append((f"random[{k}]", equivariance_check(ctx, sigma, cover)))
    if not results:
        raise InputError("give a cover document or --random N")
    bad = [name for name, ok in results if not ok]
    if args.json:
        _emit_json({"checked": len(results), "failed": bad})
    else:
        for name, ok in results:
            if not ok:
                print(f"{name}\tfail")
        print(f"{len(results) - len(bad)}/{len(results)} commuting squares")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degen", description="Degeneration data of degree-p covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check every axiom of a datum")
    s.add_argument("path")
    s.add_argument("--json", action="store_true", help="JSON report")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("realize", help="assemble the special fibre upstairs")
    s.add_argument("path")
    s.add_argument("--json", action="store_true", help="JSON output (default)")
    s.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    s.add_argument("--figure", metavar="PNG", help="also draw the fibre to an image file")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("render", help="DOT of the downstairs datum")
    s.add_argument("path")
    s.add_argument("--dot", action="store_true", help="emit DOT (default)")
    s.add_argument("--figure", metavar="PNG", help="also draw the datum to an image file")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("enumerate", help="bounded enumeration up to isomorphism")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--vkp", type=int, default=None, help="v_K(p); default 2(p-1)")
    s.add_argument("--vertices", type=int, required=True)
    s.add_argument("--max-m", type=int, default=2)
    s.add_argument("--max-t", type=int, default=1)
    s.add_argument("--max-marked", type=int, default=2, help="marked points per vertex")
    s.add_argument("--double", action="store_true", help="enumerate double data")
    s.add_argument("--count", action="store_true", help="print only the number of classes")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("orbit", help="Frobenius orbit of a datum or of a cover's data")
    s.add_argument("path")
    s.add_argument("--frobenius", type=int, metavar="Q", help="x -> x^Q (default Q = p)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("equivariance", help="check extraction commutes with Frobenius")
    s.add_argument("path", nargs="?")
    s.add_argument("--frobenius", type=int, metavar="Q")
    s.add_argument("--random", type=int, default=0, metavar="N", help="also check N random covers")
    s.add_argument("--p", type=int)
    s.add_argument("--degree", type=int, default=2, help="coefficient field F_{p^degree}")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_equivariance)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
