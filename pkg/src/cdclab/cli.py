"""Command-line driver.

Exit codes: 0 success, 2 usage error, 3 verification failure, 4 budget
exceeded.  All computation is exact; output is deterministic across runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bnd
from . import codefile
from .bq_search import exact_bq, heuristic_bq
from .constructions import (
    _as_field,
    bq_16_5_6_5,
    bq_linkage,
    bq_prop_asym,
    bq_solids,
    build_best,
    check_w_intersections,
    improved_linkage,
    lift_mrd,
    line_spread,
    linkage,
)
from .qfunc import gauss_binomial, spread_lower
from .subspace import BudgetError, Code, verify_min_distance

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_BUDGET = 4

VERIFY_PAIR_LIMIT = 5_000_000

CONSTRUCT_NAMES = (
    "lift-mrd",
    "linkage",
    "improved-linkage",
    "bq-linkage",
    "line-spread",
    "bq-prop2",
    "bq-solids-12",
    "bq-solids-13",
    "bq-16-5-6-5",
)


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise SystemExit2(f"construct {args.name} requires --" + ", --".join(missing))


class SystemExit2(Exception):
    pass


def _construct(args) -> Code:
    q = args.q
    name = args.name
    if name == "lift-mrd":
        _need(args, "v", "k", "d")
        return lift_mrd(q, args.v, args.k, args.d)
    if name == "line-spread":
        _need(args, "v")
        return line_spread(q, args.v)
    field = _as_field(q)
    if name in ("linkage", "improved-linkage", "bq-linkage"):
        _need(args, "v", "k", "d", "m")
        v, k, d, m = args.v, args.k, args.d, args.m
        base_a = build_best(field, m, d, k)
        if name == "linkage":
            return linkage(base_a, build_best(field, v - m, d, k), v, d)
        if name == "improved-linkage":
            return improved_linkage(base_a, build_best(field, v - m + k - d // 2, d, k), v, d)
        tail = _best_bq_code(field, v, v - m, d, k, args.seed, args.restarts)
        return bq_linkage(base_a, tail, v, d)
    if name == "bq-prop2":
        _need(args, "v1", "v2", "d", "k")
        return bq_prop_asym(q, args.v1, args.v2, args.d, args.k)
    if name == "bq-solids-12":
        return bq_solids(q, "v12")
    if name == "bq-solids-13":
        return bq_solids(q, "v13", include_extra_solid=args.extra_solid)
    if name == "bq-16-5-6-5":
        return bq_16_5_6_5(q)
    raise SystemExit2(f"unknown construction {name!r}")


def _best_bq_code(field, v1, v2, d, k, seed, restarts) -> Code:
    candidates = []
    if k < d:
        try:
            candidates.append(bq_prop_asym(field, v1, v2, d, k))
        except (ValueError, BudgetError):
            pass
        try:
            code, _ = heuristic_bq(field, v1, v2, d, k, seed=seed, restarts=restarts)
            candidates.append(code)
        except (ValueError, BudgetError):
            pass
    if not candidates:
        raise SystemExit2("no W-intersecting code construction applies; use bq-prop2 or heuristic")
    return max(candidates, key=lambda c: c.size)


def _verify_code(code: Code, jobs: int, exhaustive: bool) -> tuple[bool, str]:
    pairs = code.size * (code.size - 1) // 2
    if pairs > VERIFY_PAIR_LIMIT and not exhaustive:
        raise BudgetError(
            f"{pairs} pairwise checks exceed the default budget; pass --exhaustive"
        )
    ok, witness = verify_min_distance(code, jobs=jobs)
    if not ok:
        return False, f"distance violation between codewords:\n{witness[0]}\n{witness[1]}"
    if code.bq_v2 is not None:
        okw, bad = check_w_intersections(code, code.bq_v2, code.d // 2)
        if not okw:
            return False, f"codeword meets W in dimension < d/2: {bad}"
    return True, "ok"


def cmd_construct(args) -> int:
    code = _construct(args)
    if code.codewords is None:
        print(f"{code.provenance}: size {code.size} (size-only certificate)")
        return EXIT_BUDGET
    pairs = code.size * (code.size - 1) // 2
    if pairs <= VERIFY_PAIR_LIMIT:
        ok, msg = _verify_code(code, args.jobs, False)
        status = "verified" if ok else f"FAILED: {msg}"
        if ok:
            code = code.with_verified()
    else:
        ok, status = True, "verification deferred (run `verify --exhaustive`)"
    if args.output:
        codefile.save_code(code, args.output)
        print(f"wrote {args.output}")
    print(f"size {code.size}, minimum distance {code.d}: {status}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    code = codefile.load_code(args.file)
    ok, msg = _verify_code(code, args.jobs, args.exhaustive)
    checks = "distance" + (" + W-intersection" if code.bq_v2 is not None else "")
    print(f"{args.file}: size {code.size}, claimed d={code.d}, checks: {checks} -> {msg}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bounds(args) -> int:
    table = bnd.close_lower(bnd.seed_table(args.q, args.vmax))
    if args.conditional:
        bnd.close_conditional(table)
    text = (
        bnd.export_csv(table, args.conditional)
        if args.format == "csv"
        else bnd.export_markdown(table, args.conditional)
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bq_upper(args) -> int:
    lp = bnd.bq_upper_lp(args.q, args.v1, args.v2, args.d, args.k)
    cor = bnd.bq_upper_corollary(args.q, args.v1, args.v2, args.d, args.k)
    smaller = "lp" if lp < cor else ("corollary" if cor < lp else "equal")
    print(f"lp: {lp}")
    print(f"corollary: {cor}")
    print(f"smaller: {smaller}")
    return EXIT_OK


def cmd_heuristic(args) -> int:
    code, report = heuristic_bq(
        args.q, args.v1, args.v2, args.d, args.k, seed=args.seed, restarts=args.restarts
    )
    if args.output:
        codefile.save_code(code.with_verified() if report["verified"] else code, args.output)
    text = json.dumps(report, sort_keys=True)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if report["verified"] else EXIT_VERIFY


def cmd_exact(args) -> int:
    res = exact_bq(args.q, args.v1, args.v2, args.d, args.k, budget=args.budget, seed=args.seed)
    if res.exact:
        print(f"exact: {res.lower}")
    else:
        print(f"interval: [{res.lower}, {res.upper}]")
    return EXIT_OK


FORMULAS = {
    "cor2": (("v", "d", "k"), lambda q, a: bnd.mrd_containing_upper(q, a.v, a.d, a.k)["corollary_closed_form"]),
    "prop3-12": ((), lambda q, a: bnd.prop3_formula(q, 12)),
    "prop3-13": ((), lambda q, a: bnd.prop3_formula(q, 13)),
    "prop4-7": (("t",), lambda q, a: bnd.prop4_formula(q, 7, a.t)),
    "prop4-8": (("t",), lambda q, a: bnd.prop4_formula(q, 8, a.t)),
    "prop4-9": (("t",), lambda q, a: bnd.prop4_formula(q, 9, a.t)),
    "prop5-10": ((), lambda q, a: bnd.prop5_formula(q, 10)),
    "prop5-13": ((), lambda q, a: bnd.prop5_formula(q, 13)),
    "prop5-14": ((), lambda q, a: bnd.prop5_formula(q, 14)),
    "cor3b": (("k",), lambda q, a: bnd.cor3b(q, a.k)),
    "bq16": ((), lambda q, a: gauss_binomial(5, 2, q)),
    "spread": (("v",), lambda q, a: spread_lower(q, a.v)),
    "seed-7-4-3": ((), lambda q, a: bnd.seed_7_4_3(q)),
    "seed-8-4-4": ((), lambda q, a: bnd.seed_8_4_4(q)),
}


def cmd_formula(args) -> int:
    try:
        needed, fn = FORMULAS[args.name]
    except KeyError:
        raise SystemExit2(
            f"unknown formula {args.name!r}; known: {', '.join(sorted(FORMULAS))}"
        )
    missing = [n for n in needed if getattr(args, n) is None]
    if missing:
        raise SystemExit2(f"formula {args.name} requires --" + ", --".join(missing))
    print(fn(args.q, args))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdclab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and write it to a file")
    c.add_argument("name", choices=CONSTRUCT_NAMES)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--v", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--v1", type=int)
    c.add_argument("--v2", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--restarts", type=int, default=20)
    c.add_argument("--extra-solid", action="store_true")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_construct)

    vf = sub.add_parser("verify", help="re-verify a code file")
    vf.add_argument("file")
    vf.add_argument("--exhaustive", action="store_true")
    vf.add_argument("--jobs", type=int, default=1)
    vf.set_defaults(fn=cmd_verify)

    b = sub.add_parser("bounds", help="emit the bound table")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--vmax", type=int, required=True)
    b.add_argument("--conditional", action="store_true")
    b.add_argument("--format", choices=("csv", "md"), default="csv")
    b.add_argument("-o", "--output")
    b.set_defaults(fn=cmd_bounds)

    u = sub.add_parser("bq-upper", help="LP and closed-form upper bounds")
    for flag in ("--q", "--v1", "--v2", "--d", "--k"):
        u.add_argument(flag, type=int, required=True)
    u.set_defaults(fn=cmd_bq_upper)

    h = sub.add_parser("heuristic", help="run the greedy extension heuristic")
    for flag in ("--q", "--v1", "--v2", "--d", "--k"):
        h.add_argument(flag, type=int, required=True)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--restarts", type=int, default=20)
    h.add_argument("-o", "--output")
    h.add_argument("--report")
    h.set_defaults(fn=cmd_heuristic)

    e = sub.add_parser("exact-bq", help="exact value by clique search (tiny instances)")
    for flag in ("--q", "--v1", "--v2", "--d", "--k"):
        e.add_argument(flag, type=int, required=True)
    e.add_argument("--budget", type=int, default=3000)
    e.add_argument("--seed", type=int, default=0)
    e.set_defaults(fn=cmd_exact)

    f = sub.add_parser("formula", help="evaluate a named closed-form bound")
    f.add_argument("name")
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--v", type=int)
    f.add_argument("--k", type=int)
    f.add_argument("--d", type=int)
    f.add_argument("--t", type=int)
    f.set_defaults(fn=cmd_formula)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
