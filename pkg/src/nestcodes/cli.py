"""Command line: field, construct, verify, bound, compare."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bounds, constructions
from .errors import BudgetExceeded, DuplicateOrbits, GuardViolation, NestCodesError
from .field import field_for, is_irreducible
from .io import code_from_json, code_to_json, dumps
from .orbits import Budget
from .verification import CHECKS, Mode, run_checks

log = logging.getLogger("nestcodes")

FAMILIES = ("rrt", "zhang", "nested2e", "nestedpe", "multiprime", "mixed", "single")


def _int_list(text: str) -> list[int]:
    """'2,3' or '2..4' or '2'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def build_code(args):
    fam = args.family
    blocks = constructions.parse_blocks(args.blocks) if args.blocks else []
    if fam == "rrt":
        return constructions.construct_rrt(args.q, args.k, variant=args.variant).as_cyclic()
    if fam == "zhang":
        return constructions.construct_zhang(args.q, args.k, _single_prime(args, blocks)).as_cyclic()
    if fam == "nested2e":
        return constructions.construct_nested_2e(args.q, args.k, args.e, policy=args.policy, variant=args.variant)
    if fam == "nestedpe":
        return constructions.construct_nested_pe(args.q, args.k, _single_prime(args, blocks), args.e, policy=args.policy)
    if fam == "multiprime":
        return constructions.construct_multi_prime(args.q, args.k, blocks, args.ordering, policy=args.policy)
    if fam == "mixed":
        return constructions.construct_mixed(args.q, args.k, args.e, blocks, args.ordering, policy=args.policy,
                                             variant=args.variant)
    if fam == "single":
        ratios = [p for p, x in blocks for _ in range(x)] or [3, 3]
        return constructions.single_orbit_tower(args.q, args.k, ratios)
    raise GuardViolation(f"unknown family {fam}")


def _single_prime(args, blocks) -> int:
    if args.p is not None:
        return args.p
    if len(blocks) == 1:
        return blocks[0][0]
    raise GuardViolation("this family needs one odd prime: use --p or --blocks p:e")


def cmd_field(args) -> int:
    ctx = field_for(args.q, args.n, max_elements=args.max_field)
    report = {
        "p": ctx.p,
        "s": ctx.s,
        "n": ctx.n,
        "q": ctx.q,
        "elements": ctx.size,
        "modulus": list(ctx.modulus),
        "g": ctx.coords(ctx.g),
        "subfields": [
            {"d": d, "generator": ctx.coords(ctx.subfield_generator(d)),
             "generator_order": ctx.order(ctx.subfield_generator(d))}
            for d in ctx.subfield_degrees
        ],
        "self_test": {
            "modulus_irreducible": is_irreducible(list(ctx.modulus), ctx.p),
            "g_order_ok": ctx.order(ctx.g) == ctx.N,
            "subfield_orders_ok": all(
                ctx.order(ctx.subfield_generator(d)) == ctx.q**d - 1 for d in ctx.subfield_degrees
            ),
        },
    }
    _emit(args, dumps(report))
    return 0 if all(report["self_test"].values()) else 1


def cmd_construct(args) -> int:
    code = build_code(args)
    _emit(args, dumps(code_to_json(code)))
    return 0


def cmd_verify(args) -> int:
    if args.code:
        code = code_from_json(json.loads(Path(args.code).read_text()))
    else:
        code = build_code(args)
    mode = Mode.parse(args.mode)
    if mode.kind == "sampled" and args.seed is None:
        raise GuardViolation("sampled mode requires --seed")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    budget = Budget(max_sweep_ops=args.max_sweep)
    records = run_checks(code, checks, mode, seed=args.seed, threads=args.threads, budget=budget)
    _emit(args, dumps({"provenance": code.provenance, "mode": args.mode, "seed": args.seed, "checks": records}))
    return 0 if all(r["result"] == "pass" for r in records) else 1


def cmd_bound(args) -> int:
    val = bounds.johnson(args.q, args.n, args.d, args.k)
    _emit(args, dumps({"q": args.q, "n": args.n, "d": args.d, "k": args.k, "johnson": str(val)}))
    return 0


def cmd_compare(args) -> int:
    rs = _int_list(args.r) if args.r else []
    if args.family:
        rs.extend(_family_r(f) for f in args.family.split(","))
    if not rs:
        raise GuardViolation("compare needs --r or --family")
    points = [(q, k, r) for r in rs for q in _int_list(args.q) for k in _int_list(args.k)]
    rows = bounds.ratio_report(points)
    header = {"grid": {"q": _int_list(args.q), "k": _int_list(args.k), "r": rs},
              "note": "finite-parameter values; trends are over the listed grid only"}
    if args.format == "csv":
        _emit(args, bounds.rows_to_csv(rows))
    else:
        _emit(args, dumps({"header": header, "rows": [r.to_json() for r in rows]}))
    return 0


def _family_r(tag: str) -> int:
    """'2^2' -> 4, '3^2*5' -> 45."""
    r = 1
    for part in tag.strip().split("*"):
        base, _, exp = part.partition("^")
        r *= int(base) ** int(exp or 1)
    return r


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nestcodes", description="Nested cyclic subspace codes: build, verify, bound.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--max-field", type=int, default=2**26)
        p.add_argument("--max-sweep", type=int, default=10**10)

    def family_args(p, required):
        p.add_argument("--family", choices=FAMILIES, required=required)
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--k", type=int, required=required)
        p.add_argument("--e", type=int, default=1)
        p.add_argument("--p", type=int)
        p.add_argument("--blocks", default="", help='odd prime blocks, e.g. "5:1,3:2"')
        p.add_argument("--ordering", default="descending", help="descending | custom:p1,p2,... (innermost first)")
        p.add_argument("--variant", choices=constructions.RRT_VARIANTS, default="norm")
        p.add_argument("--policy", choices=("error", "dedupe"), default="error")

    p = sub.add_parser("field", help="build a field and print its data")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("construct", help="build a code and write its JSON artifact")
    family_args(p, True)
    p.add_argument("--seed", type=int, help="accepted for symmetry; constructions use no randomness")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check size, distance and orbit properties")
    p.add_argument("--code", help="artifact produced by construct")
    family_args(p, False)
    p.add_argument("--checks", default=",".join(CHECKS))
    p.add_argument("--mode", default="exhaustive", help="exhaustive | sampled:N")
    p.add_argument("--seed", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="Johnson type bound")
    for name in ("q", "n", "d", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compare", help="size/bound ratios against earlier constructions")
    p.add_argument("--q", default="2,3")
    p.add_argument("--k", default="2..3")
    p.add_argument("--r", default="")
    p.add_argument("--family", default="", help='tower tags such as "2^2,3^2"')
    common(p)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    if getattr(args, "cmd", None) == "verify" and not args.code and not args.family:
        ap.error("verify needs --code or --family/--q/--k")
    try:
        return args.func(args)
    except (GuardViolation, NestCodesError, ValueError) as exc:
        if isinstance(exc, DuplicateOrbits):
            log.error("duplicate orbits: %s", exc)
            return 1
        if isinstance(exc, BudgetExceeded):
            log.error("budget exceeded: %s", exc)
            return 2
        log.error("%s: %s", type(exc).__name__, exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
