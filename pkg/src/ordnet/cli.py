"""Command-line interface.

Verbs:
  gen     write an instance file (general-lb, random-path, random-star,
          random-ordered, hitting-set)
  run     run an algorithm over an instance file or against an adversary
  duel    alias of run that requires an adversary
  verify  check an edge file against an instance file
  report  aggregate result CSVs into per-family ratio tables

Exit codes: 0 ok, 1 infeasible result, 2 usage/parse error, 3 oracle
capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .adversaries import general_lb_instance, path_lb_adversary, star_lb_adversary
from .harness import (
    InfeasibleResult,
    RunConfig,
    append_csv,
    execute,
    report,
)
from .instances import (
    ParseError,
    random_ordered_instance,
    random_path_instance,
    random_star_instance,
    read_edges,
    read_instance,
    write_instance,
)
from .model import Instance, ValidationError
from .oracle import HittingSetInstance, OracleCapacityError, hitting_set_reduction

_GEN_FAMILIES = ("general-lb", "random-path", "random-star", "random-ordered", "hitting-set")
_ADVERSARIES = ("path-lb", "star-lb", "general-lb")
_ALGS = ("general", "star", "path", "offline-opt", "offline-approx")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordnet")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--family", required=True, choices=_GEN_FAMILIES)
    gen.add_argument("--n", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--max-len", type=int, default=5)
    gen.add_argument("--universe", type=int)
    gen.add_argument("--sets", help="semicolon-separated comma lists, e.g. 0,1;1,2")
    gen.add_argument("--wsize", type=int)
    gen.add_argument("--out", required=True)

    for name in ("run", "duel"):
        run = sub.add_parser(name, help="execute an algorithm")
        run.add_argument("--alg", required=True, choices=_ALGS)
        run.add_argument("--input")
        run.add_argument("--adversary", choices=_ADVERSARIES)
        run.add_argument("--n", type=int)
        run.add_argument("--seed", type=int)
        run.add_argument("--c-param", type=float, default=1.5)
        run.add_argument("--r-estimate", type=int)
        run.add_argument("--csv")
        run.add_argument("--deterministic", action="store_true",
                         help="suppress the CSV timestamp column")

    verify = sub.add_parser("verify", help="check edges against an instance")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--edges", required=True)

    rep = sub.add_parser("report", help="aggregate result CSVs")
    rep.add_argument("csvs", nargs="+")
    return parser


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _cmd_gen(args) -> int:
    family = args.family
    if family == "hitting-set":
        _require(args.universe is not None and args.sets and args.wsize is not None,
                 "hitting-set needs --universe, --sets, --wsize")
        sets = []
        for chunk in args.sets.split(";"):
            members = frozenset(int(x) for x in chunk.split(",") if x != "")
            _require(bool(members), "empty set in --sets")
            sets.append(members)
        hs = HittingSetInstance(args.universe, tuple(sets))
        red = hitting_set_reduction(hs, args.wsize)
        inst = red.instance
        header = f"family=hitting-set universe={args.universe} wsize={args.wsize}"
    else:
        _require(args.n is not None, f"{family} needs --n")
        _require(args.seed is not None, f"{family} needs --seed")
        if family == "general-lb":
            inst = Instance(args.n, tuple(general_lb_instance(args.n, args.seed).constraints))
        elif family == "random-path":
            _require(args.r is not None, "random-path needs --r")
            inst, _ = random_path_instance(args.n, args.r, args.seed)
        elif family == "random-star":
            _require(args.r is not None, "random-star needs --r")
            inst, _ = random_star_instance(args.n, args.r, args.seed)
        else:
            _require(args.r is not None, "random-ordered needs --r")
            inst = random_ordered_instance(args.n, args.r, args.seed, max_len=args.max_len)
        header = f"family={family} n={args.n} seed={args.seed}"
    write_instance(args.out, inst, header=header)
    print(f"wrote {args.out}: n={inst.n} r={inst.r}")
    return 0


def _cmd_run(args) -> int:
    _require((args.input is None) != (args.adversary is None),
             "give exactly one of --input or --adversary")
    seed = args.seed
    needs_seed = args.alg in ("general", "offline-approx") or args.adversary in ("path-lb", "general-lb")
    _require(seed is not None or not needs_seed, "--seed is mandatory for randomized runs")
    seed = 0 if seed is None else seed

    instance = adversary = None
    if args.input is not None:
        instance = read_instance(args.input)
        family = "file"
        instance_id = args.input
    else:
        _require(args.n is not None, "--adversary needs --n")
        _require(args.alg not in ("offline-opt", "offline-approx"),
                 "offline algorithms need --input")
        if args.adversary == "path-lb":
            adversary = path_lb_adversary(args.n, seed)
        elif args.adversary == "star-lb":
            adversary = star_lb_adversary(args.n)
        else:
            adversary = general_lb_instance(args.n, seed)
        family = args.adversary
        instance_id = f"{args.adversary}-n{args.n}-s{seed}"

    cfg = RunConfig(
        alg=args.alg, instance=instance, adversary=adversary, seed=seed,
        c_param=args.c_param, r_estimate=args.r_estimate,
        family=family, instance_id=instance_id)
    transcript = execute(cfg)

    ratio = transcript.ratio
    parts = [
        f"alg={transcript.alg}", f"n={transcript.n}", f"r={transcript.r}",
        f"edges={transcript.alg_edges}", f"alg_cost={transcript.alg_cost:g}",
    ]
    if transcript.opt_cost is not None:
        parts.append(f"opt_cost={transcript.opt_cost:g} ({transcript.opt_source})")
        parts.append(f"ratio={ratio:.6f}")
    else:
        parts.append("opt_cost=unavailable (ratio omitted)")
    print(" ".join(parts))
    if args.csv:
        append_csv(args.csv, [transcript], deterministic=args.deterministic)
    return 0


def _cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    edges = read_edges(args.edges, inst.n)
    for idx, o in enumerate(inst.constraints):
        for i in range(1, len(o.vertices)):
            v = o.vertices[i]
            if not any(edges.has(u, v) for u in o.vertices[:i]):
                print(f"violated: constraint #{idx + 1} {o.vertices} at position {i + 1}")
                return 1
    print("ok")
    return 0


def _cmd_report(args) -> int:
    rows = report(args.csvs)
    header = f"{'family':<16} {'runs':>6} {'mean_ratio':>12} {'max_ratio':>12}"
    print(header)
    for row in rows:
        print(f"{row['family']:<16} {row['runs']:>6} {row['mean_ratio']:>12} {row['max_ratio']:>12}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command in ("run", "duel"):
            if args.command == "duel" and args.adversary is None:
                raise ParseError("duel requires --adversary")
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_report(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleResult as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except OracleCapacityError as exc:
        print(f"oracle capacity exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
