"""Command-line interface: ``magnus-qi <command> --rank r ...``.

Exit status: 0 on success, 1 when a verification fails, 2 on a capacity
error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .errors import CapacityError, RankError, WordSyntaxError
from .flows import flow_of_word
from .fox import fox_derivatives
from .geodesic import geodesic_report
from .groups import Config, Lattice, evaluate, free_solvable, solvable_from_word
from .kernels import DEFAULT_FOREST_CAP, DEFAULT_TOUR_CAP
from .oracles import bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath
from .qi import CampaignConfig, report_csv, report_json, run_campaign
from .words import Word
from .wreath import magnus_embed, sum_lamp_costs, wreath_length_circuit, wreath_length_walk


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)


def _text(obj: Any) -> str:
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {_dump(v) if isinstance(v, (dict, list)) else v}" for k, v in sorted(obj.items()))
    return str(obj)


def _emit(obj: Any, fmt: str) -> None:
    if fmt == "json":
        print(_dump(obj))
    elif fmt == "csv":
        if not isinstance(obj, dict):
            print(_dump(obj))
            return
        keys = sorted(obj)
        print(",".join(keys))
        print(",".join(_dump(obj[k]) if isinstance(obj[k], (dict, list)) else str(obj[k]) for k in keys))
    else:
        print(_text(obj))


def _base(args):
    """B = S_{d-1,r}: the group whose Cayley graph carries flows and lamps."""
    if args.degree < 2:
        raise SystemExit("this command needs --degree >= 2")
    return free_solvable(args.rank, args.degree - 1)


def _metabelian_only(args) -> Lattice:
    if args.degree != 2:
        raise SystemExit("lengths are computed for --degree 2 only")
    return Lattice(args.rank)


def cmd_derive(args) -> int:
    w = Word.parse(args.word, args.rank)
    base = _base(args)
    derivs = fox_derivatives(w, base)
    _emit({"word": str(w), "derivatives": [{"gen": i, "element": d.to_json()} for i, d in enumerate(derivs, 1)]}, args.format)
    return 0


def cmd_flow(args) -> int:
    w = Word.parse(args.word, args.rank)
    base = _base(args)
    f = flow_of_word(w, base)
    _emit({"word": str(w), "shadow": base.encode(evaluate(w, base)), "flow": f.to_json()}, args.format)
    return 0


def cmd_embed(args) -> int:
    w = Word.parse(args.word, args.rank)
    _emit(magnus_embed(w, _base(args)).to_json(), args.format)
    return 0


def cmd_length(args) -> int:
    w = Word.parse(args.word, args.rank)
    group = _metabelian_only(args)
    report = geodesic_report(w, group, cap=args.forest_cap)
    e = magnus_embed(w, group)
    _emit(
        {
            "word": str(w),
            "lengthFN": report["length"],
            "sumFlow": report["sumFlow"],
            "qEdges": report["qEdges"],
            "sumLamps": sum_lamp_costs(e),
            "shadowNorm": group.norm(e.shadow),
            "wreathCircuit": wreath_length_circuit(e, cap=args.kernel_cap),
            "wreathWalk": wreath_length_walk(e, cap=args.kernel_cap),
        },
        args.format,
    )
    return 0


def cmd_geodesic_word(args) -> int:
    w = Word.parse(args.word, args.rank)
    report = geodesic_report(w, _metabelian_only(args), cap=args.forest_cap)
    if args.format == "text":
        print(report["geodesic"])
    else:
        _emit(report, args.format)
    return 0


def cmd_wordproblem(args) -> int:
    u = Word.parse(args.u, args.rank)
    v = Word.parse(args.v, args.rank)
    cfg = Config(args.rank, args.degree)
    equal = solvable_from_word(u, cfg) == solvable_from_word(v, cfg)
    print("true" if equal else "false")
    return 0


def cmd_oracle(args) -> int:
    w = Word.parse(args.word, args.rank)
    group = _metabelian_only(args)
    _emit(
        {
            "word": str(w),
            "radius": args.oracle_radius,
            "lengthFN": bfs_geodesic_oracle_fn(w, args.rank, args.oracle_radius),
            "wreath": bfs_geodesic_oracle_wreath(magnus_embed(w, group), args.oracle_radius),
        },
        args.format,
    )
    return 0


def cmd_verify_qi(args) -> int:
    if args.degree != 2:
        raise SystemExit("verify-qi runs at --degree 2")
    cfg = CampaignConfig(
        rank=args.rank,
        samples=args.samples,
        max_len=args.max_len,
        seed=args.seed,
        oracle_radius=args.oracle_radius,
        tour_cap=args.kernel_cap,
        forest_cap=args.forest_cap,
        workers=args.workers,
    )
    report = run_campaign(cfg)
    if args.format == "csv":
        sys.stdout.write(report_csv(report))
    elif args.format == "json":
        sys.stdout.write(report_json(report))
    else:
        print(_text(report["summary"]))
    return 1 if report["summary"]["failures"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magnus-qi", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, required=True, help="number of generators r")
    common.add_argument("--degree", type=int, default=2, help="solvability degree d (default 2)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--kernel-cap", type=int, default=DEFAULT_TOUR_CAP, help="max points for exact tours")
    common.add_argument("--forest-cap", type=int, default=DEFAULT_FOREST_CAP, help="max groups for exact Steiner forests")
    common.add_argument("--oracle-radius", type=int, default=8, help="radius of breadth-first oracles")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_command(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("word", help='word such as "x1 x2 x1^-1"; "" is the identity')
        p.set_defaults(func=func)

    word_command("derive", cmd_derive, "Fox derivatives projected to Z[B]")
    word_command("flow", cmd_flow, "flow of the word on Cay(B)")
    word_command("embed", cmd_embed, "Magnus embedding into Z^r wr B")
    word_command("length", cmd_length, "F/N' length and both wreath lengths")
    word_command("geodesic-word", cmd_geodesic_word, "a geodesic word from an Euler trail")
    word_command("oracle", cmd_oracle, "breadth-first lengths")

    p = sub.add_parser("wordproblem", parents=[common], help="are u and v equal in S_{d,r}?")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_wordproblem)

    p = sub.add_parser("verify-qi", parents=[common], help="random campaign checking the QI bounds")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify_qi)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.rank < 1:
        print("error: --rank must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (WordSyntaxError, RankError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
