"""Command-line entry point: gen, eval, experiment, search, bench.

Exit codes: 0 success, 1 usage, 2 input parse, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import statistics
import sys
from pathlib import Path
from typing import Sequence

from .constants import constant_A, constant_B
from .errors import BudgetError, DimensionError, DomainError, NetFormatError, ParameterError
from .exp_error import err_exp, normalized_err_exp
from .experiment import (
    Criterion,
    ExperimentConfig,
    bench_compare,
    bench_to_csv,
    bench_to_text,
    random_search,
    records_to_csv,
    run_ratio_experiment,
)
from .merit import DEFAULT_CHUNK_BITS, DEFAULT_DIGITS, wafom_dual_sum, wafom_lookup, wafom_pointwise
from .net import generate_points_graycode, random_net, read_net, write_net
from .walsh import as_weights

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 by default; 2 means parse error here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _weights(args: argparse.Namespace, s: int) -> tuple[float, ...]:
    if args.u is not None:
        try:
            values = [float(v) for v in args.u.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --u list {args.u!r}") from exc
        return as_weights(values, s)
    return as_weights(args.u_all, s)


def _add_weight_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--u", help="comma-separated weights, one per dimension")
    g.add_argument("--u-all", type=float, default=2.0, help="common weight for every dimension (default 2)")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_gen(args: argparse.Namespace) -> int:
    if not (args.n >= args.m >= 1) or args.s < 1:
        raise UsageError(f"need s >= 1 and n >= m >= 1, got s={args.s} n={args.n} m={args.m}")
    write_net(random_net(args.s, args.n, args.m, args.seed), args.out)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    net = read_net(args.net)
    u = _weights(args, net.s)
    n = args.digits
    points = generate_points_graycode(net)
    if args.method == "naive":
        w = wafom_pointwise(points, u, n)
    elif args.method == "lookup":
        w = wafom_lookup(points, u, n, args.chunk_bits)
    else:
        if n != net.n:
            raise UsageError("--method dual evaluates the net at its own precision; omit --digits")
        w = wafom_dual_sum(net, u)
    e = err_exp(points, u)
    A, B = constant_A(u), constant_B(u)
    print(f"s {net.s}\nn {net.n}\nm {net.m}\ndigits {n}\nmethod {args.method}")
    print(f"wafom {_fmt(w)}")
    print(f"err_exp {_fmt(e)}")
    print(f"normalized_err {_fmt(normalized_err_exp(points, u))}")
    print(f"A {_fmt(A)}")
    print(f"B {_fmt(B)}")
    print(f"ratio {_fmt(e / w) if w > 0 else 'undefined'}")
    return 0


def _config(args: argparse.Namespace, criterion: str = "wafom") -> ExperimentConfig:
    if not (args.n >= args.m >= 1) or args.s < 1 or args.q < 1:
        raise UsageError("need s >= 1, n >= m >= 1 and q >= 1")
    return ExperimentConfig(args.s, args.m, args.n, _weights(args, args.s), args.q, args.seed,
                            Criterion(criterion))


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = _config(args)
    records = run_ratio_experiment(cfg, args.chunk_bits)
    Path(args.out).write_text(records_to_csv(records), encoding="utf-8", newline="\n")
    A, B = constant_A(cfg.u), constant_B(cfg.u)
    tau = math.ldexp(1.0, -cfg.n + 8)
    ratios = [r.ratio for r in records if r.ratio_defined]
    inside = sum(B - tau <= r <= A + tau for r in ratios)
    print(f"records {len(records)} (seed {cfg.seed})")
    print(f"defined_ratios {len(ratios)}")
    if ratios:
        print(f"ratio_min {_fmt(min(ratios))}")
        print(f"ratio_median {_fmt(statistics.median(ratios))}")
        print(f"ratio_max {_fmt(max(ratios))}")
    print(f"B {_fmt(B)}\nA {_fmt(A)}\ntau {_fmt(tau)}")
    print(f"inside_bounds {inside}/{len(ratios)}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    criterion = "err_exp" if args.criterion == "err" else "wafom"
    cfg = _config(args, criterion)
    net, best = random_search(cfg)
    write_net(net, args.out)
    points = generate_points_graycode(net)
    print(f"criterion {args.criterion}")
    print(f"score {_fmt(best)}")
    print(f"wafom {_fmt(wafom_pointwise(points, cfg.u, cfg.n))}")
    print(f"err_exp {_fmt(err_exp(points, cfg.u))}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        s_list = [int(v) for v in args.s_list.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --s-list {args.s_list!r}") from exc
    reports = []
    for s in s_list:
        if s < 1 or not (args.n >= args.m >= 1) or args.q < 1:
            raise UsageError("need s >= 1, n >= m >= 1 and q >= 1")
        cfg = ExperimentConfig(s, args.m, args.n, as_weights(args.u_all, s), args.q, args.seed)
        reports.append(bench_compare(cfg, args.chunk_bits))
    sys.stdout.write(bench_to_text(reports))
    csv_text = bench_to_csv(reports)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write("\n" + csv_text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wafomkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a random digital net")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="merit, exponential error and bounds of a net file")
    p.add_argument("--net", required=True)
    _add_weight_flags(p)
    p.add_argument("--digits", type=int, default=None, help="digit precision n (default: the net's n)")
    p.add_argument("--method", choices=("naive", "lookup", "dual"), default="naive")
    p.add_argument("--chunk-bits", type=int, default=DEFAULT_CHUNK_BITS)
    p.set_defaults(func=cmd_eval)

    for name, helptext in (("experiment", "ratio study over random nets (CSV)"),
                           ("search", "random search for a low-merit net")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, default=DEFAULT_DIGITS)
        _add_weight_flags(p)
        p.add_argument("--q", type=int, default=1024)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--out", required=True)
        if name == "search":
            p.add_argument("--criterion", choices=("wafom", "err"), default="wafom")
            p.set_defaults(func=cmd_search)
        else:
            p.add_argument("--chunk-bits", type=int, default=DEFAULT_CHUNK_BITS)
            p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bench", help="time the three evaluators across dimensions")
    p.add_argument("--s-list", required=True, help="comma-separated dimensions, e.g. 2,4,8,16")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--q", type=int, default=16)
    p.add_argument("--chunk-bits", type=int, default=DEFAULT_CHUNK_BITS)
    p.add_argument("--u-all", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: CSV follows the table on stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval" and args.digits is None:
            args.digits = read_net(args.net).n
        return args.func(args)
    except NetFormatError as exc:
        print(f"wafomkit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"wafomkit: size error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DimensionError, DomainError, ParameterError) as exc:
        print(f"wafomkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
