"""Command-line front end.

Exit codes: 0 success / realizable, 1 checked and false, 2 usage, format or
scope error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as fio
from .characterize import (
    PERMISSIVE,
    STRICT,
    DimensionMismatchError,
    TheoremScopeError,
    classify,
)
from .graph import FamilySpec, ParameterError, girth
from .harness import SampleConfig, fuzz_roundtrip, sample_weights, trial_rng
from .metric import (
    DEFAULT_GEODESIC_CAP,
    DisconnectedGraphError,
    GeodesicOverflowError,
    MatrixValidationError,
    all_pairs_distances,
    useful_edges,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _family(text: str) -> FamilySpec:
    try:
        return FamilySpec.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned integer, got {text!r}") from None
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return s


def _weights(text: str):
    kind, _, rest = text.partition(":")
    if kind != "uniform":
        raise argparse.ArgumentTypeError("weights must look like uniform:LOW,HIGH")
    try:
        lo, hi = (fio.parse_rational(x) for x in rest.split(","))
    except (ValueError, fio.FormatError):
        raise argparse.ArgumentTypeError(f"cannot parse weight range {text!r}") from None
    return lo, hi


def _emit(text: str, out) -> None:
    if out:
        fio.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    f = args.family
    if args.weights is None:
        g = f.graph()
    else:
        lo, hi = args.weights
        cfg = SampleConfig(f, lo, hi, args.denominator, args.seed, require_useful=False)
        g = sample_weights(cfg, trial_rng(cfg.seed, 0))
    _emit(fio.dump_graph(g, args.out or ".json", args.decimal), args.out)
    return EXIT_OK


def cmd_distmat(args) -> int:
    g = fio.read_graph(args.graph)
    d = all_pairs_distances(g)
    _emit(fio.dump_matrix(d, args.out, args.decimal), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    d = fio.read_matrix(args.matrix)
    verdict = classify(d, args.family, args.mode)
    report = fio.verdict_to_json(verdict, args.decimal)
    if args.report:
        fio.write_json(args.report, report)
    for c in verdict.conditions:
        status = "skipped" if c.skipped else ("holds" if c.holds else f"FAILS ({c.violations})")
        print(f"condition {c.condition_id}: {status}")
        for w in c.witnesses[:3]:
            print(f"  {w.kind} {', '.join(w.labels)} {json.dumps(fio._jsonable(w.values))} {w.note}".rstrip())
    print(f"realizable: {str(verdict.realizable).lower()}" + (" (partial)" if verdict.partial else ""))
    return EXIT_OK if verdict.realizable else EXIT_FALSE


def cmd_realize(args) -> int:
    d = fio.read_matrix(args.matrix)
    verdict = classify(d, args.family, args.mode)
    if not verdict.realizable:
        for c in verdict.conditions:
            if c.passes:
                continue
            print(f"condition {c.condition_id} fails", file=sys.stderr)
            for w in c.witnesses[:5]:
                print(f"  {w.kind} {', '.join(w.labels)} {json.dumps(fio._jsonable(w.values))}", file=sys.stderr)
        return EXIT_FALSE
    _emit(fio.dump_graph(verdict.realization, args.out or ".json", args.decimal), args.out)
    return EXIT_OK


def cmd_useful(args) -> int:
    g = fio.read_graph(args.graph)
    use = useful_edges(g, args.cap)
    for (a, b), wit in use.witnesses.items():
        if wit is None:
            print(f"{g.labels[a]}\t{g.labels[b]}\tUseless")
        else:
            print(f"{g.labels[a]}\t{g.labels[b]}\tUseful\t{g.labels[wit[0]]},{g.labels[wit[1]]}")
    return EXIT_OK


def cmd_girth(args) -> int:
    g = fio.read_graph(args.graph)
    value = girth(g)
    print("inf" if value == float("inf") else value)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    lo, hi = args.weights
    cfg = SampleConfig(args.family, lo, hi, args.denominator, args.seed)
    report = fuzz_roundtrip(cfg, args.trials, workers=args.workers)
    if args.report:
        fio.write_json(args.report, fio.fuzz_report_to_json(report))
    print(f"{report.family}: {report.passes}/{report.trials} passed in {report.seconds:.2f}s")
    for fail in report.failures[:5]:
        print(f"  trial {fail['trial']} stage {fail['stage']}: {fail['witness']}")
    return EXIT_OK if report.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmrealize", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_decimal(sp):
        sp.add_argument("--decimal", action="store_true", help="write exact decimals instead of p/q")

    sp = sub.add_parser("generate", help="write a family graph")
    sp.add_argument("--family", type=_family, required=True, help="gp:n,k | kneser:n,k | odd:l")
    sp.add_argument("--weights", type=_weights, help="uniform:LOW,HIGH (default: unit weights)")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--denominator", type=int, default=1000, help="weight grid 1/Q")
    sp.add_argument("--out")
    add_decimal(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("distmat", help="exact distance matrix of a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out")
    add_decimal(sp)
    sp.set_defaults(func=cmd_distmat)

    for name, func, help_ in (
        ("check", cmd_check, "run conditions A-D on a matrix"),
        ("realize", cmd_realize, "rebuild the weighted graph from a matrix"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--matrix", required=True)
        sp.add_argument("--family", type=_family, required=True)
        sp.add_argument("--mode", choices=(STRICT, PERMISSIVE), default=STRICT)
        if name == "check":
            sp.add_argument("--report")
        else:
            sp.add_argument("--out")
        add_decimal(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("useful", help="classify edges as useful or useless")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_GEODESIC_CAP)
    sp.set_defaults(func=cmd_useful)

    sp = sub.add_parser("girth", help="length of a shortest cycle")
    sp.add_argument("--graph", required=True)
    sp.set_defaults(func=cmd_girth)

    sp = sub.add_parser("fuzz", help="randomized round-trip campaign")
    sp.add_argument("--family", type=_family, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--weights", type=_weights, default=(1, 2))
    sp.add_argument("--denominator", type=int, default=1000)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        fio.FormatError,
        MatrixValidationError,
        TheoremScopeError,
        DimensionMismatchError,
        ParameterError,
        DisconnectedGraphError,
        GeodesicOverflowError,
        ValueError,
        OSError,
    ) as exc:
        print(f"dmrealize {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main


if __name__ == "__main__":
    sys.exit(main())
